#include "rhq/cli.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace rhq {

namespace {

using nlohmann::json;

Rational rational_from_json(const json& j, const std::string& what) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long long>());
    throw std::invalid_argument(what + " must be a \"p/q\" string or an integer");
}

RatComplex complex_from_json(const json& j, const std::string& what) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        throw std::invalid_argument(what + " must be an object {\"re\": \"p/q\", \"im\": \"p/q\"}");
    return {rational_from_json(j.at("re"), what + ".re"),
            rational_from_json(j.at("im"), what + ".im")};
}

}  // namespace

InputSpec parse_input(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("input must be a JSON object");
    InputSpec spec;
    if (!j.contains("genus") || !j.at("genus").is_number_integer())
        throw std::invalid_argument("missing integer field \"genus\"");
    spec.genus = j.at("genus").get<int>();
    if (!j.contains("weierstrass") || !j.at("weierstrass").is_array())
        throw std::invalid_argument("missing array field \"weierstrass\"");
    size_t idx = 0;
    for (const auto& p : j.at("weierstrass"))
        spec.weierstrass.push_back(
            complex_from_json(p, "weierstrass[" + std::to_string(idx++) + "]"));
    if (!j.contains("divisor") || !j.at("divisor").is_array())
        throw std::invalid_argument("missing array field \"divisor\"");
    idx = 0;
    for (const auto& e : j.at("divisor")) {
        const std::string what = "divisor[" + std::to_string(idx++) + "]";
        if (!e.is_object() || !e.contains("point") || !e.contains("mult"))
            throw std::invalid_argument(what + " must be {\"point\": {...}, \"mult\": m}");
        if (!e.at("mult").is_number_integer())
            throw std::invalid_argument(what + ".mult must be an integer");
        spec.divisor.push_back(
            DivisorEntry{complex_from_json(e.at("point"), what + ".point"),
                         e.at("mult").get<long long>()});
    }
    if (j.contains("options")) {
        const auto& o = j.at("options");
        if (!o.is_object()) throw std::invalid_argument("\"options\" must be an object");
        if (o.contains("d_max")) spec.options.d_max = o.at("d_max").get<int>();
        if (o.contains("sample_count")) spec.options.sample_count = o.at("sample_count").get<int>();
        if (o.contains("seed")) spec.options.seed = o.at("seed").get<std::uint64_t>();
        if (o.contains("skip_numeric")) spec.options.skip_numeric = o.at("skip_numeric").get<bool>();
    }
    return spec;
}

InputSpec load_input_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("JSON parse error in '" + path + "': " + e.what());
    }
    return parse_input(j);
}

namespace {

json interval_to_json(const IntervalEntry& e) {
    json iv;
    iv["lo"] = e.interval.lo ? json(to_fraction_string(*e.interval.lo)) : json(nullptr);
    iv["hi"] = e.interval.hi ? json(to_fraction_string(*e.interval.hi)) : json(nullptr);
    iv["locus"] = e.locus == Locus::tau ? "tau" : "tau_iota";
    iv["mult_sum"] = e.mult_sum;
    iv["odd"] = e.odd;
    return iv;
}

std::string interval_str(const IntervalEntry& e) {
    std::string lo = e.interval.lo ? to_fraction_string(*e.interval.lo) : "-inf";
    std::string hi = e.interval.hi ? to_fraction_string(*e.interval.hi) : "+inf";
    return (e.interval.lo ? "[" : "(") + lo + ", " + hi + (e.interval.hi ? "]" : ")");
}

// (n, k) -> (s, partition) rows of the genus-2 classification; used as a
// consistency gate on the computed invariant.
const std::map<std::pair<int, int>, std::pair<int, std::vector<int>>>& genus2_rows() {
    static const std::map<std::pair<int, int>, std::pair<int, std::vector<int>>> rows = {
        {{0, 1}, {3, {}}},
        {{1, 1}, {2, {2}}},
        {{2, 1}, {1, {1, 1, 2}}},
        {{3, 1}, {0, {1, 1, 1, 1, 2}}},
        {{3, 3}, {0, {2, 2, 2}}},
    };
    return rows;
}

}  // namespace

json profile_to_json(const IntervalProfile& profile) {
    json out;
    out["n"] = profile.n;
    out["k"] = profile.k;
    out["infinite_circle_odd"] = profile.infinite_circle_odd;
    out["normalized"] = profile.normalized;
    json ivs = json::array();
    for (const auto& e : profile.intervals) ivs.push_back(interval_to_json(e));
    out["intervals"] = std::move(ivs);
    return out;
}

json nf_to_json(const RealNormalForm& nf, const CongruenceReport& congruence) {
    json out;
    out["n"] = nf.n;
    out["s"] = nf.s;
    out["eps"] = nf.eps;
    json eigs = json::array();
    for (const auto& r : nf.real_eigs) eigs.push_back(to_fraction_string(r));
    out["real_eigenvalues"] = std::move(eigs);
    json pairs = json::array();
    for (const auto& [a, b] : nf.complex_pairs)
        pairs.push_back(json::array({to_double(a), to_double(b)}));
    out["complex_pairs"] = std::move(pairs);
    out["congruence"] = {{"ok", congruence.ok},
                         {"max_residual", congruence.max_residual},
                         {"max_imag", congruence.max_imag}};
    return out;
}

json gl_to_json(const GLInvariant& inv) {
    return {{"s", inv.s},
            {"l", inv.l},
            {"partition", inv.partition},
            {"partition_string", inv.partition_string()}};
}

json sw_to_json(const SWReport& rep) {
    return {{"genus", rep.genus},
            {"d_max", rep.d_max},
            {"total", rep.total.str()},
            {"w1", rep.w1.str()},
            {"w2", rep.w2.str()},
            {"orientable", rep.orientable},
            {"spin", rep.spin},
            {"relatively_spin", rep.relatively_spin}};
}

json numeric_to_json(const NumericSummary& s) {
    json out;
    out["ran"] = s.ran;
    if (!s.ran) return out;
    out["requested"] = s.requested;
    out["converged"] = s.converged;
    out["sampling_ok"] = s.sampling_ok;
    out["max_abs_q0"] = s.max_abs_q0;
    out["max_abs_q1"] = s.max_abs_q1;
    out["min_sv2"] = s.min_sv2;
    out["smooth_ok"] = s.smooth_ok;
    out["dim_cover"] = s.dim_cover;
    out["components"] = s.component_count;
    out["radius"] = s.radius;
    out["conclusive"] = s.conclusive;
    return out;
}

json Report::to_json() const {
    json out;
    json curve;
    curve["genus"] = genus;
    curve["n"] = topology.n;
    curve["k"] = profile.k;
    curve["components_tau"] = topology.components_tau;
    curve["components_tau_iota"] = topology.components_tau_iota;
    curve["dividing_tau"] = topology.dividing_tau;
    curve["dividing_tau_iota"] = topology.dividing_tau_iota;
    curve["normalization"] = transform.describe();
    curve["profile"] = profile_to_json(profile);
    out["curve"] = std::move(curve);
    out["normal_form"] = nf_to_json(nf, congruence);
    out["gl_invariant"] = gl_to_json(gl);
    if (has_types)
        out["diffeomorphism_types"] = {
            {"classified", types.classified}, {"cover", types.cover}, {"base", types.base}};
    out["stiefel_whitney"] = sw_to_json(sw);
    out["numeric"] = numeric_to_json(numeric);
    out["ok"] = ok;
    return out;
}

std::string Report::pretty() const {
    std::ostringstream os;
    os << "curve: genus " << genus << ", n = " << topology.n << ", k = " << profile.k << "\n";
    os << "topology: pi0(Sigma^tau) = " << topology.components_tau
       << (topology.dividing_tau ? " (dividing)" : " (non-dividing)")
       << ", pi0(Sigma^(tau.iota)) = " << topology.components_tau_iota
       << (topology.dividing_tau_iota ? " (dividing)" : " (non-dividing)") << "\n";
    os << "chart: " << transform.describe() << "\n";
    os << "intervals:";
    for (const auto& e : profile.intervals)
        os << " " << interval_str(e) << (e.locus == Locus::tau ? " tau" : " tau.iota")
           << (e.odd ? " odd" : " even");
    os << "\n";
    os << "normal form: n = " << nf.n << ", s = " << nf.s << ", eps = (";
    for (size_t i = 0; i < nf.eps.size(); ++i) os << (i ? "," : "") << (nf.eps[i] > 0 ? "+1" : "-1");
    os << "), eigenvalues = (";
    for (size_t i = 0; i < nf.real_eigs.size(); ++i)
        os << (i ? "," : "") << to_fraction_string(nf.real_eigs[i]);
    os << ")\n";
    os << "congruence: max residual " << congruence.max_residual << ", max imag "
       << congruence.max_imag << (congruence.ok ? " (ok)" : " (FAILED)") << "\n";
    os << "GL invariant: s = " << gl.s << ", partition = ("
       << gl.partition_string() << "), l = " << gl.l << "\n";
    if (has_types)
        os << "diffeomorphism type: cover " << types.cover << ", base " << types.base << "\n";
    os << "Stiefel-Whitney: w1 = " << sw.w1.str() << ", w2 = " << sw.w2.str() << "; "
       << (sw.orientable ? "orientable" : "non-orientable") << ", "
       << (sw.spin ? "spin" : "not spin") << ", "
       << (sw.relatively_spin ? "relatively spin" : "not relatively spin") << "\n";
    if (numeric.ran) {
        os << "numeric: " << numeric.converged << "/" << numeric.requested << " converged"
           << (numeric.sampling_ok ? "" : " (SAMPLING FAILURE)") << ", min sv2 = "
           << numeric.min_sv2 << (numeric.smooth_ok ? " (rank 2)" : " (RANK DEFICIENT)")
           << ", components = " << numeric.component_count
           << (numeric.conclusive ? "" : " (inconclusive)") << ", dim = " << numeric.dim_cover
           << "\n";
    } else {
        os << "numeric: skipped\n";
    }
    os << (ok ? "verification: ok" : "verification: FAILED") << "\n";
    return os.str();
}

Report build_report(const InputSpec& spec) {
    const auto W = WeierstrassSet::create(spec.genus, spec.weierstrass);
    const auto D = RealDivisor::create(W, spec.divisor);
    const auto chart = normalize_chart(W, D);

    Report rep;
    rep.genus = spec.genus;
    rep.transform = chart.transform;
    rep.topology = classify_topology(chart.W);
    rep.profile = interval_parities(chart.W, chart.D);
    if (rep.profile.k % 2 != 1)
        throw std::logic_error("odd-circle count k is even; parity law violated");

    const auto pencil = build_pencil(chart.W, chart.D);
    rep.nf = real_normal_form(chart.W, chart.D);
    rep.congruence = verify_normal_form(pencil, basis_change(pencil), rep.nf);

    rep.gl = reduce(lambda_config(rep.nf));
    if (spec.genus == 2) {
        rep.has_types = true;
        rep.types = genus2_lookup(rep.gl);
        const auto& rows = genus2_rows();
        const auto it = rows.find({rep.topology.n, rep.profile.k});
        if (it == rows.end() || it->second.first != rep.gl.s ||
            it->second.second != rep.gl.partition)
            throw std::logic_error("(n,k) table row disagrees with computed (s, partition)");
    }

    rep.sw = sw_report(spec.genus, spec.options.d_max);

    rep.ok = rep.congruence.ok;
    if (!spec.options.skip_numeric) {
        const auto qp = quadric_matrices(rep.nf);
        const auto cloud = sample(qp, spec.options.sample_count, spec.options.seed);
        rep.numeric.ran = true;
        rep.numeric.requested = cloud.requested;
        rep.numeric.converged = cloud.converged;
        rep.numeric.sampling_ok = cloud.sampling_ok;
        for (const auto& p : cloud.points) {
            rep.numeric.max_abs_q0 = std::max(rep.numeric.max_abs_q0, std::abs(p.q0));
            rep.numeric.max_abs_q1 = std::max(rep.numeric.max_abs_q1, std::abs(p.q1));
        }
        if (!cloud.points.empty()) {
            const auto smooth = smoothness(cloud);
            rep.numeric.min_sv2 = smooth.min_sv2;
            rep.numeric.smooth_ok = smooth.ok;
            rep.numeric.dim_cover = smooth.dim_cover;
            if (cloud.converged >= 100) {
                const auto comp = components(cloud);
                rep.numeric.component_count = comp.count;
                rep.numeric.radius = comp.radius;
                rep.numeric.conclusive = comp.conclusive;
            }
        }
        rep.ok = rep.ok && rep.numeric.sampling_ok && rep.numeric.smooth_ok;
    }
    return rep;
}

}  // namespace rhq
