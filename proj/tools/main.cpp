#include "rhq/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

namespace {

using nlohmann::json;

struct CommonFlags {
    std::string input;
    bool machine = false;
    std::optional<int> samples, dmax;
    std::optional<std::uint64_t> seed;
    bool skip_numeric = false;
};

rhq::InputSpec load_spec(const CommonFlags& flags) {
    auto spec = rhq::load_input_file(flags.input);
    if (flags.samples) spec.options.sample_count = *flags.samples;
    if (flags.seed) spec.options.seed = *flags.seed;
    if (flags.dmax) spec.options.d_max = *flags.dmax;
    if (flags.skip_numeric) spec.options.skip_numeric = true;
    return spec;
}

void emit(bool machine, const json& j, const std::string& text) {
    if (machine)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int run_report(const CommonFlags& flags) {
    const auto rep = rhq::build_report(load_spec(flags));
    emit(flags.machine, rep.to_json(), rep.pretty());
    return rep.ok ? 0 : 2;
}

int run_curve_info(const CommonFlags& flags) {
    const auto spec = load_spec(flags);
    const auto W = rhq::WeierstrassSet::create(spec.genus, spec.weierstrass);
    const auto D = rhq::RealDivisor::create(W, spec.divisor);
    const auto chart = rhq::normalize_chart(W, D);
    const auto topo = rhq::classify_topology(chart.W);
    const auto profile = rhq::interval_parities(chart.W, chart.D);

    json j;
    j["genus"] = spec.genus;
    j["n"] = topo.n;
    j["components_tau"] = topo.components_tau;
    j["components_tau_iota"] = topo.components_tau_iota;
    j["dividing_tau"] = topo.dividing_tau;
    j["dividing_tau_iota"] = topo.dividing_tau_iota;
    j["normalization"] = chart.transform.describe();
    j["profile"] = rhq::profile_to_json(profile);

    std::ostringstream os;
    os << "genus " << spec.genus << ", n = " << topo.n << ", k = " << profile.k << "\n"
       << "pi0(Sigma^tau) = " << topo.components_tau
       << (topo.dividing_tau ? " (dividing)" : " (non-dividing)") << ", pi0(Sigma^(tau.iota)) = "
       << topo.components_tau_iota
       << (topo.dividing_tau_iota ? " (dividing)" : " (non-dividing)") << "\n"
       << "chart: " << chart.transform.describe() << "\n";
    emit(flags.machine, j, os.str());
    return 0;
}

int run_normal_form(const CommonFlags& flags) {
    const auto spec = load_spec(flags);
    const auto W = rhq::WeierstrassSet::create(spec.genus, spec.weierstrass);
    const auto D = rhq::RealDivisor::create(W, spec.divisor);
    const auto chart = rhq::normalize_chart(W, D);
    const auto pencil = rhq::build_pencil(chart.W, chart.D);
    const auto nf = rhq::real_normal_form(chart.W, chart.D);
    const auto congruence = rhq::verify_normal_form(pencil, rhq::basis_change(pencil), nf);

    std::ostringstream os;
    os << "n = " << nf.n << ", s = " << nf.s << ", eps = (";
    for (size_t i = 0; i < nf.eps.size(); ++i)
        os << (i ? "," : "") << (nf.eps[i] > 0 ? "+1" : "-1");
    os << ")\ncongruence residual " << congruence.max_residual
       << (congruence.ok ? " (ok)" : " (FAILED)") << "\n";
    emit(flags.machine, rhq::nf_to_json(nf, congruence), os.str());
    return congruence.ok ? 0 : 2;
}

int run_classify(const CommonFlags& flags) {
    const auto spec = load_spec(flags);
    const auto W = rhq::WeierstrassSet::create(spec.genus, spec.weierstrass);
    const auto D = rhq::RealDivisor::create(W, spec.divisor);
    const auto chart = rhq::normalize_chart(W, D);
    const auto nf = rhq::real_normal_form(chart.W, chart.D);
    const auto inv = rhq::reduce(rhq::lambda_config(nf));

    json j = rhq::gl_to_json(inv);
    std::ostringstream os;
    os << "GL invariant: s = " << inv.s << ", partition = (" << inv.partition_string()
       << "), l = " << inv.l << "\n";
    if (spec.genus == 2) {
        const auto types = rhq::genus2_lookup(inv);
        j["diffeomorphism_types"] = {
            {"classified", types.classified}, {"cover", types.cover}, {"base", types.base}};
        os << "cover " << types.cover << ", base " << types.base << "\n";
    }
    emit(flags.machine, j, os.str());
    return 0;
}

int run_sw(int genus, std::optional<int> dmax, bool machine) {
    const auto rep = rhq::sw_report(genus, dmax);
    std::ostringstream os;
    os << "genus " << genus << ": w1 = " << rep.w1.str() << ", w2 = " << rep.w2.str() << "\n"
       << (rep.orientable ? "orientable" : "non-orientable") << ", "
       << (rep.spin ? "spin" : "not spin") << ", "
       << (rep.relatively_spin ? "relatively spin" : "not relatively spin") << "\n"
       << "w(TN) = " << rep.total.str() << "\n";
    emit(machine, rhq::sw_to_json(rep), os.str());
    return 0;
}

int run_verify(const CommonFlags& flags, const std::string& dump_cloud) {
    const auto spec = load_spec(flags);
    const auto W = rhq::WeierstrassSet::create(spec.genus, spec.weierstrass);
    const auto D = rhq::RealDivisor::create(W, spec.divisor);
    const auto chart = rhq::normalize_chart(W, D);
    const auto nf = rhq::real_normal_form(chart.W, chart.D);
    const auto qp = rhq::quadric_matrices(nf);
    const auto cloud = rhq::sample(qp, spec.options.sample_count, spec.options.seed);
    if (!dump_cloud.empty()) {
        std::ofstream out(dump_cloud);
        if (!out) throw std::invalid_argument("cannot write cloud file '" + dump_cloud + "'");
        rhq::export_cloud(cloud, out);
    }

    rhq::NumericSummary summary;
    summary.ran = true;
    summary.requested = cloud.requested;
    summary.converged = cloud.converged;
    summary.sampling_ok = cloud.sampling_ok;
    for (const auto& p : cloud.points) {
        summary.max_abs_q0 = std::max(summary.max_abs_q0, std::abs(p.q0));
        summary.max_abs_q1 = std::max(summary.max_abs_q1, std::abs(p.q1));
    }
    if (!cloud.points.empty()) {
        const auto smooth = rhq::smoothness(cloud);
        summary.min_sv2 = smooth.min_sv2;
        summary.smooth_ok = smooth.ok;
        summary.dim_cover = smooth.dim_cover;
        if (cloud.converged >= 100) {
            const auto comp = rhq::components(cloud);
            summary.component_count = comp.count;
            summary.radius = comp.radius;
            summary.conclusive = comp.conclusive;
        }
    }

    std::ostringstream os;
    os << summary.converged << "/" << summary.requested << " converged"
       << (summary.sampling_ok ? "" : " (SAMPLING FAILURE: inconclusive)") << "\n";
    if (!cloud.points.empty())
        os << "min sv2 = " << summary.min_sv2 << (summary.smooth_ok ? " (rank 2)" : " (RANK DEFICIENT)")
           << ", components = " << summary.component_count
           << (summary.conclusive ? "" : " (inconclusive)") << "\n";
    emit(flags.machine, rhq::numeric_to_json(summary), os.str());
    return (summary.sampling_ok && summary.smooth_ok) ? 0 : 2;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"real quadric pencil classifier for real hyperelliptic curves"};
    app.require_subcommand(1);

    CommonFlags flags;
    int genus = 2;
    std::optional<int> sw_dmax;
    bool sw_machine = false;

    auto add_input_flags = [&flags](CLI::App* cmd, bool numeric_flags) {
        cmd->add_option("--input", flags.input, "input JSON file")->required();
        cmd->add_flag("--machine", flags.machine, "machine-readable JSON output");
        if (numeric_flags) {
            cmd->add_option("--samples", [&flags](const CLI::results_t& r) {
                flags.samples = std::stoi(r[0]);
                return true;
            }, "Newton sample count");
            cmd->add_option("--seed", [&flags](const CLI::results_t& r) {
                flags.seed = std::stoull(r[0]);
                return true;
            }, "sampling seed");
        }
    };

    auto* report = app.add_subcommand("report", "full pipeline report");
    add_input_flags(report, true);
    report->add_flag("--skip-numeric", flags.skip_numeric, "skip the numeric verifier");
    report->add_option("--dmax", [&flags](const CLI::results_t& r) {
        flags.dmax = std::stoi(r[0]);
        return true;
    }, "max tracked cohomology degree");
    report->callback([&] { std::exit(guarded([&] { return run_report(flags); })); });

    auto* curve_info = app.add_subcommand("curve-info", "topology and interval profile");
    add_input_flags(curve_info, false);
    curve_info->callback([&] { std::exit(guarded([&] { return run_curve_info(flags); })); });

    auto* normal_form = app.add_subcommand("normal-form", "real normal form and congruence check");
    add_input_flags(normal_form, false);
    normal_form->callback([&] { std::exit(guarded([&] { return run_normal_form(flags); })); });

    auto* classify = app.add_subcommand("classify", "GL invariant and diffeomorphism types");
    add_input_flags(classify, false);
    classify->callback([&] { std::exit(guarded([&] { return run_classify(flags); })); });

    auto* sw = app.add_subcommand("sw", "Stiefel-Whitney classes and spin verdicts");
    sw->add_option("--genus", genus, "curve genus (>= 2)")->required();
    sw->add_option("--dmax", [&sw_dmax](const CLI::results_t& r) {
        sw_dmax = std::stoi(r[0]);
        return true;
    }, "max tracked cohomology degree");
    sw->add_flag("--machine", sw_machine, "machine-readable JSON output");
    sw->callback([&] { std::exit(guarded([&] { return run_sw(genus, sw_dmax, sw_machine); })); });

    auto* verify = app.add_subcommand("verify", "numeric verification of the quadric model");
    add_input_flags(verify, true);
    std::string dump_cloud;
    verify->add_option("--dump-cloud", dump_cloud, "write sampled points to a file, one per line");
    verify->callback(
        [&] { std::exit(guarded([&] { return run_verify(flags, dump_cloud); })); });

    CLI11_PARSE(app, argc, argv);
    return 0;
}
