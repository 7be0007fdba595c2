#include "rhq/curve.hpp"

#include <algorithm>
#include <sstream>

namespace rhq {

WeierstrassSet WeierstrassSet::create(int genus, std::vector<RatComplex> points) {
    if (genus < 2) throw std::invalid_argument("genus must be >= 2");
    const size_t expected = 2 * static_cast<size_t>(genus) + 2;
    if (points.size() != expected) {
        std::ostringstream os;
        os << "expected " << expected << " Weierstrass points for genus " << genus << ", got "
           << points.size();
        throw std::invalid_argument(os.str());
    }
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("Weierstrass points must be pairwise distinct");
    for (const auto& p : points) {
        if (p.is_real()) continue;
        bool found = false;
        for (const auto& q : points)
            if (q == p.conj()) { found = true; break; }
        if (!found)
            throw std::invalid_argument("Weierstrass set is not closed under conjugation (missing " +
                                        p.conj().str() + ")");
    }
    WeierstrassSet W;
    W.genus = genus;
    W.points = std::move(points);
    return W;
}

WPartition partition_weierstrass(const WeierstrassSet& W) {
    WPartition part;
    for (const auto& p : W.points) {
        if (p.im == 0)
            part.w0.push_back(p.re);
        else if (p.im > 0)
            part.wplus.push_back(p);
    }
    std::sort(part.w0.begin(), part.w0.end());
    std::sort(part.wplus.begin(), part.wplus.end(), lex_less);
    part.wminus.reserve(part.wplus.size());
    for (const auto& p : part.wplus) part.wminus.push_back(p.conj());
    part.n = static_cast<int>(part.w0.size()) / 2;
    return part;
}

CurveTopology classify_topology(const WeierstrassSet& W) {
    const int n = partition_weierstrass(W).n;
    CurveTopology topo;
    topo.n = n;
    if (n == 0) {
        topo.components_tau = 1;
        topo.components_tau_iota = 0;
        topo.dividing_tau = true;
        topo.dividing_tau_iota = false;
    } else {
        topo.components_tau = n;
        topo.components_tau_iota = n;
        const bool dividing = (n == W.genus + 1);
        topo.dividing_tau = dividing;
        topo.dividing_tau_iota = dividing;
    }
    return topo;
}

LocusIntervals real_locus_intervals(const WeierstrassSet& W) {
    const auto part = partition_weierstrass(W);
    LocusIntervals out;
    if (part.n == 0) {
        out.tau.push_back(RealInterval{});  // whole line; P > 0 everywhere
        return out;
    }
    const auto& w0 = part.w0;
    // Rightmost gap has sign +, signs alternate leftwards across each root.
    out.tau.push_back(RealInterval{std::nullopt, w0.front()});
    for (size_t i = 0; i + 1 < w0.size(); ++i) {
        RealInterval iv{w0[i], w0[i + 1]};
        if (i % 2 == 0)
            out.tau_iota.push_back(iv);
        else
            out.tau.push_back(iv);
    }
    out.tau.push_back(RealInterval{w0.back(), std::nullopt});
    return out;
}

int sign_P_at(const WeierstrassSet& W, const Rational& x) {
    int sign = 1;
    for (const auto& p : W.points) {
        if (!p.is_real()) continue;  // conjugate pairs contribute a positive factor
        if (p.re == x) throw std::invalid_argument("P vanishes at a Weierstrass point");
        if (p.re > x) sign = -sign;
    }
    return sign;
}

RealDivisor RealDivisor::create(const WeierstrassSet& W, std::vector<DivisorEntry> entries) {
    Rational sum(0);
    for (size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (e.mult == 0) throw std::invalid_argument("divisor multiplicities must be nonzero");
        for (size_t j = i + 1; j < entries.size(); ++j)
            if (entries[j].point == e.point)
                throw std::invalid_argument("divisor points must be pairwise distinct");
        for (const auto& w : W.points)
            if (w == e.point)
                throw std::invalid_argument("divisor point " + e.point.str() +
                                            " coincides with a Weierstrass point");
        sum += Rational(e.mult);
    }
    const Rational target = -(2 * Rational(W.genus) + 1);
    if (sum != target)
        throw std::invalid_argument("divisor multiplicities sum to " + to_fraction_string(sum) +
                                    ", expected -(2g+1) = " + to_fraction_string(target));
    for (const auto& e : entries) {
        if (e.point.is_real()) {
            // A real point under the (tau o iota)-locus lies below a conjugate
            // pair of curve points swapped by tau~, so its multiplicity is even.
            if (sign_P_at(W, e.point.re) < 0 && (e.mult % 2 != 0))
                throw std::invalid_argument(
                    "real divisor point " + e.point.str() +
                    " lies in the (tau o iota)-locus and must carry even multiplicity");
            continue;
        }
        bool found = false;
        for (const auto& f : entries)
            if (f.point == e.point.conj() && f.mult == e.mult) { found = true; break; }
        if (!found)
            throw std::invalid_argument("divisor is not conjugation-symmetric at " + e.point.str());
    }
    RealDivisor D;
    D.entries = std::move(entries);
    return D;
}

IntervalProfile interval_parities(const WeierstrassSet& W, const RealDivisor& D) {
    const auto part = partition_weierstrass(W);
    IntervalProfile profile;
    profile.n = part.n;

    auto mult_sum_in = [&](const RealInterval& iv) {
        long long s = 0;
        for (const auto& e : D.entries) {
            if (!e.point.is_real()) continue;
            const Rational& x = e.point.re;
            if (iv.lo && x < *iv.lo) continue;
            if (iv.hi && x > *iv.hi) continue;
            s += e.mult;  // endpoints are Weierstrass points, so x is interior
        }
        return s;
    };

    if (part.n == 0) {
        IntervalEntry whole;
        whole.interval = RealInterval{};
        whole.locus = Locus::tau;
        whole.mult_sum = mult_sum_in(whole.interval);
        whole.odd = (whole.mult_sum % 2) != 0;
        profile.intervals.push_back(whole);
        profile.infinite_circle_odd = whole.odd;
        profile.k = whole.odd ? 1 : 0;
        profile.normalized = true;
        return profile;
    }

    const auto& w0 = part.w0;
    for (size_t i = 0; i <= w0.size(); ++i) {
        IntervalEntry e;
        if (i == 0)
            e.interval = RealInterval{std::nullopt, w0.front()};
        else if (i == w0.size())
            e.interval = RealInterval{w0.back(), std::nullopt};
        else
            e.interval = RealInterval{w0[i - 1], w0[i]};
        e.locus = (i % 2 == 0) ? Locus::tau : Locus::tau_iota;
        e.mult_sum = mult_sum_in(e.interval);
        e.odd = (e.mult_sum % 2) != 0;
        profile.intervals.push_back(e);
    }

    // The two half-infinite tau-pieces glue at infinity into one circle.
    profile.infinite_circle_odd =
        ((profile.intervals.front().mult_sum + profile.intervals.back().mult_sum) % 2) != 0;
    int k = profile.infinite_circle_odd ? 1 : 0;
    for (size_t i = 1; i + 1 < profile.intervals.size(); ++i) {
        const auto& e = profile.intervals[i];
        if (e.locus == Locus::tau && e.odd) ++k;
    }
    profile.k = k;
    profile.normalized = !profile.intervals.front().odd;
    return profile;
}

RatComplex Moebius::apply(const RatComplex& z) const {
    const RatComplex den = RatComplex(c) * z + RatComplex(d);
    if (den == RatComplex()) throw std::domain_error("Moebius transform sends a point to infinity");
    return (RatComplex(a) * z + RatComplex(b)) / den;
}

std::string Moebius::describe() const {
    if (is_identity()) return "t -> t";
    if (a == -1 && b == 0 && c == 0 && d == 1) return "t -> -t";
    if (a == 1 && c == 0 && d == 1) return "t -> t + " + to_fraction_string(b);
    if (a == 0 && b == 1 && c == -1) return "t -> 1/(" + to_fraction_string(d) + " - t)";
    return "t -> (" + to_fraction_string(a) + "t + " + to_fraction_string(b) + ")/(" +
           to_fraction_string(c) + "t + " + to_fraction_string(d) + ")";
}

namespace {

NormalizedChart apply_chart(const WeierstrassSet& W, const RealDivisor& D, const Moebius& m) {
    std::vector<RatComplex> pts;
    pts.reserve(W.points.size());
    for (const auto& p : W.points) pts.push_back(m.apply(p));
    std::vector<DivisorEntry> entries;
    entries.reserve(D.entries.size());
    for (const auto& e : D.entries) entries.push_back(DivisorEntry{m.apply(e.point), e.mult});
    NormalizedChart chart;
    chart.W = WeierstrassSet::create(W.genus, std::move(pts));
    chart.D = RealDivisor::create(chart.W, std::move(entries));
    chart.transform = m;
    return chart;
}

bool hits_divisor(const RealDivisor& D, const Rational& c) {
    for (const auto& e : D.entries)
        if (e.point.is_real() && e.point.re == c) return true;
    return false;
}

}  // namespace

NormalizedChart normalize_chart(const WeierstrassSet& W, const RealDivisor& D) {
    const auto profile = interval_parities(W, D);
    if (profile.normalized) return apply_chart(W, D, Moebius::identity());

    std::vector<Moebius> candidates;
    candidates.push_back(Moebius::negate());
    candidates.push_back(Moebius::shift(1));
    candidates.push_back(Moebius::shift(-1));
    // t -> 1/(c - t) cuts the circle at c, so c must sit in the interior of a
    // tau-interval (keeps infinity in the tau-locus) and avoid divisor points.
    // One cut per gap between consecutive divisor points of each tau-piece
    // covers every combinatorially distinct re-cut of the infinity circle.
    const auto loci = real_locus_intervals(W);
    std::vector<Rational> cuts;
    for (const auto& iv : loci.tau) {
        if (!iv.lo && !iv.hi) continue;
        std::vector<Rational> inside;
        for (const auto& e : D.entries) {
            if (!e.point.is_real()) continue;
            const Rational& x = e.point.re;
            if (iv.lo && x < *iv.lo) continue;
            if (iv.hi && x > *iv.hi) continue;
            inside.push_back(x);
        }
        std::sort(inside.begin(), inside.end());
        std::vector<Rational> fence;
        if (iv.lo)
            fence.push_back(*iv.lo);
        else
            fence.push_back((inside.empty() ? *iv.hi : inside.front()) - 2);
        fence.insert(fence.end(), inside.begin(), inside.end());
        if (iv.hi)
            fence.push_back(*iv.hi);
        else
            fence.push_back((inside.empty() ? *iv.lo : inside.back()) + 2);
        for (size_t i = 0; i + 1 < fence.size(); ++i) cuts.push_back((fence[i] + fence[i + 1]) / 2);
    }
    for (const auto& c : cuts)
        if (!hits_divisor(D, c)) candidates.push_back(Moebius::invert_about(c));

    for (const auto& m : candidates) {
        NormalizedChart chart = apply_chart(W, D, m);
        if (interval_parities(chart.W, chart.D).normalized) return chart;
    }
    throw std::runtime_error("normalize_chart: rational Moebius search exhausted its candidates");
}

}  // namespace rhq
