#pragma once

#include "rhq/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rhq {

// Curves are modelled as y^2 = P(t), P(t) = prod_{w in W}(t - t_w), with the
// real structures tau(t,y) = (conj t, conj y) and (tau o iota)(t,y) = (conj t, -conj y).
// The tau-locus on the t-line is the closure of {P > 0}, so it always contains
// the point at infinity; the (tau o iota)-locus is the closure of {P < 0}.

/// Branch locus of a real hyperelliptic curve: 2g+2 distinct finite points,
/// closed under complex conjugation.
struct WeierstrassSet {
    int genus = 0;
    std::vector<RatComplex> points;

    /// Validates and constructs; throws std::invalid_argument on bad input.
    static WeierstrassSet create(int genus, std::vector<RatComplex> points);
};

struct WPartition {
    std::vector<Rational> w0;        // real points, strictly increasing
    std::vector<RatComplex> wplus;   // imaginary part > 0, sorted by (re, im)
    std::vector<RatComplex> wminus;  // conjugates of wplus, same order
    int n = 0;                       // |w0| = 2n
};

WPartition partition_weierstrass(const WeierstrassSet& W);

struct CurveTopology {
    int n = 0;
    int components_tau = 0;
    int components_tau_iota = 0;
    bool dividing_tau = false;
    bool dividing_tau_iota = false;
};

CurveTopology classify_topology(const WeierstrassSet& W);

/// Closed interval of the real line; an absent endpoint means unbounded on
/// that side. Both absent = the whole line (n = 0 only).
struct RealInterval {
    std::optional<Rational> lo, hi;
};

enum class Locus { tau, tau_iota };

struct LocusIntervals {
    std::vector<RealInterval> tau;
    std::vector<RealInterval> tau_iota;
};

/// Splits R \ W0 into the tau / tau-iota interval pieces (sign of P).
LocusIntervals real_locus_intervals(const WeierstrassSet& W);

/// Sign of P(x) = prod (x - t_w) at a real rational x; throws if x is a real
/// Weierstrass point.
int sign_P_at(const WeierstrassSet& W, const Rational& x);

struct DivisorEntry {
    RatComplex point;
    long long mult = 0;
};

/// pi(D) of a tau~-invariant meromorphic section: conjugation-symmetric
/// weighted points with total multiplicity -(2g+1).
struct RealDivisor {
    std::vector<DivisorEntry> entries;

    /// Validates against W; throws std::invalid_argument on violation.
    static RealDivisor create(const WeierstrassSet& W, std::vector<DivisorEntry> entries);
};

struct IntervalEntry {
    RealInterval interval;
    Locus locus = Locus::tau;
    long long mult_sum = 0;  // sum of divisor multiplicities at real points inside
    bool odd = false;
};

struct IntervalProfile {
    int n = 0;
    std::vector<IntervalEntry> intervals;  // ordered left to right, loci alternate
    bool infinite_circle_odd = false;      // the two half-infinite pieces glue at infinity
    int k = 0;                             // number of odd tau-circles
    bool normalized = false;               // negative half-infinite interval even (or n = 0)
};

IntervalProfile interval_parities(const WeierstrassSet& W, const RealDivisor& D);

/// Real Moebius map t -> (a t + b)/(c t + d) with rational coefficients.
struct Moebius {
    Rational a, b, c, d;

    static Moebius identity() { return {1, 0, 0, 1}; }
    static Moebius negate() { return {-1, 0, 0, 1}; }
    static Moebius shift(const Rational& c0) { return {1, c0, 0, 1}; }
    /// t -> 1/(c0 - t); sends c0 to infinity and infinity to 0.
    static Moebius invert_about(const Rational& c0) { return {0, 1, -1, c0}; }

    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    RatComplex apply(const RatComplex& z) const;
    std::string describe() const;
};

struct NormalizedChart {
    WeierstrassSet W;
    RealDivisor D;
    Moebius transform;
};

/// Re-coordinatizes so the negative half-infinite tau-interval is even
/// (identity when n = 0 or already even). Searches t -> -t, t -> t + c,
/// t -> 1/(c - t) over a deterministic rational candidate list.
NormalizedChart normalize_chart(const WeierstrassSet& W, const RealDivisor& D);

}  // namespace rhq
