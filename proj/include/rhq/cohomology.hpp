#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace rhq {

/// Exponent vector over the ring generators.
using Monomial = std::vector<int>;

/// Sparse polynomial over the two-element field, graded by weighted generator
/// degrees; only monomials of weighted degree <= d_max are tracked.
struct GradedMod2Poly {
    std::vector<int> gen_degrees;
    int d_max = 0;
    std::set<Monomial> terms;  // monomial present <=> coefficient 1

    static GradedMod2Poly zero(std::vector<int> degrees, int d_max);
    static GradedMod2Poly one(std::vector<int> degrees, int d_max);
    static GradedMod2Poly generator(std::vector<int> degrees, int d_max, int index);

    int degree_of(const Monomial& m) const;
    bool is_zero() const { return terms.empty(); }
    bool has_constant_term() const;
    void toggle(Monomial m);
    GradedMod2Poly degree_part(int d) const;

    friend GradedMod2Poly operator+(const GradedMod2Poly& a, const GradedMod2Poly& b);
    friend GradedMod2Poly operator*(const GradedMod2Poly& a, const GradedMod2Poly& b);
    GradedMod2Poly pow(long e) const;
    friend bool operator==(const GradedMod2Poly&, const GradedMod2Poly&) = default;

    std::string str(const std::string& base = "w") const;
};

/// Truncated inverse of a class with constant term 1: c * inverse_class(c) = 1
/// through degree d_max.
GradedMod2Poly inverse_class(const GradedMod2Poly& c);

/// Total Stiefel-Whitney class of V (x) V* (= V (x) V mod 2) for rank-k V,
/// expanded over formal roots and rewritten in elementary symmetric generators.
GradedMod2Poly tensor_class(int k, int d_max);

/// Total Stiefel-Whitney class of S^2(V*) for rank-k V.
GradedMod2Poly sym2_class(int k, int d_max);

inline int default_d_max(int g) {
    const int dim = (g - 1) * (g + 3);
    return dim < 12 ? dim : 12;
}

/// H^*(Gr_{g-1}(R^{2g+2}); Z_2) presented as Z_2[w_1..w_k] modulo the dual
/// classes wbar_{n-k+1} .. wbar_n; reduction by per-degree row echelon forms.
class GrassmannRing {
public:
    static GrassmannRing build(int g, std::optional<int> d_max = std::nullopt);

    int genus() const { return g_; }
    int k() const { return k_; }
    int ambient() const { return n_; }
    int d_max() const { return d_max_; }

    GradedMod2Poly zero() const;
    GradedMod2Poly one() const;
    GradedMod2Poly gen(int index) const;  // w_{index+1}... index is 0-based

    GradedMod2Poly reduce(const GradedMod2Poly& p) const;

    /// wbar_j for j = 0..d_max (duality recursion (sum w_i)(sum wbar_j) = 1).
    const GradedMod2Poly& dual_class(int j) const;

    /// Rank of the degree-d piece of the quotient.
    int quotient_rank(int d) const;

private:
    struct EchelonRow {
        int pivot = 0;
        std::vector<std::uint64_t> bits;
    };
    struct DegreeData {
        std::vector<Monomial> monomials;  // lex descending; column order
        std::vector<EchelonRow> rows;
    };

    int g_ = 0, k_ = 0, n_ = 0, d_max_ = 0;
    std::vector<GradedMod2Poly> duals_;
    std::vector<DegreeData> degrees_;  // index = weighted degree

    int column_of(int d, const Monomial& m) const;
};

inline GrassmannRing ring_setup(int g, int d_max) { return GrassmannRing::build(g, d_max); }

/// Universal w(TN) = w(V*)^{2g+2} w(V (x) V*)^{-1} w(S^2 V*)^{-2}, reduced.
GradedMod2Poly tangent_class(const GrassmannRing& ring);

struct SWReport {
    int genus = 0;
    int d_max = 0;
    GradedMod2Poly total;  // reduced w(TN) through d_max
    GradedMod2Poly w1, w2;
    bool orientable = false;
    bool spin = false;
    bool relatively_spin = false;
};

SWReport sw_report(int g, std::optional<int> d_max = std::nullopt);

}  // namespace rhq
