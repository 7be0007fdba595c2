#include "rhq/cohomology.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace rhq {

GradedMod2Poly GradedMod2Poly::zero(std::vector<int> degrees, int d_max) {
    GradedMod2Poly p;
    p.gen_degrees = std::move(degrees);
    p.d_max = d_max;
    return p;
}

GradedMod2Poly GradedMod2Poly::one(std::vector<int> degrees, int d_max) {
    auto p = zero(std::move(degrees), d_max);
    p.terms.insert(Monomial(p.gen_degrees.size(), 0));
    return p;
}

GradedMod2Poly GradedMod2Poly::generator(std::vector<int> degrees, int d_max, int index) {
    auto p = zero(std::move(degrees), d_max);
    if (index < 0 || index >= static_cast<int>(p.gen_degrees.size()))
        throw std::invalid_argument("generator index out of range");
    Monomial m(p.gen_degrees.size(), 0);
    m[static_cast<size_t>(index)] = 1;
    if (p.degree_of(m) <= d_max) p.terms.insert(std::move(m));
    return p;
}

int GradedMod2Poly::degree_of(const Monomial& m) const {
    int d = 0;
    for (size_t i = 0; i < m.size(); ++i) d += m[i] * gen_degrees[i];
    return d;
}

bool GradedMod2Poly::has_constant_term() const {
    return terms.count(Monomial(gen_degrees.size(), 0)) != 0;
}

void GradedMod2Poly::toggle(Monomial m) {
    if (degree_of(m) > d_max) return;
    auto it = terms.find(m);
    if (it != terms.end())
        terms.erase(it);
    else
        terms.insert(std::move(m));
}

GradedMod2Poly GradedMod2Poly::degree_part(int d) const {
    auto out = zero(gen_degrees, d_max);
    for (const auto& m : terms)
        if (degree_of(m) == d) out.terms.insert(m);
    return out;
}

GradedMod2Poly operator+(const GradedMod2Poly& a, const GradedMod2Poly& b) {
    if (a.gen_degrees != b.gen_degrees)
        throw std::invalid_argument("polynomial rings do not match");
    GradedMod2Poly out = a;
    out.d_max = std::min(a.d_max, b.d_max);
    for (const auto& m : b.terms) out.toggle(m);
    return out;
}

GradedMod2Poly operator*(const GradedMod2Poly& a, const GradedMod2Poly& b) {
    if (a.gen_degrees != b.gen_degrees)
        throw std::invalid_argument("polynomial rings do not match");
    auto out = GradedMod2Poly::zero(a.gen_degrees, std::min(a.d_max, b.d_max));
    for (const auto& ma : a.terms) {
        const int da = out.degree_of(ma);
        for (const auto& mb : b.terms) {
            if (da + out.degree_of(mb) > out.d_max) continue;
            Monomial m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            out.toggle(std::move(m));
        }
    }
    return out;
}

GradedMod2Poly GradedMod2Poly::pow(long e) const {
    if (e < 0) throw std::invalid_argument("negative power of a class; use inverse_class");
    auto out = one(gen_degrees, d_max);
    auto base = *this;
    while (e > 0) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

std::string GradedMod2Poly::str(const std::string& base) const {
    if (terms.empty()) return "0";
    std::vector<Monomial> sorted(terms.begin(), terms.end());
    std::sort(sorted.begin(), sorted.end(), [this](const Monomial& a, const Monomial& b) {
        const int da = degree_of(a), db = degree_of(b);
        if (da != db) return da < db;
        return a < b;
    });
    std::ostringstream os;
    bool first_term = true;
    for (const auto& m : sorted) {
        if (!first_term) os << " + ";
        first_term = false;
        bool constant = true;
        bool first_factor = true;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            constant = false;
            if (!first_factor) os << " ";
            first_factor = false;
            os << base << (i + 1);
            if (m[i] > 1) os << "^" << m[i];
        }
        if (constant) os << "1";
    }
    return os.str();
}

GradedMod2Poly inverse_class(const GradedMod2Poly& c) {
    if (!c.has_constant_term())
        throw std::invalid_argument("class has constant term 0; no inverse exists");
    const int d_max = c.d_max;
    std::vector<GradedMod2Poly> c_part(static_cast<size_t>(d_max) + 1,
                                       GradedMod2Poly::zero(c.gen_degrees, d_max));
    for (const auto& m : c.terms) {
        const int d = c.degree_of(m);
        if (d > 0) c_part[static_cast<size_t>(d)].terms.insert(m);
    }
    std::vector<GradedMod2Poly> inv(static_cast<size_t>(d_max) + 1,
                                    GradedMod2Poly::zero(c.gen_degrees, d_max));
    inv[0] = GradedMod2Poly::one(c.gen_degrees, d_max);
    GradedMod2Poly out = inv[0];
    for (int d = 1; d <= d_max; ++d) {
        for (int j = 1; j <= d; ++j)
            inv[static_cast<size_t>(d)] =
                inv[static_cast<size_t>(d)] + c_part[static_cast<size_t>(j)] * inv[static_cast<size_t>(d - j)];
        out = out + inv[static_cast<size_t>(d)];
    }
    return out;
}

namespace {

// Expands an elementary-symmetric monomial e_1^{b_1} ... e_k^{b_k} over the
// formal roots x_1..x_k.
GradedMod2Poly expand_elementary(const Monomial& b, int k, int d_max) {
    const std::vector<int> root_degrees(static_cast<size_t>(k), 1);
    auto out = GradedMod2Poly::one(root_degrees, d_max);
    for (int i = 0; i < k; ++i) {
        auto e_i = GradedMod2Poly::zero(root_degrees, d_max);
        std::vector<int> subset(static_cast<size_t>(i) + 1);
        // iterate over (i+1)-element subsets of {0..k-1}
        for (int j = 0; j <= i; ++j) subset[static_cast<size_t>(j)] = j;
        while (true) {
            Monomial m(static_cast<size_t>(k), 0);
            for (int idx : subset) m[static_cast<size_t>(idx)] = 1;
            e_i.terms.insert(std::move(m));
            int pos = i;
            while (pos >= 0 && subset[static_cast<size_t>(pos)] == k - 1 - (i - pos)) --pos;
            if (pos < 0) break;
            ++subset[static_cast<size_t>(pos)];
            for (int q = pos + 1; q <= i; ++q)
                subset[static_cast<size_t>(q)] = subset[static_cast<size_t>(q - 1)] + 1;
        }
        for (int rep = 0; rep < b[static_cast<size_t>(i)]; ++rep) out = out * e_i;
    }
    return out;
}

// Rewrites a symmetric polynomial in the roots x_1..x_k as a polynomial in the
// elementary symmetric classes w_1..w_k (deg w_i = i), one homogeneous degree
// at a time, by repeatedly cancelling the lex-leading monomial.
GradedMod2Poly symmetric_to_elementary(const GradedMod2Poly& p, int k) {
    std::vector<int> w_degrees(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) w_degrees[static_cast<size_t>(i)] = i + 1;
    auto out = GradedMod2Poly::zero(w_degrees, p.d_max);

    for (int d = 0; d <= p.d_max; ++d) {
        auto part = p.degree_part(d);
        while (!part.is_zero()) {
            const Monomial lead = *part.terms.rbegin();  // lex-largest
            for (size_t i = 0; i + 1 < lead.size(); ++i)
                if (lead[i] < lead[i + 1])
                    throw std::logic_error("polynomial is not symmetric in the formal roots");
            Monomial b(static_cast<size_t>(k), 0);
            for (int i = 0; i < k; ++i) {
                const int next = (i + 1 < k) ? lead[static_cast<size_t>(i + 1)] : 0;
                b[static_cast<size_t>(i)] = lead[static_cast<size_t>(i)] - next;
            }
            part = part + expand_elementary(b, k, p.d_max);
            out.toggle(std::move(b));
        }
    }
    return out;
}

GradedMod2Poly root_product(int k, int d_max, bool ordered_pairs) {
    const std::vector<int> root_degrees(static_cast<size_t>(k), 1);
    auto out = GradedMod2Poly::one(root_degrees, d_max);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;             // root x_i + x_i = 0 contributes factor 1
            if (!ordered_pairs && j < i) continue;
            auto factor = GradedMod2Poly::one(root_degrees, d_max);
            Monomial mi(static_cast<size_t>(k), 0), mj(static_cast<size_t>(k), 0);
            mi[static_cast<size_t>(i)] = 1;
            mj[static_cast<size_t>(j)] = 1;
            factor.terms.insert(std::move(mi));
            factor.terms.insert(std::move(mj));
            out = out * factor;
        }
    }
    return out;
}

}  // namespace

GradedMod2Poly tensor_class(int k, int d_max) {
    if (k < 1) throw std::invalid_argument("tensor_class requires rank k >= 1");
    return symmetric_to_elementary(root_product(k, d_max, /*ordered_pairs=*/true), k);
}

GradedMod2Poly sym2_class(int k, int d_max) {
    if (k < 1) throw std::invalid_argument("sym2_class requires rank k >= 1");
    return symmetric_to_elementary(root_product(k, d_max, /*ordered_pairs=*/false), k);
}

namespace {

void enumerate_monomials(const std::vector<int>& degrees, size_t index, int remaining,
                         Monomial& current, std::vector<Monomial>& out) {
    if (index == degrees.size()) {
        if (remaining == 0) out.push_back(current);
        return;
    }
    const int step = degrees[index];
    for (int e = 0; e * step <= remaining; ++e) {
        current[index] = e;
        enumerate_monomials(degrees, index + 1, remaining - e * step, current, out);
    }
    current[index] = 0;
}

}  // namespace

GrassmannRing GrassmannRing::build(int g, std::optional<int> d_max_opt) {
    if (g < 2) throw std::invalid_argument("genus must be >= 2");
    GrassmannRing ring;
    ring.g_ = g;
    ring.k_ = g - 1;
    ring.n_ = 2 * g + 2;
    const int dim = (g - 1) * (g + 3);
    ring.d_max_ = d_max_opt.value_or(default_d_max(g));
    if (ring.d_max_ < 1 || ring.d_max_ > dim)
        throw std::invalid_argument("d_max must lie in [1, (g-1)(g+3)] = [1, " +
                                    std::to_string(dim) + "]");

    std::vector<int> w_degrees(static_cast<size_t>(ring.k_));
    for (int i = 0; i < ring.k_; ++i) w_degrees[static_cast<size_t>(i)] = i + 1;

    // Dual classes from (sum_i w_i)(sum_j wbar_j) = 1.
    ring.duals_.push_back(GradedMod2Poly::one(w_degrees, ring.d_max_));
    for (int j = 1; j <= ring.d_max_; ++j) {
        auto wbar = GradedMod2Poly::zero(w_degrees, ring.d_max_);
        for (int i = 1; i <= std::min(j, ring.k_); ++i)
            wbar = wbar + GradedMod2Poly::generator(w_degrees, ring.d_max_, i - 1) *
                              ring.duals_[static_cast<size_t>(j - i)];
        ring.duals_.push_back(std::move(wbar));
    }

    ring.degrees_.resize(static_cast<size_t>(ring.d_max_) + 1);
    for (int d = 0; d <= ring.d_max_; ++d) {
        auto& data = ring.degrees_[static_cast<size_t>(d)];
        Monomial current(static_cast<size_t>(ring.k_), 0);
        enumerate_monomials(w_degrees, 0, d, current, data.monomials);
        std::sort(data.monomials.begin(), data.monomials.end(), std::greater<>());

        const size_t cols = data.monomials.size();
        const size_t words = (cols + 63) / 64;
        auto to_bits = [&](const GradedMod2Poly& poly) {
            std::vector<std::uint64_t> bits(words, 0);
            for (const auto& m : poly.terms) {
                const int c = ring.column_of(d, m);
                bits[static_cast<size_t>(c) / 64] |= (std::uint64_t{1} << (c % 64));
            }
            return bits;
        };
        auto eliminate = [&](std::vector<std::uint64_t>& bits) {
            for (size_t w = 0; w < words; ++w) {
                while (bits[w]) {
                    const int c = static_cast<int>(w * 64) + std::countr_zero(bits[w]);
                    bool hit = false;
                    for (const auto& row : data.rows)
                        if (row.pivot == c) {
                            for (size_t q = 0; q < words; ++q) bits[q] ^= row.bits[q];
                            hit = true;
                            break;
                        }
                    if (!hit) return c;  // new pivot
                }
            }
            return -1;
        };

        for (int j = ring.n_ - ring.k_ + 1; j <= std::min(ring.n_, d); ++j) {
            if (j > ring.d_max_) break;
            for (const auto& m : ring.degrees_[static_cast<size_t>(d - j)].monomials) {
                auto rel = GradedMod2Poly::zero(w_degrees, ring.d_max_);
                rel.terms.insert(m);
                rel = rel * ring.duals_[static_cast<size_t>(j)];
                auto bits = to_bits(rel);
                const int pivot = eliminate(bits);
                if (pivot >= 0) data.rows.push_back(EchelonRow{pivot, std::move(bits)});
            }
        }
        std::sort(data.rows.begin(), data.rows.end(),
                  [](const EchelonRow& a, const EchelonRow& b) { return a.pivot < b.pivot; });
    }
    return ring;
}

int GrassmannRing::column_of(int d, const Monomial& m) const {
    const auto& mons = degrees_[static_cast<size_t>(d)].monomials;
    const auto it = std::lower_bound(mons.begin(), mons.end(), m, std::greater<>());
    if (it == mons.end() || *it != m) throw std::logic_error("monomial not in degree table");
    return static_cast<int>(it - mons.begin());
}

GradedMod2Poly GrassmannRing::zero() const {
    std::vector<int> degrees(static_cast<size_t>(k_));
    for (int i = 0; i < k_; ++i) degrees[static_cast<size_t>(i)] = i + 1;
    return GradedMod2Poly::zero(std::move(degrees), d_max_);
}

GradedMod2Poly GrassmannRing::one() const {
    auto p = zero();
    p.terms.insert(Monomial(static_cast<size_t>(k_), 0));
    return p;
}

GradedMod2Poly GrassmannRing::gen(int index) const {
    auto p = zero();
    return GradedMod2Poly::generator(p.gen_degrees, d_max_, index);
}

const GradedMod2Poly& GrassmannRing::dual_class(int j) const {
    if (j < 0 || j > d_max_) throw std::invalid_argument("dual class degree out of range");
    return duals_[static_cast<size_t>(j)];
}

GradedMod2Poly GrassmannRing::reduce(const GradedMod2Poly& p) const {
    if (p.gen_degrees != zero().gen_degrees)
        throw std::invalid_argument("polynomial does not belong to this ring");
    auto out = zero();
    for (int d = 0; d <= std::min(p.d_max, d_max_); ++d) {
        const auto& data = degrees_[static_cast<size_t>(d)];
        const size_t words = (data.monomials.size() + 63) / 64;
        std::vector<std::uint64_t> bits(words, 0);
        bool any = false;
        for (const auto& m : p.terms) {
            if (p.degree_of(m) != d) continue;
            const int c = column_of(d, m);
            bits[static_cast<size_t>(c) / 64] ^= (std::uint64_t{1} << (c % 64));
            any = true;
        }
        if (!any) continue;
        // rows are sorted by pivot; each row only sets bits at columns >= pivot
        for (const auto& row : data.rows) {
            const size_t w = static_cast<size_t>(row.pivot) / 64;
            if (bits[w] & (std::uint64_t{1} << (row.pivot % 64)))
                for (size_t q = 0; q < words; ++q) bits[q] ^= row.bits[q];
        }
        for (size_t c = 0; c < data.monomials.size(); ++c)
            if (bits[c / 64] & (std::uint64_t{1} << (c % 64)))
                out.terms.insert(data.monomials[c]);
    }
    return out;
}

int GrassmannRing::quotient_rank(int d) const {
    if (d < 0 || d > d_max_) throw std::invalid_argument("degree out of range");
    const auto& data = degrees_[static_cast<size_t>(d)];
    return static_cast<int>(data.monomials.size() - data.rows.size());
}

GradedMod2Poly tangent_class(const GrassmannRing& ring) {
    const int g = ring.genus();
    auto vstar = ring.one();
    for (int i = 0; i < ring.k(); ++i) vstar = vstar + ring.gen(i);
    const auto total = vstar.pow(2 * g + 2) *
                       inverse_class(tensor_class(ring.k(), ring.d_max())) *
                       inverse_class(sym2_class(ring.k(), ring.d_max())).pow(2);
    return ring.reduce(total);
}

SWReport sw_report(int g, std::optional<int> d_max_opt) {
    int d_max = d_max_opt.value_or(default_d_max(g));
    if (d_max < 2) d_max = 2;  // w2 must be visible
    const auto ring = GrassmannRing::build(g, d_max);
    SWReport rep;
    rep.genus = g;
    rep.d_max = d_max;
    rep.total = tangent_class(ring);
    rep.w1 = rep.total.degree_part(1);
    rep.w2 = rep.total.degree_part(2);
    rep.orientable = rep.w1.is_zero();
    const auto w1_squared = ring.reduce(ring.gen(0) * ring.gen(0));
    rep.spin = rep.orientable && rep.w2.is_zero();
    rep.relatively_spin = rep.orientable && (rep.w2.is_zero() || rep.w2 == w1_squared);
    return rep;
}

}  // namespace rhq
