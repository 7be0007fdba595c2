#include "rhq/pencil.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace rhq {

namespace {

PencilEntry make_entry(const RatComplex& t, const RatComplex& q0) {
    PencilEntry e;
    e.t = t;
    e.q0 = q0;
    e.radius = std::sqrt(to_double(q0.norm()));
    if (q0.is_real()) {
        e.theta = q0.re > 0 ? 0.0 : std::numbers::pi;
    } else {
        const auto z = q0.to_complex();
        double th = std::atan2(z.imag(), z.real());
        if (th < 0) th += 2 * std::numbers::pi;
        e.theta = th;
    }
    return e;
}

}  // namespace

DiagonalPencil build_pencil(const WeierstrassSet& W, const RealDivisor& D) {
    const auto part = partition_weierstrass(W);
    std::vector<RatComplex> ordered;
    ordered.reserve(W.points.size());
    for (const auto& r : part.w0) ordered.emplace_back(r, Rational(0));
    for (size_t j = 0; j < part.wplus.size(); ++j) {
        ordered.push_back(part.wplus[j]);
        ordered.push_back(part.wminus[j]);
    }

    DiagonalPencil pencil;
    pencil.n_real = static_cast<int>(part.w0.size());
    pencil.entries.reserve(ordered.size());
    for (const auto& t : ordered) {
        RatComplex q0(Rational(1));
        for (const auto& e : D.entries) q0 = q0 * (t - e.point).pow(e.mult);
        for (const auto& t2 : ordered)
            if (t2 != t) q0 = q0 * (t - t2);
        if (q0 == RatComplex())
            throw std::logic_error("Q0 vanished at a Weierstrass point (invalid divisor?)");
        pencil.entries.push_back(make_entry(t, q0));
    }
    return pencil;
}

std::vector<int> epsilon_signs(const IntervalProfile& profile, const std::vector<Rational>& w0) {
    if (!profile.normalized)
        throw std::invalid_argument(
            "epsilon_signs requires a normalized chart (negative half-infinite interval even)");
    const int n = static_cast<int>(w0.size()) / 2;
    std::vector<int> eps;
    eps.reserve(n);
    for (int i = 0; i < n; ++i) {
        const Rational& r = w0[2 * i];
        long long weier_right = static_cast<long long>(w0.size()) - (2 * i + 1);
        long long mult_right = 0;
        int odd_right = 0;
        for (const auto& entry : profile.intervals) {
            if (!entry.interval.lo || *entry.interval.lo < r) continue;
            mult_right += entry.mult_sum;
            if (entry.locus == Locus::tau && entry.odd) ++odd_right;
        }
        const long long N = weier_right + mult_right;
        const int sign = (N % 2 == 0) ? 1 : -1;
        const int sign_by_intervals = ((odd_right + 1) % 2 == 0) ? 1 : -1;
        if (sign != sign_by_intervals) {
            std::ostringstream os;
            os << "epsilon cross-check failed at eigenvalue " << to_fraction_string(r)
               << ": sign count gives " << sign << ", odd-interval count gives "
               << sign_by_intervals;
            throw std::logic_error(os.str());
        }
        eps.push_back(sign);
    }
    if (!eps.empty() && eps.front() != 1)
        throw std::logic_error("epsilon_1 != +1 on a normalized chart");
    return eps;
}

RealNormalForm real_normal_form(const WeierstrassSet& W, const RealDivisor& D) {
    const auto part = partition_weierstrass(W);
    const auto profile = interval_parities(W, D);
    if (!profile.normalized)
        throw std::invalid_argument("chart is not normalized; apply normalize_chart first");
    RealNormalForm nf;
    nf.n = part.n;
    nf.eps = epsilon_signs(profile, part.w0);
    nf.real_eigs = part.w0;
    for (const auto& w : part.wplus) nf.complex_pairs.emplace_back(w.re, w.im);
    nf.s = static_cast<int>(part.wplus.size());
    return nf;
}

BasisChange basis_change(const DiagonalPencil& pencil) {
    using namespace std::complex_literals;
    const auto N = static_cast<Eigen::Index>(pencil.entries.size());
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(N, N);
    for (int i = 0; i < pencil.n_real; ++i)
        C(i, i) = 1.0 / std::sqrt(pencil.entries[i].radius);
    for (Eigen::Index p = pencil.n_real; p < N; p += 2) {
        const auto& e = pencil.entries[static_cast<size_t>(p)];
        const double f = 1.0 / std::sqrt(2.0 * e.radius);
        const std::complex<double> lo = f * std::exp(-0.5i * e.theta);
        const std::complex<double> hi = f * std::exp(0.5i * e.theta);
        C(p, p) = lo;          // v'_w
        C(p + 1, p) = hi;
        C(p, p + 1) = -1.0i * lo;  // v''_w
        C(p + 1, p + 1) = 1.0i * hi;
    }
    return BasisChange{std::move(C)};
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> normal_form_matrices(const RealNormalForm& nf) {
    const Eigen::Index N = 2 * nf.n + 2 * nf.s;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(N, N);
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(N, N);
    for (int i = 0; i < nf.n; ++i) {
        const double e = nf.eps[static_cast<size_t>(i)];
        A(2 * i, 2 * i) = e;
        A(2 * i + 1, 2 * i + 1) = -e;
        B(2 * i, 2 * i) = e * to_double(nf.real_eigs[static_cast<size_t>(2 * i)]);
        B(2 * i + 1, 2 * i + 1) = -e * to_double(nf.real_eigs[static_cast<size_t>(2 * i + 1)]);
    }
    for (int j = 0; j < nf.s; ++j) {
        const Eigen::Index p = 2 * nf.n + 2 * j;
        const double a = to_double(nf.complex_pairs[static_cast<size_t>(j)].first);
        const double b = to_double(nf.complex_pairs[static_cast<size_t>(j)].second);
        A(p, p) = 1;
        A(p + 1, p + 1) = -1;
        B(p, p) = a;
        B(p, p + 1) = b;
        B(p + 1, p) = b;
        B(p + 1, p + 1) = -a;
    }
    return {std::move(A), std::move(B)};
}

CongruenceReport verify_normal_form(const DiagonalPencil& pencil, const BasisChange& basis,
                                    const RealNormalForm& nf) {
    const auto N = static_cast<Eigen::Index>(pencil.entries.size());
    if (basis.matrix.rows() != N || basis.matrix.cols() != N || 2 * nf.n + 2 * nf.s != N)
        throw std::invalid_argument("verify_normal_form: dimension mismatch");

    Eigen::VectorXcd d0(N), d1(N);
    for (Eigen::Index i = 0; i < N; ++i) {
        d0(i) = pencil.entries[static_cast<size_t>(i)].q0.to_complex();
        d1(i) = pencil.q1(static_cast<size_t>(i)).to_complex();
    }
    const Eigen::MatrixXcd& C = basis.matrix;
    const Eigen::MatrixXcd M0 = C.transpose() * d0.asDiagonal() * C;
    const Eigen::MatrixXcd M1 = C.transpose() * d1.asDiagonal() * C;
    const auto [A, B] = normal_form_matrices(nf);

    CongruenceReport rep;
    auto scan = [&rep](const Eigen::MatrixXcd& M, const Eigen::MatrixXd& target, char form) {
        for (Eigen::Index r = 0; r < M.rows(); ++r)
            for (Eigen::Index c = 0; c < M.cols(); ++c) {
                const double res = std::abs(M(r, c) - std::complex<double>(target(r, c), 0));
                if (res > rep.max_residual) {
                    rep.max_residual = res;
                    rep.row = static_cast<int>(r);
                    rep.col = static_cast<int>(c);
                    rep.form = form;
                }
                rep.max_imag = std::max(rep.max_imag, std::abs(M(r, c).imag()));
            }
    };
    scan(M0, A, '0');
    scan(M1, B, '1');
    rep.ok = rep.max_residual < 1e-9 && rep.max_imag <= 1e-9;
    return rep;
}

bool genericity_check(const std::vector<RatComplex>& points) {
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j]) return false;
    return true;
}

}  // namespace rhq
