#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rhq/pencil.hpp"
#include "test_util.hpp"

#include <cmath>
#include <complex>

using namespace rhq;
using namespace rhq::testutil;

namespace {

// Evaluates the bilinear form with diagonal d in the u-basis at vectors x, y.
std::complex<double> diag_form(const DiagonalPencil& pencil, bool q1, const Eigen::VectorXcd& x,
                               const Eigen::VectorXcd& y) {
    std::complex<double> acc = 0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const auto d = q1 ? pencil.q1(static_cast<size_t>(i)).to_complex()
                          : pencil.entries[static_cast<size_t>(i)].q0.to_complex();
        acc += x(i) * y(i) * d;
    }
    return acc;
}

DiagonalPencil pencil_for(const StandardConfig& cfg) {
    auto chart = normalize_chart(cfg.W, cfg.D);
    return build_pencil(chart.W, chart.D);
}

}  // namespace

TEST_CASE("build_pencil evaluates Q0 exactly") {
    auto W = make_W(2, {rc(0), rc(1), rc(2), rc(3), rc(4), rc(5)});
    auto D = make_D(W, {{rc(3, 2, 0, 1), -1}, {rc(7, 2, 0, 1), -1}, {rc(6), -3}});
    auto pencil = build_pencil(W, D);
    REQUIRE(pencil.entries.size() == 6);
    CHECK(pencil.n_real == 6);

    // (0 - 3/2)^-1 (0 - 7/2)^-1 (0 - 6)^-3 * prod_{w!=0}(0 - w) = 20/189
    CHECK(pencil.entries[0].t == rc(0));
    CHECK(pencil.entries[0].q0 == RatComplex(Rational(20, 189)));

    // sign rule: (-1)^N with N = #{w' > 0} + sum_{a > 0} m = 5 - 5 = 0
    CHECK(pencil.entries[0].q0.re > 0);
    CHECK(pencil.entries[0].theta == 0.0);

    // Q1 = t_w Q0 by definition
    for (size_t i = 0; i < 6; ++i)
        CHECK(pencil.q1(i) == pencil.entries[i].t * pencil.entries[i].q0);
}

TEST_CASE("build_pencil is conjugation-equivariant") {
    for (const auto& cfg : standard_configs()) {
        CAPTURE(cfg.name);
        auto pencil = pencil_for(cfg);
        // complex entries come in adjacent (w, nu(w)) pairs
        for (size_t p = static_cast<size_t>(pencil.n_real); p < pencil.entries.size(); p += 2) {
            CHECK(pencil.entries[p + 1].t == pencil.entries[p].t.conj());
            CHECK(pencil.entries[p + 1].q0 == pencil.entries[p].q0.conj());
        }
        for (const auto& e : pencil.entries) CHECK(e.q0 != RatComplex());
    }
}

TEST_CASE("epsilon_signs: examples and conventions") {
    SUBCASE("config (3,3): eps = (+1, -1, +1)") {
        auto W = make_W(2, {rc(0), rc(1), rc(2), rc(3), rc(4), rc(5)});
        auto D = make_D(W, {{rc(3, 2, 0, 1), -1}, {rc(7, 2, 0, 1), -1}, {rc(6), -3}});
        auto part = partition_weierstrass(W);
        auto eps = epsilon_signs(interval_parities(W, D), part.w0);
        CHECK(eps == std::vector<int>{1, -1, 1});
    }
    SUBCASE("four real points, odd interval [3, inf) only: eps = (+1, +1)") {
        auto W = make_W(2, {rc(0), rc(1), rc(2), rc(3), rc(0, 1), rc(0, -1)});
        auto D = make_D(W, {{rc(4), -5}});
        auto part = partition_weierstrass(W);
        auto eps = epsilon_signs(interval_parities(W, D), part.w0);
        CHECK(eps == std::vector<int>{1, 1});
    }
    SUBCASE("even divisor content between eigenvalue pairs does not disturb the signs") {
        auto W = make_W(2, {rc(0), rc(1), rc(2), rc(3), rc(4), rc(5)});
        auto D = make_D(W, {{rc(1, 2, 0, 1), -2}, {rc(6), -3}});
        auto part = partition_weierstrass(W);
        auto profile = interval_parities(W, D);
        CHECK(profile.k == 1);
        CHECK(epsilon_signs(profile, part.w0) == std::vector<int>{1, 1, 1});
    }
    SUBCASE("un-normalized chart is rejected") {
        auto W = make_W(2, {rc(0), rc(1), rc(2), rc(3), rc(4), rc(5)});
        auto D = make_D(W, {{rc(-1), -5}});
        auto part = partition_weierstrass(W);
        CHECK_THROWS_AS(epsilon_signs(interval_parities(W, D), part.w0), std::invalid_argument);
    }
}

TEST_CASE("real_normal_form assembles the data") {
    SUBCASE("config (3,3)") {
        auto W = make_W(2, {rc(0), rc(1), rc(2), rc(3), rc(4), rc(5)});
        auto D = make_D(W, {{rc(3, 2, 0, 1), -1}, {rc(7, 2, 0, 1), -1}, {rc(6), -3}});
        auto nf = real_normal_form(W, D);
        CHECK(nf.n == 3);
        CHECK(nf.s == 0);
        CHECK(nf.eps == std::vector<int>{1, -1, 1});
        REQUIRE(nf.real_eigs.size() == 6);
        CHECK(nf.real_eigs[5] == 5);
    }
    SUBCASE("no real Weierstrass points") {
        auto W = make_W(2, {rc(0, 1), rc(0, -1), rc(1, 1), rc(1, -1), rc(2, 1), rc(2, -1)});
        auto D = make_D(W, {{rc(3), -5}});
        auto nf = real_normal_form(W, D);
        CHECK(nf.n == 0);
        CHECK(nf.s == 3);
        CHECK(nf.eps.empty());
        REQUIRE(nf.complex_pairs.size() == 3);
        CHECK(nf.complex_pairs[0].first == 0);
        CHECK(nf.complex_pairs[0].second == 1);
        CHECK(nf.complex_pairs[2].first == 2);
    }
    SUBCASE("config (2,1)") {
        auto W = make_W(2, {rc(0), rc(1), rc(2), rc(3), rc(0, 1), rc(0, -1)});
        auto D = make_D(W, {{rc(4), -5}});
        auto nf = real_normal_form(W, D);
        CHECK(nf.n == 2);
        CHECK(nf.s == 1);
        CHECK(nf.eps == std::vector<int>{1, 1});
    }
}

TEST_CASE("basis_change implements the proof's basis") {
    SUBCASE("unit entry keeps u_w") {
        DiagonalPencil pencil;
        pencil.n_real = 1;
        PencilEntry e;
        e.t = rc(0);
        e.q0 = RatComplex(Rational(1));
        e.radius = 1.0;
        e.theta = 0.0;
        pencil.entries.push_back(e);
        auto basis = basis_change(pencil);
        CHECK(std::abs(basis.matrix(0, 0) - std::complex<double>(1, 0)) < 1e-15);
    }
    SUBCASE("real w with positive Q0: Q0(v_w^2) = +1") {
        auto W = make_W(2, {rc(0), rc(1), rc(2), rc(3), rc(4), rc(5)});
        auto D = make_D(W, {{rc(3, 2, 0, 1), -1}, {rc(7, 2, 0, 1), -1}, {rc(6), -3}});
        auto pencil = build_pencil(W, D);
        auto basis = basis_change(pencil);
        const auto col = basis.matrix.col(0);
        CHECK(std::abs(diag_form(pencil, false, col, col) - std::complex<double>(1, 0)) < 1e-12);
    }
    SUBCASE("complex pair identities") {
        auto cfg = standard_configs()[0];  // (0,1): three complex pairs
        auto pencil = pencil_for(cfg);
        auto basis = basis_change(pencil);
        for (Eigen::Index p = 0; p < 6; p += 2) {
            const auto vp = basis.matrix.col(p);       // v'_w
            const auto vpp = basis.matrix.col(p + 1);  // v''_w
            const auto tw = pencil.entries[static_cast<size_t>(p)].t.to_complex();
            CHECK(std::abs(diag_form(pencil, false, vp, vp) - 1.0) < 1e-12);
            CHECK(std::abs(diag_form(pencil, false, vpp, vpp) + 1.0) < 1e-12);
            CHECK(std::abs(diag_form(pencil, false, vp, vpp)) < 1e-12);
            CHECK(std::abs(diag_form(pencil, true, vp, vp) - tw.real()) < 1e-12);
            CHECK(std::abs(diag_form(pencil, true, vpp, vpp) + tw.real()) < 1e-12);
            CHECK(std::abs(diag_form(pencil, true, vp, vpp) - tw.imag()) < 1e-12);
        }
    }
    SUBCASE("columns are fixed by the induced conjugation") {
        for (const auto& cfg : standard_configs()) {
            CAPTURE(cfg.name);
            auto pencil = pencil_for(cfg);
            auto basis = basis_change(pencil);
            const auto N = basis.matrix.rows();
            // conjugation sends coordinate row w to conj(row nu(w))
            std::vector<Eigen::Index> nu(static_cast<size_t>(N));
            for (Eigen::Index i = 0; i < pencil.n_real; ++i) nu[static_cast<size_t>(i)] = i;
            for (Eigen::Index p = pencil.n_real; p < N; p += 2) {
                nu[static_cast<size_t>(p)] = p + 1;
                nu[static_cast<size_t>(p + 1)] = p;
            }
            for (Eigen::Index c = 0; c < N; ++c)
                for (Eigen::Index r = 0; r < N; ++r)
                    CHECK(std::abs(std::conj(basis.matrix(nu[static_cast<size_t>(r)], c)) -
                                   basis.matrix(r, c)) < 1e-12);
        }
    }
}

TEST_CASE("verify_normal_form congruence") {
    SUBCASE("standard configurations pass at 1e-9") {
        for (const auto& cfg : standard_configs()) {
            CAPTURE(cfg.name);
            auto chart = normalize_chart(cfg.W, cfg.D);
            auto pencil = build_pencil(chart.W, chart.D);
            auto nf = real_normal_form(chart.W, chart.D);
            auto rep = verify_normal_form(pencil, basis_change(pencil), nf);
            CHECK(rep.ok);
            CHECK(rep.max_residual < 1e-9);
            CHECK(rep.max_imag <= 1e-9);
        }
    }
    SUBCASE("transform then invert-transform returns the diagonals") {
        auto cfg = standard_configs()[4];  // (3,3)
        auto pencil = pencil_for(cfg);
        auto basis = basis_change(pencil);
        const auto N = static_cast<Eigen::Index>(pencil.entries.size());
        Eigen::VectorXcd d0(N);
        for (Eigen::Index i = 0; i < N; ++i)
            d0(i) = pencil.entries[static_cast<size_t>(i)].q0.to_complex();
        const Eigen::MatrixXcd M0 = basis.matrix.transpose() * d0.asDiagonal() * basis.matrix;
        const Eigen::MatrixXcd Cinv = basis.matrix.inverse();
        const Eigen::MatrixXcd back = Cinv.transpose() * M0 * Cinv;
        CHECK((back - Eigen::MatrixXcd(d0.asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("a wrong normal form is flagged") {
        auto cfg = standard_configs()[4];
        auto chart = normalize_chart(cfg.W, cfg.D);
        auto pencil = build_pencil(chart.W, chart.D);
        auto nf = real_normal_form(chart.W, chart.D);
        nf.eps[1] = -nf.eps[1];
        auto rep = verify_normal_form(pencil, basis_change(pencil), nf);
        CHECK_FALSE(rep.ok);
        CHECK(rep.max_residual > 1.0);
    }
}

TEST_CASE("scaling the section leaves the normal form unchanged") {
    auto cfg = standard_configs()[2];  // (2,1): both real and complex entries
    auto chart = normalize_chart(cfg.W, cfg.D);
    auto pencil = build_pencil(chart.W, chart.D);
    auto nf = real_normal_form(chart.W, chart.D);
    for (const Rational& c : {Rational(3), Rational(1, 7), Rational(-5, 2)}) {
        CAPTURE(to_fraction_string(c));
        DiagonalPencil scaled = pencil;
        for (auto& e : scaled.entries) {
            e.q0 = e.q0 * RatComplex(c * c, Rational(0));
            e.radius = std::sqrt(to_double(e.q0.norm()));
            // theta unchanged: the scale factor c^2 is positive
        }
        auto rep = verify_normal_form(scaled, basis_change(scaled), nf);
        CHECK(rep.ok);
    }
}

TEST_CASE("theta signs match the eps pattern at real Weierstrass points") {
    Rng rng(777);
    for (int iter = 0; iter < 60; ++iter) {
        const int genus = rand_int(rng, 2, 4);
        const int n = rand_int(rng, 1, genus + 1);
        auto W = random_weierstrass(genus, n, rng);
        auto D = random_divisor(W, rng);
        auto chart = normalize_chart(W, D);
        auto pencil = build_pencil(chart.W, chart.D);
        auto nf = real_normal_form(chart.W, chart.D);
        // e^{i theta} = eps_i at r_{2i-1} and -eps_i at r_{2i}
        for (int i = 0; i < nf.n; ++i) {
            const auto& lo = pencil.entries[static_cast<size_t>(2 * i)];
            const auto& hi = pencil.entries[static_cast<size_t>(2 * i + 1)];
            REQUIRE(lo.q0.is_real());
            REQUIRE(hi.q0.is_real());
            const int sign_lo = lo.q0.re > 0 ? 1 : -1;
            const int sign_hi = hi.q0.re > 0 ? 1 : -1;
            CHECK(sign_lo == nf.eps[static_cast<size_t>(i)]);
            CHECK(sign_hi == -nf.eps[static_cast<size_t>(i)]);
        }
        auto rep = verify_normal_form(pencil, basis_change(pencil), nf);
        CHECK(rep.ok);
    }
}

TEST_CASE("genericity_check") {
    CHECK(genericity_check({rc(0), rc(1), rc(0, 1), rc(0, -1)}));
    CHECK_FALSE(genericity_check({rc(0), rc(0), rc(1), rc(2)}));
    CHECK_FALSE(genericity_check({rc(1, 1), rc(1, 1)}));
}
