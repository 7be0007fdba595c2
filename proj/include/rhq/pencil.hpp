#pragma once

#include "rhq/curve.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace rhq {

/// One diagonal entry of the pencil: Q0(u_w^2) = prod_i (t_w - a_i)^{m_i} *
/// prod_{w' != w} (t_w - t_{w'}), kept exact, plus its polar form.
struct PencilEntry {
    RatComplex t;        // Weierstrass coordinate t_w
    RatComplex q0;       // Q0(u_w^2), exact and nonzero
    double radius = 0;   // |q0|
    double theta = 0;    // arg(q0) in [0, 2*pi)
};

/// Diagonal pencil in the section basis {u_w}. Entry order: real points
/// ascending, then each conjugate pair (w, nu(w)) with w in W_plus sorted.
struct DiagonalPencil {
    int n_real = 0;  // number of real Weierstrass points (= 2n)
    std::vector<PencilEntry> entries;

    RatComplex q1(size_t i) const { return entries[i].t * entries[i].q0; }
};

DiagonalPencil build_pencil(const WeierstrassSet& W, const RealDivisor& D);

/// Signs eps_i of the real normal form. Primary computation is the sign count
/// (-1)^N with N = #{w' in W0 : w' > r_{2i-1}} + sum_{real a > r_{2i-1}} m;
/// the odd-intervals-to-the-right count is applied as a mandatory cross-check.
/// Requires a normalized profile; throws std::logic_error on disagreement.
std::vector<int> epsilon_signs(const IntervalProfile& profile, const std::vector<Rational>& w0);

struct RealNormalForm {
    int n = 0;
    std::vector<int> eps;  // eps_1 = +1 always
    std::vector<Rational> real_eigs;
    std::vector<std::pair<Rational, Rational>> complex_pairs;  // (a_j, b_j), b_j > 0
    int s = 0;
};

RealNormalForm real_normal_form(const WeierstrassSet& W, const RealDivisor& D);

/// Columns express the conjugation-fixed basis {v_w} u {v'_w, v''_w} in
/// u_w-coordinates (same entry order as the pencil).
struct BasisChange {
    Eigen::MatrixXcd matrix;
};

BasisChange basis_change(const DiagonalPencil& pencil);

struct CongruenceReport {
    bool ok = false;
    double max_residual = 0;  // worst |C^T diag C - target| entry over both forms
    double max_imag = 0;
    int row = -1, col = -1;   // offending entry of the worst residual
    char form = '0';          // '0' or '1'
};

/// Transforms the diagonal Gram matrices by the basis and compares against
/// the real normal-form matrices; tolerance 1e-9 on residual and imaginary parts.
CongruenceReport verify_normal_form(const DiagonalPencil& pencil, const BasisChange& basis,
                                    const RealNormalForm& nf);

/// True iff all candidate Weierstrass points are pairwise distinct (the pencil
/// x Q0 + y Q1 then has 2g+2 distinct eigenvalues).
bool genericity_check(const std::vector<RatComplex>& points);

/// Real symmetric matrices of q0 and q1 in the normal-form coordinates.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> normal_form_matrices(const RealNormalForm& nf);

}  // namespace rhq
