#pragma once

#include "rhq/pencil.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace rhq {

/// Real symmetric matrices of the normal-form quadrics q0, q1 in R^{2g+2}.
struct QuadricPair {
    Eigen::MatrixXd A, B;
    int genus = 0;
};

QuadricPair quadric_matrices(const RealNormalForm& nf);

struct SamplePoint {
    Eigen::VectorXd v;    // unit vector with q0(v), q1(v) ~ 0
    double q0 = 0;        // residuals as evaluated at v
    double q1 = 0;
    double unit_err = 0;  // |v|^2 - 1
    double sv1 = 0;       // singular values of the sphere-tangent Jacobian of (q0, q1)
    double sv2 = 0;
};

struct SampleCloud {
    int dim = 0;
    std::uint64_t seed = 0;
    int requested = 0;
    int converged = 0;
    bool sampling_ok = false;  // false when fewer than requested/10 points converged
    std::vector<SamplePoint> points;  // sorted lexicographically by coordinates
};

/// Newton-projects `count` seeded random starts onto {q0 = q1 = 0, |v| = 1};
/// retains points with |q0|,|q1| <= 1e-10 and ||v|^2 - 1| <= 1e-12.
SampleCloud sample(const QuadricPair& qp, int count, std::uint64_t seed);

/// Singular values (descending) of the 2 x (2g+2) Jacobian of (q0, q1)
/// restricted to the tangent space of the sphere at v.
std::pair<double, double> tangent_singular_values(const QuadricPair& qp,
                                                  const Eigen::VectorXd& v);

struct SmoothnessReport {
    bool ok = false;
    double min_sv2 = 0;
    int witness = -1;  // index of the worst point when rank-deficient
    int dim_cover = 0;       // dimension of the double cover inside S^{2g+1}
    int dim_projective = 0;  // dimension of the intersection in RP^{2g+1}
};

/// Rank-2 check of the (q0, q1) Jacobian restricted to the sphere tangent
/// space at every sample (second singular value >= 1e-6).
SmoothnessReport smoothness(const SampleCloud& cloud);

struct ComponentReport {
    int count = 0;
    double radius = 0;
    int singletons = 0;
    bool conclusive = false;
};

/// Union-find over the proximity graph; radius <= 0 selects 3x the median
/// nearest-neighbour distance. Inconclusive when singletons dominate.
ComponentReport components(const SampleCloud& cloud, double radius = 0.0);

/// One point per line, 2g+2 space-separated decimal coordinates (full
/// round-trip precision).
void export_cloud(const SampleCloud& cloud, std::ostream& out);

}  // namespace rhq
