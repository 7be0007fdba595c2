#include "rhq/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <ostream>

namespace rhq {

namespace {

constexpr double kNewtonTol = 1e-12;
constexpr int kNewtonMaxIter = 100;
constexpr double kResidualBound = 1e-10;
constexpr double kUnitBound = 1e-12;
constexpr double kRankTol = 1e-6;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Deterministic uniform/normal deviates built from raw 64-bit streams, so
// clouds are reproducible bit-for-bit across standard libraries.
struct Rng {
    std::uint64_t state;
    explicit Rng(std::uint64_t seed) : state(seed) {}
    std::uint64_t next_u64() {
        state += 0x9E3779B97F4A7C15ull;
        return splitmix64(state);
    }
    double next_unit() {  // in (0, 1)
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }
    double next_normal() {
        const double u = next_unit(), v = next_unit();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
    }
};

Eigen::Vector3d residual(const QuadricPair& qp, const Eigen::VectorXd& v) {
    return {v.dot(qp.A * v), v.dot(qp.B * v), v.squaredNorm() - 1.0};
}

}  // namespace

std::pair<double, double> tangent_singular_values(const QuadricPair& qp,
                                                  const Eigen::VectorXd& v) {
    const Eigen::VectorXd unit = v / v.norm();
    Eigen::VectorXd r0 = 2.0 * (qp.A * v);
    Eigen::VectorXd r1 = 2.0 * (qp.B * v);
    r0 -= r0.dot(unit) * unit;
    r1 -= r1.dot(unit) * unit;
    const double a = r0.squaredNorm(), b = r0.dot(r1), c = r1.squaredNorm();
    const double mean = 0.5 * (a + c);
    const double disc = std::sqrt(std::max(0.0, 0.25 * (a - c) * (a - c) + b * b));
    const double hi = std::max(0.0, mean + disc), lo = std::max(0.0, mean - disc);
    return {std::sqrt(hi), std::sqrt(lo)};
}

namespace {

bool newton_converge(const QuadricPair& qp, Eigen::VectorXd& v) {
    const auto N = v.size();
    Eigen::Vector3d F = residual(qp, v);
    for (int iter = 0; iter < kNewtonMaxIter; ++iter) {
        if (F.cwiseAbs().maxCoeff() <= kNewtonTol) return true;
        Eigen::MatrixXd J(3, N);
        J.row(0) = 2.0 * (qp.A * v).transpose();
        J.row(1) = 2.0 * (qp.B * v).transpose();
        J.row(2) = 2.0 * v.transpose();
        const Eigen::Matrix3d G = J * J.transpose();
        const Eigen::FullPivLU<Eigen::Matrix3d> lu(G);
        if (!lu.isInvertible()) return false;
        const Eigen::VectorXd step = J.transpose() * lu.solve(-F);
        double t = 1.0;
        while (true) {
            const Eigen::VectorXd cand = v + t * step;
            const Eigen::Vector3d Fc = residual(qp, cand);
            if (Fc.cwiseAbs().maxCoeff() < F.cwiseAbs().maxCoeff()) {
                v = cand;
                F = Fc;
                break;
            }
            t *= 0.5;
            if (t < 1e-8) return F.cwiseAbs().maxCoeff() <= kNewtonTol;
        }
    }
    return F.cwiseAbs().maxCoeff() <= kNewtonTol;
}

}  // namespace

QuadricPair quadric_matrices(const RealNormalForm& nf) {
    QuadricPair qp;
    auto [A, B] = normal_form_matrices(nf);
    qp.A = std::move(A);
    qp.B = std::move(B);
    qp.genus = (2 * nf.n + 2 * nf.s - 2) / 2;
    return qp;
}

SampleCloud sample(const QuadricPair& qp, int count, std::uint64_t seed) {
    SampleCloud cloud;
    cloud.dim = static_cast<int>(qp.A.rows());
    cloud.seed = seed;
    cloud.requested = count;

    for (int i = 0; i < count; ++i) {
        Rng rng(splitmix64(seed ^ (0x517CC1B727220A95ull * (static_cast<std::uint64_t>(i) + 1))));
        Eigen::VectorXd v(cloud.dim);
        for (int d = 0; d < cloud.dim; ++d) v(d) = rng.next_normal();
        v.normalize();
        if (!newton_converge(qp, v)) continue;
        SamplePoint pt;
        const Eigen::Vector3d F = residual(qp, v);
        pt.v = v;
        pt.q0 = F(0);
        pt.q1 = F(1);
        pt.unit_err = F(2);
        if (std::abs(pt.q0) > kResidualBound || std::abs(pt.q1) > kResidualBound ||
            std::abs(pt.unit_err) > kUnitBound)
            continue;
        const auto [sv1, sv2] = tangent_singular_values(qp, v);
        pt.sv1 = sv1;
        pt.sv2 = sv2;
        cloud.points.push_back(std::move(pt));
    }
    cloud.converged = static_cast<int>(cloud.points.size());
    cloud.sampling_ok = cloud.converged * 10 >= count;
    std::sort(cloud.points.begin(), cloud.points.end(),
              [](const SamplePoint& a, const SamplePoint& b) {
                  return std::lexicographical_compare(a.v.data(), a.v.data() + a.v.size(),
                                                      b.v.data(), b.v.data() + b.v.size());
              });
    return cloud;
}

SmoothnessReport smoothness(const SampleCloud& cloud) {
    if (cloud.points.empty())
        throw std::invalid_argument("smoothness requires a non-empty sample cloud");
    SmoothnessReport rep;
    rep.min_sv2 = cloud.points.front().sv2;
    rep.witness = 0;
    for (size_t i = 1; i < cloud.points.size(); ++i)
        if (cloud.points[i].sv2 < rep.min_sv2) {
            rep.min_sv2 = cloud.points[i].sv2;
            rep.witness = static_cast<int>(i);
        }
    rep.ok = rep.min_sv2 >= kRankTol;
    if (rep.ok) rep.witness = -1;
    const int g = (cloud.dim - 2) / 2;
    rep.dim_cover = 2 * g - 1;
    rep.dim_projective = 2 * g - 1;
    return rep;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) {
        while (parent[static_cast<size_t>(i)] != i) {
            parent[static_cast<size_t>(i)] = parent[static_cast<size_t>(parent[static_cast<size_t>(i)])];
            i = parent[static_cast<size_t>(i)];
        }
        return i;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<size_t>(b)] = a;
    }
};

}  // namespace

void export_cloud(const SampleCloud& cloud, std::ostream& out) {
    out.precision(17);
    for (const auto& p : cloud.points) {
        for (Eigen::Index i = 0; i < p.v.size(); ++i) {
            if (i) out << ' ';
            out << p.v(i);
        }
        out << '\n';
    }
}

ComponentReport components(const SampleCloud& cloud, double radius) {
    const size_t m = cloud.points.size();
    if (m < 100) throw std::invalid_argument("components requires a cloud of >= 100 points");

    if (radius <= 0) {
        std::vector<double> nn(m, std::numeric_limits<double>::infinity());
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i + 1; j < m; ++j) {
                const double d = (cloud.points[i].v - cloud.points[j].v).norm();
                nn[i] = std::min(nn[i], d);
                nn[j] = std::min(nn[j], d);
            }
        std::sort(nn.begin(), nn.end());
        radius = 3.0 * nn[m / 2];
    }

    UnionFind uf(m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if ((cloud.points[i].v - cloud.points[j].v).norm() < radius)
                uf.unite(static_cast<int>(i), static_cast<int>(j));

    std::vector<int> size(m, 0);
    int count = 0;
    for (size_t i = 0; i < m; ++i) {
        const int root = uf.find(static_cast<int>(i));
        if (size[static_cast<size_t>(root)]++ == 0) ++count;
    }
    ComponentReport rep;
    rep.count = count;
    rep.radius = radius;
    for (size_t i = 0; i < m; ++i)
        if (size[i] == 1) ++rep.singletons;
    rep.conclusive = 2 * rep.singletons < static_cast<int>(m);
    return rep;
}

}  // namespace rhq
