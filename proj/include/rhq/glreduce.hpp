#pragma once

#include "rhq/pencil.hpp"

#include <string>
#include <vector>

namespace rhq {

/// Planar coefficient points lambda_i = (a_i, b_i) of the diagonalized real
/// pencil, with multiplicities, plus the count s of complex 2x2 blocks.
struct LambdaPoint {
    Rational a, b;
    long long mult = 1;
};

struct LambdaConfig {
    std::vector<LambdaPoint> points;
    int s = 0;

    long long r() const {
        long long t = 0;
        for (const auto& p : points) t += p.mult;
        return t;
    }
};

/// Reads the lambda-points off the real normal form: (eps_i, eps_i r_{2i-1})
/// and (-eps_i, -eps_i r_{2i}) per real pair, coalescing equal points.
LambdaConfig lambda_config(const RealNormalForm& nf);

/// Generic iff no point is the origin and no two points lie on opposite rays
/// (the origin never lies on a segment joining two of them).
bool check_generic(const LambdaConfig& cfg);

struct GLInvariant {
    int s = 0;
    int l = 0;
    std::vector<int> partition;  // canonical cyclic partition, 2l+1 parts (empty when r = 0)

    std::string partition_string() const;
    friend bool operator==(const GLInvariant&, const GLInvariant&) = default;
};

/// Deforms the configuration to points on 2l+1 roots of unity for minimal l
/// by merging angularly adjacent groups whose separating arc is free of all
/// current antipodes; exhaustive backtracking over merge orders.
GLInvariant reduce(const LambdaConfig& cfg);

/// Single-pass greedy variant (first legal merge, repeat); used to cross-check
/// reduce().
GLInvariant reduce_greedy(const LambdaConfig& cfg);

struct DiffeoType {
    bool classified = false;
    std::string cover;  // diffeomorphism type of the double cover
    std::string base;   // diffeomorphism type of the projective intersection
};

/// Genus-2 lookup keyed by (s, partition); unknown keys yield an
/// unclassified result rather than an error.
DiffeoType genus2_lookup(const GLInvariant& inv);

}  // namespace rhq
