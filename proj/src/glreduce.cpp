#include "rhq/glreduce.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

namespace rhq {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr double kAngleGuard = 1e-12;  // separation guard for floating angles

Rational cross(const LambdaPoint& p, const LambdaPoint& q) { return p.a * q.b - p.b * q.a; }
Rational dot(const LambdaPoint& p, const LambdaPoint& q) { return p.a * q.a + p.b * q.b; }

bool same_ray(const LambdaPoint& p, const LambdaPoint& q) {
    return cross(p, q) == 0 && dot(p, q) > 0;
}

// Octant index of the direction, in counterclockwise order from angle 0.
int octant(const LambdaPoint& p) {
    if (p.b == 0) return p.a > 0 ? 0 : 4;
    if (p.b > 0) {
        if (p.a > 0) return 1;
        return p.a == 0 ? 2 : 3;
    }
    if (p.a < 0) return 5;
    return p.a == 0 ? 6 : 7;
}

bool angle_less(const LambdaPoint& p, const LambdaPoint& q) {
    const int op = octant(p), oq = octant(q);
    if (op != oq) return op < oq;
    return cross(p, q) > 0;  // same open octant spans < pi/2
}

struct Group {
    double angle = 0;  // in [0, 2*pi)
    long long mult = 0;
};

using State = std::vector<Group>;  // sorted by angle

double mod_two_pi(double x) {
    x = std::fmod(x, kTwoPi);
    if (x < 0) x += kTwoPi;
    return x;
}

// True when the open arc (from, from + span) counterclockwise contains x.
// Throws if x falls within the guard of either arc boundary.
bool inside_open_arc(double x, double from, double span) {
    const double rel = mod_two_pi(x - from);
    if (std::min(rel, kTwoPi - rel) < kAngleGuard || std::abs(rel - span) < kAngleGuard)
        throw std::runtime_error(
            "lambda configuration too close to degenerate (angle within 1e-12 of an arc boundary)");
    return rel < span;
}

bool merge_legal(const State& st, size_t i, size_t j, double& span_out) {
    const double span = mod_two_pi(st[j].angle - st[i].angle);
    span_out = span;
    for (const auto& g : st) {
        const double anti = mod_two_pi(g.angle + std::numbers::pi);
        if (inside_open_arc(anti, st[i].angle, span)) return false;
    }
    return true;
}

State merged_state(const State& st, size_t i, size_t j, double span) {
    Group merged;
    merged.mult = st[i].mult + st[j].mult;
    merged.angle = mod_two_pi(st[i].angle +
                              span * static_cast<double>(st[j].mult) /
                                  static_cast<double>(merged.mult));
    State next;
    next.reserve(st.size() - 1);
    for (size_t m = 0; m < st.size(); ++m)
        if (m != i && m != j) next.push_back(st[m]);
    next.push_back(merged);
    std::sort(next.begin(), next.end(),
              [](const Group& x, const Group& y) { return x.angle < y.angle; });
    return next;
}

std::vector<int> cyclic_partition(const State& st) {
    std::vector<int> parts;
    parts.reserve(st.size());
    for (const auto& g : st) parts.push_back(static_cast<int>(g.mult));
    return parts;
}

std::vector<int> canonical_partition(std::vector<int> parts) {
    if (parts.empty()) return parts;
    const size_t K = parts.size();
    std::vector<int> best;
    for (int flip = 0; flip < 2; ++flip) {
        for (size_t shift = 0; shift < K; ++shift) {
            std::vector<int> cand(K);
            for (size_t i = 0; i < K; ++i) cand[i] = parts[(shift + i) % K];
            if (best.empty() || cand < best) best = cand;
        }
        std::reverse(parts.begin(), parts.end());
    }
    return best;
}

State initial_state(const LambdaConfig& cfg) {
    std::vector<LambdaPoint> groups;
    for (const auto& p : cfg.points) {
        bool placed = false;
        for (auto& g : groups)
            if (same_ray(g, p)) {
                g.mult += p.mult;
                placed = true;
                break;
            }
        if (!placed) groups.push_back(p);
    }
    std::sort(groups.begin(), groups.end(), angle_less);
    State st;
    st.reserve(groups.size());
    for (const auto& g : groups) {
        Group out;
        out.angle = mod_two_pi(std::atan2(to_double(g.b), to_double(g.a)));
        out.mult = g.mult;
        st.push_back(out);
    }
    for (size_t i = 0; i < st.size(); ++i) {
        const double next = st[(i + 1) % st.size()].angle;
        if (st.size() > 1 && mod_two_pi(next - st[i].angle) < kAngleGuard)
            throw std::runtime_error("distinct lambda directions collide in floating point");
    }
    return st;
}

struct SearchBest {
    size_t count = SIZE_MAX;
    std::set<std::vector<int>> partitions;  // canonical partitions at minimal count
};

std::vector<long long> state_key(const State& st) {
    std::vector<long long> key;
    key.reserve(2 * st.size());
    for (const auto& g : st) {
        key.push_back(std::llround(g.angle * 1e9));
        key.push_back(g.mult);
    }
    return key;
}

void record_terminal(const State& st, SearchBest& best) {
    if (st.size() % 2 == 0)
        throw std::logic_error("GL reduction terminated with an even number of groups");
    if (st.size() > best.count) return;
    if (st.size() < best.count) {
        best.count = st.size();
        best.partitions.clear();
    }
    best.partitions.insert(canonical_partition(cyclic_partition(st)));
}

void search(const State& st, std::set<std::vector<long long>>& seen, SearchBest& best) {
    if (!seen.insert(state_key(st)).second) return;
    bool any = false;
    if (st.size() > 1) {
        for (size_t i = 0; i < st.size(); ++i) {
            const size_t j = (i + 1) % st.size();
            double span = 0;
            if (!merge_legal(st, i, j, span)) continue;
            any = true;
            search(merged_state(st, i, j, span), seen, best);
        }
    }
    if (!any) record_terminal(st, best);
}

GLInvariant invariant_from(const LambdaConfig& cfg, const SearchBest& best) {
    if (best.partitions.size() != 1)
        throw std::logic_error("GL reduction reached inequivalent minimal configurations");
    GLInvariant inv;
    inv.s = cfg.s;
    inv.partition = *best.partitions.begin();
    inv.l = (static_cast<int>(best.count) - 1) / 2;
    return inv;
}

}  // namespace

LambdaConfig lambda_config(const RealNormalForm& nf) {
    LambdaConfig cfg;
    cfg.s = nf.s;
    auto add = [&cfg](Rational a, Rational b) {
        for (auto& p : cfg.points)
            if (p.a == a && p.b == b) {
                ++p.mult;
                return;
            }
        cfg.points.push_back(LambdaPoint{std::move(a), std::move(b), 1});
    };
    for (int i = 0; i < nf.n; ++i) {
        const Rational e(nf.eps[static_cast<size_t>(i)]);
        add(e, e * nf.real_eigs[static_cast<size_t>(2 * i)]);
        add(-e, -e * nf.real_eigs[static_cast<size_t>(2 * i + 1)]);
    }
    return cfg;
}

bool check_generic(const LambdaConfig& cfg) {
    for (const auto& p : cfg.points)
        if (p.a == 0 && p.b == 0) return false;
    for (size_t i = 0; i < cfg.points.size(); ++i)
        for (size_t j = i + 1; j < cfg.points.size(); ++j)
            if (cross(cfg.points[i], cfg.points[j]) == 0 &&
                dot(cfg.points[i], cfg.points[j]) < 0)
                return false;
    return true;
}

std::string GLInvariant::partition_string() const {
    std::ostringstream os;
    for (size_t i = 0; i < partition.size(); ++i) {
        if (i) os << "+";
        os << partition[i];
    }
    return os.str();
}

GLInvariant reduce(const LambdaConfig& cfg) {
    if (!check_generic(cfg))
        throw std::invalid_argument("lambda configuration is not generic");
    if (cfg.points.empty()) return GLInvariant{cfg.s, 0, {}};
    SearchBest best;
    std::set<std::vector<long long>> seen;
    search(initial_state(cfg), seen, best);
    return invariant_from(cfg, best);
}

GLInvariant reduce_greedy(const LambdaConfig& cfg) {
    if (!check_generic(cfg))
        throw std::invalid_argument("lambda configuration is not generic");
    if (cfg.points.empty()) return GLInvariant{cfg.s, 0, {}};
    State st = initial_state(cfg);
    bool merged = true;
    while (merged && st.size() > 1) {
        merged = false;
        for (size_t i = 0; i < st.size(); ++i) {
            const size_t j = (i + 1) % st.size();
            double span = 0;
            if (!merge_legal(st, i, j, span)) continue;
            st = merged_state(st, i, j, span);
            merged = true;
            break;
        }
    }
    SearchBest best;
    record_terminal(st, best);
    return invariant_from(cfg, best);
}

DiffeoType genus2_lookup(const GLInvariant& inv) {
    long long r = 0;
    for (int p : inv.partition) r += p;
    if (r + 2 * inv.s != 6)
        throw std::invalid_argument("genus2_lookup requires r + 2s = 6");
    static const std::map<std::pair<int, std::vector<int>>, std::pair<std::string, std::string>>
        table = {
            {{3, {}}, {"ℝP³", "L(4,1)"}},
            {{2, {2}}, {"S¹×S²", "S¹×S²"}},
            {{1, {1, 1, 2}}, {"#₃(S¹×S²)", "#₂(S¹×S²)"}},
            {{0, {1, 1, 1, 1, 2}},
             {"#₅(S¹×S²)", "#₃(S¹×S²)"}},
            {{0, {2, 2, 2}}, {"T³", "T³"}},
        };
    const auto it = table.find({inv.s, inv.partition});
    DiffeoType out;
    if (it == table.end()) {
        out.classified = false;
        out.cover = "unclassified";
        out.base = "unclassified";
    } else {
        out.classified = true;
        out.cover = it->second.first;
        out.base = it->second.second;
    }
    return out;
}

}  // namespace rhq
