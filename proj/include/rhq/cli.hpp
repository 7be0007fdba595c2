#pragma once

#include "rhq/cohomology.hpp"
#include "rhq/curve.hpp"
#include "rhq/glreduce.hpp"
#include "rhq/numeric.hpp"
#include "rhq/pencil.hpp"

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rhq {

struct InputOptions {
    std::optional<int> d_max;
    int sample_count = 500;
    std::uint64_t seed = 7;
    bool skip_numeric = false;
};

/// Parsed CLI input record. Rationals travel as "p/q" strings, complex values
/// as {"re": "p/q", "im": "p/q"}.
struct InputSpec {
    int genus = 0;
    std::vector<RatComplex> weierstrass;
    std::vector<DivisorEntry> divisor;
    InputOptions options;
};

InputSpec parse_input(const nlohmann::json& j);
InputSpec load_input_file(const std::string& path);

struct NumericSummary {
    bool ran = false;
    int requested = 0;
    int converged = 0;
    bool sampling_ok = false;
    double max_abs_q0 = 0, max_abs_q1 = 0;
    double min_sv2 = 0;
    bool smooth_ok = false;
    int dim_cover = 0;
    int component_count = 0;
    double radius = 0;
    bool conclusive = false;
};

struct Report {
    int genus = 0;
    CurveTopology topology;
    IntervalProfile profile;  // normalized chart
    Moebius transform;
    RealNormalForm nf;
    CongruenceReport congruence;
    GLInvariant gl;
    bool has_types = false;
    DiffeoType types;
    SWReport sw;
    NumericSummary numeric;
    bool ok = true;

    nlohmann::json to_json() const;
    std::string pretty() const;
};

/// Full pipeline: normalize -> topology -> pencil -> normal form -> GL ->
/// (genus-2 lookup) -> Stiefel-Whitney -> numeric verification.
/// Throws std::invalid_argument on bad input; verification failures are
/// reported in the returned record (ok = false).
Report build_report(const InputSpec& spec);

nlohmann::json numeric_to_json(const NumericSummary& s);
nlohmann::json profile_to_json(const IntervalProfile& profile);
nlohmann::json sw_to_json(const SWReport& rep);
nlohmann::json nf_to_json(const RealNormalForm& nf, const CongruenceReport& congruence);
nlohmann::json gl_to_json(const GLInvariant& inv);

}  // namespace rhq
