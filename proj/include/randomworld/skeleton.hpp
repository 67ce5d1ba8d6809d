#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "randomworld/tools.hpp"

namespace randomworld {

// Sampling dead-end or regrow budget exhaustion; callers resample with fresh
// randomness.
struct SkeletonSampleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SkeletonConfig {
    int len_min = 2;
    int len_max = 8;
    int user_inputs_min = 1;
    int user_inputs_max = 3;
    int max_regrow_rounds = 100;

    void validate() const {
        if (len_min < 1 || len_min > len_max)
            throw std::invalid_argument("SkeletonConfig: need 1 <= len_min <= len_max");
        if (max_regrow_rounds < 1)
            throw std::invalid_argument("SkeletonConfig: max_regrow_rounds >= 1");
    }
};

using VarId = int;

struct VarDecl {
    VarId var = -1;
    TypeRef type = nullptr;
};

struct SkeletonCall {
    int tool_index = -1;            // into the tool universe
    std::vector<VarId> args;        // source variable per input slot
    std::vector<VarDecl> outputs;   // resolved output variables
};

// An ordered, type-checked DAG of tool calls. Every argument references a
// variable introduced strictly earlier (a user input or a previous call's
// output); the final call's outputs are the goal variables.
struct TrajectorySkeleton {
    std::vector<VarDecl> user_inputs;
    std::vector<SkeletonCall> calls;
    std::vector<VarId> goal_vars;
    int next_var = 0;

    // Tool-name sequence plus binding structure with variables renumbered in
    // first-use order; two skeletons are duplicates iff these strings match.
    std::string canonical_form(const std::vector<ToolSpec>& universe) const;

    nlohmann::json to_json(const std::vector<ToolSpec>& universe) const;
    static TrajectorySkeleton from_json(const nlohmann::json& j,
                                        const std::vector<ToolSpec>& universe);
};

// Samples user-input types and a length l in [len_min, len_max], grows the
// call sequence tool-by-tool (uniform over compatible tools, uniform over
// matching variables per argument), then runs the trim/regrow fixpoint. No
// value generation happens here.
TrajectorySkeleton generate_skeleton(const std::vector<ToolSpec>& universe,
                                     const SkeletonConfig& cfg, const TypeRegistry& reg,
                                     Rng& rng);

// U(f_i) = 1 iff some output of f_i feeds the final call directly or
// transitively; U(final) = 1.
std::vector<char> mark_usage(const TrajectorySkeleton& skel);

// Deletes U=0 calls, resamples calls until the original length is restored,
// and repeats until a pass makes no deletions (bounded by max_regrow_rounds).
TrajectorySkeleton trim_and_regrow(TrajectorySkeleton skel,
                                   const std::vector<ToolSpec>& universe,
                                   const SkeletonConfig& cfg, const TypeRegistry& reg,
                                   Rng& rng);

// Keeps the first occurrence of each canonical form.
std::vector<TrajectorySkeleton> dedup(std::vector<TrajectorySkeleton> skels,
                                      const std::vector<ToolSpec>& universe);

}  // namespace randomworld
