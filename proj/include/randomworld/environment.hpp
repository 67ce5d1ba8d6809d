#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "randomworld/skeleton.hpp"

namespace randomworld {

// Internal-consistency failure while evaluating the gold trajectory; cannot
// occur for wiring accepted by the skeleton sampler and is surfaced with
// diagnostics rather than retried.
struct PopulateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnvConfig {
    double p_g = 0.5;      // probability the instruction discloses passwords
    double r_dist = 1.0;   // distractor count = round(r_dist * |required|)
    GenConfig gen;

    void validate() const {
        if (p_g < 0.0 || p_g > 1.0) throw std::invalid_argument("EnvConfig: p_g in [0,1]");
        if (r_dist < 0.0) throw std::invalid_argument("EnvConfig: r_dist >= 0");
    }
};

struct Credential {
    std::string app;
    std::string username;
    std::string password;
};

// A populated task instance: concrete user inputs, memoized gold tool I/O,
// app credentials, goal state and (after instruction generation) the natural
// language instruction. Immutable once built; sessions keep their own lock
// state and memo copies.
struct Environment {
    TrajectorySkeleton skel;
    std::map<VarId, Value> user_input_values;
    MemoTable memo;
    std::map<std::string, Credential> apps;
    bool disclose_password = false;
    std::vector<Value> goal_state;
    std::string instruction;
    std::vector<int> required_tools;    // universe indices, first-use order
    std::vector<int> distractor_tools;  // universe indices
    uint64_t seed = 0;
    std::string env_id;

    // Goal as a single comparable value: the lone output, or the tuple as a
    // list when the final call has several outputs.
    Value goal_value() const;

    nlohmann::json to_json(const std::vector<ToolSpec>& universe) const;
    static Environment from_json(const nlohmann::json& j,
                                 const std::vector<ToolSpec>& universe);
};

// Samples user-input values, evaluates the calls in order through the memo
// table, creates credentials for every app touched, draws the password
// disclosure flag and picks distractor tools.
Environment populate(TrajectorySkeleton skel, const std::vector<ToolSpec>& universe,
                     const EnvConfig& cfg, const TypeRegistry& reg, uint64_t seed);

// password-manager semantics: the stored password when (app, username)
// matches, nothing otherwise.
std::optional<std::string> password_lookup(const Environment& env, const std::string& app,
                                           const std::string& username);

// app login check used by the session engine.
bool credentials_match(const Environment& env, const std::string& app,
                       const std::string& username, const std::string& password);

std::string random_credential_token(Rng& rng);

}  // namespace randomworld
