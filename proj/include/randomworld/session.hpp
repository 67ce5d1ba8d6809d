#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "randomworld/environment.hpp"

namespace randomworld {

// Protocol tokens, verbatim.
inline constexpr std::string_view kRequestTok = "<request>";
inline constexpr std::string_view kCallTok = "<call>";
inline constexpr std::string_view kResponseTok = "<response>";
inline constexpr std::string_view kErrorTok = "<error>";
inline constexpr std::string_view kSubmitTok = "<submit>";
inline constexpr std::string_view kResultPrefix = "Result=";
inline constexpr std::string_view kLoginSuccess = "SUCCESS";
inline constexpr std::string_view kPasswordManagerTool = "password-manager";
inline constexpr std::string_view kLoginSuffix = "_login";

struct SessionFinishedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SessionConfig {
    int max_turns = 15;
    uint64_t shuffle_seed = 0;
    int few_shot_examples = 0;   // prepends the fixed RL examples when > 0
    bool disable_login = false;  // verification mode: app locks are off
    GenConfig gen;

    void validate() const {
        if (max_turns < 1) throw std::invalid_argument("SessionConfig: max_turns >= 1");
    }
};

// One parsed agent action. `raw` preserves the exact span matched in the
// message, so render() round-trips byte-identically.
struct Action {
    enum class Kind { ToolCall, Submit };
    Kind kind = Kind::ToolCall;
    std::string raw;

    // ToolCall
    std::string tool_name;
    std::string raw_args;
    std::optional<std::vector<Value>> args;  // nullopt: arguments unparseable

    // Submit
    Value value;
    bool value_parsed = false;  // false: VALUE fell back to a bare string

    std::string render() const { return raw; }
};

// Scans free text for the last well-formed action: either
// <request><NAME>ARGS<call> or Result=VALUE<submit>. Surrounding reasoning
// text is ignored. Returns nothing when no action is present.
std::optional<Action> parse_action(const std::string& text);

// Literal grammar shared by arguments and submitted values: bare numbers,
// strings in '...', "...", `...' or ``...'', lists in brackets, dicts in
// braces.
std::optional<Value> parse_literal(const std::string& text);
std::optional<std::vector<Value>> parse_literal_list(const std::string& text);

// Canonical action text used when composing gold traces.
std::string render_tool_call(const std::string& tool, const std::vector<Value>& args);
std::string render_submit(const Value& v);

// "The tools at your disposal:" then one "name: description" line per
// inventory tool in seed-shuffled order, a blank line, and the instruction.
std::string build_prompt(const Environment& env, const std::vector<ToolSpec>& universe,
                         const SessionConfig& cfg);

// The scripted gold agent's message sequence: password-manager and login
// calls where the environment requires them, the skeleton's calls in order
// with their memoized argument values, then the goal submission.
std::vector<std::string> gold_actions(const Environment& env,
                                      const std::vector<ToolSpec>& universe,
                                      bool include_logins = true);

enum class SessionStatus { Running, Submitted, Aborted };

struct TranscriptEntry {
    std::string agent_message;
    std::string observation;
};

// One interactive episode over an immutable environment. The session owns a
// copy of the memo table (fresh samples stay local) and the app lock state.
class Session {
public:
    Session(const Environment* env, const std::vector<ToolSpec>* universe, SessionConfig cfg,
            const TypeRegistry* reg);

    const std::string& prompt() const { return prompt_; }
    // Processes one agent message; consumes exactly one turn, including parse
    // failures. Throws SessionFinishedError after terminal status.
    std::string step(const std::string& agent_message);
    // Exact-match reward; requires terminal status.
    double reward() const;

    SessionStatus status() const { return status_; }
    int turn() const { return turn_; }
    const std::vector<TranscriptEntry>& history() const { return history_; }
    const Environment& env() const { return *env_; }

private:
    std::string observe(const Action& action);
    const ToolSpec* inventory_tool(const std::string& name) const;

    const Environment* env_;
    const std::vector<ToolSpec>* universe_;
    const TypeRegistry* reg_;
    SessionConfig cfg_;
    std::string prompt_;
    MemoTable memo_;
    Rng rng_;
    int turn_ = 0;
    std::set<std::string> unlocked_;
    SessionStatus status_ = SessionStatus::Running;
    Value submitted_;
    std::vector<TranscriptEntry> history_;
};

}  // namespace randomworld
