#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "randomworld/instruction.hpp"

namespace randomworld {

struct EmitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SftSegment {
    std::string text;
    bool loss_masked = false;  // environment-authored spans are masked
};

// Gold training instance: the prompt plus the alternating action/observation
// spans, agent-authored text unmasked.
struct SftTrace {
    std::string env_id;
    std::string prompt;
    std::vector<SftSegment> segments;
    double reward = 1.0;

    std::string completion_text() const;
    nlohmann::json to_json() const;
};

struct BatchStats {
    int64_t attempted = 0;
    int64_t emitted = 0;
    int64_t skeleton_failures = 0;
    int64_t dedup_drops = 0;
    int64_t populate_failures = 0;
    int64_t verification_failures = 0;
    int64_t leakage_flags = 0;  // informational name/description overlap count
    std::map<std::string, int64_t> tool_usage;
    std::map<int, int64_t> length_histogram;

    // attempted = emitted + every drop category.
    bool conserved() const {
        return attempted == emitted + skeleton_failures + dedup_drops + populate_failures +
                                verification_failures;
    }
    double pass_rate() const {
        return attempted == 0 ? 0.0 : (double)emitted / (double)attempted;
    }
    nlohmann::json to_json() const;
    static BatchStats from_json(const nlohmann::json& j);
};

// Synthesizes the gold transcript (logins where required, skeleton calls with
// memoized outputs, final submission) and verifies it replays to reward 1.0
// before returning.
SftTrace emit_sft(const Environment& env, const std::vector<ToolSpec>& universe,
                  const TypeRegistry& reg);

// Writes envs.jsonl, sft.jsonl and stats.jsonl under out_dir (schema-version
// headers, records ordered by env_id, temp-file + atomic rename).
void emit_batch(const std::vector<Environment>& envs, const std::vector<ToolSpec>& universe,
                const TypeRegistry& reg, const std::filesystem::path& out_dir,
                BatchStats stats);

// Atomic line-file writer shared by the dataset emitters.
void write_lines_atomic(const std::filesystem::path& path,
                        const std::vector<std::string>& lines);

std::vector<Environment> load_envs(std::istream& in, const std::vector<ToolSpec>& universe);
void save_envs(const std::vector<Environment>& envs, const std::vector<ToolSpec>& universe,
               std::ostream& out);

}  // namespace randomworld
