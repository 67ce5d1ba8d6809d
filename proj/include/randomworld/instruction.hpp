#pragma once

#include <memory>
#include <string>
#include <vector>

#include "randomworld/gateway.hpp"
#include "randomworld/session.hpp"

namespace randomworld {

struct InstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Trajectory description handed to the instruction generator: user-input
// values in the clear, every tool output replaced by an x_i,j placeholder.
struct MaskedCall {
    std::string tool_name;
    std::string description;
    std::vector<std::string> arg_texts;
    std::vector<std::string> output_placeholders;
};

struct MaskedTrajectory {
    std::vector<std::string> user_input_texts;  // canonical value (type) pairs
    std::vector<MaskedCall> calls;

    std::string str() const;
};

MaskedTrajectory mask_values(const TrajectorySkeleton& skel, const Environment& env,
                             const std::vector<ToolSpec>& universe);

// Instruction text backends. Both receive the masked trajectory only; the
// credential sentences (username, and password iff disclosed) are appended
// uniformly by generate_instruction.
class InstructionBackend {
public:
    virtual ~InstructionBackend() = default;
    virtual std::string realize(const MaskedTrajectory& masked, const Environment& env,
                                const std::vector<ToolSpec>& universe) = 0;
};

// Deterministic offline realizer: one clause per call in execution order,
// composed from the tool descriptions and the user-input values.
class TemplateRealizer : public InstructionBackend {
public:
    std::string realize(const MaskedTrajectory& masked, const Environment& env,
                        const std::vector<ToolSpec>& universe) override;
};

class GatewayRealizer : public InstructionBackend {
public:
    GatewayRealizer(Gateway* gateway, std::string system_prompt = {});
    std::string realize(const MaskedTrajectory& masked, const Environment& env,
                        const std::vector<ToolSpec>& universe) override;

private:
    Gateway* gateway_;
    std::string system_prompt_;
};

std::string generate_instruction(const MaskedTrajectory& masked, const Environment& env,
                                 const std::vector<ToolSpec>& universe,
                                 InstructionBackend& backend);

// Instruction verification: a verifier agent must reach the goal state under
// four advantages (typed signatures with type descriptions and examples,
// required tools only in gold order, no distractors, login disabled).
struct VerificationReport {
    bool passed = false;
    std::vector<TranscriptEntry> transcript;
    std::vector<std::string> advantages_applied;
};

class Verifier {
public:
    virtual ~Verifier() = default;
    // Drives the session to a terminal state given the eased prompt.
    virtual void drive(Session& session, const std::string& eased_prompt) = 0;
};

// Offline verifier: replays the gold action sequence.
class GoldReplayVerifier : public Verifier {
public:
    explicit GoldReplayVerifier(const std::vector<ToolSpec>* universe) : universe_(universe) {}
    void drive(Session& session, const std::string& eased_prompt) override;

private:
    const std::vector<ToolSpec>* universe_;
};

// Gateway-backed verifier: feeds the prompt and observations to the chat
// backend turn by turn.
class GatewayVerifier : public Verifier {
public:
    GatewayVerifier(Gateway* gateway, std::string system_prompt = {});
    void drive(Session& session, const std::string& eased_prompt) override;

private:
    Gateway* gateway_;
    std::string system_prompt_;
};

// Prompt with the verification advantages applied.
std::string eased_verification_prompt(const Environment& env,
                                      const std::vector<ToolSpec>& universe,
                                      const TypeRegistry& reg);

VerificationReport verify_instruction(const Environment& env,
                                      const std::vector<ToolSpec>& universe,
                                      const TypeRegistry& reg, Verifier& verifier);

// Leakage checks. Output-value containment is word-boundary based and skips
// strings already disclosed as user inputs.
bool leaks_output_values(const Environment& env, const std::string& text);

// Appendix-style name/description overlap heuristic: true when the text
// shares a run of min_words or more consecutive words with any required
// tool's name or description.
bool shares_tool_ngram(const Environment& env, const std::vector<ToolSpec>& universe,
                       const std::string& text, int min_words = 4);

}  // namespace randomworld
