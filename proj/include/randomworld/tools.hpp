#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "randomworld/types.hpp"

namespace randomworld {

// Single error channel for tool invocation, verbatim protocol string.
inline constexpr std::string_view kInvalidInputError = "Tool error: invalid input format";

enum class ToolOrigin { Forged, Handcrafted };
enum class CalcOp { None, Add, Sub, Mul, Div, Max, Min };

// One typed signature slot. is_tvar marks a bounded type variable (t <= type):
// the slot accepts any subtype of the bound, and a t-typed output resolves to
// the join of the argument types wired into the t-annotated inputs.
struct TypeSlot {
    TypeRef type = nullptr;
    bool is_tvar = false;
};

struct ToolSpec {
    std::string name;
    std::string description;
    std::vector<TypeSlot> inputs;
    std::vector<TypeSlot> outputs;
    std::optional<std::string> app;
    ToolOrigin origin = ToolOrigin::Forged;
    int score = 5;
    CalcOp calc = CalcOp::None;

    bool dependent() const;
};

struct ForgeConfig {
    int n_inputs_min = 1;
    int n_inputs_max = 3;
    int m_outputs_min = 1;
    int m_outputs_max = 2;
    double p_constructed = 0.25;
    int max_constructor_depth = 2;
    int score_threshold = 4;
};

struct Signature {
    std::vector<TypeSlot> inputs;
    std::vector<TypeSlot> outputs;
    std::string str() const;
};

// Draws a candidate signature over the registry's custom atoms. Signatures
// where an output type equals an input type exactly are rejected and
// resampled (degenerate identity tools).
Signature sample_signature(const ForgeConfig& cfg, const TypeRegistry& reg, Rng& rng);

struct NameProposal {
    std::string name;
    std::string description;
    int score = 0;
};

// Naming backend: turns a signature into a named, described, scored tool.
class Namer {
public:
    virtual ~Namer() = default;
    virtual NameProposal propose(const Signature& sig, const TypeRegistry& reg) = 0;
};

// Deterministic offline realizer. Composes names and descriptions from the
// slot types' registry descriptions; always scores 5.
class TemplateNamer : public Namer {
public:
    explicit TemplateNamer(uint64_t seed = 0) : seed_(seed) {}
    NameProposal propose(const Signature& sig, const TypeRegistry& reg) override;

private:
    uint64_t seed_;
};

struct ForgeOutcome {
    std::optional<ToolSpec> tool;  // empty when discarded
    int score = 0;
};

// Scores the candidate and either retains it (with a universe-unique name,
// suffix-disambiguated) or discards it when score < cfg.score_threshold.
ForgeOutcome forge_tool(const Signature& sig, Namer& namer, const ForgeConfig& cfg,
                        const TypeRegistry& reg, std::set<std::string>& taken_names);

// Per-tool input/output memo. Append-only within an environment's lifetime;
// keys are canonical renderings of the argument tuple.
class MemoTable {
public:
    static std::string canonical_key(const std::vector<Value>& args);

    const std::vector<Value>* lookup(const std::string& tool, const std::string& key) const;
    void store(const std::string& tool, const std::string& key, std::vector<Value> outputs);
    size_t size() const;

    nlohmann::json to_json() const;
    static MemoTable from_json(const nlohmann::json& j);

private:
    std::map<std::string, std::map<std::string, std::vector<Value>>> entries_;
};

struct InvokeResult {
    bool ok = false;
    std::vector<Value> outputs;
    std::string error;

    static InvokeResult invalid() {
        return {false, {}, std::string(kInvalidInputError)};
    }
    static InvokeResult success(std::vector<Value> out) { return {true, std::move(out), {}}; }
};

// Type-checks the arguments, then answers from the memo table or samples
// fresh outputs from the output type generators (calculators compute
// exactly). Every fresh pair is stored, so a repeated call replays the same
// outputs.
InvokeResult invoke(const ToolSpec& tool, MemoTable& memo, const std::vector<Value>& args,
                    const TypeRegistry& reg, const GenConfig& gen_cfg, Rng& rng);

// The six hand-crafted calculators: add, sub, mul, div, max, min, each typed
// (t <= float) x (t <= float) -> t; max and min additionally accept a single
// list(t <= float) argument at invocation time.
std::vector<ToolSpec> builtin_tools();

// Output types of `tool` when its inputs are wired to variables of the given
// declared types. Type-variable outputs resolve to the join of the argument
// types on t-annotated slots; joins landing on a proper subtype of `int` are
// widened to `int`, since computed integer results are not confined to the
// subtype's value format.
std::vector<TypeRef> resolve_output_types(const ToolSpec& tool,
                                          const std::vector<TypeRef>& arg_types,
                                          const TypeRegistry& reg);

void save_tools(const std::vector<ToolSpec>& tools, std::ostream& out);
std::vector<ToolSpec> load_tools(std::istream& in);

const ToolSpec* find_tool(const std::vector<ToolSpec>& tools, std::string_view name);

}  // namespace randomworld
