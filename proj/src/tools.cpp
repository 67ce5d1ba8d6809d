#include "randomworld/tools.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>

#include "randomworld/decimal.hpp"

namespace randomworld {

bool ToolSpec::dependent() const {
    for (const auto& s : inputs)
        if (s.is_tvar) return true;
    for (const auto& s : outputs)
        if (s.is_tvar) return true;
    return false;
}

std::string Signature::str() const {
    std::string s;
    for (size_t i = 0; i < inputs.size(); ++i) {
        if (i) s += " x ";
        s += inputs[i].is_tvar ? "t<=" + inputs[i].type->str() : inputs[i].type->str();
    }
    s += " -> ";
    for (size_t i = 0; i < outputs.size(); ++i) {
        if (i) s += " x ";
        s += outputs[i].is_tvar ? "t" : outputs[i].type->str();
    }
    return s;
}

// ---------------------------------------------------------------- sampling

namespace {

TypeRef sample_atom(const TypeRegistry& reg, Rng& rng) {
    const auto& atoms = reg.custom_atoms();
    return types().atom(atoms[rng.uniform_u64(atoms.size())]);
}

TypeRef sample_type(const ForgeConfig& cfg, const TypeRegistry& reg, Rng& rng, int depth) {
    if (depth <= 0 || !rng.bernoulli(cfg.p_constructed)) return sample_atom(reg, rng);
    switch (rng.uniform_u64(3)) {
        case 0:
            return types().list(sample_type(cfg, reg, rng, depth - 1));
        case 1:
            // Dict keys stay atomic: the value space only admits scalar keys.
            return types().dict(sample_atom(reg, rng), sample_type(cfg, reg, rng, depth - 1));
        default: {
            TypeRef a = sample_type(cfg, reg, rng, depth - 1);
            TypeRef b = sample_type(cfg, reg, rng, depth - 1);
            if (a == b) return a;
            return types().union_of({a, b});
        }
    }
}

}  // namespace

Signature sample_signature(const ForgeConfig& cfg, const TypeRegistry& reg, Rng& rng) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Signature sig;
        int n = (int)rng.uniform_int(cfg.n_inputs_min, cfg.n_inputs_max);
        int m = (int)rng.uniform_int(cfg.m_outputs_min, cfg.m_outputs_max);
        for (int i = 0; i < n; ++i)
            sig.inputs.push_back({sample_type(cfg, reg, rng, cfg.max_constructor_depth), false});
        for (int j = 0; j < m; ++j)
            sig.outputs.push_back({sample_type(cfg, reg, rng, cfg.max_constructor_depth), false});
        bool degenerate = false;
        for (const auto& out : sig.outputs)
            for (const auto& in : sig.inputs)
                if (out.type == in.type) degenerate = true;
        if (!degenerate) return sig;
    }
    throw std::runtime_error("sample_signature: could not draw a non-degenerate signature");
}

// ------------------------------------------------------------ TemplateNamer

namespace {

// Short noun for a type, used in tool names.
std::string type_noun(TypeRef t) {
    switch (t->kind()) {
        case TypeExpr::Kind::Atom:
            return t->atom_name();
        case TypeExpr::Kind::List:
            return type_noun(t->elem()) + "-list";
        case TypeExpr::Kind::Dict:
            return type_noun(t->key()) + "-" + type_noun(t->val()) + "-map";
        case TypeExpr::Kind::Union: {
            std::string s;
            for (TypeRef m : t->members()) {
                if (!s.empty()) s += "-or-";
                s += type_noun(m);
            }
            return s;
        }
    }
    return "value";
}

std::string type_phrase(TypeRef t, const TypeRegistry& reg) {
    switch (t->kind()) {
        case TypeExpr::Kind::Atom:
            return reg.atom(t->atom_name()).description;
        case TypeExpr::Kind::List:
            return "list of entries, each the " + type_phrase(t->elem(), reg);
        case TypeExpr::Kind::Dict:
            return "mapping from the " + type_phrase(t->key(), reg) + " to the " +
                   type_phrase(t->val(), reg);
        case TypeExpr::Kind::Union: {
            std::string s;
            for (TypeRef m : t->members()) {
                if (!s.empty()) s += ", or the ";
                s += type_phrase(m, reg);
            }
            return s;
        }
    }
    return "value";
}

uint64_t fnv1a(std::string_view s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

NameProposal TemplateNamer::propose(const Signature& sig, const TypeRegistry& reg) {
    std::string in_noun = type_noun(sig.inputs.front().type);
    std::string out_noun = type_noun(sig.outputs.front().type);
    uint64_t h = fnv1a(sig.str()) ^ seed_;
    static const char* suffixes[] = {"lookup", "finder", "fetcher", "matcher", "resolver",
                                     "checker"};
    std::string name;
    switch (h % 4) {
        case 0: name = in_noun + "-to-" + out_noun; break;
        case 1: name = out_noun + "-for-" + in_noun; break;
        case 2: name = out_noun + "-" + suffixes[(h >> 8) % 6]; break;
        default: name = in_noun + "-" + out_noun + "-" + suffixes[(h >> 8) % 6]; break;
    }
    std::string desc = "returns the ";
    for (size_t j = 0; j < sig.outputs.size(); ++j) {
        if (j) desc += " and the ";
        desc += type_phrase(sig.outputs[j].type, reg);
    }
    desc += " for a given ";
    for (size_t i = 0; i < sig.inputs.size(); ++i) {
        if (i) desc += " and ";
        desc += type_phrase(sig.inputs[i].type, reg);
    }
    return {name, desc, 5};
}

ForgeOutcome forge_tool(const Signature& sig, Namer& namer, const ForgeConfig& cfg,
                        const TypeRegistry& reg, std::set<std::string>& taken_names) {
    NameProposal p = namer.propose(sig, reg);
    if (p.score < cfg.score_threshold) return {std::nullopt, p.score};
    std::string name = p.name;
    for (int suffix = 2; taken_names.count(name); ++suffix)
        name = p.name + "-" + std::to_string(suffix);
    taken_names.insert(name);
    ToolSpec tool;
    tool.name = std::move(name);
    tool.description = p.description;
    tool.inputs = sig.inputs;
    tool.outputs = sig.outputs;
    tool.origin = ToolOrigin::Forged;
    tool.score = p.score;
    return {std::move(tool), p.score};
}

// ----------------------------------------------------------------- MemoTable

std::string MemoTable::canonical_key(const std::vector<Value>& args) {
    return "[" + render_values(args) + "]";
}

const std::vector<Value>* MemoTable::lookup(const std::string& tool,
                                            const std::string& key) const {
    auto t = entries_.find(tool);
    if (t == entries_.end()) return nullptr;
    auto e = t->second.find(key);
    return e == t->second.end() ? nullptr : &e->second;
}

void MemoTable::store(const std::string& tool, const std::string& key,
                      std::vector<Value> outputs) {
    entries_[tool][key] = std::move(outputs);
}

size_t MemoTable::size() const {
    size_t n = 0;
    for (const auto& [_, m] : entries_) n += m.size();
    return n;
}

nlohmann::json MemoTable::to_json() const {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [tool, m] : entries_) {
        nlohmann::json inner = nlohmann::json::object();
        for (const auto& [key, outs] : m) {
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& v : outs) arr.push_back(value_to_json(v));
            inner[key] = arr;
        }
        j[tool] = inner;
    }
    return j;
}

MemoTable MemoTable::from_json(const nlohmann::json& j) {
    MemoTable memo;
    for (auto t = j.begin(); t != j.end(); ++t)
        for (auto e = t.value().begin(); e != t.value().end(); ++e) {
            std::vector<Value> outs;
            for (const auto& v : e.value()) outs.push_back(value_from_json(v));
            memo.store(t.key(), e.key(), std::move(outs));
        }
    return memo;
}

// ------------------------------------------------------------- calculators

namespace {

InvokeResult run_calculator(const ToolSpec& tool, const std::vector<Value>& args) {
    // max/min accept a single list of numerics in place of the scalar pair.
    std::vector<Value> operands;
    if ((tool.calc == CalcOp::Max || tool.calc == CalcOp::Min) && args.size() == 1 &&
        args[0].is_list()) {
        operands = args[0].as_list();
        if (operands.empty()) return InvokeResult::invalid();
    } else {
        if (args.size() != tool.inputs.size()) return InvokeResult::invalid();
        operands = args;
    }
    for (const auto& v : operands)
        if (!v.is_numeric()) return InvokeResult::invalid();

    if (tool.calc == CalcOp::Max || tool.calc == CalcOp::Min) {
        size_t best = 0;
        for (size_t i = 1; i < operands.size(); ++i) {
            Decimal a = Decimal::from_value(operands[i]);
            Decimal b = Decimal::from_value(operands[best]);
            bool less = a.less_than(b);
            if (tool.calc == CalcOp::Min ? less : b.less_than(a)) best = i;
        }
        return InvokeResult::success({operands[best]});
    }

    if (operands.size() != 2) return InvokeResult::invalid();
    Decimal a = Decimal::from_value(operands[0]);
    Decimal b = Decimal::from_value(operands[1]);
    bool ints = operands[0].is_int() && operands[1].is_int();
    try {
        Decimal r = [&] {
            switch (tool.calc) {
                case CalcOp::Add: return a.add(b);
                case CalcOp::Sub: return a.sub(b);
                case CalcOp::Mul: return a.mul(b);
                case CalcOp::Div: return a.div(b);
                default: throw std::logic_error("not a calculator");
            }
        }();
        return InvokeResult::success({r.to_value(ints)});
    } catch (const std::domain_error&) {
        // Division by zero reports through the single error channel.
        return InvokeResult::invalid();
    }
}

}  // namespace

InvokeResult invoke(const ToolSpec& tool, MemoTable& memo, const std::vector<Value>& args,
                    const TypeRegistry& reg, const GenConfig& gen_cfg, Rng& rng) {
    bool list_form = (tool.calc == CalcOp::Max || tool.calc == CalcOp::Min) &&
                     args.size() == 1 && args[0].is_list();
    if (!list_form) {
        if (args.size() != tool.inputs.size()) return InvokeResult::invalid();
        for (size_t i = 0; i < args.size(); ++i)
            if (!reg.recognize(tool.inputs[i].type, args[i])) return InvokeResult::invalid();
    }

    std::string key = MemoTable::canonical_key(args);
    if (const auto* hit = memo.lookup(tool.name, key)) return InvokeResult::success(*hit);

    InvokeResult result;
    if (tool.calc != CalcOp::None) {
        result = run_calculator(tool, args);
        if (!result.ok) return result;
    } else {
        std::vector<Value> outs;
        outs.reserve(tool.outputs.size());
        for (const auto& slot : tool.outputs)
            outs.push_back(reg.generate(slot.type, gen_cfg, rng));
        result = InvokeResult::success(std::move(outs));
    }
    memo.store(tool.name, key, result.outputs);
    return result;
}

std::vector<ToolSpec> builtin_tools() {
    TypeRef flt = types().atom("float");
    auto make = [&](const char* name, const char* desc, CalcOp op) {
        ToolSpec t;
        t.name = name;
        t.description = desc;
        t.inputs = {{flt, true}, {flt, true}};
        t.outputs = {{flt, true}};
        t.origin = ToolOrigin::Handcrafted;
        t.calc = op;
        return t;
    };
    return {
        make("add", "sums two values together", CalcOp::Add),
        make("sub", "subtracts the second argument from the first", CalcOp::Sub),
        make("mul", "multiplies two values together", CalcOp::Mul),
        make("div", "divides the first argument by the second", CalcOp::Div),
        make("max", "returns the maximum of a list of values", CalcOp::Max),
        make("min", "returns the minimum of a list of values", CalcOp::Min),
    };
}

std::vector<TypeRef> resolve_output_types(const ToolSpec& tool,
                                          const std::vector<TypeRef>& arg_types,
                                          const TypeRegistry& reg) {
    TypeRef tvar = nullptr;
    for (size_t i = 0; i < tool.inputs.size() && i < arg_types.size(); ++i) {
        if (!tool.inputs[i].is_tvar) continue;
        tvar = tvar ? reg.join(tvar, arg_types[i]) : arg_types[i];
    }
    if (tvar && tvar->is_atom()) {
        const AtomDef& def = reg.atom(tvar->atom_name());
        if (def.root == RootKind::Int && tvar->atom_name() != "int")
            tvar = types().atom("int");
    }
    std::vector<TypeRef> outs;
    outs.reserve(tool.outputs.size());
    for (const auto& slot : tool.outputs) {
        if (slot.is_tvar) {
            if (!tvar) throw std::logic_error("dependent output with no bound argument type");
            outs.push_back(tvar);
        } else {
            outs.push_back(slot.type);
        }
    }
    return outs;
}

// --------------------------------------------------------------- file io

namespace {

nlohmann::json slot_to_json(const TypeSlot& s, bool output) {
    if (s.is_tvar) return output ? "t" : "t<=" + s.type->str();
    return s.type->str();
}

TypeSlot slot_from_json(const nlohmann::json& j, TypeRef tvar_bound) {
    std::string s = j.get<std::string>();
    if (s == "t") return {tvar_bound ? tvar_bound : types().atom("float"), true};
    if (s.rfind("t<=", 0) == 0) return {types().parse(s.substr(3)), true};
    return {types().parse(s), false};
}

}  // namespace

void save_tools(const std::vector<ToolSpec>& tools, std::ostream& out) {
    out << nlohmann::json{{"schema", "randomworld.tools"}, {"version", 1}}.dump() << "\n";
    for (const auto& t : tools) {
        nlohmann::json rec;
        rec["name"] = t.name;
        rec["description"] = t.description;
        nlohmann::json ins = nlohmann::json::array(), outs = nlohmann::json::array();
        for (const auto& s : t.inputs) ins.push_back(slot_to_json(s, false));
        for (const auto& s : t.outputs) outs.push_back(slot_to_json(s, true));
        rec["inputs"] = ins;
        rec["outputs"] = outs;
        rec["app"] = t.app ? nlohmann::json(*t.app) : nlohmann::json(nullptr);
        rec["origin"] = t.origin == ToolOrigin::Forged ? "forged" : "handcrafted";
        rec["score"] = t.score;
        if (t.calc != CalcOp::None) rec["calc"] = t.name;
        out << rec.dump() << "\n";
    }
}

std::vector<ToolSpec> load_tools(std::istream& in) {
    std::vector<ToolSpec> tools;
    std::string line;
    bool header_seen = false;
    static const std::map<std::string, CalcOp> calc_names{
        {"add", CalcOp::Add}, {"sub", CalcOp::Sub}, {"mul", CalcOp::Mul},
        {"div", CalcOp::Div}, {"max", CalcOp::Max}, {"min", CalcOp::Min}};
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line);
        if (!header_seen) {
            if (!rec.contains("schema") || rec["schema"] != "randomworld.tools")
                throw std::runtime_error("tools file: missing schema header");
            header_seen = true;
            continue;
        }
        ToolSpec t;
        t.name = rec.at("name").get<std::string>();
        t.description = rec.at("description").get<std::string>();
        TypeRef bound = nullptr;
        for (const auto& s : rec.at("inputs")) {
            TypeSlot slot = slot_from_json(s, nullptr);
            if (slot.is_tvar && !bound) bound = slot.type;
            t.inputs.push_back(slot);
        }
        for (const auto& s : rec.at("outputs")) t.outputs.push_back(slot_from_json(s, bound));
        if (!rec.at("app").is_null()) t.app = rec["app"].get<std::string>();
        t.origin = rec.at("origin") == "forged" ? ToolOrigin::Forged : ToolOrigin::Handcrafted;
        t.score = rec.at("score").get<int>();
        if (rec.contains("calc")) {
            auto it = calc_names.find(rec["calc"].get<std::string>());
            if (it == calc_names.end())
                throw std::runtime_error("tools file: unknown calculator " +
                                         rec["calc"].get<std::string>());
            t.calc = it->second;
        }
        tools.push_back(std::move(t));
    }
    return tools;
}

const ToolSpec* find_tool(const std::vector<ToolSpec>& tools, std::string_view name) {
    for (const auto& t : tools)
        if (t.name == name) return &t;
    return nullptr;
}

}  // namespace randomworld
