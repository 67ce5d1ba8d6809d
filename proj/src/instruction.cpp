#include "randomworld/instruction.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace randomworld {

// ------------------------------------------------------------- mask_values

MaskedTrajectory mask_values(const TrajectorySkeleton& skel, const Environment& env,
                             const std::vector<ToolSpec>& universe) {
    MaskedTrajectory masked;
    std::map<VarId, std::string> placeholder;
    std::map<VarId, std::string> user_text;
    for (const auto& u : skel.user_inputs) {
        std::string text = render_value(env.user_input_values.at(u.var));
        user_text[u.var] = text;
        masked.user_input_texts.push_back(text + " (" + u.type->str() + ")");
    }
    for (size_t i = 0; i < skel.calls.size(); ++i) {
        const SkeletonCall& call = skel.calls[i];
        MaskedCall mc;
        mc.tool_name = universe[call.tool_index].name;
        mc.description = universe[call.tool_index].description;
        for (VarId a : call.args) {
            auto u = user_text.find(a);
            if (u != user_text.end())
                mc.arg_texts.push_back(u->second);
            else
                mc.arg_texts.push_back(placeholder.at(a));
        }
        for (size_t j = 0; j < call.outputs.size(); ++j) {
            std::string ph =
                "x_" + std::to_string(i + 1) + "," + std::to_string(j + 1);
            placeholder[call.outputs[j].var] = ph;
            mc.output_placeholders.push_back(ph);
        }
        masked.calls.push_back(std::move(mc));
    }
    return masked;
}

std::string MaskedTrajectory::str() const {
    std::string out = "user inputs: ";
    for (size_t i = 0; i < user_input_texts.size(); ++i) {
        if (i) out += "; ";
        out += user_input_texts[i];
    }
    out += "\n";
    for (size_t i = 0; i < calls.size(); ++i) {
        const MaskedCall& c = calls[i];
        out += c.tool_name + "(";
        for (size_t a = 0; a < c.arg_texts.size(); ++a) {
            if (a) out += ",";
            out += c.arg_texts[a];
        }
        out += ") -> ";
        for (size_t j = 0; j < c.output_placeholders.size(); ++j) {
            if (j) out += ",";
            out += c.output_placeholders[j];
        }
        out += "   [" + c.description + "]\n";
    }
    return out;
}

// ----------------------------------------------------------- realizations

namespace {

const char* kOrdinalWords[] = {"first",      "second",   "third",      "fourth",
                               "fifth",      "sixth",    "seventh",    "eighth",
                               "ninth",      "tenth",    "eleventh",   "twelfth",
                               "thirteenth", "fourteenth", "fifteenth", "sixteenth",
                               "seventeenth", "eighteenth", "nineteenth", "twentieth"};

std::string step_reference(size_t index) {
    if (index < std::size(kOrdinalWords))
        return std::string("the result of the ") + kOrdinalWords[index] + " step";
    return "the result of an earlier step";
}

const char* kDefaultInstructionPrompt =
    "You write one imperative task instruction for a tool-use agent. You are given the "
    "trajectory of tool calls that solves the task, with hidden values replaced by x_i,j "
    "placeholders, plus the user-input values in the clear. Describe what the user wants "
    "without revealing any placeholder value. Reply with the instruction only.";

const char* kDefaultVerifierPrompt =
    "You are a tool-use agent. Call tools with <request><NAME>ARGS<call> and submit the "
    "final answer with Result=VALUE<submit>. One action per message.";

}  // namespace

std::string TemplateRealizer::realize(const MaskedTrajectory& masked, const Environment& env,
                                      const std::vector<ToolSpec>& universe) {
    (void)env;
    (void)universe;
    std::string out;
    std::map<std::string, size_t> produced_at;  // placeholder -> call index
    for (size_t i = 0; i < masked.calls.size(); ++i)
        for (const auto& ph : masked.calls[i].output_placeholders) produced_at[ph] = i;

    for (size_t i = 0; i < masked.calls.size(); ++i) {
        const MaskedCall& c = masked.calls[i];
        if (i == 0)
            out += "First, apply '";
        else if (i + 1 == masked.calls.size())
            out += " Finally, apply '";
        else
            out += (i % 2 ? " Then, apply '" : " Next, apply '");
        out += c.tool_name + "' (" + c.description + ") to ";
        for (size_t a = 0; a < c.arg_texts.size(); ++a) {
            if (a) out += " and ";
            auto it = produced_at.find(c.arg_texts[a]);
            if (it != produced_at.end())
                out += step_reference(it->second);
            else
                out += c.arg_texts[a];
        }
        out += ".";
    }
    out += " Report the final result.";
    return out;
}

GatewayRealizer::GatewayRealizer(Gateway* gateway, std::string system_prompt)
    : gateway_(gateway),
      system_prompt_(system_prompt.empty() ? kDefaultInstructionPrompt
                                           : std::move(system_prompt)) {}

std::string GatewayRealizer::realize(const MaskedTrajectory& masked, const Environment& env,
                                     const std::vector<ToolSpec>& universe) {
    (void)env;
    (void)universe;
    std::string reply = gateway_->complete(system_prompt_, masked.str());
    if (reply.empty()) throw InstructionError("instruction generation returned empty text");
    return reply;
}

std::string generate_instruction(const MaskedTrajectory& masked, const Environment& env,
                                 const std::vector<ToolSpec>& universe,
                                 InstructionBackend& backend) {
    std::string text = backend.realize(masked, env, universe);
    if (text.empty()) throw InstructionError("instruction generation returned empty text");
    for (const auto& [app, cred] : env.apps) {
        text += " My " + app + " username is " + cred.username + ".";
        if (env.disclose_password)
            text += " My " + app + " password is " + cred.password + ".";
    }
    return text;
}

// ------------------------------------------------------------ verification

std::string eased_verification_prompt(const Environment& env,
                                      const std::vector<ToolSpec>& universe,
                                      const TypeRegistry& reg) {
    std::string out = "The tools at your disposal:\n";
    std::set<std::string> atom_names;
    auto note_atoms = [&](TypeRef t, auto&& self) -> void {
        switch (t->kind()) {
            case TypeExpr::Kind::Atom: atom_names.insert(t->atom_name()); break;
            case TypeExpr::Kind::List: self(t->elem(), self); break;
            case TypeExpr::Kind::Dict:
                self(t->key(), self);
                self(t->val(), self);
                break;
            case TypeExpr::Kind::Union:
                for (TypeRef m : t->members()) self(m, self);
                break;
        }
    };
    // Required tools only, in gold (first-use) order, with full signatures.
    for (int idx : env.required_tools) {
        const ToolSpec& t = universe[idx];
        Signature sig{t.inputs, t.outputs};
        out += t.name + ": " + t.description + " (signature: " + sig.str() + ")\n";
        for (const auto& s : t.inputs) note_atoms(s.type, note_atoms);
        for (const auto& s : t.outputs) note_atoms(s.type, note_atoms);
    }
    out += "\nType reference:\n";
    uint64_t example_stream = 0;
    for (const auto& name : atom_names) {
        if (!reg.has_atom(name)) continue;
        out += name + ": " + reg.atom(name).description;
        Rng rng(derive_seed(env.seed, ++example_stream));
        GenConfig gen(2, 3);
        out += ", e.g. " + render_value(reg.generate(types().atom(name), gen, rng));
        out += " or " + render_value(reg.generate(types().atom(name), gen, rng));
        out += "\n";
    }
    out += "\n" + env.instruction + "\n";
    return out;
}

void GoldReplayVerifier::drive(Session& session, const std::string& eased_prompt) {
    (void)eased_prompt;
    for (const auto& msg : gold_actions(session.env(), *universe_, /*include_logins=*/false)) {
        if (session.status() != SessionStatus::Running) break;
        session.step(msg);
    }
}

GatewayVerifier::GatewayVerifier(Gateway* gateway, std::string system_prompt)
    : gateway_(gateway),
      system_prompt_(system_prompt.empty() ? kDefaultVerifierPrompt
                                           : std::move(system_prompt)) {}

void GatewayVerifier::drive(Session& session, const std::string& eased_prompt) {
    std::string conversation = eased_prompt;
    while (session.status() == SessionStatus::Running) {
        std::string reply = gateway_->complete(system_prompt_, conversation);
        std::string obs = session.step(reply);
        conversation += "\n" + reply + "\n" + obs;
    }
}

VerificationReport verify_instruction(const Environment& env,
                                      const std::vector<ToolSpec>& universe,
                                      const TypeRegistry& reg, Verifier& verifier) {
    SessionConfig cfg;
    cfg.disable_login = true;
    Session session(&env, &universe, cfg, &reg);
    std::string prompt = eased_verification_prompt(env, universe, reg);
    verifier.drive(session, prompt);
    VerificationReport report;
    report.transcript = session.history();
    report.passed =
        session.status() != SessionStatus::Running && session.reward() == 1.0;
    report.advantages_applied = {"typed-signatures-with-examples", "no-distractors",
                                 "gold-order-tools", "login-disabled"};
    return report;
}

// ----------------------------------------------------------------- leakage

namespace {

bool boundary_contains(const std::string& text, const std::string& needle) {
    if (needle.empty()) return false;
    size_t from = 0;
    while (true) {
        size_t at = text.find(needle, from);
        if (at == std::string::npos) return false;
        bool left_ok = at == 0 || !std::isalnum((unsigned char)text[at - 1]);
        size_t end = at + needle.size();
        bool right_ok = end >= text.size() || !std::isalnum((unsigned char)text[end]);
        if (left_ok && right_ok) return true;
        from = at + 1;
    }
}

void collect_scalar_texts(const Value& v, std::vector<std::string>& out) {
    if (v.is_string()) {
        out.push_back(v.as_string());
    } else if (v.is_list()) {
        for (const auto& e : v.as_list()) collect_scalar_texts(e, out);
    } else if (v.is_dict()) {
        for (const auto& [k, val] : v.as_dict()) {
            collect_scalar_texts(k, out);
            collect_scalar_texts(val, out);
        }
    } else {
        out.push_back(render_value(v));
    }
}

std::vector<std::string> lower_words(const std::string& text) {
    std::vector<std::string> words;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            cur += (char)std::tolower(c);
        } else if (!cur.empty()) {
            words.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) words.push_back(cur);
    return words;
}

}  // namespace

bool leaks_output_values(const Environment& env, const std::string& text) {
    std::set<std::string> disclosed;
    for (const auto& [var, v] : env.user_input_values) {
        std::vector<std::string> texts;
        collect_scalar_texts(v, texts);
        disclosed.insert(texts.begin(), texts.end());
    }
    // Hidden values: everything the memo table produced plus the goal tuple.
    std::vector<std::string> hidden;
    for (const auto& v : env.goal_state) collect_scalar_texts(v, hidden);
    nlohmann::json memo = env.memo.to_json();
    for (auto t = memo.begin(); t != memo.end(); ++t)
        for (auto e = t.value().begin(); e != t.value().end(); ++e)
            for (const auto& out : e.value()) collect_scalar_texts(value_from_json(out), hidden);
    for (const auto& h : hidden) {
        if (h.size() < 1 || disclosed.count(h)) continue;
        if (boundary_contains(text, h)) return true;
    }
    return false;
}

bool shares_tool_ngram(const Environment& env, const std::vector<ToolSpec>& universe,
                       const std::string& text, int min_words) {
    auto text_words = lower_words(text);
    if ((int)text_words.size() < min_words) return false;
    std::set<std::string> grams;
    for (size_t i = 0; i + min_words <= text_words.size(); ++i) {
        std::string g;
        for (int k = 0; k < min_words; ++k) g += text_words[i + k] + " ";
        grams.insert(g);
    }
    for (int idx : env.required_tools) {
        const ToolSpec& t = universe[idx];
        auto tool_words = lower_words(t.name + " " + t.description);
        for (size_t i = 0; i + min_words <= tool_words.size(); ++i) {
            std::string g;
            for (int k = 0; k < min_words; ++k) g += tool_words[i + k] + " ";
            if (grams.count(g)) return true;
        }
    }
    return false;
}

}  // namespace randomworld
