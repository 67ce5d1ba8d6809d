#include "randomworld/session.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace randomworld {

// --------------------------------------------------------------- literals

namespace {

struct LitParser {
    const std::string& s;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
    }

    bool at_end() {
        skip_ws();
        return pos >= s.size();
    }

    // Opening quote styles: ' " ` and ``; the backtick forms close with
    // apostrophes (LaTeX-style quoting appears verbatim in agent output).
    std::optional<std::string> try_string() {
        skip_ws();
        if (pos >= s.size()) return std::nullopt;
        std::string closer;
        if (s.compare(pos, 2, "``") == 0) {
            closer = "''";
            pos += 2;
        } else if (s[pos] == '`') {
            closer = "'";
            ++pos;
        } else if (s[pos] == '\'' || s[pos] == '"') {
            closer = s[pos];
            ++pos;
        } else {
            return std::nullopt;
        }
        size_t end = s.find(closer, pos);
        if (end == std::string::npos) return std::nullopt;
        std::string content = s.substr(pos, end - pos);
        pos = end + closer.size();
        return content;
    }

    std::optional<Value> try_number() {
        skip_ws();
        size_t start = pos;
        size_t p = pos;
        if (p < s.size() && (s[p] == '+' || s[p] == '-')) ++p;
        size_t digits_start = p;
        while (p < s.size() && std::isdigit((unsigned char)s[p])) ++p;
        bool is_float = false;
        if (p < s.size() && s[p] == '.') {
            is_float = true;
            ++p;
            while (p < s.size() && std::isdigit((unsigned char)s[p])) ++p;
        }
        if (p == digits_start || (is_float && p == digits_start + 1)) return std::nullopt;
        if (p < s.size() && (s[p] == 'e' || s[p] == 'E')) {
            size_t e = p + 1;
            if (e < s.size() && (s[e] == '+' || s[e] == '-')) ++e;
            size_t exp_digits = e;
            while (e < s.size() && std::isdigit((unsigned char)s[e])) ++e;
            if (e > exp_digits) {
                is_float = true;
                p = e;
            }
        }
        std::string text = s.substr(start, p - start);
        pos = p;
        if (!is_float) {
            int64_t v = 0;
            auto [ptr, ec] = std::from_chars(text.data() + (text[0] == '+' ? 1 : 0),
                                             text.data() + text.size(), v);
            if (ec == std::errc() && ptr == text.data() + text.size()) {
                if (text[0] == '+') return Value(v);
                return Value(v);
            }
            // Out-of-range integers degrade to doubles.
        }
        return Value(std::strtod(text.c_str(), nullptr));
    }

    std::optional<Value> parse_value() {
        skip_ws();
        if (pos >= s.size()) return std::nullopt;
        char c = s[pos];
        if (c == '[') {
            ++pos;
            Value::List xs;
            skip_ws();
            if (pos < s.size() && s[pos] == ']') {
                ++pos;
                return Value(std::move(xs));
            }
            while (true) {
                auto v = parse_value();
                if (!v) return std::nullopt;
                xs.push_back(std::move(*v));
                skip_ws();
                if (pos >= s.size()) return std::nullopt;
                if (s[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (s[pos] == ']') {
                    ++pos;
                    return Value(std::move(xs));
                }
                return std::nullopt;
            }
        }
        if (c == '{') {
            ++pos;
            Value::Dict kv;
            skip_ws();
            if (pos < s.size() && s[pos] == '}') {
                ++pos;
                return Value(std::move(kv));
            }
            while (true) {
                auto k = parse_value();
                if (!k || !k->is_scalar()) return std::nullopt;
                skip_ws();
                if (pos >= s.size() || s[pos] != ':') return std::nullopt;
                ++pos;
                auto v = parse_value();
                if (!v) return std::nullopt;
                kv.emplace_back(std::move(*k), std::move(*v));
                skip_ws();
                if (pos >= s.size()) return std::nullopt;
                if (s[pos] == ',') {
                    ++pos;
                    continue;
                }
                if (s[pos] == '}') {
                    ++pos;
                    return Value(std::move(kv));
                }
                return std::nullopt;
            }
        }
        if (auto str = try_string()) return Value(std::move(*str));
        return try_number();
    }
};

}  // namespace

std::optional<Value> parse_literal(const std::string& text) {
    LitParser p{text};
    auto v = p.parse_value();
    if (!v || !p.at_end()) return std::nullopt;
    return v;
}

std::optional<std::vector<Value>> parse_literal_list(const std::string& text) {
    LitParser p{text};
    std::vector<Value> out;
    if (p.at_end()) return out;  // zero arguments
    while (true) {
        auto v = p.parse_value();
        if (!v) return std::nullopt;
        out.push_back(std::move(*v));
        if (p.at_end()) return out;
        p.skip_ws();
        if (p.pos >= p.s.size() || p.s[p.pos] != ',') return std::nullopt;
        ++p.pos;
    }
}

// ----------------------------------------------------------------- actions

std::optional<Action> parse_action(const std::string& text) {
    std::optional<Action> best;
    size_t best_pos = 0;

    // Tool calls: <request><NAME>ARGS<call>
    size_t from = 0;
    while (true) {
        size_t start = text.find(kRequestTok, from);
        if (start == std::string::npos) break;
        from = start + 1;
        size_t name_open = start + kRequestTok.size();
        if (name_open >= text.size() || text[name_open] != '<') continue;
        size_t name_close = text.find('>', name_open + 1);
        if (name_close == std::string::npos) continue;
        std::string name = text.substr(name_open + 1, name_close - name_open - 1);
        if (name.empty() || name.find('<') != std::string::npos) continue;
        size_t call = text.find(kCallTok, name_close + 1);
        if (call == std::string::npos) continue;
        // A nested <request> before <call> belongs to a later candidate.
        size_t nested = text.find(kRequestTok, name_open);
        if (nested != std::string::npos && nested < call) continue;
        Action a;
        a.kind = Action::Kind::ToolCall;
        a.raw = text.substr(start, call + kCallTok.size() - start);
        a.tool_name = std::move(name);
        a.raw_args = text.substr(name_close + 1, call - name_close - 1);
        auto args = parse_literal_list(a.raw_args);
        if (args) a.args = std::move(*args);
        if (!best || start >= best_pos) {
            best_pos = start;
            best = std::move(a);
        }
    }

    // Submissions: Result=VALUE<submit>
    from = 0;
    while (true) {
        size_t start = text.find(kResultPrefix, from);
        if (start == std::string::npos) break;
        from = start + 1;
        size_t submit = text.find(kSubmitTok, start);
        if (submit == std::string::npos) continue;
        std::string raw_value =
            text.substr(start + kResultPrefix.size(), submit - start - kResultPrefix.size());
        Action a;
        a.kind = Action::Kind::Submit;
        a.raw = text.substr(start, submit + kSubmitTok.size() - start);
        if (auto v = parse_literal(raw_value)) {
            a.value = std::move(*v);
            a.value_parsed = true;
        } else {
            // Bare text submissions compare as strings.
            std::string trimmed = raw_value;
            while (!trimmed.empty() && std::isspace((unsigned char)trimmed.front()))
                trimmed.erase(trimmed.begin());
            while (!trimmed.empty() && std::isspace((unsigned char)trimmed.back()))
                trimmed.pop_back();
            a.value = Value(trimmed);
            a.value_parsed = false;
        }
        if (!best || start >= best_pos) {
            best_pos = start;
            best = std::move(a);
        }
    }
    return best;
}

std::string render_tool_call(const std::string& tool, const std::vector<Value>& args) {
    std::string s(kRequestTok);
    s += '<';
    s += tool;
    s += '>';
    for (size_t i = 0; i < args.size(); ++i) {
        if (i) s += ',';
        s += render_value(args[i]);
    }
    s += kCallTok;
    return s;
}

std::string render_submit(const Value& v) {
    return std::string(kResultPrefix) + render_value(v) + std::string(kSubmitTok);
}

// ------------------------------------------------------------------ prompt

namespace {

// Fixed few-shot examples prepended to RL prompts.
const char* kFewShotExamples[] = {
    "The tools at your disposal:\n"
    "city-temp: returns the current temperature for a given city\n"
    "add: sums two values together\n"
    "\n"
    "What is the temperature in Oslo plus 2?\n"
    "\n"
    "<request><city-temp>'Oslo'<call>4.5<response>\n"
    "<request><add>4.5,2<call>6.5<response>\n"
    "Result=6.5<submit>\n",
    "The tools at your disposal:\n"
    "day-of-week: returns the weekday name for a given date\n"
    "\n"
    "On which weekday is '14/3/2021'?\n"
    "\n"
    "<request><day-of-week>'14/3/2021'<call>'Sunday'<response>\n"
    "Result='Sunday'<submit>\n",
};

}  // namespace

std::string build_prompt(const Environment& env, const std::vector<ToolSpec>& universe,
                         const SessionConfig& cfg) {
    std::string out;
    for (int i = 0; i < cfg.few_shot_examples && i < 2; ++i) {
        out += kFewShotExamples[i];
        out += "\n";
    }
    out += "The tools at your disposal:\n";
    std::vector<int> inventory = env.required_tools;
    inventory.insert(inventory.end(), env.distractor_tools.begin(), env.distractor_tools.end());
    Rng rng(derive_seed(cfg.shuffle_seed, env.seed));
    rng.shuffle(inventory);
    for (int idx : inventory) {
        out += universe[idx].name;
        out += ": ";
        out += universe[idx].description;
        out += "\n";
    }
    out += "\n";
    out += env.instruction;
    out += "\n";
    return out;
}

// ----------------------------------------------------------------- Session

Session::Session(const Environment* env, const std::vector<ToolSpec>* universe,
                 SessionConfig cfg, const TypeRegistry* reg)
    : env_(env),
      universe_(universe),
      reg_(reg),
      cfg_(cfg),
      memo_(env->memo),
      rng_(derive_seed(env->seed, 0x5e5510ull)) {
    cfg_.validate();
    prompt_ = build_prompt(*env_, *universe_, cfg_);
}

const ToolSpec* Session::inventory_tool(const std::string& name) const {
    for (int idx : env_->required_tools)
        if ((*universe_)[idx].name == name) return &(*universe_)[idx];
    for (int idx : env_->distractor_tools)
        if ((*universe_)[idx].name == name) return &(*universe_)[idx];
    return nullptr;
}

std::string Session::observe(const Action& action) {
    if (action.kind == Action::Kind::Submit) {
        submitted_ = action.value;
        status_ = SessionStatus::Submitted;
        return "";
    }

    const std::string invalid = std::string(kInvalidInputError) + std::string(kErrorTok);
    const std::string& name = action.tool_name;

    if (name == kPasswordManagerTool) {
        if (env_->apps.empty() || !action.args || action.args->size() != 2 ||
            !(*action.args)[0].is_string() || !(*action.args)[1].is_string())
            return invalid;
        auto pw = password_lookup(*env_, (*action.args)[0].as_string(),
                                  (*action.args)[1].as_string());
        if (!pw) return invalid;
        return render_value(Value(*pw)) + std::string(kResponseTok);
    }

    if (name.size() > kLoginSuffix.size() &&
        name.compare(name.size() - kLoginSuffix.size(), kLoginSuffix.size(), kLoginSuffix) ==
            0) {
        std::string app = name.substr(0, name.size() - kLoginSuffix.size());
        if (!env_->apps.count(app) || !action.args || action.args->size() != 2 ||
            !(*action.args)[0].is_string() || !(*action.args)[1].is_string())
            return invalid;
        if (!credentials_match(*env_, app, (*action.args)[0].as_string(),
                               (*action.args)[1].as_string()))
            return invalid;
        unlocked_.insert(app);  // idempotent
        return std::string(kLoginSuccess) + std::string(kResponseTok);
    }

    const ToolSpec* tool = inventory_tool(name);
    if (!tool) return invalid;
    if (!cfg_.disable_login && tool->app && !unlocked_.count(*tool->app)) return invalid;
    if (!action.args) return invalid;
    InvokeResult r = invoke(*tool, memo_, *action.args, *reg_, cfg_.gen, rng_);
    if (!r.ok) return invalid;
    return render_values(r.outputs) + std::string(kResponseTok);
}

std::string Session::step(const std::string& agent_message) {
    if (status_ != SessionStatus::Running)
        throw SessionFinishedError("step called after session finished");
    ++turn_;
    std::string obs;
    auto action = parse_action(agent_message);
    if (!action) {
        obs = std::string(kInvalidInputError) + std::string(kErrorTok);
    } else {
        obs = observe(*action);
    }
    if (status_ == SessionStatus::Running && turn_ >= cfg_.max_turns)
        status_ = SessionStatus::Aborted;
    history_.push_back({agent_message, obs});
    return obs;
}

double Session::reward() const {
    if (status_ == SessionStatus::Running)
        throw SessionFinishedError("reward requested while session still running");
    if (status_ == SessionStatus::Aborted) return 0.0;
    return values_equivalent(submitted_, env_->goal_value()) ? 1.0 : 0.0;
}

std::vector<std::string> gold_actions(const Environment& env,
                                      const std::vector<ToolSpec>& universe,
                                      bool include_logins) {
    std::vector<std::string> actions;
    if (include_logins) {
        for (const auto& [app, cred] : env.apps) {
            if (!env.disclose_password)
                actions.push_back(render_tool_call(std::string(kPasswordManagerTool),
                                                   {Value(app), Value(cred.username)}));
            actions.push_back(render_tool_call(app + std::string(kLoginSuffix),
                                               {Value(cred.username), Value(cred.password)}));
        }
    }
    std::map<VarId, Value> store = env.user_input_values;
    for (const auto& call : env.skel.calls) {
        const ToolSpec& tool = universe[call.tool_index];
        std::vector<Value> args;
        for (VarId a : call.args) args.push_back(store.at(a));
        actions.push_back(render_tool_call(tool.name, args));
        const auto* outs = env.memo.lookup(tool.name, MemoTable::canonical_key(args));
        if (!outs || outs->size() != call.outputs.size())
            throw std::logic_error("gold_actions: memo table missing a gold input/output pair");
        for (size_t j = 0; j < call.outputs.size(); ++j)
            store[call.outputs[j].var] = (*outs)[j];
    }
    actions.push_back(render_submit(env.goal_value()));
    return actions;
}

}  // namespace randomworld
