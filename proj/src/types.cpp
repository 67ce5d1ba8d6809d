#include "randomworld/types.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace randomworld {

std::string_view root_kind_name(RootKind k) {
    switch (k) {
        case RootKind::Str: return "string";
        case RootKind::Int: return "int";
        case RootKind::Float: return "float";
    }
    return "string";
}

RootKind root_kind_from(std::string_view name) {
    if (name == "string") return RootKind::Str;
    if (name == "int") return RootKind::Int;
    if (name == "float") return RootKind::Float;
    throw RegistryError("unknown root kind: " + std::string(name));
}

// ---------------------------------------------------------------- TypePool

TypeRef TypePool::intern(TypeExpr node) {
    std::lock_guard lock(mu_);
    auto it = interned_.find(node.canonical_);
    if (it != interned_.end()) return it->second.get();
    auto owned = std::make_unique<TypeExpr>(std::move(node));
    TypeRef ref = owned.get();
    interned_.emplace(ref->canonical_, std::move(owned));
    return ref;
}

TypeRef TypePool::atom(std::string_view name) {
    TypeExpr n;
    n.kind_ = TypeExpr::Kind::Atom;
    n.name_ = std::string(name);
    n.canonical_ = n.name_;
    return intern(std::move(n));
}

TypeRef TypePool::list(TypeRef t) {
    TypeExpr n;
    n.kind_ = TypeExpr::Kind::List;
    n.args_ = {t};
    n.canonical_ = "list(" + t->str() + ")";
    return intern(std::move(n));
}

TypeRef TypePool::dict(TypeRef k, TypeRef v) {
    TypeExpr n;
    n.kind_ = TypeExpr::Kind::Dict;
    n.args_ = {k, v};
    n.canonical_ = "dict(" + k->str() + "," + v->str() + ")";
    return intern(std::move(n));
}

TypeRef TypePool::union_of(std::vector<TypeRef> members) {
    std::vector<TypeRef> flat;
    for (TypeRef m : members) {
        if (m->kind() == TypeExpr::Kind::Union)
            flat.insert(flat.end(), m->members().begin(), m->members().end());
        else
            flat.push_back(m);
    }
    std::sort(flat.begin(), flat.end(), [](TypeRef a, TypeRef b) { return a->str() < b->str(); });
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) throw std::invalid_argument("union_of: empty member set");
    if (flat.size() == 1) return flat[0];
    TypeExpr n;
    n.kind_ = TypeExpr::Kind::Union;
    n.args_ = flat;
    std::string s = "union(";
    for (size_t i = 0; i < flat.size(); ++i) {
        if (i) s += '|';
        s += flat[i]->str();
    }
    s += ')';
    n.canonical_ = std::move(s);
    return intern(std::move(n));
}

namespace {

struct TypeParser {
    std::string_view text;
    size_t pos = 0;
    TypePool& pool;

    void skip_ws() {
        while (pos < text.size() && std::isspace((unsigned char)text[pos])) ++pos;
    }

    std::string ident() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() &&
               (std::isalnum((unsigned char)text[pos]) || text[pos] == '-' || text[pos] == '_'))
            ++pos;
        if (start == pos) throw RegistryError("type parse error at offset " + std::to_string(pos) +
                                              " in '" + std::string(text) + "'");
        return std::string(text.substr(start, pos - start));
    }

    void expect(char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw RegistryError("type parse error: expected '" + std::string(1, c) + "' in '" +
                                std::string(text) + "'");
        ++pos;
    }

    bool peek(char c) {
        skip_ws();
        return pos < text.size() && text[pos] == c;
    }

    TypeRef parse_expr() {
        std::string name = ident();
        if (name == "list" && peek('(')) {
            expect('(');
            TypeRef t = parse_expr();
            expect(')');
            return pool.list(t);
        }
        if (name == "dict" && peek('(')) {
            expect('(');
            TypeRef k = parse_expr();
            expect(',');
            TypeRef v = parse_expr();
            expect(')');
            return pool.dict(k, v);
        }
        if (name == "union" && peek('(')) {
            expect('(');
            std::vector<TypeRef> members;
            members.push_back(parse_expr());
            while (peek('|')) {
                expect('|');
                members.push_back(parse_expr());
            }
            expect(')');
            return pool.union_of(std::move(members));
        }
        return pool.atom(name);
    }
};

}  // namespace

TypeRef TypePool::parse(std::string_view text) {
    TypeParser p{text, 0, *this};
    TypeRef t = p.parse_expr();
    p.skip_ws();
    if (p.pos != text.size())
        throw RegistryError("type parse error: trailing input in '" + std::string(text) + "'");
    return t;
}

TypePool& types() {
    static TypePool pool;
    return pool;
}

// ------------------------------------------------------------ TypeRegistry

void TypeRegistry::add_atom(AtomDef def, std::vector<std::string> parents) {
    if (finalized_) throw RegistryError("registry already finalized");
    if (atoms_.count(def.name)) throw RegistryError("duplicate atom: " + def.name);
    Node n;
    n.parents = std::move(parents);
    order_.push_back(def.name);
    std::string name = def.name;
    n.def = std::move(def);
    atoms_.emplace(std::move(name), std::move(n));
}

void TypeRegistry::finalize() {
    int idx = 0;
    for (const auto& name : order_) atoms_.at(name).index = idx++;
    size_t words = (order_.size() + 63) / 64;
    for (const auto& name : order_) {
        Node& n = atoms_.at(name);
        for (const auto& p : n.parents) {
            auto it = atoms_.find(p);
            if (it == atoms_.end())
                throw RegistryError("atom '" + name + "' names unknown parent '" + p + "'");
            it->second.children.push_back(name);
        }
    }
    // Reflexive-transitive ancestor closure; a fixpoint pass also detects
    // cycles (the bitsets stop changing only if the declared graph is a DAG).
    for (const auto& name : order_) {
        Node& n = atoms_.at(name);
        n.ancestors.assign(words, 0);
        n.ancestors[n.index / 64] |= 1ull << (n.index % 64);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& name : order_) {
            Node& n = atoms_.at(name);
            for (const auto& p : n.parents) {
                const Node& pn = atoms_.at(p);
                for (size_t w = 0; w < words; ++w) {
                    uint64_t merged = n.ancestors[w] | pn.ancestors[w];
                    if (merged != n.ancestors[w]) {
                        n.ancestors[w] = merged;
                        changed = true;
                    }
                }
            }
        }
    }
    // Acyclic apart from the reflexive closure: no two distinct atoms may be
    // mutually reachable.
    for (const auto& a : order_) {
        const Node& na = atoms_.at(a);
        for (const auto& b : order_) {
            if (a == b) continue;
            const Node& nb = atoms_.at(b);
            if (atom_le(na, nb) && atom_le(nb, na))
                throw RegistryError("cycle detected between atoms '" + a + "' and '" + b + "'");
        }
    }
    // Depth = longest declared-edge path from a parentless atom.
    bool moved = true;
    size_t depth_rounds = 0;
    while (moved) {
        if (++depth_rounds > order_.size() + 2)
            throw RegistryError("depth computation did not converge");
        moved = false;
        for (const auto& name : order_) {
            Node& n = atoms_.at(name);
            for (const auto& p : n.parents) {
                int want = atoms_.at(p).depth + 1;
                if (n.depth < want) {
                    n.depth = want;
                    moved = true;
                }
            }
        }
    }
    custom_.clear();
    for (const auto& name : order_)
        if (name != "string" && name != "int" && name != "float") custom_.push_back(name);
    finalized_ = true;
}

bool TypeRegistry::has_atom(std::string_view name) const {
    return atoms_.find(name) != atoms_.end();
}

const TypeRegistry::Node& TypeRegistry::node(std::string_view name) const {
    auto it = atoms_.find(name);
    if (it == atoms_.end()) throw RegistryError("unknown atom: " + std::string(name));
    return it->second;
}

const AtomDef& TypeRegistry::atom(std::string_view name) const { return node(name).def; }

const std::vector<std::string>& TypeRegistry::parents(std::string_view name) const {
    return node(name).parents;
}

int TypeRegistry::atom_depth(std::string_view name) const { return node(name).depth; }

bool TypeRegistry::atom_le(const Node& a, const Node& b) const {
    return (a.ancestors[b.index / 64] >> (b.index % 64)) & 1;
}

TypeRef TypeRegistry::supertype_union(const Node& n) const {
    std::vector<TypeRef> members;
    members.reserve(n.children.size());
    for (const auto& c : n.children) members.push_back(types().atom(c));
    return types().union_of(std::move(members));
}

bool TypeRegistry::is_subtype(TypeRef a, TypeRef b) const {
    if (a == b) return true;
    std::pair<TypeRef, TypeRef> key{a, b};
    {
        std::lock_guard lock(cache_mu_);
        auto it = subtype_cache_.find(key);
        if (it != subtype_cache_.end()) return it->second;
    }
    bool result = subtype_impl(a, b);
    {
        std::lock_guard lock(cache_mu_);
        subtype_cache_.emplace(key, result);
    }
    return result;
}

bool TypeRegistry::subtype_impl(TypeRef a, TypeRef b) const {
    using Kind = TypeExpr::Kind;
    if (a == b) return true;
    // union(A,B) <= C  iff  A <= C and B <= C
    if (a->kind() == Kind::Union) {
        for (TypeRef m : a->members())
            if (!is_subtype(m, b)) return false;
        return true;
    }
    // C <= union(A,B)  iff  C <= A or C <= B
    if (b->kind() == Kind::Union) {
        for (TypeRef m : b->members())
            if (is_subtype(a, m)) return true;
        return false;
    }
    if (a->is_atom() && b->is_atom()) return atom_le(node(a->atom_name()), node(b->atom_name()));
    if (a->kind() == Kind::List && b->kind() == Kind::List)
        return is_subtype(a->elem(), b->elem());
    if (a->kind() == Kind::Dict && b->kind() == Kind::Dict)
        return is_subtype(b->key(), a->key()) && is_subtype(a->val(), b->val());
    // A supertype atom on the right behaves as the union of its declared
    // subtypes; for constructed left-hand sides this bottoms out false, since
    // list/dict types are never comparable with atoms.
    if (b->is_atom()) {
        const Node& bn = node(b->atom_name());
        if (!bn.children.empty() && !a->is_atom()) return is_subtype(a, supertype_union(bn));
    }
    if (a->is_atom()) node(a->atom_name());  // surface unknown-atom errors
    return false;
}

bool TypeRegistry::recognize(TypeRef t, const Value& v) const {
    using Kind = TypeExpr::Kind;
    switch (t->kind()) {
        case Kind::Atom: {
            const Node& n = node(t->atom_name());
            // Roots check the host representation kind directly; int values
            // are acceptable floats, mirroring the declared int <= float edge.
            if (t->atom_name() == "string") return v.is_string();
            if (t->atom_name() == "int") return v.is_int();
            if (t->atom_name() == "float") return v.is_numeric();
            if (!n.children.empty()) {
                for (const auto& c : n.children)
                    if (recognize(types().atom(c), v)) return true;
                return false;
            }
            return n.def.recognizer ? n.def.recognizer(v) : false;
        }
        case Kind::Union:
            for (TypeRef m : t->members())
                if (recognize(m, v)) return true;
            return false;
        case Kind::List: {
            if (!v.is_list()) return false;
            for (const auto& e : v.as_list())
                if (!recognize(t->elem(), e)) return false;
            return true;
        }
        case Kind::Dict: {
            if (!v.is_dict()) return false;
            for (const auto& [k, val] : v.as_dict())
                if (!recognize(t->key(), k) || !recognize(t->val(), val)) return false;
            return true;
        }
    }
    return false;
}

Value TypeRegistry::generate(TypeRef t, const GenConfig& cfg, Rng& rng) const {
    using Kind = TypeExpr::Kind;
    switch (t->kind()) {
        case Kind::Atom: {
            const Node& n = node(t->atom_name());
            if (!n.children.empty()) {
                const std::string& child = n.children[rng.uniform_u64(n.children.size())];
                return generate(types().atom(child), cfg, rng);
            }
            if (!n.def.generator)
                throw RegistryError("atom has no generator: " + t->atom_name());
            return n.def.generator(rng);
        }
        case Kind::Union: {
            TypeRef m = t->members()[rng.uniform_u64(t->members().size())];
            return generate(m, cfg, rng);
        }
        case Kind::List: {
            int len = (int)rng.uniform_int(cfg.container_len_min, cfg.container_len_max);
            Value::List xs;
            xs.reserve(len);
            for (int i = 0; i < len; ++i) xs.push_back(generate(t->elem(), cfg, rng));
            return Value(std::move(xs));
        }
        case Kind::Dict: {
            int len = (int)rng.uniform_int(cfg.container_len_min, cfg.container_len_max);
            // Keys resample on collision, up to 50 attempts, then the
            // requested length shrinks to however many distinct keys exist.
            Value::Dict kv;
            std::set<std::string> seen;
            for (int i = 0; i < len; ++i) {
                Value key;
                bool ok = false;
                for (int attempt = 0; attempt < 50; ++attempt) {
                    key = generate(t->key(), cfg, rng);
                    if (seen.insert(render_value(key)).second) {
                        ok = true;
                        break;
                    }
                }
                if (!ok) break;
                kv.emplace_back(std::move(key), generate(t->val(), cfg, rng));
            }
            return Value(std::move(kv));
        }
    }
    throw RegistryError("generate: unreachable");
}

TypeRef TypeRegistry::join(TypeRef a, TypeRef b) const {
    if (is_subtype(a, b)) return b;
    if (is_subtype(b, a)) return a;
    if (a->kind() == TypeExpr::Kind::List && b->kind() == TypeExpr::Kind::List)
        return types().list(join(a->elem(), b->elem()));
    // Most specific common atom supertype; ties broken by (depth, name).
    std::vector<TypeRef> candidates;
    for (const auto& name : order_) {
        TypeRef atom = types().atom(name);
        if (is_subtype(a, atom) && is_subtype(b, atom)) candidates.push_back(atom);
    }
    std::vector<TypeRef> minimal;
    for (TypeRef c : candidates) {
        bool is_min = true;
        for (TypeRef other : candidates)
            if (other != c && is_subtype(other, c)) {
                is_min = false;
                break;
            }
        if (is_min) minimal.push_back(c);
    }
    if (minimal.empty())
        throw JoinUndefinedError("join undefined for " + a->str() + " and " + b->str());
    std::sort(minimal.begin(), minimal.end(), [&](TypeRef x, TypeRef y) {
        int dx = atom_depth(x->atom_name()), dy = atom_depth(y->atom_name());
        if (dx != dy) return dx < dy;
        return x->atom_name() < y->atom_name();
    });
    return minimal.front();
}

bool TypeRegistry::value_sound(TypeRef src, TypeRef param) const {
    using Kind = TypeExpr::Kind;
    if (src == param) return true;
    switch (param->kind()) {
        case Kind::Atom:
            return is_subtype(src, param);
        case Kind::List:
            return src->kind() == Kind::List && value_sound(src->elem(), param->elem());
        case Kind::Dict:
            // Contravariant keys are restricted to equivalent key types:
            // generated keys of a strict supertype may fall outside the
            // parameter's key recognizer.
            return src->kind() == Kind::Dict && is_subtype(src->key(), param->key()) &&
                   is_subtype(param->key(), src->key()) &&
                   value_sound(src->val(), param->val());
        case Kind::Union: {
            if (src->kind() == Kind::Union) {
                for (TypeRef m : src->members())
                    if (!value_sound(m, param)) return false;
                return true;
            }
            for (TypeRef m : param->members())
                if (value_sound(src, m)) return true;
            return false;
        }
    }
    return false;
}

void TypeRegistry::dump_hierarchy(std::ostream& out) const {
    out << nlohmann::json{{"schema", "randomworld.types"}, {"version", 1}}.dump() << "\n";
    for (const auto& name : order_) {
        const Node& n = node(name);
        nlohmann::json rec{{"name", name},
                           {"parents", n.parents},
                           {"root", std::string(root_kind_name(n.def.root))},
                           {"description", n.def.description}};
        out << rec.dump() << "\n";
    }
}

TypeRegistry TypeRegistry::load_hierarchy(std::istream& in) const {
    TypeRegistry out;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json rec = nlohmann::json::parse(line);
        if (!header_seen) {
            if (!rec.contains("schema") || rec["schema"] != "randomworld.types")
                throw RegistryError("type hierarchy file: missing schema header");
            header_seen = true;
            continue;
        }
        std::string name = rec.at("name").get<std::string>();
        if (!has_atom(name))
            throw RegistryError("type hierarchy file names unknown atom '" + name +
                                "' (recognizers are not user-extensible)");
        AtomDef def = atom(name);
        def.description = rec.at("description").get<std::string>();
        def.root = root_kind_from(rec.at("root").get<std::string>());
        out.add_atom(std::move(def), rec.at("parents").get<std::vector<std::string>>());
    }
    out.finalize();
    return out;
}

}  // namespace randomworld
