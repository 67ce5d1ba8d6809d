#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "randomworld/rng.hpp"
#include "randomworld/value.hpp"

namespace randomworld {

struct RegistryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct JoinUndefinedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class RootKind { Str, Int, Float };

std::string_view root_kind_name(RootKind k);
RootKind root_kind_from(std::string_view name);

class TypeExpr;
using TypeRef = const TypeExpr*;

// A type expression: an atom name or a constructor application. Instances
// are interned in a TypePool, so equality is pointer equality and the
// canonical string is precomputed. Union members are flattened, deduplicated
// and sorted, making structurally equal unions identical regardless of
// construction order.
class TypeExpr {
public:
    enum class Kind { Atom, List, Dict, Union };

    Kind kind() const { return kind_; }
    bool is_atom() const { return kind_ == Kind::Atom; }
    const std::string& atom_name() const { return name_; }
    TypeRef elem() const { return args_[0]; }               // List
    TypeRef key() const { return args_[0]; }                // Dict
    TypeRef val() const { return args_[1]; }                // Dict
    const std::vector<TypeRef>& members() const { return args_; }  // Union
    const std::string& str() const { return canonical_; }

private:
    friend class TypePool;
    Kind kind_;
    std::string name_;            // Atom only
    std::vector<TypeRef> args_;   // constructor arguments
    std::string canonical_;
};

// Structural interner. Thread-safe; TypeRefs stay valid for the pool's
// lifetime. A process-wide pool is available via types().
class TypePool {
public:
    TypeRef atom(std::string_view name);
    TypeRef list(TypeRef t);
    TypeRef dict(TypeRef k, TypeRef v);
    TypeRef union_of(std::vector<TypeRef> members);

    // Grammar: NAME | list(T) | dict(K,V) | union(A|B|...)
    TypeRef parse(std::string_view text);

private:
    TypeRef intern(TypeExpr node);
    std::mutex mu_;
    std::unordered_map<std::string, std::unique_ptr<TypeExpr>> interned_;
};

TypePool& types();

struct AtomDef {
    std::string name;
    std::string description;
    RootKind root = RootKind::Str;
    std::function<Value(Rng&)> generator;
    std::function<bool(const Value&)> recognizer;
};

struct GenConfig {
    int container_len_min = 2;
    int container_len_max = 6;

    GenConfig() = default;
    GenConfig(int lo, int hi) : container_len_min(lo), container_len_max(hi) {
        if (lo < 1 || lo > hi) throw std::invalid_argument("GenConfig: need 1 <= min <= max");
    }
};

// The atom hierarchy plus the recursive subtype / generator / recognizer /
// join machinery over constructed types. Immutable after finalize(); safe to
// share across threads.
class TypeRegistry {
public:
    void add_atom(AtomDef def, std::vector<std::string> parents);
    void finalize();

    bool has_atom(std::string_view name) const;
    const AtomDef& atom(std::string_view name) const;
    const std::vector<std::string>& parents(std::string_view name) const;
    // Atoms excluding the string/int/float roots, in registration order.
    const std::vector<std::string>& custom_atoms() const { return custom_; }
    const std::vector<std::string>& all_atoms() const { return order_; }
    int atom_depth(std::string_view name) const;

    bool is_subtype(TypeRef a, TypeRef b) const;
    bool recognize(TypeRef t, const Value& v) const;
    Value generate(TypeRef t, const GenConfig& cfg, Rng& rng) const;
    TypeRef join(TypeRef a, TypeRef b) const;

    // True when every value generable (or arithmetic-computed) at type src is
    // accepted by param's recognizer; strictly stronger than is_subtype on
    // dict keys. The skeleton sampler wires edges with this predicate.
    bool value_sound(TypeRef src, TypeRef param) const;

    // Hierarchy file: one JSON record per atom (name, parents, root,
    // description). Loading resolves generator/recognizer behavior by name
    // against this registry's atoms.
    void dump_hierarchy(std::ostream& out) const;
    TypeRegistry load_hierarchy(std::istream& in) const;

private:
    struct Node {
        AtomDef def;
        std::vector<std::string> parents;
        std::vector<std::string> children;
        std::vector<uint64_t> ancestors;  // bitset over atom indices, reflexive
        int index = -1;
        int depth = 0;
    };

    const Node& node(std::string_view name) const;
    bool atom_le(const Node& a, const Node& b) const;
    bool subtype_impl(TypeRef a, TypeRef b) const;
    TypeRef supertype_union(const Node& n) const;

    std::map<std::string, Node, std::less<>> atoms_;
    std::vector<std::string> order_;
    std::vector<std::string> custom_;
    bool finalized_ = false;

    struct PairHash {
        size_t operator()(const std::pair<TypeRef, TypeRef>& p) const {
            size_t h = std::hash<TypeRef>{}(p.first);
            return h ^ (std::hash<TypeRef>{}(p.second) + 0x9e3779b9 + (h << 6) + (h >> 2));
        }
    };
    mutable std::mutex cache_mu_;
    mutable std::unordered_map<std::pair<TypeRef, TypeRef>, bool, PairHash> subtype_cache_;
};

// Registry shipped with the pipeline: string/int/float roots plus the 74
// domain atoms (including `ord`), with fitted generators and recognizers.
const TypeRegistry& builtin_registry();

}  // namespace randomworld
