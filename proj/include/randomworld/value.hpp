#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace randomworld {

// Closed value space shared by generators, tools, the wire protocol and the
// dataset files: string, int, float, list, dict (scalar keys). Dicts keep
// insertion order; canonical rendering sorts pairs by key so structurally
// equal dicts serialize identically.
class Value {
public:
    using List = std::vector<Value>;
    using Dict = std::vector<std::pair<Value, Value>>;

    Value() : data_(int64_t{0}) {}
    Value(int64_t i) : data_(i) {}
    Value(int i) : data_(static_cast<int64_t>(i)) {}
    Value(double d) : data_(d) {}
    Value(std::string s) : data_(std::move(s)) {}
    Value(const char* s) : data_(std::string(s)) {}
    Value(List xs) : data_(std::move(xs)) {}
    Value(Dict kv) : data_(std::move(kv)) {}

    bool is_int() const { return std::holds_alternative<int64_t>(data_); }
    bool is_float() const { return std::holds_alternative<double>(data_); }
    bool is_numeric() const { return is_int() || is_float(); }
    bool is_string() const { return std::holds_alternative<std::string>(data_); }
    bool is_list() const { return std::holds_alternative<List>(data_); }
    bool is_dict() const { return std::holds_alternative<Dict>(data_); }
    bool is_scalar() const { return !is_list() && !is_dict(); }

    int64_t as_int() const { return std::get<int64_t>(data_); }
    double as_float() const { return std::get<double>(data_); }
    double as_number() const { return is_int() ? static_cast<double>(as_int()) : as_float(); }
    const std::string& as_string() const { return std::get<std::string>(data_); }
    const List& as_list() const { return std::get<List>(data_); }
    const Dict& as_dict() const { return std::get<Dict>(data_); }

    // Exact structural equality (int 1 != float 1.0). Dicts compare as
    // order-insensitive key/value sets.
    bool operator==(const Value& other) const;
    bool operator!=(const Value& other) const { return !(*this == other); }

private:
    std::variant<int64_t, double, std::string, List, Dict> data_;
};

// Shortest decimal string that round-trips to the same double.
std::string float_to_string(double d);

// Canonical text form: ints bare, floats shortest round-trip, strings in
// straight single quotes, lists [a, b], dicts {k: v, ...} with sorted keys.
// Used for memo keys, dedup hashing and protocol observations.
std::string render_value(const Value& v);

// Render a tuple of values as a comma-separated protocol payload.
std::string render_values(const std::vector<Value>& vs);

// Reward-style equality: strings/lists/dicts structural, numerics compared
// cross-kind with tolerance |a-b| <= tol * max(1, |a|, |b|).
bool values_equivalent(const Value& a, const Value& b, double tol = 1e-9);

// JSON (de)serialization for the dataset files. Dicts with non-string keys
// are encoded as {"__pairs__": [[k, v], ...]}.
nlohmann::json value_to_json(const Value& v);
Value value_from_json(const nlohmann::json& j);

}  // namespace randomworld
