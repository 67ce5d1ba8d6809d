#include "randomworld/value.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace randomworld {

std::string float_to_string(double d) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), d);
    if (res.ec != std::errc()) throw std::runtime_error("float_to_string: to_chars failed");
    return std::string(buf, res.ptr);
}

namespace {

void render_into(const Value& v, std::string& out) {
    if (v.is_int()) {
        out += std::to_string(v.as_int());
    } else if (v.is_float()) {
        out += float_to_string(v.as_float());
    } else if (v.is_string()) {
        out += '\'';
        out += v.as_string();
        out += '\'';
    } else if (v.is_list()) {
        out += '[';
        bool first = true;
        for (const auto& e : v.as_list()) {
            if (!first) out += ", ";
            first = false;
            render_into(e, out);
        }
        out += ']';
    } else {
        auto pairs = v.as_dict();
        std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
            return render_value(a.first) < render_value(b.first);
        });
        out += '{';
        bool first = true;
        for (const auto& [k, val] : pairs) {
            if (!first) out += ", ";
            first = false;
            render_into(k, out);
            out += ": ";
            render_into(val, out);
        }
        out += '}';
    }
}

}  // namespace

std::string render_value(const Value& v) {
    std::string out;
    render_into(v, out);
    return out;
}

std::string render_values(const std::vector<Value>& vs) {
    std::string out;
    for (size_t i = 0; i < vs.size(); ++i) {
        if (i) out += ", ";
        render_into(vs[i], out);
    }
    return out;
}

bool Value::operator==(const Value& other) const {
    if (data_.index() != other.data_.index()) return false;
    if (is_int()) return as_int() == other.as_int();
    if (is_float()) return float_to_string(as_float()) == float_to_string(other.as_float());
    if (is_string()) return as_string() == other.as_string();
    if (is_list()) return as_list() == other.as_list();
    // Dicts: order-insensitive comparison via canonical rendering.
    return render_value(*this) == render_value(other);
}

bool values_equivalent(const Value& a, const Value& b, double tol) {
    if (a.is_numeric() && b.is_numeric()) {
        if (a.is_int() && b.is_int()) return a.as_int() == b.as_int();
        double x = a.as_number(), y = b.as_number();
        if (std::isnan(x) || std::isnan(y)) return false;
        double scale = std::max({1.0, std::fabs(x), std::fabs(y)});
        return std::fabs(x - y) <= tol * scale;
    }
    if (a.is_string() && b.is_string()) return a.as_string() == b.as_string();
    if (a.is_list() && b.is_list()) {
        const auto& xs = a.as_list();
        const auto& ys = b.as_list();
        if (xs.size() != ys.size()) return false;
        for (size_t i = 0; i < xs.size(); ++i)
            if (!values_equivalent(xs[i], ys[i], tol)) return false;
        return true;
    }
    if (a.is_dict() && b.is_dict()) {
        auto xs = a.as_dict();
        auto ys = b.as_dict();
        if (xs.size() != ys.size()) return false;
        auto by_key = [](const auto& p, const auto& q) {
            return render_value(p.first) < render_value(q.first);
        };
        std::sort(xs.begin(), xs.end(), by_key);
        std::sort(ys.begin(), ys.end(), by_key);
        for (size_t i = 0; i < xs.size(); ++i) {
            if (!values_equivalent(xs[i].first, ys[i].first, tol)) return false;
            if (!values_equivalent(xs[i].second, ys[i].second, tol)) return false;
        }
        return true;
    }
    return false;
}

nlohmann::json value_to_json(const Value& v) {
    if (v.is_int()) return v.as_int();
    if (v.is_float()) return v.as_float();
    if (v.is_string()) return v.as_string();
    if (v.is_list()) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& e : v.as_list()) arr.push_back(value_to_json(e));
        return arr;
    }
    const auto& pairs = v.as_dict();
    bool all_string_keys = std::all_of(pairs.begin(), pairs.end(),
                                       [](const auto& p) { return p.first.is_string(); });
    if (all_string_keys) {
        nlohmann::json obj = nlohmann::json::object();
        for (const auto& [k, val] : pairs) obj[k.as_string()] = value_to_json(val);
        return obj;
    }
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, val] : pairs)
        arr.push_back(nlohmann::json::array({value_to_json(k), value_to_json(val)}));
    return nlohmann::json{{"__pairs__", arr}};
}

Value value_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Value(j.get<int64_t>());
    if (j.is_number_float()) return Value(j.get<double>());
    if (j.is_string()) return Value(j.get<std::string>());
    if (j.is_array()) {
        Value::List xs;
        xs.reserve(j.size());
        for (const auto& e : j) xs.push_back(value_from_json(e));
        return Value(std::move(xs));
    }
    if (j.is_object()) {
        if (j.size() == 1 && j.contains("__pairs__")) {
            Value::Dict kv;
            for (const auto& p : j["__pairs__"])
                kv.emplace_back(value_from_json(p.at(0)), value_from_json(p.at(1)));
            return Value(std::move(kv));
        }
        Value::Dict kv;
        for (auto it = j.begin(); it != j.end(); ++it)
            kv.emplace_back(Value(it.key()), value_from_json(it.value()));
        return Value(std::move(kv));
    }
    throw std::runtime_error("value_from_json: unsupported JSON node");
}

}  // namespace randomworld
