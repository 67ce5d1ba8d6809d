#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "randomworld/value.hpp"

namespace randomworld {

// Exact decimal number: mantissa * 10^exp with a 128-bit mantissa.
// The calculator tools operate on the canonical decimal rendering of their
// operands instead of raw binary doubles, so e.g. 3.1 - 6.2 is exactly -3.1.
// Operations that cannot stay exact (overflow, non-terminating division)
// fall back to long double and mark the result inexact.
class Decimal {
public:
    static Decimal from_value(const Value& v);   // v must be numeric
    static std::optional<Decimal> parse(const std::string& text);

    Decimal add(const Decimal& other) const;
    Decimal sub(const Decimal& other) const;
    Decimal mul(const Decimal& other) const;
    // Exact when the quotient terminates in decimal; inexact otherwise.
    Decimal div(const Decimal& other) const;

    bool is_zero() const;
    bool less_than(const Decimal& other) const;

    // Back to the closed value space. `as_int` requests an integer result;
    // it is honored when the value is integral and fits int64, otherwise a
    // double is returned.
    Value to_value(bool as_int) const;

private:
    Decimal() = default;
    __int128 mant_ = 0;
    int32_t exp_ = 0;
    bool inexact_ = false;
    long double approx_ = 0.0L;  // authoritative when inexact_

    long double magnitude() const;
    static Decimal make_inexact(long double x);
    void normalize();
};

}  // namespace randomworld
