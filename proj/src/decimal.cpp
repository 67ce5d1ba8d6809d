#include "randomworld/decimal.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace randomworld {

namespace {

const __int128 kMantLimit = (__int128)1 << 100;  // headroom before overflow

bool mul_overflows(__int128 a, __int128 b) {
    if (a == 0 || b == 0) return false;
    __int128 r = a * b;
    return r / b != a || (r < 0) != ((a < 0) != (b < 0) && r != 0);
}

long double pow10l(int32_t e) { return powl(10.0L, (long double)e); }

}  // namespace

long double Decimal::magnitude() const {
    if (inexact_) return approx_;
    return (long double)mant_ * pow10l(exp_);
}

Decimal Decimal::make_inexact(long double x) {
    Decimal d;
    d.inexact_ = true;
    d.approx_ = x;
    return d;
}

void Decimal::normalize() {
    if (inexact_) return;
    while (mant_ != 0 && mant_ % 10 == 0 && exp_ < 0) {
        mant_ /= 10;
        ++exp_;
    }
    if (mant_ == 0) exp_ = 0;
}

std::optional<Decimal> Decimal::parse(const std::string& text) {
    Decimal d;
    const char* p = text.c_str();
    bool neg = false;
    if (*p == '+' || *p == '-') neg = *p++ == '-';
    __int128 mant = 0;
    int32_t exp = 0;
    bool any_digit = false, seen_dot = false;
    for (; *p; ++p) {
        if (*p == '.') {
            if (seen_dot) return std::nullopt;
            seen_dot = true;
        } else if (std::isdigit((unsigned char)*p)) {
            if (mant >= kMantLimit / 10) return std::nullopt;
            mant = mant * 10 + (*p - '0');
            if (seen_dot) --exp;
            any_digit = true;
        } else if (*p == 'e' || *p == 'E') {
            char* end = nullptr;
            long e = std::strtol(p + 1, &end, 10);
            if (end == p + 1 || *end != '\0') return std::nullopt;
            exp += (int32_t)e;
            p = end - 1;
        } else {
            return std::nullopt;
        }
    }
    if (!any_digit) return std::nullopt;
    d.mant_ = neg ? -mant : mant;
    d.exp_ = exp;
    d.normalize();
    return d;
}

Decimal Decimal::from_value(const Value& v) {
    if (v.is_int()) {
        Decimal d;
        d.mant_ = v.as_int();
        d.exp_ = 0;
        return d;
    }
    if (!v.is_float()) throw std::invalid_argument("Decimal::from_value: not numeric");
    double x = v.as_float();
    if (!std::isfinite(x)) return make_inexact((long double)x);
    auto parsed = parse(float_to_string(x));
    if (!parsed) return make_inexact((long double)x);
    return *parsed;
}

Decimal Decimal::add(const Decimal& other) const {
    if (inexact_ || other.inexact_) return make_inexact(magnitude() + other.magnitude());
    Decimal a = *this, b = other;
    while (a.exp_ > b.exp_) {
        if (mul_overflows(a.mant_, 10) || a.mant_ >= kMantLimit / 10 || a.mant_ <= -(kMantLimit / 10))
            return make_inexact(magnitude() + other.magnitude());
        a.mant_ *= 10;
        --a.exp_;
    }
    while (b.exp_ > a.exp_) {
        if (mul_overflows(b.mant_, 10) || b.mant_ >= kMantLimit / 10 || b.mant_ <= -(kMantLimit / 10))
            return make_inexact(magnitude() + other.magnitude());
        b.mant_ *= 10;
        --b.exp_;
    }
    Decimal r;
    r.mant_ = a.mant_ + b.mant_;
    r.exp_ = a.exp_;
    if (r.mant_ >= kMantLimit || r.mant_ <= -kMantLimit)
        return make_inexact(magnitude() + other.magnitude());
    r.normalize();
    return r;
}

Decimal Decimal::sub(const Decimal& other) const {
    Decimal neg = other;
    if (neg.inexact_)
        neg.approx_ = -neg.approx_;
    else
        neg.mant_ = -neg.mant_;
    return add(neg);
}

Decimal Decimal::mul(const Decimal& other) const {
    if (inexact_ || other.inexact_) return make_inexact(magnitude() * other.magnitude());
    if (mul_overflows(mant_, other.mant_))
        return make_inexact(magnitude() * other.magnitude());
    Decimal r;
    r.mant_ = mant_ * other.mant_;
    r.exp_ = exp_ + other.exp_;
    if (r.mant_ >= kMantLimit || r.mant_ <= -kMantLimit)
        return make_inexact(magnitude() * other.magnitude());
    r.normalize();
    return r;
}

Decimal Decimal::div(const Decimal& other) const {
    if (other.is_zero()) throw std::domain_error("Decimal::div: division by zero");
    if (inexact_ || other.inexact_) return make_inexact(magnitude() / other.magnitude());
    // Try to find an exact terminating quotient by scaling the numerator.
    __int128 num = mant_;
    int32_t exp = exp_ - other.exp_;
    for (int scale = 0; scale < 40; ++scale) {
        if (num % other.mant_ == 0) {
            Decimal r;
            r.mant_ = num / other.mant_;
            r.exp_ = exp;
            if (r.mant_ < kMantLimit && r.mant_ > -kMantLimit) {
                r.normalize();
                return r;
            }
            break;
        }
        if (mul_overflows(num, 10) || num >= kMantLimit / 10 || num <= -(kMantLimit / 10)) break;
        num *= 10;
        --exp;
    }
    return make_inexact(magnitude() / other.magnitude());
}

bool Decimal::is_zero() const {
    if (inexact_) return approx_ == 0.0L;
    return mant_ == 0;
}

bool Decimal::less_than(const Decimal& other) const {
    if (!inexact_ && !other.inexact_) {
        Decimal diff = sub(other);
        if (!diff.inexact_) return diff.mant_ < 0;
    }
    return magnitude() < other.magnitude();
}

Value Decimal::to_value(bool as_int) const {
    if (inexact_) return Value((double)approx_);
    if (as_int && exp_ >= 0) {
        __int128 m = mant_;
        bool fits = true;
        for (int32_t i = 0; i < exp_ && fits; ++i) {
            if (mul_overflows(m, 10)) fits = false;
            else m *= 10;
        }
        if (fits && m <= std::numeric_limits<int64_t>::max() &&
            m >= std::numeric_limits<int64_t>::min())
            return Value((int64_t)m);
    }
    // Render the exact decimal, then take the nearest double; for the value
    // ranges the pipeline produces this re-renders to the same digits.
    std::string s;
    __int128 m = mant_ < 0 ? -mant_ : mant_;
    if (m == 0) s = "0";
    while (m > 0) {
        s.insert(s.begin(), char('0' + (int)(m % 10)));
        m /= 10;
    }
    std::string text;
    if (exp_ >= 0) {
        text = s + std::string(exp_, '0');
    } else {
        int32_t frac = -exp_;
        if ((int32_t)s.size() <= frac) s.insert(0, frac - s.size() + 1, '0');
        text = s.substr(0, s.size() - frac) + "." + s.substr(s.size() - frac);
    }
    if (mant_ < 0) text.insert(text.begin(), '-');
    return Value(std::strtod(text.c_str(), nullptr));
}

}  // namespace randomworld
