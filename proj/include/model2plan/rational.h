#ifndef MODEL2PLAN_RATIONAL_H
#define MODEL2PLAN_RATIONAL_H

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace model2plan {

/*
  Exact rational with 64-bit numerator and denominator. Always normalized
  (gcd 1, positive denominator). Arithmetic uses 128-bit intermediates and
  throws std::overflow_error if a reduced result does not fit.
*/
class Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;
public:
    constexpr Rational() = default;
    constexpr Rational(std::int64_t value) : num(value), den(1) {}
    Rational(std::int64_t numerator, std::int64_t denominator);

    std::int64_t numerator() const { return num; }
    std::int64_t denominator() const { return den; }

    bool is_negative() const { return num < 0; }
    bool is_zero() const { return num == 0; }

    Rational operator-() const;
    Rational &operator+=(const Rational &other);
    Rational &operator-=(const Rational &other);
    Rational &operator*=(const Rational &other);

    friend Rational operator+(Rational a, const Rational &b) { return a += b; }
    friend Rational operator-(Rational a, const Rational &b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational &b) { return a *= b; }

    friend bool operator==(const Rational &, const Rational &) = default;
    friend std::strong_ordering operator<=>(const Rational &a, const Rational &b);

    // Accepts `[+-]digits[.digits]` and `[+-]digits/digits`.
    static std::optional<Rational> parse(std::string_view text);

    // Exact decimal when the denominator is of the form 2^a 5^b, `n/d` otherwise.
    std::string to_string() const;
    // Nearest double, for display only.
    double to_double() const;
};

}

template<>
struct std::hash<model2plan::Rational> {
    std::size_t operator()(const model2plan::Rational &r) const noexcept {
        return std::hash<std::int64_t>()(r.numerator()) * 31 ^
               std::hash<std::int64_t>()(r.denominator());
    }
};

#endif
