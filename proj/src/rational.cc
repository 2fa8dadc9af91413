#include "model2plan/rational.h"

#include <cctype>
#include <limits>
#include <numeric>
#include <stdexcept>

using namespace std;

namespace model2plan {
namespace {
using Wide = __int128;

Wide wide_abs(Wide v) {
    return v < 0 ? -v : v;
}

Wide wide_gcd(Wide a, Wide b) {
    a = wide_abs(a);
    b = wide_abs(b);
    while (b != 0) {
        Wide t = a % b;
        a = b;
        b = t;
    }
    return a;
}

int64_t narrow(Wide v) {
    if (v > numeric_limits<int64_t>::max() || v < numeric_limits<int64_t>::min())
        throw overflow_error("rational arithmetic overflow");
    return static_cast<int64_t>(v);
}

void normalize(Wide &n, Wide &d) {
    if (d == 0)
        throw domain_error("rational with zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    Wide g = wide_gcd(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    if (n == 0)
        d = 1;
}
}

Rational::Rational(int64_t numerator, int64_t denominator) {
    Wide n = numerator, d = denominator;
    normalize(n, d);
    num = narrow(n);
    den = narrow(d);
}

Rational Rational::operator-() const {
    Rational r;
    r.num = narrow(-static_cast<Wide>(num));
    r.den = den;
    return r;
}

Rational &Rational::operator+=(const Rational &other) {
    Wide n = static_cast<Wide>(num) * other.den + static_cast<Wide>(other.num) * den;
    Wide d = static_cast<Wide>(den) * other.den;
    normalize(n, d);
    num = narrow(n);
    den = narrow(d);
    return *this;
}

Rational &Rational::operator-=(const Rational &other) {
    return *this += -other;
}

Rational &Rational::operator*=(const Rational &other) {
    Wide n = static_cast<Wide>(num) * other.num;
    Wide d = static_cast<Wide>(den) * other.den;
    normalize(n, d);
    num = narrow(n);
    den = narrow(d);
    return *this;
}

strong_ordering operator<=>(const Rational &a, const Rational &b) {
    Wide lhs = static_cast<Wide>(a.num) * b.den;
    Wide rhs = static_cast<Wide>(b.num) * a.den;
    if (lhs < rhs)
        return strong_ordering::less;
    if (lhs > rhs)
        return strong_ordering::greater;
    return strong_ordering::equal;
}

optional<Rational> Rational::parse(string_view text) {
    if (text.empty())
        return nullopt;
    bool negative = false;
    size_t pos = 0;
    if (text[0] == '+' || text[0] == '-') {
        negative = text[0] == '-';
        ++pos;
    }
    Wide n = 0, d = 1;
    size_t digits = 0;
    auto read_digits = [&](Wide &acc) {
        size_t start = pos;
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
            acc = acc * 10 + (text[pos] - '0');
            if (acc > numeric_limits<int64_t>::max())
                return false;
            ++pos;
        }
        digits = pos - start;
        return true;
    };
    if (!read_digits(n) || digits == 0)
        return nullopt;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        size_t start = pos;
        while (pos < text.size() && isdigit(static_cast<unsigned char>(text[pos]))) {
            n = n * 10 + (text[pos] - '0');
            d *= 10;
            if (n > numeric_limits<int64_t>::max() || d > numeric_limits<int64_t>::max())
                return nullopt;
            ++pos;
        }
        if (pos == start)
            return nullopt;
    } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        d = 0;
        if (!read_digits(d) || digits == 0 || d == 0)
            return nullopt;
    }
    if (pos != text.size())
        return nullopt;
    if (negative)
        n = -n;
    normalize(n, d);
    Rational r;
    r.num = narrow(n);
    r.den = narrow(d);
    return r;
}

string Rational::to_string() const {
    int64_t d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++twos;
    }
    while (d % 5 == 0) {
        d /= 5;
        ++fives;
    }
    if (d != 1)
        return std::to_string(num) + "/" + std::to_string(den);

    int places = max(twos, fives);
    Wide scaled = static_cast<Wide>(num);
    Wide scale = 1;
    for (int i = 0; i < places; ++i)
        scale *= 10;
    scaled = scaled * (scale / den);
    bool negative = scaled < 0;
    Wide magnitude = wide_abs(scaled);
    Wide integral = magnitude / scale;
    Wide fractional = magnitude % scale;

    string result = negative ? "-" : "";
    result += std::to_string(static_cast<uint64_t>(integral));
    if (places > 0) {
        string frac = std::to_string(static_cast<uint64_t>(fractional));
        result += "." + string(places - frac.size(), '0') + frac;
    }
    return result;
}

double Rational::to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
}

}
