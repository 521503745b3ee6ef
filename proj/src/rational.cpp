#include "vkernel/rational.hpp"

#include <sstream>

namespace vk {

std::string rational_to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << "/" << denominator(r);
    return os.str();
}

Rational rational_pow(const Rational& base, long long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0 && exp < 0) fail(Errc::eval_domain, "negative power of zero constant");
    Rational b = exp < 0 ? Rational(denominator(base), numerator(base)) : base;
    unsigned long long e = exp < 0 ? static_cast<unsigned long long>(-(exp + 1)) + 1ull
                                   : static_cast<unsigned long long>(exp);
    Rational acc(1);
    while (e > 0) {
        if (e & 1ull) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

Rational factorial(int n) {
    Rational acc(1);
    for (int i = 2; i <= n; ++i) acc *= i;
    return acc;
}

}  // namespace vk
