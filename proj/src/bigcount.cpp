#include "nqg/bigcount.hpp"

#include <cmath>

namespace nqg {

BigCount factorial(unsigned n) {
    BigCount r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

BigCount pow2(unsigned long exp) {
    return BigCount(1) << exp;
}

BigCount bigpow(const BigCount& base, unsigned exp) {
    BigCount r = 1, b = base;
    while (exp) {
        if (exp & 1u) r *= b;
        b *= b;
        exp >>= 1u;
    }
    return r;
}

std::string decimal(const BigCount& v) {
    return v.str();
}

double log2_approx(const BigCount& v) {
    if (v <= 0) return -std::numeric_limits<double>::infinity();
    const unsigned bits = boost::multiprecision::msb(v);  // v >= 2^bits
    if (bits <= 62) return std::log2(v.convert_to<double>());
    // Scale the top 62 bits into a double and add the shifted-out exponent.
    const unsigned shift = bits - 62;
    const BigCount top = v >> shift;
    return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

}  // namespace nqg
