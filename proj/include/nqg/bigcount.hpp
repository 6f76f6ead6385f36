#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace nqg {

// Exact nonnegative counts. Values up to ~2^300 appear in the order-4 ledger,
// so fixed-width integers are not an option.
using BigCount = boost::multiprecision::cpp_int;

BigCount factorial(unsigned n);

// 2^exp as an exact integer.
BigCount pow2(unsigned long exp);

BigCount bigpow(const BigCount& base, unsigned exp);

std::string decimal(const BigCount& v);

// log2 of a positive count, accurate to a few ulps of double.
double log2_approx(const BigCount& v);

}  // namespace nqg
