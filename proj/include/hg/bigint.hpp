#pragma once
// Unbounded-precision integers for expansion-scale counts.

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace hg {

using BigInt = boost::multiprecision::cpp_int;

inline std::string to_decimal(const BigInt& v) { return v.str(); }

}  // namespace hg
