#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace fgp {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace fgp
