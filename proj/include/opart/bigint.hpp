#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace opart {

/// Arbitrary-precision signed integer used for every coefficient and count.
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace opart
