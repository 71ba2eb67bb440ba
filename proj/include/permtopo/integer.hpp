#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace permtopo {

/// Arbitrary-precision integer used for Möbius values and exact elimination.
using Integer = boost::multiprecision::cpp_int;

}  // namespace permtopo
