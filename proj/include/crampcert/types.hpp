#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace crampcert {

// Arbitrary-precision integers and rationals; all lattice-level
// computations are exact, floating point appears only at metric
// boundaries (square roots, optimizer state).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

}  // namespace crampcert
