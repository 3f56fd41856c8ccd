#pragma once

#include <json.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

#include "crampcert/types.hpp"

namespace crampcert {

// Rationals travel as JSON integers when possible, else as "p/q" strings.
inline nlohmann::json ratToJson(const Rat& r) {
  if (boost::multiprecision::denominator(r) == 1) {
    const Int& n = boost::multiprecision::numerator(r);
    if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
      return n.convert_to<long long>();
  }
  std::ostringstream os;
  os << r;
  return os.str();
}

inline Rat ratFromJson(const nlohmann::json& j) {
  if (j.is_number_integer()) return Rat(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rat(j.get<std::string>());
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rational literal '" + j.get<std::string>() + "'");
    }
  }
  throw std::invalid_argument("expected an integer or a \"p/q\" string");
}

inline nlohmann::json ratVecToJson(const RatVec& v) {
  nlohmann::json a = nlohmann::json::array();
  for (const Rat& r : v) a.push_back(ratToJson(r));
  return a;
}

inline RatVec ratVecFromJson(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array of rationals");
  RatVec v;
  for (const auto& e : j) v.push_back(ratFromJson(e));
  return v;
}

}  // namespace crampcert
