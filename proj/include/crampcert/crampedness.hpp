#pragma once

#include <json.hpp>
#include <optional>
#include <variant>
#include <vector>

#include "crampcert/branching.hpp"

namespace crampcert {

// Finite proof of crampedness: least m_i with an invariant vector on each
// fundamental-weight line, plus b(lambda) over the box below those bounds.
struct CrampednessCertificate {
  EmbeddingSpec spec;
  std::vector<Int> m;  // indexed by g fundamental weights
  std::vector<std::pair<RatVec, Int>> box;  // (lambda, b(lambda)), lambda != 0
  Int bGH;
  Int searchBound;
};

// Indices (1-based) whose m_i search exhausted mMax.  Proves nothing.
struct Inconclusive {
  std::vector<int> missing;
  Int searchBound;
};

using CertifyResult = std::variant<CrampednessCertificate, Inconclusive>;

// Least m <= mMax with a nonzero h-invariant in V_{m omega_i};
// absent if the line has no invariants up to mMax.  i is 1-based.
std::optional<Int> findMi(const EmbeddingSpec& spec, int i, const Int& mMax);

CertifyResult certify(const EmbeddingSpec& spec, const Int& mMax = Int(12));

enum class Obstruction { NotCramped, NoObstruction };

// Surjectivity of the cotangent moment map needs
// 2*(dim g - dim h) >= dim g; failure proves non-crampedness.
Obstruction dimensionObstruction(const EmbeddingSpec& spec);

nlohmann::json certificateToJson(const CertifyResult& result);

}  // namespace crampcert
