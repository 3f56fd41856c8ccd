#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "crampcert/chevalley.hpp"
#include "crampcert/liecore.hpp"


#include <json.hpp>

namespace crampcert {

// Restriction matrix does not come from a Lie algebra inclusion, or a
// document failed validation.
struct EmbeddingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A subalgebra inclusion h in g, given by the weight-restriction matrix
// (rank(h) x rank(g), fundamental coordinates to fundamental coordinates)
// plus, optionally, a spanning basis of the image of h expressed over g's
// Chevalley basis.  Generator coefficients are real: the principal sl2
// triple needs sqrt factors to be stable under the compact involution.
struct EmbeddingSpec {
  std::string name;
  RootSystemPtr g;
  RootSystemPtr h;
  RatMat restriction;
  std::vector<std::vector<double>> compactGenerators;

  bool hasCompactGenerators() const { return !compactGenerators.empty(); }
  // Stable identity for caches and output documents.
  std::string cacheKey() const;
};

// Built-in pairs:
//   identity:<g>          h = g
//   diagonal:<h>          h -> h x h
//   factor:<h>,<h'>       first-factor projection of h x h'
//   principal-sl2:<g>     the principal sl2
//   sl<n>-in-sl<n+1>      A_{n-1} in A_n, n >= 2
EmbeddingSpec catalogEmbedding(const std::string& name, const std::vector<std::string>& params);
// One-string form, e.g. "principal-sl2:A2", "factor:A1,A1", "sl2-in-sl3".
EmbeddingSpec parsePair(const std::string& pairDescriptor);
std::vector<std::string> catalogPairNames();  // the desk-scale test catalog

// Validated (de)serialization; see the embedding-spec schema in README.
EmbeddingSpec loadEmbedding(const nlohmann::json& doc);
nlohmann::json saveEmbedding(const EmbeddingSpec& spec);
// Runs all EmbeddingSpec invariants; throws EmbeddingError on failure.
void validateEmbedding(const EmbeddingSpec& spec);

// Image of a g-weight in h-fundamental coordinates.
RatVec restrictWeight(const EmbeddingSpec& spec, const RatVec& lambda);

struct BranchTerm {
  RatVec weight;  // dominant integral h-weight
  long long multiplicity;
};

// Full decomposition of V_lambda as an h-module (highest-weight stripping
// of the restricted character).  Throws EmbeddingError when stripping
// detects an impossible restriction matrix.
std::vector<BranchTerm> branch(const EmbeddingSpec& spec, const RatVec& lambda);

// Multiplicity of the trivial h-module in V_lambda.
long long invariantDim(const EmbeddingSpec& spec, const RatVec& lambda);

// Smallest dimension of an irreducible h-constituent of V_lambda (lambda != 0).
Int bOfLambda(const EmbeddingSpec& spec, const RatVec& lambda);

// b(lambda) < n, i.e. lambda lies in D'_n.
bool inDPrimeN(const EmbeddingSpec& spec, const RatVec& lambda, const Int& n);

}  // namespace crampcert
