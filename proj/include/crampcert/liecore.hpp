#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "crampcert/types.hpp"

namespace crampcert {

enum class Family { A, B, C, D, G };

char familyLetter(Family f);

struct SimpleFactor {
  Family family;
  int rank;
};

// A positive root, kept in two coordinate systems at once.
struct Root {
  std::vector<long> fund;    // coordinates in the fundamental-weight basis
  std::vector<long> simple;  // coordinates in the simple-root basis
  int height = 0;
  Rat halfNorm;              // (alpha, alpha)/2 in the normalized form
};

// Root/weight-lattice data for a semisimple algebra, possibly a product
// of simple factors.  Immutable after construction; share via shared_ptr.
//
// Conventions: cartan()[i][j] = <alpha_i, alpha_j^vee>.  The invariant
// form gives long roots of each simple factor squared length 2 and makes
// distinct factors orthogonal.  A weight's i-th coordinate is its pairing
// with alpha_i^vee.
class RootSystem {
 public:
  static std::shared_ptr<const RootSystem> build(std::vector<SimpleFactor> factors);
  // Text descriptors like "A2", "a1xa1", "G2" (case-insensitive, 'x' separates factors).
  static std::shared_ptr<const RootSystem> parse(std::string_view descriptor);

  int rank() const { return rank_; }
  const std::vector<SimpleFactor>& factors() const { return factors_; }
  const std::vector<std::vector<long>>& cartan() const { return cartan_; }
  const std::vector<Root>& positiveRoots() const { return positive_; }
  const Root& simpleRoot(int i) const { return positive_[i]; }  // first rank() entries are simple
  const RatVec& rho() const { return rho_; }
  const RatMat& formMatrix() const { return form_; }
  // d_i = (alpha_i, alpha_i)/2 per simple root.
  const RatVec& halfNorms() const { return halfNorms_; }

  std::string descriptor() const;
  // Complex dimension of the algebra: rank + 2 * #positive roots.
  long dimension() const { return rank_ + 2 * static_cast<long>(positive_.size()); }

  Rat inner(const RatVec& x, const RatVec& y) const;
  // (mu, alpha) for a root given in simple-root coordinates.
  Rat innerWithRoot(const RatVec& mu, const Root& alpha) const;
  // Simple-root coordinates of a weight (rational in general).
  RatVec toRootBasis(const RatVec& mu) const;
  // Height = sum of simple-root coordinates.
  Rat weightHeight(const RatVec& mu) const;

 private:
  RootSystem() = default;

  std::vector<SimpleFactor> factors_;
  int rank_ = 0;
  std::vector<std::vector<long>> cartan_;
  std::vector<Root> positive_;
  RatVec rho_;
  RatVec halfNorms_;
  RatMat form_;       // Gram matrix of fundamental weights
  RatMat invCartanT_; // (C^T)^{-1}, for the root-basis change
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

// Exact weight bound to its root system, coordinates in the
// fundamental-weight basis.
class Weight {
 public:
  Weight() = default;
  Weight(RootSystemPtr system, RatVec coords);

  const RootSystemPtr& system() const { return system_; }
  const RatVec& coords() const { return coords_; }
  const Rat& operator[](int i) const { return coords_[i]; }

  bool isIntegral() const;
  bool isDominant() const;
  bool isZero() const;

  bool operator==(const Weight& o) const { return coords_ == o.coords_; }
  bool operator!=(const Weight& o) const { return !(*this == o); }
  bool operator<(const Weight& o) const { return coords_ < o.coords_; }

  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight scaled(const Rat& c) const;

  std::string str() const;

 private:
  RootSystemPtr system_;
  RatVec coords_;
};

Weight fundamentalWeight(const RootSystemPtr& rs, int i);
Weight zeroWeight(const RootSystemPtr& rs);
Weight makeWeight(const RootSystemPtr& rs, std::vector<long> coords);

// Finite weight -> multiplicity table (no zero entries stored).
class Character {
 public:
  using Map = std::map<RatVec, long long>;

  Character() = default;
  explicit Character(RootSystemPtr system) : system_(std::move(system)) {}

  const RootSystemPtr& system() const { return system_; }
  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  long long multiplicity(const RatVec& mu) const;
  void add(const RatVec& mu, long long m);
  Int totalMass() const;

 private:
  RootSystemPtr system_;
  Map entries_;
};

// --- operations ---------------------------------------------------------

// Exact Weyl dimension formula; lambda must be dominant integral.
Int weylDim(const RootSystem& rs, const RatVec& lambda);
inline Int weylDim(const Weight& w) { return weylDim(*w.system(), w.coords()); }

// Full weight system of the irreducible V_lambda (Freudenthal recursion
// for dominant multiplicities, Weyl-orbit expansion for the rest).
// Results are memoized per root system instance.
Character weightMultiplicities(const RootSystemPtr& rs, const RatVec& lambda);

// Unique dominant representative of the Weyl orbit.
RatVec dominanceReduce(const RootSystem& rs, RatVec mu);

// Euclidean distance induced by the invariant form.
double distance(const RootSystem& rs, const RatVec& a, const RatVec& b);
double weightNorm(const RootSystem& rs, const RatVec& a);

// All dominant integral mu with weylDim(mu) < n.
std::vector<RatVec> dimBoundedWeights(const RootSystem& rs, const Int& n);

// sup of distance-to-origin over dimBoundedWeights(rs, n).
double etaN(const RootSystem& rs, const Int& n);

}  // namespace crampcert
