#pragma once

#include <complex>
#include <map>
#include <memory>
#include <vector>

#include "crampcert/liecore.hpp"

namespace crampcert {

// Chevalley basis {h_1..h_r, e_alpha, f_alpha (alpha > 0)} with exact
// integer structure constants.  Signed root index: +k / -k-1 encode the
// k-th positive root and its negative.
//
// Basis element order used for coefficient vectors everywhere:
//   h_1..h_r, e_{alpha_0}..e_{alpha_{P-1}}, f_{alpha_0}..f_{alpha_{P-1}}
// with positive roots in the RootSystem's (height, lex) order.
class ChevalleyBasis {
 public:
  explicit ChevalleyBasis(RootSystemPtr rs);

  const RootSystemPtr& system() const { return rs_; }
  int rank() const { return rs_->rank(); }
  int numPositive() const { return static_cast<int>(rs_->positiveRoots().size()); }
  long dimension() const { return rs_->dimension(); }

  // N_{alpha,beta} for signed root indices; 0 when alpha+beta is not a root.
  // alpha + beta = 0 is not handled here (that bracket is a Cartan element).
  long structureConstant(int alphaSigned, int betaSigned) const;

  // Coefficients of the coroot h_alpha = [e_alpha, f_alpha] over h_1..h_r.
  const std::vector<Rat>& corootCoeffs(int posIndex) const { return coroots_[posIndex]; }

  // Signed index of a root given by simple-root coordinates, or nullopt.
  std::optional<int> rootIndex(const std::vector<long>& simpleCoords) const;

  // Bracket of coefficient vectors over the Chevalley basis (complex).
  using CVec = std::vector<std::complex<double>>;
  CVec bracket(const CVec& x, const CVec& y) const;

  // Same for real coefficient vectors (structure constants are real, so
  // the real span is bracket-stable).  Backed by a precompiled table.
  using RVec = std::vector<double>;
  RVec realBracket(const RVec& x, const RVec& y) const;

  // Exact bracket of two single basis elements, as integer coefficients.
  // Index convention: 0..r-1 Cartan, r..r+P-1 e's, r+P..r+2P-1 f's.
  std::vector<Rat> basisBracket(int i, int j) const;

 private:
  int posIndexOf(int s) const { return s >= 0 ? s : -s - 1; }
  bool isNegative(int s) const { return s < 0; }
  int negate(int s) const { return -s - 1; }
  Rat rootHalfNorm(int s) const { return rs_->positiveRoots()[posIndexOf(s)].halfNorm; }

  long positivePairConstant(int i, int j) const;  // both positive indices

  RootSystemPtr rs_;
  std::map<std::vector<long>, int> indexBySimpleCoords_;
  std::vector<std::vector<Rat>> coroots_;
  // N for ordered pairs of positive roots (i, j) with alpha_i + alpha_j a root.
  std::map<std::pair<int, int>, long> posN_;
  // Sparse [b_i, b_j] as (index, coefficient) lists, filled after posN_.
  std::vector<std::vector<std::vector<std::pair<int, double>>>> table_;
};

using ChevalleyPtr = std::shared_ptr<const ChevalleyBasis>;
ChevalleyPtr chevalleyBasis(const RootSystemPtr& rs);

}  // namespace crampcert
