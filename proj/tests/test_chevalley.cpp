#include <doctest.h>

#include "crampcert/chevalley.hpp"

using namespace crampcert;

namespace {

std::vector<Rat> bracketVec(const ChevalleyBasis& cb, const std::vector<Rat>& x,
                            const std::vector<Rat>& y) {
  const long n = cb.dimension();
  std::vector<Rat> out(n, Rat(0));
  for (long i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (long j = 0; j < n; ++j) {
      if (y[j] == 0) continue;
      auto br = cb.basisBracket(static_cast<int>(i), static_cast<int>(j));
      for (long k = 0; k < n; ++k)
        if (br[k] != 0) out[k] += x[i] * y[j] * br[k];
    }
  }
  return out;
}

std::vector<Rat> unit(const ChevalleyBasis& cb, int i) {
  std::vector<Rat> v(cb.dimension(), Rat(0));
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("Jacobi identity holds on the whole basis") {
  for (const char* desc : {"A1", "A2", "B2", "G2", "A1xA1", "C3"}) {
    CAPTURE(desc);
    auto rs = RootSystem::parse(desc);
    auto cb = chevalleyBasis(rs);
    const int n = static_cast<int>(cb->dimension());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        for (int k = j + 1; k < n; ++k) {
          auto t1 = bracketVec(*cb, unit(*cb, i), cb->basisBracket(j, k));
          auto t2 = bracketVec(*cb, unit(*cb, j), cb->basisBracket(k, i));
          auto t3 = bracketVec(*cb, unit(*cb, k), cb->basisBracket(i, j));
          for (int t = 0; t < n; ++t) CHECK(t1[t] + t2[t] + t3[t] == 0);
        }
      }
    }
  }
}

TEST_CASE("bracket antisymmetry on basis elements") {
  auto rs = RootSystem::parse("G2");
  auto cb = chevalleyBasis(rs);
  const int n = static_cast<int>(cb->dimension());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto a = cb->basisBracket(i, j);
      auto b = cb->basisBracket(j, i);
      for (int k = 0; k < n; ++k) CHECK(a[k] == -b[k]);
    }
}

TEST_CASE("sl2 subalgebra relations for every positive root") {
  for (const char* desc : {"A2", "B2", "G2"}) {
    auto rs = RootSystem::parse(desc);
    auto cb = chevalleyBasis(rs);
    const int r = cb->rank();
    const int P = cb->numPositive();
    for (int p = 0; p < P; ++p) {
      // [e_p, f_p] = h_p, [h_p, e_p] = 2 e_p
      auto h = cb->basisBracket(r + p, r + P + p);
      std::vector<Rat> hvec(cb->dimension(), Rat(0));
      for (int k = 0; k < r; ++k) hvec[k] = h[k];
      auto he = bracketVec(*cb, hvec, unit(*cb, r + p));
      CHECK(he[r + p] == 2);
    }
  }
}

TEST_CASE("A2 structure constants have unit magnitude") {
  auto rs = RootSystem::parse("A2");
  auto cb = chevalleyBasis(rs);
  // alpha_0 + alpha_1 is the only decomposable positive root
  CHECK(std::abs(cb->structureConstant(0, 1)) == 1);
  CHECK(cb->structureConstant(0, 0) == 0);
}

TEST_CASE("G2 has a string of length 3: some |N| = 2 or 3 appears") {
  auto rs = RootSystem::parse("G2");
  auto cb = chevalleyBasis(rs);
  bool sawBig = false;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (std::abs(cb->structureConstant(i, j)) >= 2) sawBig = true;
  CHECK(sawBig);
}
