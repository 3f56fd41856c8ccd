#include <doctest.h>

#include <algorithm>
#include <map>
#include <json.hpp>

#include "crampcert/branching.hpp"

using namespace crampcert;

namespace {

Rat R(long p, long q = 1) { return Rat(p, q); }

std::map<RatVec, long long> asMap(const std::vector<BranchTerm>& terms) {
  std::map<RatVec, long long> m;
  for (const auto& t : terms) m[t.weight] += t.multiplicity;
  return m;
}

// Independent oracle: V_m (x) V_n = sum_{j=0}^{min(m,n)} V_{m+n-2j}.
std::map<RatVec, long long> clebschGordan(long m, long n) {
  std::map<RatVec, long long> out;
  for (long j = 0; j <= std::min(m, n); ++j) out[{R(m + n - 2 * j)}] += 1;
  return out;
}

Int totalDim(const EmbeddingSpec& spec, const std::vector<BranchTerm>& terms) {
  Int d = 0;
  for (const auto& t : terms) d += t.multiplicity * weylDim(*spec.h, t.weight);
  return d;
}

}  // namespace

TEST_CASE("diagonal A1 branching matches the Clebsch-Gordan rule") {
  auto spec = parsePair("diagonal:A1");
  for (long m = 0; m <= 5; ++m)
    for (long n = 0; n <= 5; ++n) {
      auto terms = branch(spec, {R(m), R(n)});
      CHECK(asMap(terms) == clebschGordan(m, n));
    }
}

TEST_CASE("identity embedding branches to the module itself") {
  for (const char* d : {"A1", "A2", "B2"}) {
    auto spec = parsePair(std::string("identity:") + d);
    RatVec lam(spec.g->rank(), R(1));
    auto terms = branch(spec, lam);
    REQUIRE(terms.size() == 1);
    CHECK(terms[0].weight == lam);
    CHECK(terms[0].multiplicity == 1);
  }
}

TEST_CASE("factor branching multiplies by the other factor's dimension") {
  auto spec = parsePair("factor:A1,A1");
  auto terms = branch(spec, {R(1), R(2)});
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].weight == RatVec{R(1)});
  CHECK(terms[0].multiplicity == 3);  // dim V_2 on the projected-away factor
}

TEST_CASE("principal sl2 branching examples") {
  auto a2 = parsePair("principal-sl2:A2");
  // adjoint of sl3 = V_4 + V_2 under the principal sl2
  CHECK(asMap(branch(a2, {R(1), R(1)})) ==
        std::map<RatVec, long long>{{{R(4)}, 1}, {{R(2)}, 1}});
  // standard rep of sl3 = V_2
  CHECK(asMap(branch(a2, {R(1), R(0)})) == std::map<RatVec, long long>{{{R(2)}, 1}});

  auto g2 = parsePair("principal-sl2:G2");
  // 7-dimensional rep of G2 restricts irreducibly to V_6
  CHECK(asMap(branch(g2, {R(1), R(0)})) == std::map<RatVec, long long>{{{R(6)}, 1}});
  // adjoint of G2 = V_10 + V_2 (exponents 1, 5)
  CHECK(asMap(branch(g2, {R(0), R(1)})) ==
        std::map<RatVec, long long>{{{R(10)}, 1}, {{R(2)}, 1}});
}

TEST_CASE("sl2-in-sl3 branching") {
  auto spec = parsePair("sl2-in-sl3");
  CHECK(spec.g->descriptor() == "A2");
  CHECK(spec.h->descriptor() == "A1");
  // standard 3 = 2 + 1
  CHECK(asMap(branch(spec, {R(1), R(0)})) ==
        std::map<RatVec, long long>{{{R(1)}, 1}, {{R(0)}, 1}});
  // adjoint 8 = 3 + 2 + 2 + 1
  CHECK(asMap(branch(spec, {R(1), R(1)})) ==
        std::map<RatVec, long long>{{{R(2)}, 1}, {{R(1)}, 2}, {{R(0)}, 1}});
}

TEST_CASE("branching conserves dimension") {
  for (const char* pair : {"diagonal:A2", "principal-sl2:B2", "sl2-in-sl3", "factor:A1,A1"}) {
    auto spec = parsePair(pair);
    std::vector<RatVec> lams;
    const int r = spec.g->rank();
    for (int i = 0; i < r; ++i) {
      RatVec l(r, R(0));
      l[i] = 1;
      lams.push_back(l);
    }
    lams.push_back(RatVec(r, R(1)));
    for (const auto& lam : lams) {
      CAPTURE(pair);
      CHECK(totalDim(spec, branch(spec, lam)) == weylDim(*spec.g, lam));
    }
  }
}

TEST_CASE("restriction of weights is linear") {
  auto spec = parsePair("principal-sl2:B2");
  RatVec a{R(1), R(2)}, b{R(3), R(1)};
  RatVec sum{a[0] + b[0], a[1] + b[1]};
  auto ra = restrictWeight(spec, a), rb = restrictWeight(spec, b), rs = restrictWeight(spec, sum);
  for (int i = 0; i < spec.h->rank(); ++i) CHECK(rs[i] == ra[i] + rb[i]);
}

TEST_CASE("invariantDim and bOfLambda") {
  auto diag = parsePair("diagonal:A1");
  CHECK(invariantDim(diag, {R(2), R(2)}) == 1);
  CHECK(invariantDim(diag, {R(2), R(1)}) == 0);
  CHECK(bOfLambda(diag, {R(2), R(1)}) == 2);  // 3 (x) 2 = 4 + 2
  CHECK(bOfLambda(diag, {R(1), R(1)}) == 1);  // 2 (x) 2 = 3 + 1
  CHECK(inDPrimeN(diag, {R(1), R(1)}, Int(2)));
  CHECK_FALSE(inDPrimeN(diag, {R(1), R(1)}, Int(1)));

  auto pr = parsePair("principal-sl2:A2");
  CHECK(bOfLambda(pr, {R(1), R(1)}) == 3);
  CHECK_THROWS_AS(bOfLambda(pr, {R(0), R(0)}), std::invalid_argument);
}

TEST_CASE("catalog generator bases pass validation") {
  for (const auto& name : catalogPairNames()) {
    CAPTURE(name);
    auto spec = parsePair(name);
    CHECK(spec.hasCompactGenerators());
    CHECK_NOTHROW(validateEmbedding(spec));
  }
}

TEST_CASE("embedding documents round-trip") {
  for (const char* name : {"diagonal:A2", "principal-sl2:G2", "sl2-in-sl3"}) {
    auto spec = parsePair(name);
    auto doc = saveEmbedding(spec);
    auto back = loadEmbedding(doc);
    CHECK(back.name == spec.name);
    CHECK(back.g->descriptor() == spec.g->descriptor());
    CHECK(back.h->descriptor() == spec.h->descriptor());
    CHECK(back.restriction == spec.restriction);
    CHECK(back.compactGenerators.size() == spec.compactGenerators.size());
    // identical branching behaviour
    RatVec lam(spec.g->rank(), R(1));
    CHECK(asMap(branch(back, lam)) == asMap(branch(spec, lam)));
  }
}

TEST_CASE("loadEmbedding rejects malformed documents") {
  CHECK_THROWS_AS(loadEmbedding(nlohmann::json::array()), EmbeddingError);
  CHECK_THROWS_AS(loadEmbedding(nlohmann::json{{"name", "x"}}), EmbeddingError);

  auto doc = saveEmbedding(parsePair("diagonal:A1"));
  auto bad = doc;
  bad.erase("restriction");
  CHECK_THROWS_AS(loadEmbedding(bad), EmbeddingError);

  bad = doc;
  bad["restriction"][0][0] = "1/2";  // not lattice-to-lattice
  CHECK_THROWS_AS(loadEmbedding(bad), EmbeddingError);

  bad = doc;
  bad["compact_generators"][0]["e_99"] = 1.0;  // unknown basis label
  CHECK_THROWS_AS(loadEmbedding(bad), EmbeddingError);

  bad = doc;
  bad["schema"] = "something-else";
  CHECK_THROWS_AS(loadEmbedding(bad), EmbeddingError);
}

TEST_CASE("branch rejects a restriction matrix with no matching inclusion") {
  auto spec = parsePair("diagonal:A1");
  spec.restriction = {{R(1), R(3)}};  // no sl2 restricts the adjoint like this
  CHECK_THROWS_AS(branch(spec, {R(1), R(1)}), EmbeddingError);
}
