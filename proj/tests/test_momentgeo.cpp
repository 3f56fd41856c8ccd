#include <doctest.h>

#include <unsupported/Eigen/MatrixFunctions>

#include <random>

#include "crampcert/momentgeo.hpp"

using namespace crampcert;

namespace {

Rat R(long p) { return Rat(p); }

OptimizerConfig quickCfg(int restarts = 8, std::uint64_t seed = 11) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.maxIters = 300;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

TEST_CASE("compact model invariants") {
  for (const char* pair : {"identity:A1", "diagonal:A1", "principal-sl2:A2", "sl2-in-sl3"}) {
    CAPTURE(pair);
    auto model = buildCompactModel(parsePair(pair));
    const long n = model.dimension;
    CHECK(n == model.spec.g->dimension());

    // metric positive definite and symmetric
    CHECK((model.metric - model.metric.transpose()).norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(model.metric);
    CHECK(es.eigenvalues().minCoeff() > 0.0);

    // bracket closure: [A_i, A_j] = ad([b_i, b_j]) as matrices
    for (long i = 0; i < n; ++i)
      for (long j = i + 1; j < n; ++j) {
        Eigen::MatrixXd comm =
            model.adjointBasis[i] * model.adjointBasis[j] -
            model.adjointBasis[j] * model.adjointBasis[i];
        Eigen::VectorXd bij = model.adjointBasis[i].col(j);
        Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(n, n);
        for (long k = 0; k < n; ++k)
          if (bij[k] != 0.0) expect += bij[k] * model.adjointBasis[k];
        CHECK((comm - expect).norm() < 1e-9);
      }

    // projector: idempotent, metric self-adjoint, correct rank
    const Eigen::MatrixXd& P = model.hProjector;
    CHECK((P * P - P).norm() < 1e-9);
    CHECK((model.metric * P - P.transpose() * model.metric).norm() < 1e-9);
    CHECK(std::lround(P.trace()) == model.spec.h->dimension());

    // metric invariance: <[x,y],z> + <y,[x,z]> = 0 on basis triples
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> pick(0, n - 1);
    for (int t = 0; t < 30; ++t) {
      long i = pick(rng), j = pick(rng), k = pick(rng);
      double lhs = model.adjointBasis[i].col(j).dot(model.metric.col(k)) +
                   model.adjointBasis[i].col(k).dot(model.metric.col(j));
      CHECK(std::abs(lhs) < 1e-9);
    }
  }
}

TEST_CASE("chamber map matches the exact weight metric") {
  for (const char* sys : {"A2", "B2", "G2", "A1xA1"}) {
    CAPTURE(sys);
    auto model = buildCompactModel(parsePair(std::string("identity:") + sys));
    std::mt19937 rng(3);
    std::uniform_int_distribution<long> c(-3, 3);
    for (int t = 0; t < 10; ++t) {
      RatVec lam(model.spec.g->rank()), mu(model.spec.g->rank());
      for (auto& v : lam) v = R(c(rng));
      for (auto& v : mu) v = R(c(rng));
      double exact = static_cast<double>(model.spec.g->inner(lam, mu));
      Eigen::VectorXd a = model.chamberMap(lam), b = model.chamberMap(mu);
      CHECK(a.dot(model.metric * b) == doctest::Approx(exact).epsilon(1e-9));
      CHECK(model.metricNorm(a) ==
            doctest::Approx(weightNorm(*model.spec.g, lam)).epsilon(1e-9));
    }
  }
}

TEST_CASE("identity pair distance is the full norm") {
  auto model = buildCompactModel(parsePair("identity:A1"));
  auto cfg = quickCfg();
  RatVec lam{R(1)};
  auto res = momentImageDistance(model, lam, cfg);
  CHECK(res.distance ==
        doctest::Approx(model.metricNorm(model.chamberMap(lam))).epsilon(1e-6));
  CHECK_FALSE(orbitMeetsHPerp(model, lam, cfg, 1e-3).meets);
}

TEST_CASE("diagonal A1 closed forms") {
  auto model = buildCompactModel(parsePair("diagonal:A1"));
  auto cfg = quickCfg();

  RatVec asym{R(1), R(0)};
  double norm = model.metricNorm(model.chamberMap(asym));
  auto res = momentImageDistance(model, asym, cfg);
  CHECK(res.distance == doctest::Approx(norm / std::sqrt(2.0)).epsilon(5e-3));
  CHECK_FALSE(orbitMeetsHPerp(model, asym, cfg, 1e-3).meets);

  RatVec sym{R(1), R(1)};
  CHECK(momentImageDistance(model, sym, cfg).distance < 1e-3);
  CHECK(orbitMeetsHPerp(model, sym, cfg, 1e-3).meets);
}

TEST_CASE("homogeneity of the distance") {
  auto model = buildCompactModel(parsePair("diagonal:A1"));
  auto cfg = quickCfg();
  RatVec lam{R(2), R(1)};
  RatVec twice{R(4), R(2)};
  double d1 = momentImageDistance(model, lam, cfg).distance;
  double d2 = momentImageDistance(model, twice, cfg).distance;
  CHECK(d2 == doctest::Approx(2.0 * d1).epsilon(1e-2));
}

TEST_CASE("conjugation invariance of the distance") {
  auto model = buildCompactModel(parsePair("principal-sl2:A2"));
  auto cfg = quickCfg();
  RatVec lam{R(1), R(0)};
  Eigen::VectorXd xi = model.chamberMap(lam);
  double base = orbitDistanceFrom(model, xi, cfg).distance;
  std::mt19937 rng(29);
  std::normal_distribution<double> nd(0.0, 0.7);
  for (int t = 0; t < 3; ++t) {
    Eigen::VectorXd z(model.dimension);
    for (long i = 0; i < model.dimension; ++i) z[i] = nd(rng);
    Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(model.dimension, model.dimension);
    for (long i = 0; i < model.dimension; ++i) ad += z[i] * model.adjointBasis[i];
    Eigen::VectorXd moved = ad.exp() * xi;
    CHECK(orbitDistanceFrom(model, moved, cfg).distance == doctest::Approx(base).epsilon(1e-3));
  }
}

TEST_CASE("Kirwan-Ness consistency with exact invariants") {
  for (const char* pair : {"diagonal:A1", "principal-sl2:A2"}) {
    CAPTURE(pair);
    auto spec = parsePair(pair);
    auto model = buildCompactModel(spec);
    auto cfg = quickCfg();
    std::vector<RatVec> lams;
    const int r = spec.g->rank();
    for (int i = 0; i < r; ++i) {
      RatVec l(r, R(0));
      l[i] = 1;
      lams.push_back(l);
    }
    lams.push_back(RatVec(r, R(1)));
    for (const auto& lam : lams) {
      bool hasInvariant = false;
      for (long nn = 1; nn <= 12 && !hasInvariant; ++nn) {
        RatVec nl(lam);
        for (auto& c : nl) c *= nn;
        if (invariantDim(spec, nl) > 0) hasInvariant = true;
      }
      double dist = momentImageDistance(model, lam, cfg).distance;
      double scale = 1.0 + model.metricNorm(model.chamberMap(lam));
      CAPTURE(dist);
      if (hasInvariant) CHECK(dist < 1e-3 * scale);
      if (dist > 0.05) CHECK_FALSE(hasInvariant);
    }
  }
}

TEST_CASE("fundamental orbit scan verdicts") {
  auto cfg = quickCfg();
  auto pr = scanFundamentalOrbits(buildCompactModel(parsePair("principal-sl2:A2")), cfg, 1e-3);
  CHECK(pr.numericallyCramped);
  for (const auto& row : pr.rows) CHECK(row.meets);

  auto diag = scanFundamentalOrbits(buildCompactModel(parsePair("diagonal:A1")), cfg, 1e-3);
  CHECK_FALSE(diag.numericallyCramped);
  CHECK_FALSE(diag.rows[0].meets);  // both one-sided rays keep positive distance
  CHECK_FALSE(diag.rows[1].meets);

  auto id = scanFundamentalOrbits(buildCompactModel(parsePair("identity:A1")), cfg, 1e-3);
  CHECK_FALSE(id.numericallyCramped);
}

TEST_CASE("minimal orbit dimensions from root data") {
  CHECK(minOrbitDimension(*RootSystem::parse("A1")) == 2);
  CHECK(minOrbitDimension(*RootSystem::parse("A2")) == 4);
  CHECK(minOrbitDimension(*RootSystem::parse("G2")) == 10);
  CHECK(minOrbitDimension(*RootSystem::parse("A1xA1")) == 2);
  CHECK(minOrbitDimension(*RootSystem::parse("B2")) == 6);
}

TEST_CASE("WZ orbit-intersection property") {
  auto cfg = quickCfg(6);
  auto g2 = wzOrbitProperty(buildCompactModel(parsePair("principal-sl2:G2")), 6, cfg, 1e-3);
  CHECK(g2.hypothesisHolds);  // 10 > 6
  CHECK(g2.samples.size() == 6);
  CHECK(g2.failures.empty());

  auto diag = wzOrbitProperty(buildCompactModel(parsePair("diagonal:A1")), 5, cfg, 1e-3);
  CHECK_FALSE(diag.hypothesisHolds);  // 2 > 6 fails
  CHECK(diag.samples.empty());

  auto id = wzOrbitProperty(buildCompactModel(parsePair("identity:A1")), 5, cfg, 1e-3);
  CHECK_FALSE(id.hypothesisHolds);
}

TEST_CASE("restart results are identical for any worker count") {
  auto model = buildCompactModel(parsePair("principal-sl2:A2"));
  RatVec lam{R(1), R(1)};
  OptimizerConfig cfg = quickCfg(12, 99);
  auto serial = momentImageDistance(model, lam, cfg);
  cfg.threads = 3;
  auto parallel = momentImageDistance(model, lam, cfg);
  CHECK(serial.distance == parallel.distance);
  CHECK(serial.bestRestart == parallel.bestRestart);
  CHECK(serial.iterations == parallel.iterations);
  CHECK(serial.argmin == parallel.argmin);
}

TEST_CASE("build rejects embeddings without generators") {
  auto spec = parsePair("diagonal:A1");
  spec.compactGenerators.clear();
  CHECK_THROWS_AS(buildCompactModel(spec), EmbeddingError);
}
