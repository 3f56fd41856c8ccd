#include "crampcert/momentgeo.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <random>
#include <sstream>
#include <thread>

#include "crampcert/chevalley.hpp"

namespace crampcert {

namespace {

constexpr double kBuildTol = 1e-9;

// One complex coefficient vector over the Chevalley basis per k basis element.
std::vector<ChevalleyBasis::CVec> compactBasisVectors(const ChevalleyBasis& cb) {
  const int r = cb.rank();
  const int p = cb.numPositive();
  const long n = cb.dimension();
  const std::complex<double> I(0.0, 1.0);
  std::vector<ChevalleyBasis::CVec> basis(n, ChevalleyBasis::CVec(n, 0.0));
  for (int j = 0; j < r; ++j) basis[j][j] = I;  // u_j = i h_j
  for (int q = 0; q < p; ++q) {
    basis[r + q][r + q] = 1.0;  // x_q = e_q - f_q
    basis[r + q][r + p + q] = -1.0;
    basis[r + p + q][r + q] = I;  // y_q = i(e_q + f_q)
    basis[r + p + q][r + p + q] = I;
  }
  return basis;
}

// Express a Chevalley-coefficient vector in the compact basis; fails when
// the element does not lie in the compact form.
Eigen::VectorXd toCompactCoords(const ChevalleyBasis& cb, const ChevalleyBasis::CVec& z,
                                const std::string& what) {
  const int r = cb.rank();
  const int p = cb.numPositive();
  const long n = cb.dimension();
  Eigen::VectorXd out(n);
  double residual = 0.0;
  for (int j = 0; j < r; ++j) {
    out[j] = z[j].imag();
    residual = std::max(residual, std::abs(z[j].real()));
  }
  for (int q = 0; q < p; ++q) {
    // e-coefficient b and f-coefficient must satisfy f = -conj(b)
    std::complex<double> b = z[r + q];
    std::complex<double> f = z[r + p + q];
    out[r + q] = b.real();
    out[r + p + q] = b.imag();
    residual = std::max(residual, std::abs(f + std::conj(b)));
  }
  if (residual > kBuildTol)
    throw EmbeddingError("element " + what + " leaves the compact form (residual " +
                         std::to_string(residual) + ")");
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct RunResult {
  double f = 0.0;
  Eigen::VectorXd v;
  long iterations = 0;
};

Eigen::MatrixXd adOf(const CompactModel& model, const Eigen::VectorXd& x) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(model.dimension, model.dimension);
  for (long i = 0; i < model.dimension; ++i)
    if (x[i] != 0.0) a += x[i] * model.adjointBasis[i];
  return a;
}

RunResult descend(const CompactModel& model, const Eigen::VectorXd& start,
                  const OptimizerConfig& cfg) {
  const Eigen::MatrixXd& M = model.metric;
  const Eigen::MatrixXd& P = model.hProjector;
  RunResult run;
  run.v = start;
  double step = cfg.stepInit;
  auto fOf = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd w = P * v;
    return 0.5 * w.dot(M * w);
  };
  double f = fOf(run.v);
  for (int it = 0; it < cfg.maxIters; ++it) {
    Eigen::VectorXd w = P * run.v;
    Eigen::VectorXd X = model.bracket(run.v, w);
    double g2 = X.dot(M * X);
    if (std::sqrt(g2) <= cfg.gradTol) break;
    Eigen::MatrixXd adX = adOf(model, X);
    bool accepted = false;
    for (int bt = 0; bt < 40; ++bt) {
      Eigen::VectorXd cand = (-step * adX).exp() * run.v;
      double fc = fOf(cand);
      if (fc <= f - 1e-4 * step * g2) {
        run.v = std::move(cand);
        f = fc;
        step = std::min(step * 1.3, 1e3);
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    ++run.iterations;
    if (!accepted) break;  // no progress at machine-scale steps
  }
  run.f = f;
  return run;
}

Eigen::VectorXd restartPoint(const CompactModel& model, const Eigen::VectorXd& xi,
                             const OptimizerConfig& cfg, int restart) {
  if (restart == 0) return xi;
  std::mt19937_64 rng(splitmix64(cfg.seed ^ (0x5851f42d4c957f2dULL * std::uint64_t(restart))));
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd z(model.dimension);
  for (long i = 0; i < model.dimension; ++i) z[i] = normal(rng);
  return adOf(model, z).exp() * xi;
}

}  // namespace

Eigen::VectorXd CompactModel::chamberMap(const std::vector<double>& lambda) const {
  const int r = spec.g->rank();
  if (static_cast<int>(lambda.size()) != r)
    throw std::invalid_argument("weight has wrong number of coordinates");
  const RatMat& F = spec.g->formMatrix();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dimension);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) out[i] += static_cast<double>(F[i][j]) * lambda[j];
  return out;
}

Eigen::VectorXd CompactModel::chamberMap(const RatVec& lambda) const {
  std::vector<double> l(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) l[i] = static_cast<double>(lambda[i]);
  return chamberMap(l);
}

Eigen::VectorXd CompactModel::bracket(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dimension);
  for (long i = 0; i < dimension; ++i)
    if (a[i] != 0.0) out += a[i] * (adjointBasis[i] * b);
  return out;
}

double CompactModel::metricNorm(const Eigen::VectorXd& v) const {
  return std::sqrt(std::max(0.0, v.dot(metric * v)));
}

CompactModel buildCompactModel(const EmbeddingSpec& spec) {
  if (!spec.hasCompactGenerators())
    throw EmbeddingError("embedding '" + spec.name + "' carries no generator basis");
  validateEmbedding(spec);

  CompactModel model;
  model.spec = spec;
  auto cb = chevalleyBasis(spec.g);
  const int r = cb->rank();
  const int p = cb->numPositive();
  const long n = cb->dimension();
  model.dimension = n;

  auto kBasis = compactBasisVectors(*cb);
  model.adjointBasis.assign(n, Eigen::MatrixXd::Zero(n, n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      auto z = cb->bracket(kBasis[i], kBasis[j]);
      std::ostringstream what;
      what << "[k_" << i + 1 << ", k_" << j + 1 << "]";
      model.adjointBasis[i].col(j) = toCompactCoords(*cb, z, what.str());
    }

  model.metric = Eigen::MatrixXd::Zero(n, n);
  const auto& cartan = spec.g->cartan();
  const RatVec& d = spec.g->halfNorms();
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      model.metric(i, j) = static_cast<double>(cartan[i][j]) / static_cast<double>(d[i]);
  for (int q = 0; q < p; ++q) {
    double dq = static_cast<double>(spec.g->positiveRoots()[q].halfNorm);
    model.metric(r + q, r + q) = 2.0 / dq;
    model.metric(r + p + q, r + p + q) = 2.0 / dq;
  }

  // l = k intersect h_C, computed over R: columns of A are the k basis in
  // (Re, Im) Chevalley coordinates, columns of B real-span h_C.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, n);
  for (long i = 0; i < n; ++i)
    for (long c = 0; c < n; ++c) {
      A(c, i) += kBasis[i][c].real();
      A(n + c, i) += kBasis[i][c].imag();
    }
  const auto& gens = spec.compactGenerators;
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(2 * n, 2 * static_cast<long>(gens.size()));
  for (std::size_t a = 0; a < gens.size(); ++a)
    for (long c = 0; c < n; ++c) {
      B(c, 2 * a) = gens[a][c];      // g_a
      B(n + c, 2 * a + 1) = gens[a][c];  // i g_a
    }
  Eigen::MatrixXd AB(2 * n, A.cols() + B.cols());
  AB << A, -B;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(AB);
  lu.setThreshold(1e-10);
  Eigen::MatrixXd ker = lu.kernel();
  Eigen::MatrixXd S = ker.topRows(n);  // intersection vectors in k coordinates
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(S);
  qr.setThreshold(1e-10);
  model.hRank = qr.rank();
  if (model.hRank != spec.h->dimension())
    throw EmbeddingError("compact intersection of h has dimension " +
                         std::to_string(model.hRank) + ", expected " +
                         std::to_string(spec.h->dimension()) +
                         " (generators not stable under the compact involution?)");
  Eigen::MatrixXd L =
      qr.householderQ() * Eigen::MatrixXd::Identity(n, model.hRank);
  model.hProjector =
      L * (L.transpose() * model.metric * L).ldlt().solve(L.transpose() * model.metric);
  return model;
}

MomentResult orbitDistanceFrom(const CompactModel& model, const Eigen::VectorXd& xi,
                               const OptimizerConfig& cfg) {
  const int restarts = std::max(1, cfg.restarts);
  std::vector<RunResult> runs(restarts);
  const int threads = std::max(1, cfg.threads);
  auto work = [&](int worker) {
    for (int t = worker; t < restarts; t += threads)
      runs[t] = descend(model, restartPoint(model, xi, cfg, t), cfg);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  MomentResult result;
  int best = 0;
  for (int t = 1; t < restarts; ++t)
    if (runs[t].f < runs[best].f) best = t;
  for (const auto& run : runs) result.iterations += run.iterations;
  result.bestRestart = best;
  result.argmin = runs[best].v;
  result.distance = std::sqrt(std::max(0.0, 2.0 * runs[best].f));
  return result;
}

MomentResult momentImageDistance(const CompactModel& model, const std::vector<double>& lambda,
                                 const OptimizerConfig& cfg) {
  return orbitDistanceFrom(model, model.chamberMap(lambda), cfg);
}

MomentResult momentImageDistance(const CompactModel& model, const RatVec& lambda,
                                 const OptimizerConfig& cfg) {
  return orbitDistanceFrom(model, model.chamberMap(lambda), cfg);
}

MeetResult orbitMeetsHPerp(const CompactModel& model, const RatVec& lambda,
                           const OptimizerConfig& cfg, double tol) {
  Eigen::VectorXd xi = model.chamberMap(lambda);
  MomentResult r = orbitDistanceFrom(model, xi, cfg);
  MeetResult out;
  out.distance = r.distance;
  out.iterations = r.iterations;
  out.meets = r.distance < tol * (1.0 + model.metricNorm(xi));
  return out;
}

OrbitScan scanFundamentalOrbits(const CompactModel& model, const OptimizerConfig& cfg,
                                double tol) {
  OrbitScan scan;
  const int r = model.spec.g->rank();
  scan.numericallyCramped = true;
  for (int i = 1; i <= r; ++i) {
    RatVec omega(r, Rat(0));
    omega[i - 1] = 1;
    MeetResult m = orbitMeetsHPerp(model, omega, cfg, tol);
    scan.rows.push_back({i, m.distance, m.meets, m.iterations});
    if (!m.meets) scan.numericallyCramped = false;
  }
  return scan;
}

long minOrbitDimension(const RootSystem& rs) {
  long best = -1;
  for (int i = 0; i < rs.rank(); ++i) {
    long cnt = 0;
    for (const auto& alpha : rs.positiveRoots())
      if (alpha.simple[i] != 0) ++cnt;
    if (best < 0 || 2 * cnt < best) best = 2 * cnt;
  }
  return best;
}

WzReport wzOrbitProperty(const CompactModel& model, int sampleCount, const OptimizerConfig& cfg,
                         double tol) {
  WzReport report;
  report.hypothesisHolds =
      minOrbitDimension(*model.spec.g) > 2 * model.spec.h->dimension();
  if (!report.hypothesisHolds) return report;
  const int r = model.spec.g->rank();
  std::mt19937_64 rng(splitmix64(cfg.seed ^ 0x575aULL));
  std::uniform_int_distribution<int> coord(0, 4);
  while (static_cast<int>(report.samples.size()) < sampleCount) {
    RatVec lam(r);
    bool zero = true;
    for (int i = 0; i < r; ++i) {
      int c = coord(rng);
      lam[i] = c;
      if (c != 0) zero = false;
    }
    if (zero) continue;
    report.samples.push_back(lam);
    if (!orbitMeetsHPerp(model, lam, cfg, tol).meets) report.failures.push_back(lam);
  }
  return report;
}

}  // namespace crampcert
