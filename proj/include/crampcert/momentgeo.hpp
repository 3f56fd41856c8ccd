#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "crampcert/branching.hpp"

namespace crampcert {

// Compact real form k of g with the adjoint action of its basis
// u_j = i h_j,  x_p = e_p - f_p,  y_p = i(e_p + f_p),
// the invariant metric (negative Killing form in liecore's normalization),
// and the metric-orthogonal projector onto l, the compact form of h.
// Coadjoint orbits are modeled as adjoint orbits via this identification.
struct CompactModel {
  EmbeddingSpec spec;
  long dimension = 0;                      // dim k = dim g
  std::vector<Eigen::MatrixXd> adjointBasis;
  Eigen::MatrixXd metric;                  // positive definite
  Eigen::MatrixXd hProjector;              // idempotent, metric self-adjoint
  long hRank = 0;                          // dim l

  // Metric-dual Cartan element of a weight, as coordinates over the k basis.
  Eigen::VectorXd chamberMap(const std::vector<double>& lambda) const;
  Eigen::VectorXd chamberMap(const RatVec& lambda) const;
  // Bracket of coordinate vectors in k.
  Eigen::VectorXd bracket(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
  double metricNorm(const Eigen::VectorXd& v) const;
};

struct OptimizerConfig {
  int restarts = 100;
  int maxIters = 500;
  double gradTol = 1e-8;
  double stepInit = 0.1;
  std::uint64_t seed = 0;
  int threads = 1;  // worker count; results are identical for any value
};

struct MomentResult {
  double distance = 0.0;  // min over runs of the metric norm of P_l(Ad_k xi)
  Eigen::VectorXd argmin;  // the orbit point achieving it
  long iterations = 0;     // total across restarts
  int bestRestart = 0;
};

// Throws EmbeddingError when the generators fail bracket closure or the
// compact intersection has the wrong dimension.
CompactModel buildCompactModel(const EmbeddingSpec& spec);

// Multi-start Riemannian descent of f(k) = 1/2 |P_l(Ad_k xi)|^2 over the
// adjoint orbit of xi = chamberMap(lambda).  Deterministic per seed,
// independent of the worker count.
MomentResult momentImageDistance(const CompactModel& model, const std::vector<double>& lambda,
                                 const OptimizerConfig& cfg);
MomentResult momentImageDistance(const CompactModel& model, const RatVec& lambda,
                                 const OptimizerConfig& cfg);
// Same descent from an explicit starting element of k.
MomentResult orbitDistanceFrom(const CompactModel& model, const Eigen::VectorXd& xi,
                               const OptimizerConfig& cfg);

struct MeetResult {
  bool meets = false;
  double distance = 0.0;
  long iterations = 0;
};

// meets iff achieved distance < tol * (1 + |xi_lambda|).
MeetResult orbitMeetsHPerp(const CompactModel& model, const RatVec& lambda,
                           const OptimizerConfig& cfg, double tol);

struct OrbitScanRow {
  int index = 0;  // 1-based fundamental weight index
  double distance = 0.0;
  bool meets = false;
  long iterations = 0;
};

struct OrbitScan {
  std::vector<OrbitScanRow> rows;
  bool numericallyCramped = false;  // evidence only, never proof
};

OrbitScan scanFundamentalOrbits(const CompactModel& model, const OptimizerConfig& cfg, double tol);

// Smallest real dimension of an adjoint orbit through a fundamental weight:
// min_i 2 * #{alpha > 0 : (omega_i, alpha) != 0}.
long minOrbitDimension(const RootSystem& rs);

struct WzReport {
  bool hypothesisHolds = false;  // minOrbitDimension(g) > 2 dim h
  std::vector<RatVec> samples;
  std::vector<RatVec> failures;
};

WzReport wzOrbitProperty(const CompactModel& model, int sampleCount, const OptimizerConfig& cfg,
                         double tol);

}  // namespace crampcert
