#include "crampcert/ghcsupport.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "crampcert/jsonio.hpp"

namespace crampcert {

namespace {

// All geometry below is in the invariant metric of s.system.
double dInner(const RootSystem& rs, const RatVec& a, const RatVec& b) {
  return static_cast<double>(rs.inner(a, b));
}

RatVec axpy(const RatVec& base, long n, const RatVec& dir) {
  RatVec out(base);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += n * dir[i];
  return out;
}

// Distance from p to the ray {t*d : t >= 0}, evaluated coordinatewise
// (the expanded quadratic cancels badly for far-out lattice points).
double distToOriginRay(const RootSystem& rs, const RatVec& p, const RatVec& d) {
  double pd = dInner(rs, p, d);
  double dd = dInner(rs, d, d);
  double t = std::max(0.0, pd / dd);
  std::vector<double> v(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    v[i] = static_cast<double>(p[i]) - t * static_cast<double>(d[i]);
  const RatMat& F = rs.formMatrix();
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) acc += v[i] * static_cast<double>(F[i][j]) * v[j];
  return std::sqrt(std::max(0.0, acc));
}

// Orthogonal offset of p from the full line through d.
double lineOffset(const RootSystem& rs, const RatVec& p, const RatVec& d) {
  double pd = dInner(rs, p, d);
  double dd = dInner(rs, d, d);
  return std::sqrt(std::max(0.0, dInner(rs, p, p) - pd * pd / dd));
}

double distToAsupp(const RootSystem& rs, const RatVec& p, const std::vector<RatVec>& dirs) {
  double best = std::sqrt(std::max(0.0, dInner(rs, p, p)));  // the {0} member
  for (const auto& d : dirs) best = std::min(best, distToOriginRay(rs, p, d));
  return best;
}

constexpr long kLatticeWindow = 250;  // lattice truncation per supp ray
constexpr long kRayScan = 400;        // integer scan depth for the first term

}  // namespace

void validateSupportSpec(const SupportSpec& s) {
  if (!s.system) throw std::invalid_argument("support spec needs a root system");
  auto checkWeight = [&](const RatVec& w, const char* what) {
    Weight wt(s.system, w);
    if (!wt.isIntegral() || !wt.isDominant())
      throw std::invalid_argument(std::string(what) + " must be dominant integral");
  };
  for (const auto& w : s.finitePart) checkWeight(w, "finite-part weight");
  for (const auto& r : s.rays) {
    checkWeight(r.base, "ray base");
    checkWeight(r.direction, "ray direction");
    if (std::all_of(r.direction.begin(), r.direction.end(),
                    [](const Rat& c) { return c == 0; }))
      throw std::invalid_argument("ray direction must be nonzero");
  }
}

SupportSpec loadSupportSpec(const nlohmann::json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("support spec document must be an object");
  SupportSpec s;
  try {
    s.ambientLabel = doc.value("ambient", std::string());
    s.system = RootSystem::parse(doc.at("system").get<std::string>());
    if (doc.contains("finite"))
      for (const auto& w : doc.at("finite")) s.finitePart.push_back(ratVecFromJson(w));
    if (doc.contains("rays"))
      for (const auto& r : doc.at("rays"))
        s.rays.push_back({ratVecFromJson(r.at("base")), ratVecFromJson(r.at("direction"))});
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("malformed support spec: ") + e.what());
  }
  validateSupportSpec(s);
  return s;
}

nlohmann::json saveSupportSpec(const SupportSpec& s) {
  nlohmann::json doc;
  doc["ambient"] = s.ambientLabel;
  doc["system"] = s.system->descriptor();
  nlohmann::json fin = nlohmann::json::array();
  for (const auto& w : s.finitePart) fin.push_back(ratVecToJson(w));
  doc["finite"] = fin;
  nlohmann::json rays = nlohmann::json::array();
  for (const auto& r : s.rays)
    rays.push_back({{"base", ratVecToJson(r.base)}, {"direction", ratVecToJson(r.direction)}});
  doc["rays"] = rays;
  return doc;
}

RatVec primitiveDirection(const RatVec& d) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  Int l = 1;
  for (const auto& c : d) l = lcm(l, denominator(c));
  Int g = 0;
  std::vector<Int> num(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    num[i] = numerator(d[i]) * (l / denominator(d[i]));
    g = gcd(g, abs(num[i]));
  }
  if (g == 0) throw std::invalid_argument("zero direction has no primitive form");
  RatVec out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = Rat(num[i] / g);
  return out;
}

std::vector<RatVec> asymptoticSupport(const SupportSpec& s) {
  std::vector<RatVec> dirs;
  for (const auto& r : s.rays) {
    RatVec p = primitiveDirection(r.direction);
    if (std::find(dirs.begin(), dirs.end(), p) == dirs.end()) dirs.push_back(p);
  }
  return dirs;
}

VagrancyResult vagrancy(const SupportSpec& s) {
  VagrancyResult out;
  if (s.isEmpty()) return out;
  const RootSystem& rs = *s.system;
  auto dirs = asymptoticSupport(s);

  // First term: sup over the denoted set of the distance to asupp.
  for (const auto& p : s.finitePart)
    out.suppToAsupp = std::max(out.suppToAsupp, distToAsupp(rs, p, dirs));
  for (const auto& r : s.rays) {
    for (long n = 0; n <= kRayScan; ++n)
      out.suppToAsupp =
          std::max(out.suppToAsupp, distToAsupp(rs, axpy(r.base, n, r.direction), dirs));
    // Limiting value along the ray: offset of the base from its own
    // direction line (the minimum over parallel asupp rays).
    out.suppToAsupp = std::max(out.suppToAsupp, lineOffset(rs, r.base, r.direction));
  }

  // Second term: sup over asupp of the distance to the denoted set.
  std::vector<RatVec> points(s.finitePart);
  for (const auto& r : s.rays)
    for (long n = 0; n <= kLatticeWindow; ++n) points.push_back(axpy(r.base, n, r.direction));

  auto distToSupp = [&](const RatVec& x) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : points) {
      RatVec diff(x);
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= p[i];
      best = std::min(best, std::sqrt(std::max(0.0, dInner(rs, diff, diff))));
    }
    return best;
  };

  RatVec zero(rs.rank(), Rat(0));
  out.asuppToSupp = distToSupp(zero);  // {0} is always in asupp

  // Double-precision copies for the inner loops below.
  const int rank = rs.rank();
  std::vector<std::vector<double>> Fd(rank, std::vector<double>(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) Fd[i][j] = static_cast<double>(rs.formMatrix()[i][j]);
  std::vector<std::vector<double>> pointsD(points.size(), std::vector<double>(rank));
  for (std::size_t i = 0; i < points.size(); ++i)
    for (int c = 0; c < rank; ++c) pointsD[i][c] = static_cast<double>(points[i][c]);

  // Distance from t*d to a point, evaluated coordinatewise to dodge the
  // cancellation of the expanded quadratic at large t.
  auto distAt = [&](double t, const std::vector<double>& d, const std::vector<double>& p) {
    double acc = 0.0;
    for (int i = 0; i < rank; ++i) {
      double vi = t * d[i] - p[i];
      for (int j = 0; j < rank; ++j) acc += vi * Fd[i][j] * (t * d[j] - p[j]);
    }
    return std::sqrt(std::max(0.0, acc));
  };

  for (const auto& d : dirs) {
    double dd = dInner(rs, d, d);
    std::vector<double> dD(rank);
    for (int c = 0; c < rank; ++c) dD[c] = static_cast<double>(d[c]);
    // Truncated lattices are faithful only while t stays inside the
    // coverage of every ray parallel to d.
    double tMax = std::numeric_limits<double>::infinity();
    double tTransient = 0.0;
    for (const auto& r : s.rays) {
      double guard = 10.0 * std::sqrt(dInner(rs, r.direction, r.direction) / dd);
      double baseProj = dInner(rs, r.base, d) / dd;
      if (primitiveDirection(r.direction) == d) {
        double step = dInner(rs, r.direction, d) / dd;
        tMax = std::min(tMax, baseProj + kLatticeWindow * step - guard);
        tTransient = std::max(tTransient, baseProj + guard);
      }
    }
    for (const auto& p : s.finitePart)
      tTransient = std::max(tTransient, dInner(rs, p, d) / dd);
    if (!std::isfinite(tMax)) tMax = tTransient;  // unreachable: own ray is parallel
    tMax = std::max(0.0, tMax);

    // The sup along the ray sits at t = 0, at a pairwise equidistance
    // crossing, or in the periodic tail past every transient.
    std::vector<double> candidates{0.0, tMax};
    std::vector<double> pp(points.size()), pd(points.size());
    auto quad = [&](const std::vector<double>& p) {
      double acc = 0.0;
      for (int i = 0; i < rank; ++i)
        for (int j = 0; j < rank; ++j) acc += p[i] * Fd[i][j] * p[j];
      return acc;
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
      pp[i] = quad(pointsD[i]);
      double acc = 0.0;
      for (int a = 0; a < rank; ++a)
        for (int b = 0; b < rank; ++b) acc += pointsD[i][a] * Fd[a][b] * dD[b];
      pd[i] = acc;
    }
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        double den = 2.0 * (pd[i] - pd[j]);
        if (std::abs(den) < 1e-14) continue;
        double t = (pp[i] - pp[j]) / den;
        if (t > 0.0 && t < tMax) candidates.push_back(t);
      }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end(),
                                 [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                     candidates.end());
    for (double t : candidates) {
      // cheap expanded quadratic picks the argmin; the coordinatewise
      // form then recovers full precision for the winner
      double bestQ = std::numeric_limits<double>::infinity();
      std::size_t bi = 0;
      for (std::size_t i = 0; i < points.size(); ++i) {
        double q = t * t * dd - 2.0 * t * pd[i] + pp[i];
        if (q < bestQ) {
          bestQ = q;
          bi = i;
        }
      }
      double v = distAt(t, dD, pointsD[bi]);
      // guard against an argmin misranked by cancellation noise
      for (std::size_t i = 0; i < points.size(); ++i) {
        double q = t * t * dd - 2.0 * t * pd[i] + pp[i];
        if (q <= bestQ + 1e-4 && i != bi) v = std::min(v, distAt(t, dD, pointsD[i]));
      }
      out.asuppToSupp = std::max(out.asuppToSupp, v);
    }
  }

  out.value = out.suppToAsupp + out.asuppToSupp;
  return out;
}

ConeMembership momentConeMembership(const EmbeddingSpec& spec, const RatVec& lambda,
                                    const Int& mMax) {
  ConeMembership res;
  res.bound = mMax;
  for (Int n = 1; n <= mMax; ++n) {
    RatVec nl(lambda);
    for (auto& c : nl) c *= Rat(n);
    if (invariantDim(spec, nl) > 0) {
      res.yes = true;
      res.n = n;
      return res;
    }
  }
  return res;
}

std::vector<RatVec> nGammaSample(const EmbeddingSpec& spec, const CompactModel& model,
                                 double gamma, long box, const OptimizerConfig& cfg) {
  std::vector<RatVec> hits;
  const int r = spec.g->rank();
  RatVec lam(r, Rat(0));
  std::function<void(int)> walk = [&](int pos) {
    if (pos == r) {
      if (momentImageDistance(model, lam, cfg).distance <= gamma) hits.push_back(lam);
      return;
    }
    for (long c = 0; c <= box; ++c) {
      lam[pos] = Rat(c);
      walk(pos + 1);
    }
    lam[pos] = 0;
  };
  walk(0);
  return hits;
}

GhcVerdict ghcVerdict(const EmbeddingSpec& spec, const CompactModel& model, const SupportSpec& s,
                      const Int& mMax, const OptimizerConfig& cfg, double tol,
                      const CrampednessCertificate* certificate) {
  GhcVerdict v;
  auto dirs = asymptoticSupport(s);
  bool anyYes = false, allClear = !dirs.empty();
  for (const auto& d : dirs) {
    RayEvidence ev;
    ev.direction = d;
    ev.cone = momentConeMembership(spec, d, mMax);
    Eigen::VectorXd xi = model.chamberMap(d);
    ev.numericDistance = orbitDistanceFrom(model, xi, cfg).distance;
    ev.threshold = tol * (1.0 + model.metricNorm(xi));
    if (ev.cone.yes) anyYes = true;
    if (ev.cone.yes || ev.numericDistance <= ev.threshold) allClear = false;
    v.perRayEvidence.push_back(std::move(ev));
  }

  if (certificate && s.isInfinite()) {
    v.status = GhcStatus::NotGHC;
    v.rationale =
        "certified cramped pair: every module with infinite support fails the criterion";
  } else if (anyYes) {
    v.status = GhcStatus::NotGHC;
    v.rationale = "exact witness: an asymptotic direction meets the moment image";
  } else if (dirs.empty()) {
    v.status = GhcStatus::GHC;
    v.rationale = "finite support: asymptotic support is the origin alone";
  } else if (allClear) {
    v.status = GhcStatus::GHC;
    v.rationale = "evidence: no invariants up to the bound and all numeric distances "
                  "exceed the threshold";
  } else {
    v.status = GhcStatus::Undetermined;
    v.rationale = "mixed evidence: no exact witness but some numeric distance is "
                  "within tolerance";
  }
  return v;
}

nlohmann::json verdictToJson(const GhcVerdict& v) {
  nlohmann::json doc;
  switch (v.status) {
    case GhcStatus::GHC: doc["status"] = "GHC"; break;
    case GhcStatus::NotGHC: doc["status"] = "NotGHC"; break;
    case GhcStatus::Undetermined: doc["status"] = "Undetermined"; break;
  }
  doc["rationale"] = v.rationale;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& ev : v.perRayEvidence) {
    nlohmann::json row;
    row["direction"] = ratVecToJson(ev.direction);
    if (ev.cone.yes)
      row["momentCone"] = {{"yes", true}, {"n", ev.cone.n.convert_to<long long>()}};
    else
      row["momentCone"] = {{"yes", false},
                           {"searchedUpTo", ev.cone.bound.convert_to<long long>()}};
    row["numericDistance"] = ev.numericDistance;
    row["threshold"] = ev.threshold;
    rows.push_back(row);
  }
  doc["perRayEvidence"] = rows;
  return doc;
}

}  // namespace crampcert
