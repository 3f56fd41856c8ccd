#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "crampcert/crampedness.hpp"
#include "crampcert/momentgeo.hpp"

namespace crampcert {

// A stand-in for the support of a module: a finite set of dominant
// integral weights plus shifted rays {base + n*direction : n >= 0}.
struct SupportRay {
  RatVec base;       // dominant integral
  RatVec direction;  // dominant integral, nonzero
};

struct SupportSpec {
  std::string ambientLabel;  // provenance only
  RootSystemPtr system;
  std::vector<RatVec> finitePart;
  std::vector<SupportRay> rays;

  bool isEmpty() const { return finitePart.empty() && rays.empty(); }
  bool isInfinite() const { return !rays.empty(); }
};

// Throws std::invalid_argument on non-dominant/non-integral weights or
// zero directions.
void validateSupportSpec(const SupportSpec& s);
SupportSpec loadSupportSpec(const nlohmann::json& doc);
nlohmann::json saveSupportSpec(const SupportSpec& s);

// Primitive integral vector on the ray through d (positive multiple).
RatVec primitiveDirection(const RatVec& d);

// The asymptotic support as a deduplicated list of primitive ray
// directions; {0} is always implicitly a member and is not listed.
std::vector<RatVec> asymptoticSupport(const SupportSpec& s);

struct VagrancyResult {
  double value = 0.0;
  double suppToAsupp = 0.0;  // sup over supp of distance to asupp
  double asuppToSupp = 0.0;  // sup over asupp of distance to supp
};

// vag = sup_{x in supp} d(x, asupp) + sup_{y in asupp} d(y, supp),
// in the invariant metric; 0 for the empty spec.  Always finite on
// finite-plus-rays specs.
VagrancyResult vagrancy(const SupportSpec& s);

struct ConeMembership {
  bool yes = false;
  Int n = 0;      // least multiple with an invariant when yes
  Int bound = 0;  // the mMax searched when not
};

// Least n <= mMax with invariantDim(spec, n*lambda) > 0 (Kirwan-Ness:
// 0 lies in the projected orbit iff some multiple has an invariant).
ConeMembership momentConeMembership(const EmbeddingSpec& spec, const RatVec& lambda,
                                    const Int& mMax);

// All dominant integral weights with coordinates <= box whose numeric
// orbit distance is <= gamma.  Evidence only.
std::vector<RatVec> nGammaSample(const EmbeddingSpec& spec, const CompactModel& model,
                                 double gamma, long box,
                                 const OptimizerConfig& cfg = OptimizerConfig{});

enum class GhcStatus { GHC, NotGHC, Undetermined };

struct RayEvidence {
  RatVec direction;  // primitive
  ConeMembership cone;
  double numericDistance = 0.0;
  double threshold = 0.0;  // tol * (1 + |xi|)
};

struct GhcVerdict {
  GhcStatus status = GhcStatus::Undetermined;
  std::vector<RayEvidence> perRayEvidence;
  std::string rationale;
};

// Exact witnesses flip to NotGHC; uniformly negative exact + numeric
// evidence grades as GHC; anything mixed is Undetermined.  A crampedness
// certificate plus an infinite support forces NotGHC.
GhcVerdict ghcVerdict(const EmbeddingSpec& spec, const CompactModel& model, const SupportSpec& s,
                      const Int& mMax, const OptimizerConfig& cfg, double tol,
                      const CrampednessCertificate* certificate = nullptr);

nlohmann::json verdictToJson(const GhcVerdict& v);

}  // namespace crampcert
