#include "crampcert/crampedness.hpp"

#include <algorithm>
#include <functional>
#include <limits>

#include "crampcert/jsonio.hpp"

namespace crampcert {

std::optional<Int> findMi(const EmbeddingSpec& spec, int i, const Int& mMax) {
  const int r = spec.g->rank();
  if (i < 1 || i > r) throw std::invalid_argument("fundamental-weight index out of range");
  RatVec omega(r, Rat(0));
  for (Int m = 1; m <= mMax; ++m) {
    omega[i - 1] = Rat(m);
    if (invariantDim(spec, omega) > 0) return m;
  }
  return std::nullopt;
}

CertifyResult certify(const EmbeddingSpec& spec, const Int& mMax) {
  const int r = spec.g->rank();
  std::vector<Int> m(r);
  std::vector<int> missing;
  for (int i = 1; i <= r; ++i) {
    auto mi = findMi(spec, i, mMax);
    if (mi)
      m[i - 1] = *mi;
    else
      missing.push_back(i);
  }
  if (!missing.empty()) return Inconclusive{std::move(missing), mMax};

  CrampednessCertificate cert;
  cert.spec = spec;
  cert.m = std::move(m);
  cert.searchBound = mMax;
  cert.bGH = 1;
  // Every nonzero dominant lambda with lambda_i < m_i, in lex order.
  RatVec lam(r, Rat(0));
  std::function<void(int)> enumerate = [&](int pos) {
    if (pos == r) {
      if (std::all_of(lam.begin(), lam.end(), [](const Rat& c) { return c == 0; })) return;
      Int b = bOfLambda(cert.spec, lam);
      if (b > cert.bGH) cert.bGH = b;
      cert.box.emplace_back(lam, b);
      return;
    }
    for (Int k = 0; k < cert.m[pos]; ++k) {
      lam[pos] = Rat(k);
      enumerate(pos + 1);
    }
    lam[pos] = 0;
  };
  enumerate(0);
  return cert;
}

Obstruction dimensionObstruction(const EmbeddingSpec& spec) {
  long dimG = spec.g->dimension();
  long dimH = spec.h->dimension();
  return 2 * (dimG - dimH) < dimG ? Obstruction::NotCramped : Obstruction::NoObstruction;
}

namespace {

nlohmann::json intToJson(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return v.convert_to<long long>();
  return v.str();
}

}  // namespace

nlohmann::json certificateToJson(const CertifyResult& result) {
  nlohmann::json doc;
  if (const auto* cert = std::get_if<CrampednessCertificate>(&result)) {
    doc["pair"] = cert->spec.name;
    doc["mMax"] = intToJson(cert->searchBound);
    doc["status"] = "certified";
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& mi : cert->m) ms.push_back(intToJson(mi));
    doc["m"] = ms;
    nlohmann::json box = nlohmann::json::array();
    for (const auto& [lam, b] : cert->box)
      box.push_back({{"lambda", ratVecToJson(lam)}, {"b", intToJson(b)}});
    doc["box"] = box;
    doc["bGH"] = intToJson(cert->bGH);
    doc["missing"] = nlohmann::json::array();
  } else {
    const auto& inc = std::get<Inconclusive>(result);
    doc["mMax"] = intToJson(inc.searchBound);
    doc["status"] = "inconclusive";
    doc["missing"] = inc.missing;
  }
  return doc;
}

}  // namespace crampcert
