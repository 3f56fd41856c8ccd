#include "crampcert/branching.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <regex>
#include <sstream>

#include "crampcert/jsonio.hpp"

namespace crampcert {

namespace {

constexpr double kSpanTol = 1e-9;

RatMat identityRestriction(int n) {
  RatMat m(n, RatVec(n, Rat(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Chevalley-basis index of factor-c basis element b under the obvious
// inclusion of a factor into a product system.
int factorBasisIndex(const ChevalleyBasis& cbH, const ChevalleyBasis& cbG, int rankOffset,
                     int b) {
  const int rH = cbH.rank();
  const int pH = cbH.numPositive();
  const int rG = cbG.rank();
  const int pG = cbG.numPositive();
  if (b < rH) return rankOffset + b;
  const bool isF = b >= rH + pH;
  const int rootIdx = isF ? b - rH - pH : b - rH;
  std::vector<long> sc(rG, 0);
  const auto& simple = cbH.system()->positiveRoots()[rootIdx].simple;
  for (int j = 0; j < rH; ++j) sc[rankOffset + j] = simple[j];
  auto idx = cbG.rootIndex(sc);
  if (!idx || *idx < 0) throw std::logic_error("factor root not found in product system");
  return isF ? rG + pG + *idx : rG + *idx;
}

std::vector<std::vector<double>> wholeAlgebraGenerators(const ChevalleyBasis& cb) {
  const long n = cb.dimension();
  std::vector<std::vector<double>> gens(n, std::vector<double>(n, 0.0));
  for (long i = 0; i < n; ++i) gens[i][i] = 1.0;
  return gens;
}

// Coefficients of the principal Cartan element: alpha_i(h_pr) = 2 for all i.
RatVec principalCartanCoeffs(const RootSystem& g) {
  const int n = g.rank();
  // Solve sum_i c_i C[i][j]... pairing of alpha_j with sum c_i h_i is
  // sum_i c_i <alpha_j, alpha_i^vee> = sum_i c_i C[j][i] = 2.
  RatMat a(n, RatVec(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a[j][i] = Rat(g.cartan()[j][i]);
  RatVec rhs(n, Rat(2));
  // Exact Gaussian elimination.
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (a[piv][col] == 0) ++piv;
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    for (int r2 = 0; r2 < n; ++r2) {
      if (r2 == col || a[r2][col] == 0) continue;
      Rat q = a[r2][col] / a[col][col];
      for (int k = col; k < n; ++k) a[r2][k] -= q * a[col][k];
      rhs[r2] -= q * rhs[col];
    }
  }
  RatVec c(n);
  for (int i = 0; i < n; ++i) c[i] = rhs[i] / a[i][i];
  return c;
}

}  // namespace

std::string EmbeddingSpec::cacheKey() const {
  std::ostringstream os;
  os << name << '|' << g->descriptor() << '|' << h->descriptor() << '|';
  for (const auto& row : restriction) {
    for (const auto& v : row) os << v << ',';
    os << ';';
  }
  return os.str();
}

EmbeddingSpec catalogEmbedding(const std::string& name, const std::vector<std::string>& params) {
  EmbeddingSpec spec;
  if (name == "identity") {
    if (params.size() != 1) throw std::invalid_argument("identity takes one system descriptor");
    spec.g = RootSystem::parse(params[0]);
    spec.h = spec.g;
    spec.name = "identity:" + spec.g->descriptor();
    spec.restriction = identityRestriction(spec.g->rank());
    spec.compactGenerators = wholeAlgebraGenerators(*chevalleyBasis(spec.g));
    return spec;
  }
  if (name == "diagonal" || name == "factor") {
    RootSystemPtr h1, h2;
    if (name == "diagonal") {
      if (params.size() != 1) throw std::invalid_argument("diagonal takes one system descriptor");
      h1 = h2 = RootSystem::parse(params[0]);
    } else {
      if (params.size() != 2) throw std::invalid_argument("factor takes two system descriptors");
      h1 = RootSystem::parse(params[0]);
      h2 = RootSystem::parse(params[1]);
    }
    std::vector<SimpleFactor> factors(h1->factors());
    for (const auto& f : h2->factors()) factors.push_back(f);
    spec.g = RootSystem::build(factors);
    spec.h = h1;
    const int rH = h1->rank();
    const int rG = spec.g->rank();
    spec.restriction.assign(rH, RatVec(rG, Rat(0)));
    for (int i = 0; i < rH; ++i) {
      spec.restriction[i][i] = 1;
      if (name == "diagonal") spec.restriction[i][rH + i] = 1;
    }
    spec.name = (name == "diagonal")
                    ? "diagonal:" + h1->descriptor()
                    : "factor:" + h1->descriptor() + "," + h2->descriptor();
    auto cbG = chevalleyBasis(spec.g);
    auto cbH = chevalleyBasis(spec.h);
    const long dimH = cbH->dimension();
    for (long b = 0; b < dimH; ++b) {
      std::vector<double> v(cbG->dimension(), 0.0);
      v[factorBasisIndex(*cbH, *cbG, 0, static_cast<int>(b))] = 1.0;
      if (name == "diagonal") {
        // second copy offset: Cartan by rH, roots found by coordinates
        const int rH2 = rH;
        std::vector<long> probe;  // unused
        (void)probe;
        int idx2 = factorBasisIndex(*cbH, *cbG, rH2, static_cast<int>(b));
        v[idx2] = 1.0;
      }
      spec.compactGenerators.push_back(std::move(v));
    }
    return spec;
  }
  if (name == "principal-sl2") {
    if (params.size() != 1) throw std::invalid_argument("principal-sl2 takes one system descriptor");
    spec.g = RootSystem::parse(params[0]);
    spec.h = RootSystem::parse("A1");
    spec.name = "principal-sl2:" + spec.g->descriptor();
    RatVec c = principalCartanCoeffs(*spec.g);
    spec.restriction.assign(1, c);
    auto cbG = chevalleyBasis(spec.g);
    const int rG = spec.g->rank();
    const int pG = cbG->numPositive();
    std::vector<double> hv(cbG->dimension(), 0.0), ev(cbG->dimension(), 0.0),
        fv(cbG->dimension(), 0.0);
    for (int i = 0; i < rG; ++i) {
      double ci = static_cast<double>(c[i]);
      hv[i] = ci;
      // sqrt coefficients make the triple stable under the compact involution
      ev[rG + i] = std::sqrt(ci);
      fv[rG + pG + i] = std::sqrt(ci);
    }
    spec.compactGenerators = {hv, ev, fv};
    return spec;
  }
  if (name == "sl-in-sl") {
    if (params.size() != 1) throw std::invalid_argument("sl-in-sl takes the smaller n");
    int n = std::stoi(params[0]);
    if (n < 2) throw std::invalid_argument("sl-in-sl needs n >= 2");
    spec.g = RootSystem::build({{Family::A, n}});
    spec.h = RootSystem::build({{Family::A, n - 1}});
    spec.name = "sl" + std::to_string(n) + "-in-sl" + std::to_string(n + 1);
    spec.restriction.assign(n - 1, RatVec(n, Rat(0)));
    for (int i = 0; i < n - 1; ++i) spec.restriction[i][i] = 1;
    // Basis of the subalgebra: Cartan h_1..h_{n-1} plus every root space
    // supported on the first n-1 simple roots.
    auto cbG = chevalleyBasis(spec.g);
    const int rG = spec.g->rank();
    const int pG = cbG->numPositive();
    const auto& pos = spec.g->positiveRoots();
    for (int i = 0; i < n - 1; ++i) {
      std::vector<double> v(cbG->dimension(), 0.0);
      v[i] = 1.0;
      spec.compactGenerators.push_back(std::move(v));
    }
    for (int p = 0; p < pG; ++p) {
      if (pos[p].simple[n - 1] != 0) continue;
      std::vector<double> ve(cbG->dimension(), 0.0), vf(cbG->dimension(), 0.0);
      ve[rG + p] = 1.0;
      vf[rG + pG + p] = 1.0;
      spec.compactGenerators.push_back(std::move(ve));
      spec.compactGenerators.push_back(std::move(vf));
    }
    return spec;
  }
  throw std::invalid_argument("unknown catalog embedding '" + name + "'");
}

EmbeddingSpec parsePair(const std::string& pairDescriptor) {
  std::smatch m;
  static const std::regex slRe(R"(sl(\d+)-in-sl(\d+))", std::regex::icase);
  if (std::regex_match(pairDescriptor, m, slRe)) {
    int a = std::stoi(m[1]), b = std::stoi(m[2]);
    if (b != a + 1) throw std::invalid_argument("only sl(n) in sl(n+1) is in the catalog");
    return catalogEmbedding("sl-in-sl", {std::to_string(a)});
  }
  auto colon = pairDescriptor.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("bad pair descriptor '" + pairDescriptor +
                                "' (expected name:params)");
  std::string name = pairDescriptor.substr(0, colon);
  std::string rest = pairDescriptor.substr(colon + 1);
  std::vector<std::string> params;
  std::stringstream ss(rest);
  std::string tok;
  while (std::getline(ss, tok, ',')) params.push_back(tok);
  return catalogEmbedding(name, params);
}

std::vector<std::string> catalogPairNames() {
  return {"identity:A1",       "identity:A2", "diagonal:A1", "diagonal:A2",
          "factor:A1,A1",      "sl2-in-sl3",  "principal-sl2:A2",
          "principal-sl2:B2",  "principal-sl2:G2"};
}

// --- validation ---------------------------------------------------------

void validateEmbedding(const EmbeddingSpec& spec) {
  if (!spec.g || !spec.h) throw EmbeddingError("embedding needs both root systems");
  const int rG = spec.g->rank();
  const int rH = spec.h->rank();
  if (static_cast<int>(spec.restriction.size()) != rH)
    throw EmbeddingError("restriction matrix must have rank(h) rows");
  for (const auto& row : spec.restriction)
    if (static_cast<int>(row.size()) != rG)
      throw EmbeddingError("restriction matrix must have rank(g) columns");
  // Lattice-to-lattice: the image of every fundamental weight is integral,
  // i.e. every matrix entry is an integer.
  for (int j = 0; j < rH; ++j)
    for (int k = 0; k < rG; ++k)
      if (boost::multiprecision::denominator(spec.restriction[j][k]) != 1) {
        std::ostringstream os;
        os << "restriction is not lattice-to-lattice: image of omega_" << (k + 1)
           << " has non-integral coordinate " << spec.restriction[j][k];
        throw EmbeddingError(os.str());
      }

  if (!spec.hasCompactGenerators()) return;

  auto cb = chevalleyBasis(spec.g);
  const long n = cb->dimension();
  const auto& gens = spec.compactGenerators;
  for (const auto& v : gens)
    if (static_cast<long>(v.size()) != n)
      throw EmbeddingError("generator coefficient count does not match dim g");

  Eigen::MatrixXd B(n, static_cast<long>(gens.size()));
  for (std::size_t c = 0; c < gens.size(); ++c)
    for (long r = 0; r < n; ++r) B(r, static_cast<long>(c)) = gens[c][r];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(B);
  qr.setThreshold(1e-10);

  auto inSpan = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd sol = qr.solve(v);
    return (B * sol - v).norm() <= kSpanTol * (1.0 + v.norm());
  };

  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      auto br = cb->realBracket(gens[i], gens[j]);
      Eigen::VectorXd v = Eigen::Map<Eigen::VectorXd>(br.data(), n);
      if (!inSpan(v)) {
        std::ostringstream os;
        os << "generators are not closed under bracket: [g" << (i + 1) << ", g" << (j + 1)
           << "] leaves the span";
        throw EmbeddingError(os.str());
      }
    }
  }

  // The Cartan elements determined by the restriction matrix must lie in
  // the span: t_j = sum_k R[j][k] h_k.
  for (int j = 0; j < rH; ++j) {
    Eigen::VectorXd t = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < rG; ++k) t(k) = static_cast<double>(spec.restriction[j][k]);
    if (!inSpan(t)) {
      std::ostringstream os;
      os << "generator Cartan does not reproduce restriction row " << (j + 1);
      throw EmbeddingError(os.str());
    }
  }
}

// --- (de)serialization --------------------------------------------------

namespace {

constexpr const char* kSchema = "crampcert-embedding/1";

std::string basisLabel(const ChevalleyBasis& cb, long idx) {
  const int r = cb.rank();
  const int p = cb.numPositive();
  if (idx < r) return "h" + std::to_string(idx + 1);
  if (idx < r + p) return "e_" + std::to_string(idx - r + 1);
  return "f_" + std::to_string(idx - r - p + 1);
}

long basisIndex(const ChevalleyBasis& cb, const std::string& label) {
  const int r = cb.rank();
  const int p = cb.numPositive();
  try {
    if (label.size() > 1 && label[0] == 'h') {
      long i = std::stol(label.substr(1));
      if (i >= 1 && i <= r) return i - 1;
    } else if (label.rfind("e_", 0) == 0) {
      long i = std::stol(label.substr(2));
      if (i >= 1 && i <= p) return r + i - 1;
    } else if (label.rfind("f_", 0) == 0) {
      long i = std::stol(label.substr(2));
      if (i >= 1 && i <= p) return r + p + i - 1;
    }
  } catch (const std::exception&) {
  }
  throw EmbeddingError("unknown basis label '" + label + "'");
}

}  // namespace

EmbeddingSpec loadEmbedding(const nlohmann::json& doc) {
  if (!doc.is_object()) throw EmbeddingError("embedding document must be an object");
  if (doc.value("schema", std::string()) != kSchema)
    throw EmbeddingError("missing or unsupported embedding schema (want " + std::string(kSchema) +
                         ")");
  EmbeddingSpec spec;
  try {
    spec.name = doc.at("name").get<std::string>();
    spec.g = RootSystem::parse(doc.at("g").get<std::string>());
    spec.h = RootSystem::parse(doc.at("h").get<std::string>());
    for (const auto& row : doc.at("restriction")) spec.restriction.push_back(ratVecFromJson(row));
  } catch (const EmbeddingError&) {
    throw;
  } catch (const std::exception& e) {
    throw EmbeddingError(std::string("malformed embedding document: ") + e.what());
  }
  if (doc.contains("compact_generators")) {
    auto cb = chevalleyBasis(spec.g);
    try {
      for (const auto& gen : doc.at("compact_generators")) {
        std::vector<double> v(cb->dimension(), 0.0);
        for (const auto& [label, coeff] : gen.items())
          v[basisIndex(*cb, label)] = coeff.get<double>();
        spec.compactGenerators.push_back(std::move(v));
      }
    } catch (const EmbeddingError&) {
      throw;
    } catch (const std::exception& e) {
      throw EmbeddingError(std::string("malformed compact_generators: ") + e.what());
    }
  }
  validateEmbedding(spec);
  return spec;
}

nlohmann::json saveEmbedding(const EmbeddingSpec& spec) {
  nlohmann::json doc;
  doc["schema"] = kSchema;
  doc["name"] = spec.name;
  doc["g"] = spec.g->descriptor();
  doc["h"] = spec.h->descriptor();
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : spec.restriction) rows.push_back(ratVecToJson(row));
  doc["restriction"] = rows;
  if (spec.hasCompactGenerators()) {
    auto cb = chevalleyBasis(spec.g);
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& v : spec.compactGenerators) {
      nlohmann::json g = nlohmann::json::object();
      for (long i = 0; i < static_cast<long>(v.size()); ++i)
        if (v[i] != 0.0) g[basisLabel(*cb, i)] = v[i];
      gens.push_back(g);
    }
    doc["compact_generators"] = gens;
  }
  return doc;
}

// --- branching ----------------------------------------------------------

RatVec restrictWeight(const EmbeddingSpec& spec, const RatVec& lambda) {
  const int rH = spec.h->rank();
  const int rG = spec.g->rank();
  RatVec out(rH, Rat(0));
  for (int j = 0; j < rH; ++j)
    for (int k = 0; k < rG; ++k)
      if (lambda[k] != 0) out[j] += spec.restriction[j][k] * lambda[k];
  return out;
}

namespace {

std::mutex g_branchMutex;
std::map<std::pair<std::string, RatVec>, std::vector<BranchTerm>> g_branchCache;

}  // namespace

std::vector<BranchTerm> branch(const EmbeddingSpec& spec, const RatVec& lambda) {
  const auto key = std::make_pair(spec.cacheKey(), lambda);
  {
    std::lock_guard<std::mutex> lk(g_branchMutex);
    auto it = g_branchCache.find(key);
    if (it != g_branchCache.end()) return it->second;
  }

  Character gchar = weightMultiplicities(spec.g, lambda);
  std::map<RatVec, long long> rest;
  for (const auto& [w, m] : gchar.entries()) rest[restrictWeight(spec, w)] += m;

  std::vector<BranchTerm> terms;
  while (!rest.empty()) {
    // Highest remaining weight: maximal height, ties broken lexicographically.
    auto best = rest.begin();
    Rat bestHt = spec.h->weightHeight(best->first);
    for (auto it = std::next(rest.begin()); it != rest.end(); ++it) {
      Rat ht = spec.h->weightHeight(it->first);
      if (ht > bestHt || (ht == bestHt && it->first > best->first)) {
        best = it;
        bestHt = ht;
      }
    }
    Weight mu(spec.h, best->first);
    long long mult = best->second;
    if (!mu.isDominant() || !mu.isIntegral() || mult < 0)
      throw EmbeddingError("invalid embedding: restricted character of " + spec.name +
                           " is not a sum of irreducible h-characters");
    Character hchar = weightMultiplicities(spec.h, mu.coords());
    for (const auto& [w, m] : hchar.entries()) {
      auto it = rest.find(w);
      long long nv = (it == rest.end() ? 0 : it->second) - mult * m;
      if (nv < 0)
        throw EmbeddingError("invalid embedding: negative residual multiplicity while stripping " +
                             spec.name);
      if (nv == 0) {
        if (it != rest.end()) rest.erase(it);
      } else {
        rest[w] = nv;
      }
    }
    terms.push_back({mu.coords(), mult});
  }

  std::lock_guard<std::mutex> lk(g_branchMutex);
  return g_branchCache.emplace(key, std::move(terms)).first->second;
}

long long invariantDim(const EmbeddingSpec& spec, const RatVec& lambda) {
  RatVec zero(spec.h->rank(), Rat(0));
  for (const auto& t : branch(spec, lambda))
    if (t.weight == zero) return t.multiplicity;
  return 0;
}

Int bOfLambda(const EmbeddingSpec& spec, const RatVec& lambda) {
  bool zero = true;
  for (const Rat& c : lambda)
    if (c != 0) zero = false;
  if (zero) throw std::invalid_argument("bOfLambda requires a non-trivial representation");
  std::optional<Int> best;
  for (const auto& t : branch(spec, lambda)) {
    Int d = weylDim(*spec.h, t.weight);
    if (!best || d < *best) best = d;
  }
  return *best;
}

bool inDPrimeN(const EmbeddingSpec& spec, const RatVec& lambda, const Int& n) {
  return bOfLambda(spec, lambda) < n;
}

}  // namespace crampcert
