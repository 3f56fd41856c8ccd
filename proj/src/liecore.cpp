#include "crampcert/liecore.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>

namespace crampcert {

char familyLetter(Family f) {
  switch (f) {
    case Family::A: return 'A';
    case Family::B: return 'B';
    case Family::C: return 'C';
    case Family::D: return 'D';
    case Family::G: return 'G';
  }
  return '?';
}

namespace {

void checkFactor(Family f, int n) {
  bool ok = false;
  switch (f) {
    case Family::A: ok = n >= 1; break;
    case Family::B: ok = n >= 2; break;
    case Family::C: ok = n >= 3; break;
    case Family::D: ok = n >= 4; break;
    case Family::G: ok = n == 2; break;
  }
  if (!ok) {
    std::ostringstream os;
    os << "invalid simple factor " << familyLetter(f) << n
       << " (valid: A n>=1, B n>=2, C n>=3, D n>=4, G n=2)";
    throw std::invalid_argument(os.str());
  }
}

// Cartan matrix of one simple factor, C[i][j] = <alpha_i, alpha_j^vee>.
std::vector<std::vector<long>> simpleCartan(Family f, int n) {
  std::vector<std::vector<long>> c(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto chain = [&](int upto) {
    for (int i = 0; i + 1 < upto; ++i) {
      c[i][i + 1] = -1;
      c[i + 1][i] = -1;
    }
  };
  switch (f) {
    case Family::A:
      chain(n);
      break;
    case Family::B:  // alpha_n short
      chain(n);
      c[n - 2][n - 1] = -2;
      c[n - 1][n - 2] = -1;
      break;
    case Family::C:  // alpha_n long
      chain(n);
      c[n - 2][n - 1] = -1;
      c[n - 1][n - 2] = -2;
      break;
    case Family::D:
      chain(n - 1);
      c[n - 3][n - 1] = -1;
      c[n - 1][n - 3] = -1;
      break;
    case Family::G:  // alpha_2 long
      c[0][1] = -1;
      c[1][0] = -3;
      break;
  }
  return c;
}

// Half squared lengths d_i with the long roots of the factor at d = 1.
RatVec simpleHalfNorms(Family f, int n) {
  RatVec d(n, Rat(1));
  switch (f) {
    case Family::A:
    case Family::D:
      break;
    case Family::B:
      d[n - 1] = Rat(1, 2);
      break;
    case Family::C:
      for (int i = 0; i + 1 < n; ++i) d[i] = Rat(1, 2);
      break;
    case Family::G:
      d[0] = Rat(1, 3);
      break;
  }
  return d;
}

RatMat ratIdentity(int n) {
  RatMat m(n, RatVec(n, Rat(0)));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Exact Gauss-Jordan inverse.
RatMat ratInverse(RatMat a) {
  const int n = static_cast<int>(a.size());
  RatMat inv = ratIdentity(n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) { piv = r; break; }
    if (piv < 0) throw std::runtime_error("singular matrix in ratInverse");
    std::swap(a[piv], a[col]);
    std::swap(inv[piv], inv[col]);
    Rat p = a[col][col];
    for (int j = 0; j < n; ++j) { a[col][j] /= p; inv[col][j] /= p; }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rat q = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= q * a[col][j];
        inv[r][j] -= q * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace

std::shared_ptr<const RootSystem> RootSystem::build(std::vector<SimpleFactor> factors) {
  if (factors.empty()) throw std::invalid_argument("root system needs at least one factor");
  for (const auto& f : factors) checkFactor(f.family, f.rank);

  auto rs = std::shared_ptr<RootSystem>(new RootSystem());
  rs->factors_ = std::move(factors);
  int rank = 0;
  for (const auto& f : rs->factors_) rank += f.rank;
  rs->rank_ = rank;

  rs->cartan_.assign(rank, std::vector<long>(rank, 0));
  rs->halfNorms_.assign(rank, Rat(1));
  int off = 0;
  for (const auto& f : rs->factors_) {
    auto c = simpleCartan(f.family, f.rank);
    auto d = simpleHalfNorms(f.family, f.rank);
    for (int i = 0; i < f.rank; ++i) {
      rs->halfNorms_[off + i] = d[i];
      for (int j = 0; j < f.rank; ++j) rs->cartan_[off + i][off + j] = c[i][j];
    }
    off += f.rank;
  }

  // Positive roots by string closure, level by level in height.
  // beta + alpha_i is a root iff the down-string length exceeds <beta, alpha_i^vee>.
  std::set<std::vector<long>> seen;
  std::vector<std::vector<long>> level;
  for (int i = 0; i < rank; ++i) {
    std::vector<long> e(rank, 0);
    e[i] = 1;
    seen.insert(e);
    level.push_back(e);
  }
  std::vector<std::vector<long>> all(level);
  while (!level.empty()) {
    std::vector<std::vector<long>> next;
    for (const auto& beta : level) {
      for (int i = 0; i < rank; ++i) {
        long pairing = 0;
        for (int j = 0; j < rank; ++j) pairing += beta[j] * rs->cartan_[j][i];
        long q = 0;
        std::vector<long> down = beta;
        while (true) {
          down[i] -= 1;
          bool zero = std::all_of(down.begin(), down.end(), [](long v) { return v == 0; });
          if (zero || seen.count(down)) { ++q; if (zero) break; } else break;
        }
        if (q - pairing <= 0) continue;
        std::vector<long> up = beta;
        up[i] += 1;
        if (seen.insert(up).second) {
          next.push_back(up);
          all.push_back(up);
        }
      }
    }
    level = std::move(next);
  }

  // Height ascending; within a height level, reverse-lex so that the
  // simple roots come out as alpha_1, alpha_2, ... in natural order.
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    long ha = 0, hb = 0;
    for (long v : a) ha += v;
    for (long v : b) hb += v;
    if (ha != hb) return ha < hb;
    return a > b;
  });

  for (const auto& sc : all) {
    Root r;
    r.simple = sc;
    r.fund.assign(rank, 0);
    r.height = 0;
    for (int j = 0; j < rank; ++j) {
      r.height += static_cast<int>(sc[j]);
      for (int i = 0; i < rank; ++i) r.fund[i] += sc[j] * rs->cartan_[j][i];
    }
    // (alpha, alpha)/2 = sum_j k_j d_j <alpha, alpha_j^vee> / 2
    Rat hn(0);
    for (int j = 0; j < rank; ++j) hn += Rat(sc[j]) * rs->halfNorms_[j] * Rat(r.fund[j]);
    r.halfNorm = hn / 2;
    rs->positive_.push_back(std::move(r));
  }

  rs->rho_.assign(rank, Rat(1));

  // Form matrix F = C^{-1} D: Gram matrix of the fundamental weights.
  RatMat c(rank, RatVec(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) c[i][j] = Rat(rs->cartan_[i][j]);
  RatMat cinv = ratInverse(c);
  rs->form_.assign(rank, RatVec(rank, Rat(0)));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) rs->form_[i][j] = cinv[i][j] * rs->halfNorms_[j];

  RatMat ct(rank, RatVec(rank));
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) ct[i][j] = Rat(rs->cartan_[j][i]);
  rs->invCartanT_ = ratInverse(ct);

  return rs;
}

std::shared_ptr<const RootSystem> RootSystem::parse(std::string_view descriptor) {
  std::vector<SimpleFactor> factors;
  std::string s(descriptor);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return std::toupper(ch); });
  std::size_t pos = 0;
  while (pos < s.size()) {
    char fam = s[pos];
    Family f;
    switch (fam) {
      case 'A': f = Family::A; break;
      case 'B': f = Family::B; break;
      case 'C': f = Family::C; break;
      case 'D': f = Family::D; break;
      case 'G': f = Family::G; break;
      default:
        throw std::invalid_argument("bad root-system descriptor '" + std::string(descriptor) + "'");
    }
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos)
      throw std::invalid_argument("bad root-system descriptor '" + std::string(descriptor) + "'");
    int rank = std::stoi(s.substr(start, pos - start));
    factors.push_back({f, rank});
    if (pos < s.size()) {
      if (s[pos] != 'X')
        throw std::invalid_argument("bad root-system descriptor '" + std::string(descriptor) + "'");
      ++pos;
      if (pos == s.size())
        throw std::invalid_argument("bad root-system descriptor '" + std::string(descriptor) + "'");
    }
  }
  return build(std::move(factors));
}

std::string RootSystem::descriptor() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    if (k) os << 'x';
    os << familyLetter(factors_[k].family) << factors_[k].rank;
  }
  return os.str();
}

Rat RootSystem::inner(const RatVec& x, const RatVec& y) const {
  Rat s(0);
  for (int i = 0; i < rank_; ++i) {
    if (x[i] == 0) continue;
    Rat row(0);
    for (int j = 0; j < rank_; ++j) row += form_[i][j] * y[j];
    s += x[i] * row;
  }
  return s;
}

Rat RootSystem::innerWithRoot(const RatVec& mu, const Root& alpha) const {
  // (mu, alpha) = sum_j k_j d_j mu_j for alpha = sum_j k_j alpha_j
  Rat s(0);
  for (int j = 0; j < rank_; ++j)
    if (alpha.simple[j] != 0) s += Rat(alpha.simple[j]) * halfNorms_[j] * mu[j];
  return s;
}

RatVec RootSystem::toRootBasis(const RatVec& mu) const {
  RatVec c(rank_, Rat(0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) c[i] += invCartanT_[i][j] * mu[j];
  return c;
}

Rat RootSystem::weightHeight(const RatVec& mu) const {
  RatVec c = toRootBasis(mu);
  Rat h(0);
  for (const Rat& v : c) h += v;
  return h;
}

// --- Weight -------------------------------------------------------------

Weight::Weight(RootSystemPtr system, RatVec coords)
    : system_(std::move(system)), coords_(std::move(coords)) {
  if (!system_) throw std::invalid_argument("weight needs a root system");
  if (static_cast<int>(coords_.size()) != system_->rank())
    throw std::invalid_argument("weight coordinate count does not match rank");
}

bool Weight::isIntegral() const {
  for (const Rat& c : coords_)
    if (boost::multiprecision::denominator(c) != 1) return false;
  return true;
}

bool Weight::isDominant() const {
  for (const Rat& c : coords_)
    if (c < 0) return false;
  return true;
}

bool Weight::isZero() const {
  for (const Rat& c : coords_)
    if (c != 0) return false;
  return true;
}

Weight Weight::operator+(const Weight& o) const {
  RatVec c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.coords_[i];
  return Weight(system_, std::move(c));
}

Weight Weight::operator-(const Weight& o) const {
  RatVec c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.coords_[i];
  return Weight(system_, std::move(c));
}

Weight Weight::scaled(const Rat& k) const {
  RatVec c(coords_);
  for (Rat& v : c) v *= k;
  return Weight(system_, std::move(c));
}

std::string Weight::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

Weight fundamentalWeight(const RootSystemPtr& rs, int i) {
  RatVec c(rs->rank(), Rat(0));
  c[i] = 1;
  return Weight(rs, std::move(c));
}

Weight zeroWeight(const RootSystemPtr& rs) {
  return Weight(rs, RatVec(rs->rank(), Rat(0)));
}

Weight makeWeight(const RootSystemPtr& rs, std::vector<long> coords) {
  RatVec c;
  c.reserve(coords.size());
  for (long v : coords) c.emplace_back(v);
  return Weight(rs, std::move(c));
}

// --- Character ----------------------------------------------------------

long long Character::multiplicity(const RatVec& mu) const {
  auto it = entries_.find(mu);
  return it == entries_.end() ? 0 : it->second;
}

void Character::add(const RatVec& mu, long long m) {
  if (m == 0) return;
  auto it = entries_.find(mu);
  if (it == entries_.end()) {
    entries_.emplace(mu, m);
  } else {
    it->second += m;
    if (it->second == 0) entries_.erase(it);
  }
}

Int Character::totalMass() const {
  Int s = 0;
  for (const auto& [w, m] : entries_) s += m;
  return s;
}

// --- operations ---------------------------------------------------------

namespace {

void requireDominantIntegral(const RootSystem& rs, const RatVec& lambda, const char* where) {
  if (static_cast<int>(lambda.size()) != rs.rank())
    throw std::invalid_argument(std::string(where) + ": coordinate count does not match rank");
  for (const Rat& c : lambda) {
    if (c < 0 || boost::multiprecision::denominator(c) != 1)
      throw std::invalid_argument(std::string(where) + ": weight must be dominant integral");
  }
}

}  // namespace

Int weylDim(const RootSystem& rs, const RatVec& lambda) {
  requireDominantIntegral(rs, lambda, "weylDim");
  RatVec lr(lambda);
  for (int i = 0; i < rs.rank(); ++i) lr[i] += 1;
  Rat prod(1);
  for (const Root& a : rs.positiveRoots())
    prod *= rs.innerWithRoot(lr, a) / rs.innerWithRoot(rs.rho(), a);
  if (boost::multiprecision::denominator(prod) != 1)
    throw std::logic_error("weylDim: non-integral product");
  return boost::multiprecision::numerator(prod);
}

RatVec dominanceReduce(const RootSystem& rs, RatVec mu) {
  const int n = rs.rank();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (mu[i] < 0) {
        Rat c = mu[i];
        const auto& alpha = rs.simpleRoot(i).fund;
        for (int j = 0; j < n; ++j) mu[j] -= c * Rat(alpha[j]);
        changed = true;
      }
    }
  }
  return mu;
}

namespace {

// Freudenthal state for one (root system, lambda) pair.
struct FreudenthalCtx {
  const RootSystem& rs;
  RatVec lambda;
  Rat lamNorm;  // (lambda + rho, lambda + rho)
  std::map<RatVec, long long> dominantMult;
  std::map<RatVec, int> weightCache;  // 1 = weight of V_lambda, 0 = not

  explicit FreudenthalCtx(const RootSystem& r, RatVec lam) : rs(r), lambda(std::move(lam)) {
    RatVec lr(lambda);
    for (int i = 0; i < rs.rank(); ++i) lr[i] += 1;
    lamNorm = rs.inner(lr, lr);
  }

  // lambda - mu must lie in the nonnegative root lattice (mu dominant).
  bool dominatedByLambda(const RatVec& mu) {
    RatVec diff(lambda);
    for (int i = 0; i < rs.rank(); ++i) diff[i] -= mu[i];
    RatVec c = rs.toRootBasis(diff);
    for (const Rat& v : c)
      if (v < 0 || boost::multiprecision::denominator(v) != 1) return false;
    return true;
  }

  bool isWeight(const RatVec& nu) {
    auto it = weightCache.find(nu);
    if (it != weightCache.end()) return it->second != 0;
    bool ok = dominatedByLambda(dominanceReduce(rs, nu));
    weightCache.emplace(nu, ok ? 1 : 0);
    return ok;
  }

  long long mult(const RatVec& mu) {  // mu dominant
    if (mu == lambda) return 1;
    auto it = dominantMult.find(mu);
    if (it != dominantMult.end()) return it->second;
    if (!dominatedByLambda(mu)) {
      dominantMult.emplace(mu, 0);
      return 0;
    }
    RatVec mr(mu);
    for (int i = 0; i < rs.rank(); ++i) mr[i] += 1;
    Rat denom = lamNorm - rs.inner(mr, mr);
    if (denom <= 0) throw std::logic_error("Freudenthal: nonpositive denominator");
    Rat sum(0);
    for (const Root& a : rs.positiveRoots()) {
      RatVec nu(mu);
      for (long k = 1;; ++k) {
        for (int i = 0; i < rs.rank(); ++i) nu[i] += Rat(a.fund[i]);
        if (!isWeight(nu)) break;
        long long m = mult(dominanceReduce(rs, nu));
        if (m != 0) sum += Rat(m) * rs.innerWithRoot(nu, a);
      }
    }
    Rat res = 2 * sum / denom;
    if (boost::multiprecision::denominator(res) != 1)
      throw std::logic_error("Freudenthal: non-integral multiplicity");
    long long value = boost::multiprecision::numerator(res).convert_to<long long>();
    dominantMult.emplace(mu, value);
    return value;
  }
};

std::mutex g_charCacheMutex;
std::map<std::pair<std::string, RatVec>, Character> g_charCache;

}  // namespace

Character weightMultiplicities(const RootSystemPtr& rs, const RatVec& lambda) {
  requireDominantIntegral(*rs, lambda, "weightMultiplicities");
  const auto key = std::make_pair(rs->descriptor(), lambda);
  {
    std::lock_guard<std::mutex> lk(g_charCacheMutex);
    auto it = g_charCache.find(key);
    if (it != g_charCache.end()) return it->second;
  }

  FreudenthalCtx ctx(*rs, lambda);
  Character ch(rs);

  // BFS over the (saturated) weight system from lambda downward.
  std::set<RatVec> visited;
  std::vector<RatVec> frontier{lambda};
  visited.insert(lambda);
  while (!frontier.empty()) {
    std::vector<RatVec> next;
    for (const auto& nu : frontier) {
      ch.add(nu, ctx.mult(dominanceReduce(*rs, nu)));
      for (int i = 0; i < rs->rank(); ++i) {
        RatVec down(nu);
        const auto& alpha = rs->simpleRoot(i).fund;
        for (int j = 0; j < rs->rank(); ++j) down[j] -= Rat(alpha[j]);
        if (!visited.count(down) && ctx.isWeight(down)) {
          visited.insert(down);
          next.push_back(down);
        }
      }
    }
    frontier = std::move(next);
  }

  std::lock_guard<std::mutex> lk(g_charCacheMutex);
  return g_charCache.emplace(key, std::move(ch)).first->second;
}

double distance(const RootSystem& rs, const RatVec& a, const RatVec& b) {
  RatVec d(a);
  for (int i = 0; i < rs.rank(); ++i) d[i] -= b[i];
  return std::sqrt(static_cast<double>(rs.inner(d, d)));
}

double weightNorm(const RootSystem& rs, const RatVec& a) {
  return std::sqrt(static_cast<double>(rs.inner(a, a)));
}

std::vector<RatVec> dimBoundedWeights(const RootSystem& rs, const Int& n) {
  std::vector<RatVec> result;
  if (n <= 1) return result;
  RatVec coords(rs.rank(), Rat(0));
  // Depth-first over coordinates; weylDim is strictly monotone in each
  // coordinate, and zeros in the untouched positions minimize it, so a
  // partial weight that is already too big prunes the whole branch.
  std::function<void(int)> dfs = [&](int idx) {
    if (idx == rs.rank()) {
      result.push_back(coords);
      return;
    }
    for (long v = 0;; ++v) {
      coords[idx] = v;
      if (weylDim(rs, coords) >= n) break;
      dfs(idx + 1);
    }
    coords[idx] = 0;
  };
  dfs(0);
  return result;
}

double etaN(const RootSystem& rs, const Int& n) {
  Rat best(0);
  for (const RatVec& mu : dimBoundedWeights(rs, n)) {
    Rat v = rs.inner(mu, mu);
    if (v > best) best = v;
  }
  return std::sqrt(static_cast<double>(best));
}

}  // namespace crampcert
