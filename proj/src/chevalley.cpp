#include "crampcert/chevalley.hpp"

#include <cstdint>
#include <mutex>
#include <stdexcept>

namespace crampcert {

namespace {

std::vector<long> addCoords(const std::vector<long>& a, const std::vector<long>& b, long sb) {
  std::vector<long> r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += sb * b[i];
  return r;
}

}  // namespace

ChevalleyBasis::ChevalleyBasis(RootSystemPtr rs) : rs_(std::move(rs)) {
  const auto& pos = rs_->positiveRoots();
  const int P = static_cast<int>(pos.size());
  const int r = rs_->rank();

  for (int k = 0; k < P; ++k) indexBySimpleCoords_[pos[k].simple] = k;

  // Coroot of alpha = sum k_j alpha_j is sum k_j (d_j / d_alpha) h_j.
  coroots_.resize(P);
  for (int k = 0; k < P; ++k) {
    std::vector<Rat> c(r, Rat(0));
    for (int j = 0; j < r; ++j)
      c[j] = Rat(pos[k].simple[j]) * rs_->halfNorms()[j] / pos[k].halfNorm;
    for (const Rat& v : c)
      if (boost::multiprecision::denominator(v) != 1)
        throw std::logic_error("non-integral coroot coefficient");
    coroots_[k] = std::move(c);
  }

  auto isRoot = [&](const std::vector<long>& sc) { return rootIndex(sc).has_value(); };
  // Down-string length: max k with beta - k*alpha a root.
  auto stringDown = [&](int beta, int alpha) {
    long p = 0;
    std::vector<long> cur = pos[beta].simple;
    while (true) {
      cur = addCoords(cur, pos[alpha].simple, -1);
      bool zero = true;
      for (long v : cur) if (v != 0) { zero = false; break; }
      if (zero || !isRoot(cur)) break;
      ++p;
    }
    return p;
  };

  // Signs fixed on extraspecial pairs, all other constants forced by the
  // Jacobi identity, processing sums in increasing height.
  for (int g = 0; g < P; ++g) {
    if (pos[g].height < 2) continue;
    int a = -1, b = -1;
    for (int cand = 0; cand < P; ++cand) {
      auto diff = addCoords(pos[g].simple, pos[cand].simple, -1);
      auto idx = rootIndex(diff);
      if (idx && *idx >= 0) { a = cand; b = *idx; break; }
    }
    if (a < 0) throw std::logic_error("no extraspecial pair for a non-simple root");
    posN_[{a, b}] = stringDown(b, a) + 1;

    for (int x = 0; x < P; ++x) {
      auto diff = addCoords(pos[g].simple, pos[x].simple, -1);
      auto idx = rootIndex(diff);
      if (!idx || *idx < 0) continue;
      int y = *idx;
      if (y < x || (x == a && y == b)) continue;
      // Jacobi identity on (e_{-alpha_a}, e_x, e_y); every constant on the
      // right-hand side has a sum of strictly smaller height.
      Rat lhsFactor = Rat(structureConstant(negate(a), g));
      if (lhsFactor == 0) throw std::logic_error("vanishing extraspecial bracket");
      Rat rhs(0);
      auto d1 = addCoords(pos[x].simple, pos[a].simple, -1);
      if (auto s1 = rootIndex(d1)) {
        rhs += Rat(structureConstant(negate(a), x)) * Rat(structureConstant(*s1, y));
      }
      auto d2 = addCoords(pos[y].simple, pos[a].simple, -1);
      if (auto s2 = rootIndex(d2)) {
        rhs += Rat(structureConstant(negate(a), y)) * Rat(structureConstant(x, *s2));
      }
      Rat n = rhs / lhsFactor;
      if (boost::multiprecision::denominator(n) != 1)
        throw std::logic_error("non-integral structure constant");
      long value = boost::multiprecision::numerator(n).convert_to<long>();
      long expected = stringDown(y, x) + 1;
      if (value != expected && value != -expected)
        throw std::logic_error("structure constant magnitude mismatch");
      posN_[{x, y}] = value;
    }
  }

  const long n = dimension();
  table_.assign(n, std::vector<std::vector<std::pair<int, double>>>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) {
      auto br = basisBracket(static_cast<int>(i), static_cast<int>(j));
      for (long k = 0; k < n; ++k)
        if (br[k] != 0) table_[i][j].emplace_back(static_cast<int>(k), static_cast<double>(br[k]));
    }
}

ChevalleyBasis::RVec ChevalleyBasis::realBracket(const RVec& x, const RVec& y) const {
  const long n = dimension();
  RVec out(n, 0.0);
  for (long i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (long j = 0; j < n; ++j) {
      if (y[j] == 0.0) continue;
      for (const auto& [k, c] : table_[i][j]) out[k] += x[i] * y[j] * c;
    }
  }
  return out;
}

std::optional<int> ChevalleyBasis::rootIndex(const std::vector<long>& simpleCoords) const {
  bool anyPos = false, anyNeg = false;
  for (long v : simpleCoords) {
    if (v > 0) anyPos = true;
    if (v < 0) anyNeg = true;
  }
  if (anyPos && anyNeg) return std::nullopt;
  if (!anyPos && !anyNeg) return std::nullopt;  // zero
  if (anyPos) {
    auto it = indexBySimpleCoords_.find(simpleCoords);
    if (it == indexBySimpleCoords_.end()) return std::nullopt;
    return it->second;
  }
  std::vector<long> mirror(simpleCoords);
  for (long& v : mirror) v = -v;
  auto it = indexBySimpleCoords_.find(mirror);
  if (it == indexBySimpleCoords_.end()) return std::nullopt;
  return negate(it->second);
}

long ChevalleyBasis::positivePairConstant(int i, int j) const {
  if (i == j) return 0;
  if (i < j) {
    auto it = posN_.find({i, j});
    return it == posN_.end() ? 0 : it->second;
  }
  auto it = posN_.find({j, i});
  return it == posN_.end() ? 0 : -it->second;
}

long ChevalleyBasis::structureConstant(int s, int t) const {
  const auto& pos = rs_->positiveRoots();
  std::vector<long> sc(rs_->rank(), 0);
  const auto& as = pos[posIndexOf(s)].simple;
  const auto& at = pos[posIndexOf(t)].simple;
  for (int k = 0; k < rs_->rank(); ++k)
    sc[k] = (isNegative(s) ? -as[k] : as[k]) + (isNegative(t) ? -at[k] : at[k]);
  auto xi = rootIndex(sc);
  if (!xi) return 0;

  if (!isNegative(s) && !isNegative(t)) return positivePairConstant(s, t);
  if (isNegative(s) && isNegative(t))
    return -structureConstant(negate(s), negate(t));
  if (!isNegative(s) && isNegative(t)) return -structureConstant(t, s);

  // s negative, t positive; xi = t - (-s).
  int a = posIndexOf(s);
  Rat n(0);
  if (*xi >= 0) {
    // N_{-a,t} = N_{a,xi} (xi,xi)/(t,t)
    n = Rat(positivePairConstant(a, *xi)) * rootHalfNorm(*xi) / rootHalfNorm(t);
  } else {
    // N_{-a,t} = N_{t,-xi} (xi,xi)/(a,a)
    n = Rat(positivePairConstant(t, posIndexOf(*xi))) * rootHalfNorm(*xi) / rootHalfNorm(a);
  }
  if (boost::multiprecision::denominator(n) != 1)
    throw std::logic_error("non-integral mixed structure constant");
  return boost::multiprecision::numerator(n).convert_to<long>();
}

std::vector<Rat> ChevalleyBasis::basisBracket(int i, int j) const {
  const int r = rank();
  const int P = numPositive();
  const long n = dimension();
  std::vector<Rat> out(n, Rat(0));
  if (i == j) return out;

  auto rootPart = [&](int idx) -> int {  // signed root index, or INT_MIN for Cartan
    if (idx < r) return INT32_MIN;
    if (idx < r + P) return idx - r;
    return negate(idx - r - P);
  };
  auto slot = [&](int signedRoot) { return signedRoot >= 0 ? r + signedRoot : r + P + posIndexOf(signedRoot); };

  int ri = rootPart(i), rj = rootPart(j);
  if (ri == INT32_MIN && rj == INT32_MIN) return out;
  if (ri == INT32_MIN || rj == INT32_MIN) {
    // [h_k, e_beta] = <beta, alpha_k^vee> e_beta
    int h = (ri == INT32_MIN) ? i : j;
    int e = (ri == INT32_MIN) ? j : i;
    int se = (ri == INT32_MIN) ? rj : ri;
    long pairing = rs_->positiveRoots()[posIndexOf(se)].fund[h];
    if (isNegative(se)) pairing = -pairing;
    Rat c = Rat(pairing);
    if (e == i) c = -c;  // antisymmetry when the Cartan element is second
    out[slot(se)] = c;
    return out;
  }

  if (ri == negate(rj)) {
    // [e_alpha, f_alpha] = h_alpha; [f_alpha, e_alpha] = -h_alpha
    int p = posIndexOf(ri);
    Rat sgn = isNegative(ri) ? Rat(-1) : Rat(1);
    for (int k = 0; k < r; ++k) out[k] = sgn * coroots_[p][k];
    return out;
  }

  long c = structureConstant(ri, rj);
  if (c == 0) return out;
  std::vector<long> sc(r, 0);
  const auto& as = rs_->positiveRoots()[posIndexOf(ri)].simple;
  const auto& at = rs_->positiveRoots()[posIndexOf(rj)].simple;
  for (int k = 0; k < r; ++k)
    sc[k] = (isNegative(ri) ? -as[k] : as[k]) + (isNegative(rj) ? -at[k] : at[k]);
  auto xi = rootIndex(sc);
  if (!xi) throw std::logic_error("structure constant for a non-root sum");
  out[slot(*xi)] = Rat(c);
  return out;
}

ChevalleyBasis::CVec ChevalleyBasis::bracket(const CVec& x, const CVec& y) const {
  const long n = dimension();
  CVec out(n, {0.0, 0.0});
  for (long i = 0; i < n; ++i) {
    if (x[i] == std::complex<double>(0.0, 0.0)) continue;
    for (long j = 0; j < n; ++j) {
      if (y[j] == std::complex<double>(0.0, 0.0)) continue;
      auto br = basisBracket(static_cast<int>(i), static_cast<int>(j));
      for (long k = 0; k < n; ++k)
        if (br[k] != 0) out[k] += x[i] * y[j] * static_cast<double>(br[k]);
    }
  }
  return out;
}

namespace {
std::mutex g_chevMutex;
std::map<std::string, ChevalleyPtr> g_chevCache;
}  // namespace

ChevalleyPtr chevalleyBasis(const RootSystemPtr& rs) {
  std::lock_guard<std::mutex> lk(g_chevMutex);
  auto key = rs->descriptor();
  auto it = g_chevCache.find(key);
  if (it != g_chevCache.end()) return it->second;
  auto ptr = std::make_shared<const ChevalleyBasis>(rs);
  return g_chevCache.emplace(key, ptr).first->second;
}

}  // namespace crampcert
