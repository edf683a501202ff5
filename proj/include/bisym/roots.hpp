#pragma once
// Root systems of the compact simple Lie algebras in the usual ambient
// coordinates, with Killing-normalised squared lengths and alpha-strings.
//
// Coordinates are exact rationals (all of them lie in (1/2)Z); lookups go
// through an integer key of doubled coordinates.

#include "bisym/numerics.hpp"

#include <array>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace bisym {

enum class Family { A, B, C, D, E6, E7, E8, F4, G2 };

inline std::string family_name(Family f) {
  static const char* names[] = {"A", "B", "C", "D", "E6", "E7", "E8", "F4", "G2"};
  return names[static_cast<int>(f)];
}

inline Family parse_family(const std::string& s) {
  static const std::map<std::string, Family> m{{"A", Family::A},   {"B", Family::B},   {"C", Family::C},
                                               {"D", Family::D},   {"E6", Family::E6}, {"E7", Family::E7},
                                               {"E8", Family::E8}, {"F4", Family::F4}, {"G2", Family::G2}};
  auto it = m.find(s);
  if (it == m.end()) throw invalid_input("unknown Lie family '" + s + "'");
  return it->second;
}

// A_r is su_{r+1}; exceptional ranks are implied by the family
struct LieFamily {
  Family family;
  int rank;
  std::string str() const {
    switch (family) {
      case Family::A:
      case Family::B:
      case Family::C:
      case Family::D:
        return family_name(family) + std::to_string(rank);
      default:
        return family_name(family);
    }
  }
  friend bool operator==(const LieFamily&, const LieFamily&) = default;
};

inline int fixed_rank(Family f) {
  switch (f) {
    case Family::E6: return 6;
    case Family::E7: return 7;
    case Family::E8: return 8;
    case Family::F4: return 4;
    case Family::G2: return 2;
    default: return -1;
  }
}

inline void check_rank(const LieFamily& g) {
  int need = 0;
  switch (g.family) {
    case Family::A: need = 1; break;
    case Family::B: need = 2; break;
    case Family::C: need = 3; break;
    case Family::D: need = 4; break;
    default:
      if (g.rank != fixed_rank(g.family))
        throw invalid_input(family_name(g.family) + " has rank " + std::to_string(fixed_rank(g.family)));
      return;
  }
  if (g.rank < need)
    throw invalid_input(family_name(g.family) + std::to_string(g.rank) + ": rank must be at least " +
                        std::to_string(need));
}

inline int dual_coxeter(const LieFamily& g) {
  switch (g.family) {
    case Family::A: return g.rank + 1;
    case Family::B: return 2 * g.rank - 1;
    case Family::C: return g.rank + 1;
    case Family::D: return 2 * g.rank - 2;
    case Family::E6: return 12;
    case Family::E7: return 18;
    case Family::E8: return 30;
    case Family::F4: return 9;
    case Family::G2: return 4;
  }
  return 0;
}

using RootVector = std::vector<Rational>;

inline Rational dot(const RootVector& a, const RootVector& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline std::string to_string(const RootVector& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

struct KeyHash {
  size_t operator()(const std::vector<int>& k) const {
    size_t h = 1469598103934665603ULL;
    for (int x : k) h = (h ^ static_cast<size_t>(x + 64)) * 1099511628211ULL;
    return h;
  }
};

class RootSystem {
 public:
  static constexpr int npos = -1;

  RootSystem(LieFamily g, std::vector<RootVector> roots) : g_(g), roots_(std::move(roots)) { index(); }

  const LieFamily& family() const { return g_; }
  int size() const { return static_cast<int>(roots_.size()); }
  int ambient_dim() const { return roots_.empty() ? 0 : static_cast<int>(roots_[0].size()); }
  const RootVector& root(int i) const { return roots_[i]; }
  const std::vector<RootVector>& roots() const { return roots_; }

  int find(const RootVector& v) const {
    auto it = lookup_.find(key(v));
    return it == lookup_.end() ? npos : it->second;
  }
  bool contains(const RootVector& v) const { return find(v) != npos; }
  int neg(int i) const { return neg_[i]; }
  // index of root(i)+root(j), or npos when the sum is not a root (zero included)
  int sum(int i, int j) const { return sum_[static_cast<size_t>(i) * roots_.size() + j]; }
  bool positive(int i) const { return positive_[i]; }
  const Rational& length2(int i) const { return len_[i]; }
  // 4 * ambient dot product, exact in integers
  int dot4(int i, int j) const {
    int s = 0;
    for (size_t c = 0; c < keys_[i].size(); ++c) s += keys_[i][c] * keys_[j][c];
    return s;
  }
  const std::vector<int>& doubled(int i) const { return keys_[i]; }
  // Killing inner product = kappa * ambient dot
  const Rational& kappa() const { return kappa_; }
  Rational killing(const RootVector& a, const RootVector& b) const { return kappa_ * dot(a, b); }
  const Rational& long_length2() const { return long_; }
  const Rational& short_length2() const { return short_; }
  std::vector<Rational> distinct_lengths() const {
    if (long_ == short_) return {long_};
    return {short_, long_};
  }

  // (p, q): phi + n*alpha is a root for p <= n <= q
  std::pair<int, int> root_string(int phi, int alpha) const {
    if (phi == alpha || phi == neg_[alpha]) throw invalid_input("root_string: phi = ±alpha");
    int p = 0, cur = phi, na = neg_[alpha];
    while ((cur = sum(cur, na)) != npos) --p;
    int q = 0;
    cur = phi;
    while ((cur = sum(cur, alpha)) != npos) ++q;
    return {p, q};
  }
  std::pair<int, int> root_string(const RootVector& phi, const RootVector& alpha) const {
    int i = find(phi), j = find(alpha);
    if (i == npos || j == npos) throw invalid_input("root_string: not a root");
    return root_string(i, j);
  }

 private:
  LieFamily g_;
  std::vector<RootVector> roots_;
  std::unordered_map<std::vector<int>, int, KeyHash> lookup_;
  std::vector<int> neg_, sum_;
  std::vector<bool> positive_;
  std::vector<Rational> len_;
  std::vector<std::vector<int>> keys_;
  Rational kappa_, long_, short_;

  static std::vector<int> key(const RootVector& v) {
    std::vector<int> k;
    k.reserve(v.size());
    for (const auto& x : v) {
      Rational t = 2 * x;
      if (den(t) != 1) throw invalid_input("root coordinate outside (1/2)Z");
      k.push_back(num(t).convert_to<int>());
    }
    return k;
  }

  void index() {
    const size_t n = roots_.size();
    for (size_t i = 0; i < n; ++i) lookup_[key(roots_[i])] = static_cast<int>(i);
    neg_.resize(n);
    positive_.resize(n);
    Rational lmax = 0, lmin = -1;
    auto& keys = keys_;
    keys.resize(n);
    for (size_t i = 0; i < n; ++i) {
      keys[i] = key(roots_[i]);
      RootVector m = roots_[i];
      for (auto& x : m) x = -x;
      int j = find(m);
      if (j == npos) throw invalid_input("root set not closed under negation");
      neg_[i] = j;
      for (const auto& x : roots_[i])
        if (x != 0) {
          positive_[i] = x > 0;
          break;
        }
      Rational d = dot(roots_[i], roots_[i]);
      if (d > lmax) lmax = d;
      if (lmin < 0 || d < lmin) lmin = d;
    }
    sum_.assign(n * n, npos);
    std::vector<int> s(keys.empty() ? 0 : keys[0].size());
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        for (size_t c = 0; c < s.size(); ++c) s[c] = keys[i][c] + keys[j][c];
        auto it = lookup_.find(s);
        if (it != lookup_.end()) sum_[i * n + j] = it->second;
      }
    kappa_ = Rational(1) / (lmax * dual_coxeter(g_));
    long_ = lmax * kappa_;
    short_ = lmin * kappa_;
    len_.resize(n);
    for (size_t i = 0; i < n; ++i) len_[i] = Rational(dot4(static_cast<int>(i), static_cast<int>(i)), 4) * kappa_;
  }
};

inline int d_coefficient(int p, int q) {
  if (p > 0 || q < 0) throw invalid_input("d_coefficient: need p <= 0 <= q");
  return q - p - 2 * p * q;
}

namespace detail {

inline RootVector unit(int dim, std::initializer_list<std::pair<int, long>> entries, long scale = 1) {
  RootVector v(dim, Rational(0));
  for (auto [i, x] : entries) v[i] = Rational(x, scale);
  return v;
}

inline void add_pm_pairs(std::vector<RootVector>& out, int n, int dim) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int a : {1, -1})
        for (int b : {1, -1}) out.push_back(unit(dim, {{i, a}, {j, b}}));
}

inline void add_spinors(std::vector<RootVector>& out, int dim, bool even_only) {
  for (int mask = 0; mask < (1 << dim); ++mask) {
    if (even_only && __builtin_popcount(mask) % 2) continue;
    RootVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = Rational((mask >> i) & 1 ? -1 : 1, 2);
    out.push_back(v);
  }
}

}  // namespace detail

inline RootSystem build_root_system(const LieFamily& g) {
  check_rank(g);
  using detail::unit;
  std::vector<RootVector> R;
  const int n = g.rank;
  switch (g.family) {
    case Family::A:
      // su_{n+1} in R^{n+1}, trace-zero hyperplane left implicit
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
          if (i != j) R.push_back(unit(n + 1, {{i, 1}, {j, -1}}));
      break;
    case Family::B:
    case Family::C:
    case Family::D:
      detail::add_pm_pairs(R, n, n);
      if (g.family != Family::D)
        for (int i = 0; i < n; ++i)
          for (int a : {1, -1}) R.push_back(unit(n, {{i, g.family == Family::B ? a : 2 * a}}));
      break;
    case Family::G2:
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j)
          if (i != j) R.push_back(unit(3, {{i, 1}, {j, -1}}));
        for (int s : {1, -1}) {
          RootVector v(3, Rational(-s));
          v[i] = 2 * s;
          R.push_back(v);
        }
      }
      break;
    case Family::F4:
      detail::add_pm_pairs(R, 4, 4);
      for (int i = 0; i < 4; ++i)
        for (int a : {1, -1}) R.push_back(unit(4, {{i, a}}));
      detail::add_spinors(R, 4, false);
      break;
    case Family::E8:
    case Family::E7:
    case Family::E6: {
      std::vector<RootVector> e8;
      detail::add_pm_pairs(e8, 8, 8);
      detail::add_spinors(e8, 8, true);
      for (auto& r : e8) {
        // E7: orthogonal to e7+e8; E6: additionally orthogonal to e6+e8
        if (g.family != Family::E8 && r[6] + r[7] != 0) continue;
        if (g.family == Family::E6 && r[5] + r[7] != 0) continue;
        R.push_back(r);
      }
      break;
    }
  }
  return RootSystem(g, std::move(R));
}

inline int expected_root_count(const LieFamily& g) {
  int n = g.rank;
  switch (g.family) {
    case Family::A: return n * (n + 1);
    case Family::B:
    case Family::C: return 2 * n * n;
    case Family::D: return 2 * n * (n - 1);
    case Family::E6: return 72;
    case Family::E7: return 126;
    case Family::E8: return 240;
    case Family::F4: return 48;
    case Family::G2: return 12;
  }
  return 0;
}

}  // namespace bisym
