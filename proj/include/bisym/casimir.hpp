#pragma once
// Casimir eigenvalues on isotropy summands from alpha-strings.
//
// For phi outside a negation-closed set S of roots,
//   C_S X_phi = (1/2) sum_{alpha in S+} d(phi, alpha) |alpha|^2 X_phi
// with d = q - p - 2pq.  Since d(phi, alpha) = d(phi, -alpha) the positive
// half can be swapped for a quarter of the full sum.

#include "bisym/roots.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

namespace bisym {

struct data_integrity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline const RootSystem& root_system(const LieFamily& g) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<RootSystem>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{static_cast<int>(g.family), g.rank}];
  if (!slot) slot = std::make_unique<RootSystem>(build_root_system(g));
  return *slot;
}

struct RootSubset {
  std::string name;
  std::vector<int> members;  // indices into the parent system, sorted
  bool closed_under_negation = true;

  bool contains(int i) const { return std::binary_search(members.begin(), members.end(), i); }
  int size() const { return static_cast<int>(members.size()); }
};

inline RootSubset make_subset(const RootSystem& sys, std::string name, std::vector<int> m) {
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  RootSubset s{std::move(name), std::move(m), true};
  for (int i : s.members)
    if (!s.contains(sys.neg(i))) s.closed_under_negation = false;
  return s;
}

// ---------------------------------------------------------------------------

inline Rational gamma_eigenvalue(const LieFamily& g, const LieFamily& k_ideal, int delta) {
  if (delta < 1 || delta > 3) throw invalid_input("gamma_eigenvalue: delta must be 1, 2 or 3");
  return Rational(dual_coxeter(k_ideal), delta * dual_coxeter(g));
}

// (1/2) sum over the positive part of S
inline Rational casimir_on_root(const RootSystem& sys, const RootSubset& S, int phi) {
  if (S.contains(phi)) throw invalid_input("casimir_on_root: phi lies in the subset");
  Rational t = 0;
  for (int a : S.members) {
    if (!sys.positive(a) || a == sys.neg(phi)) continue;
    auto [p, q] = sys.root_string(phi, a);
    int d = d_coefficient(p, q);
    if (d) t += d * sys.length2(a);
  }
  return t / 2;
}

// (1/4) sum over all of S, skipping +-phi; phi may lie in S
inline Rational casimir_full(const RootSystem& sys, const std::vector<int>& S, int phi) {
  Rational t = 0;
  int nphi = sys.neg(phi);
  for (int a : S) {
    if (a == phi || a == nphi) continue;
    auto [p, q] = sys.root_string(phi, a);
    int d = d_coefficient(p, q);
    if (d) t += d * sys.length2(a);
  }
  return t / 4;
}

// ---------------------------------------------------------------------------
// simple subsystems (ideals of k)

struct SubsystemType {
  LieFamily type;
  int hstar;     // its own dual Coxeter number, from the root data
  int long4;     // 4 * ambient |long|^2
  int delta;     // |long_g|^2 / |long_S|^2
};

inline int span_rank(const RootSystem& sys, const std::vector<int>& S) {
  std::vector<std::vector<Rational>> rows;
  for (int i : S) {
    std::vector<Rational> r;
    for (int x : sys.doubled(i)) r.emplace_back(x);
    rows.push_back(r);
  }
  int rank = 0, cols = sys.ambient_dim();
  for (int c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    int piv = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[rank]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      Rational f = rows[r][c] / rows[rank][c];
      for (int k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

inline SubsystemType classify_subsystem(const RootSystem& sys, const std::vector<int>& S) {
  if (S.empty()) throw invalid_input("classify_subsystem: empty");
  int lmax = 0, lmin = 1 << 30, glong = 0;
  for (int i = 0; i < sys.size(); ++i) glong = std::max(glong, sys.dot4(i, i));
  int lam = S[0];
  for (int i : S) {
    int d = sys.dot4(i, i);
    if (d > lmax) lmax = d, lam = i;
    lmin = std::min(lmin, d);
  }
  long acc = 0;
  for (int a : S) {
    long x = sys.dot4(a, lam);
    acc += x * x;
  }
  long ll = static_cast<long>(lmax) * lmax;
  if (acc % ll) throw data_integrity_error("subsystem dual Coxeter number is not an integer");
  int hstar = static_cast<int>(acc / ll);
  int r = span_rank(sys, S), n = static_cast<int>(S.size());
  int nlong = 0;
  for (int i : S) nlong += sys.dot4(i, i) == lmax;
  Family f = Family::A;
  if (lmax == lmin) {
    if (n == r * (r + 1)) f = Family::A;
    else if (n == 2 * r * (r - 1)) f = Family::D;
    else if (n == 72) f = Family::E6;
    else if (n == 126) f = Family::E7;
    else if (n == 240) f = Family::E8;
  } else if (n == 12 && r == 2 && lmax == 3 * lmin) {
    f = Family::G2;
  } else if (n == 48 && r == 4) {
    f = Family::F4;
  } else {
    // B_r has 2r short roots, C_r has 2r long ones; B2 = C2 is reported as B2
    f = (n - nlong == 2 * r) ? Family::B : Family::C;
  }
  LieFamily t{f, f == Family::G2 ? 2 : f == Family::F4 ? 4 : r};
  if (f == Family::E6) t.rank = 6;
  if (f == Family::E7) t.rank = 7;
  if (f == Family::E8) t.rank = 8;
  if (glong % lmax) throw data_integrity_error("length ratio is not an integer");
  return {t, hstar, lmax, glong / lmax};
}

// connected components of S under non-orthogonality
inline std::vector<std::vector<int>> simple_components(const RootSystem& sys, const std::vector<int>& S) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(sys.size(), 0);
  for (int r : S) {
    if (seen[r]) continue;
    std::vector<int> comp{r}, stack{r};
    seen[r] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : S)
        if (!seen[y] && sys.dot4(x, y) != 0) {
          seen[y] = 1;
          comp.push_back(y);
          stack.push_back(y);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(comp);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct IsotropyDecomposition {
  RootSubset Rl, Rk, Rn;
  std::vector<RootSubset> Rp;        // one per fiber summand p_a
  std::vector<RootSubset> kIdeal;    // the simple ideal of k containing p_a
  std::vector<RootSubset> Rn_parts;  // L-summands n^j
  std::vector<int> representative;   // one root per n^j
};

// values as a sorted set
using ValueSet = std::vector<Rational>;

inline void insert_value(ValueSet& s, const Rational& v) {
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it == s.end() || *it != v) s.insert(it, v);
}

struct FiberSummand {
  LieFamily ideal;
  int ideal_hstar = 0;
  int delta = 1;
  int dim = 0;
  Rational gamma;          // h*(k_a) / (delta h*(g))
  Rational gamma_strings;  // the same from the string formula
  ValueSet c_l;            // eigenvalue(s) of C_l on p_a
  std::vector<ValueSet> c_n;  // per n^j
  // tr_n C_{p_a}; C_g = Id forces (1 - gamma) dim p_a
  Rational trace_n;
};

struct HorizontalSummand {
  int representative = -1;
  int dim = 0;
  std::vector<ValueSet> b;  // per a
  ValueSet c_k, c_l;
};

struct EigenvalueReport {
  LieFamily g;
  std::vector<FiberSummand> p;
  std::vector<HorizontalSummand> n;

  int s() const { return static_cast<int>(p.size()); }
  ValueSet b_values(int a) const {
    ValueSet v;
    for (const auto& h : n)
      for (const auto& x : h.b[a]) insert_value(v, x);
    return v;
  }
  bool scalar_on_n(int a) const { return b_values(a).size() == 1; }
  ValueSet c_kn() const {
    ValueSet v;
    for (const auto& h : n)
      for (const auto& x : h.c_k) insert_value(v, x);
    return v;
  }
};

// b values constant on every claimed summand, plus the positive-combination test
struct ScalarCheck {
  std::vector<std::vector<Rational>> values;  // [a][j]
  bool exists_positive_combination = false;
};

inline ScalarCheck scalar_check(const RootSystem& sys, const std::vector<RootSubset>& Rpa,
                                const std::vector<RootSubset>& parts) {
  ScalarCheck out;
  for (const auto& P : Rpa) {
    std::vector<Rational> row;
    for (const auto& N : parts) {
      if (N.members.empty()) throw invalid_input("scalar_check: empty summand");
      int rep = N.members.front();
      Rational v = casimir_on_root(sys, P, rep);
      for (int phi : N.members) {
        Rational w = casimir_on_root(sys, P, phi);
        if (w != v)
          throw data_integrity_error("summand " + N.name + " is not isotypic for " + P.name + ": " +
                                     to_string(sys.root(rep)) + " gives " + to_string(v) + ", " +
                                     to_string(sys.root(phi)) + " gives " + to_string(w));
      }
      row.push_back(v);
    }
    out.values.push_back(row);
  }
  // need lambda_a > 0 with sum_a lambda_a (b_a^i - b_a^0) = 0 for every i
  const size_t s = out.values.size(), m = parts.size();
  auto diff = [&](size_t a) {
    std::vector<Rational> d;
    for (size_t j = 0; j < m; ++j) d.push_back(out.values[a][j] - out.values[a][0]);
    return d;
  };
  auto zero = [](const std::vector<Rational>& d) {
    return std::all_of(d.begin(), d.end(), [](const Rational& x) { return x == 0; });
  };
  if (s == 1) {
    out.exists_positive_combination = zero(diff(0));
  } else if (s == 2) {
    auto u = diff(0), v = diff(1);
    if (zero(u) && zero(v))
      out.exists_positive_combination = true;
    else if (zero(u) || zero(v))
      out.exists_positive_combination = false;
    else {
      // u = -t v with t > 0
      std::optional<Rational> t;
      bool ok = true;
      for (size_t j = 0; j < m && ok; ++j) {
        if (v[j] == 0) {
          ok = u[j] == 0;
          continue;
        }
        Rational r = -u[j] / v[j];
        if (!t)
          t = r;
        else if (*t != r)
          ok = false;
      }
      out.exists_positive_combination = ok && t && *t > 0;
    }
  } else {
    throw invalid_input("scalar_check: only s <= 2 is supported");
  }
  return out;
}

inline EigenvalueReport eigenvalues(const RootSystem& sys, const IsotropyDecomposition& dec) {
  EigenvalueReport rep;
  rep.g = sys.family();
  const int s = static_cast<int>(dec.Rp.size());
  for (int a = 0; a < s; ++a) {
    FiberSummand f;
    auto t = classify_subsystem(sys, dec.kIdeal[a].members);
    f.ideal = t.type;
    f.ideal_hstar = t.hstar;
    f.delta = t.delta;
    f.dim = dec.Rp[a].size();
    if (dual_coxeter(t.type) != t.hstar)
      throw data_integrity_error("ideal " + t.type.str() + ": dual Coxeter number from roots is " +
                                 std::to_string(t.hstar));
    f.gamma = gamma_eigenvalue(sys.family(), t.type, t.delta);
    bool first = true;
    for (int beta : dec.Rp[a].members) {
      // torus and the +-beta plane each contribute |beta|^2
      Rational gs = 2 * sys.length2(beta) + casimir_full(sys, dec.kIdeal[a].members, beta);
      if (first)
        f.gamma_strings = gs;
      else if (gs != f.gamma_strings)
        throw data_integrity_error("C_k not scalar on p_" + std::to_string(a + 1));
      first = false;
      insert_value(f.c_l, sys.length2(beta) + casimir_full(sys, dec.Rl.members, beta));
    }
    f.c_n.resize(dec.Rn_parts.size());
    for (size_t j = 0; j < dec.Rn_parts.size(); ++j)
      for (int beta : dec.Rp[a].members) insert_value(f.c_n[j], casimir_full(sys, dec.Rn_parts[j].members, beta));
    rep.p.push_back(std::move(f));
  }
  for (size_t j = 0; j < dec.Rn_parts.size(); ++j) {
    HorizontalSummand h;
    const auto& N = dec.Rn_parts[j];
    h.representative = dec.representative[j];
    h.dim = N.size();
    h.b.resize(s);
    for (int phi : N.members) {
      for (int a = 0; a < s; ++a) insert_value(h.b[a], casimir_on_root(sys, dec.Rp[a], phi));
      insert_value(h.c_k, sys.length2(phi) + casimir_full(sys, dec.Rk.members, phi));
      insert_value(h.c_l, sys.length2(phi) + casimir_full(sys, dec.Rl.members, phi));
    }
    for (int phi : N.members)
      for (int a = 0; a < s; ++a) rep.p[a].trace_n += casimir_on_root(sys, dec.Rp[a], phi);
    rep.n.push_back(std::move(h));
  }
  for (const auto& f : rep.p)
    if (f.trace_n != (1 - f.gamma) * f.dim)
      throw data_integrity_error("trace of C_p on n is " + to_string(f.trace_n) + ", expected " +
                                 to_string((1 - f.gamma) * f.dim));
  return rep;
}

}  // namespace bisym
