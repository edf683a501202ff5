#pragma once
// Kowalski n-symmetric spaces G0^n / diag G0 fibered over
// G0^p/diag x G0^q/diag, p + q = n, 2 <= p <= q <= n-2.
//
// Metric g(lambda; mu_1, mu_2), X_i = lambda/mu_i.  Ricci coefficients:
//   p:    n/(4pq) + (p-1)q/(4pn) X1^2 + (q-1)p/(4qn) X2^2   = lambda E
//   n_1:  -q/(2np) X1 + (p+2)/(4p)                          = mu_1 E
//   n_2:  -p/(2nq) X2 + (q+2)/(4q)                          = mu_2 E

#include "bisym/einstein.hpp"
#include "bisym/numerics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bisym {

struct KowalskiSpace {
  int n, p, q;
  KowalskiSpace(int n_, int p_) : n(n_), p(p_), q(n_ - p_) {
    if (n < 4 || p < 2 || p > q || q > n - 2)
      throw invalid_input("Kowalski space needs p+q=n, 2<=p<=q<=n-2 (got n=" + std::to_string(n) +
                          ", p=" + std::to_string(p) + ")");
  }
  std::string id() const {
    return "kowalski(n=" + std::to_string(n) + ",p=" + std::to_string(p) + ",q=" + std::to_string(q) + ")";
  }
};

struct KowalskiEigenvalues {
  Rational c_lp, b1, b2, c_k1, c_k2, gamma, c_n1p, c_n2p;
};

inline KowalskiEigenvalues kowalski_eigenvalues(const KowalskiSpace& s) {
  const Rational n = s.n, p = s.p, q = s.q;
  return {1 / n,
          q / (n * p),
          p / (n * q),
          1 / p,
          1 / q,
          (q * q + p * p) / (n * p * q),
          (p - 1) * q / (p * n),
          (q - 1) * p / (q * n)};
}

// (fiber, n_1, n_2) Ricci coefficients at (X1, X2), then divided by the
// metric coefficients (lambda = 1, mu_i = 1/X_i)
template <class T>
std::vector<T> kowalski_ratios(const KowalskiSpace& s, const T& x1, const T& x2) {
  const Rational n = s.n, p = s.p, q = s.q;
  T f = T(n / (4 * p * q)) + T((p - 1) * q / (4 * p * n)) * x1 * x1 + T((q - 1) * p / (4 * q * n)) * x2 * x2;
  T h1 = T(-q / (2 * n * p)) * x1 + T((p + 2) / (4 * p));
  T h2 = T(-p / (2 * n * q)) * x2 + T((q + 2) / (4 * q));
  return {f, h1 * x1, h2 * x2};
}

inline std::vector<double> kowalski_ratios(const KowalskiSpace& s, double x1, double x2) {
  const double n = s.n, p = s.p, q = s.q;
  double f = n / (4 * p * q) + (p - 1) * q / (4 * p * n) * x1 * x1 + (q - 1) * p / (4 * q * n) * x2 * x2;
  double h1 = -q / (2 * n * p) * x1 + (p + 2) / (4 * p);
  double h2 = -p / (2 * n * q) * x2 + (q + 2) / (4 * q);
  return {f, h1 * x1, h2 * x2};
}

// binormal metrics, reported as Y = mu/lambda (the reciprocal of X above).
// Y must solve
//   (gamma + 2 c_lp) Y^2 - (1 + 2 c_kj) Y + (1 - gamma + 2 b^j) = 0,  j = 1, 2
// and (c_k1 - c_k2)(1 - Y) = 0
inline std::vector<QuadSurd> kowalski_binormal(const KowalskiSpace& s) {
  auto e = kowalski_eigenvalues(s);
  auto roots = [&](const Rational& ckj, const Rational& bj) {
    Rational a = e.gamma + 2 * e.c_lp, b = -(1 + 2 * ckj), c = 1 - e.gamma + 2 * bj;
    return solve_quadratic(a, b, c);
  };
  auto r1 = roots(e.c_k1, e.b1), r2 = roots(e.c_k2, e.b2);
  std::vector<QuadSurd> out;
  for (const auto& x : r1) {
    if (x.sign() <= 0) continue;
    if (std::find(r2.begin(), r2.end(), x) == r2.end()) continue;
    if (e.c_k1 != e.c_k2 && !(x == QuadSurd(Rational(1)))) continue;
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// nonstandard X1 is the real root of this cubic
inline RatPolynomial kowalski_cubic(const KowalskiSpace& s) {
  const Rational n = s.n, p = s.p, q = s.q;
  return RatPolynomial(std::vector<Rational>{-(q + 3) * n * n, n * (q * (q + 2) * (p + 1) + n + 8),
                                             -4 * q * (n + p * q + 2), 4 * q * q});
}

inline Rational kowalski_x2_squared(const KowalskiSpace& s, const Rational& x1) {
  const Rational n = s.n, p = s.p, q = s.q;
  return (-q * q * (p + 1) * x1 * x1 + n * q * (p + 2) * x1 - n * n) / (p * p * (q - 1));
}

struct KowalskiSolution {
  Coord X1, X2;
  bool standard = false, binormal = false, verified = false;
  double einstein_ratio = 0;  // lambda = 1
};

inline std::vector<KowalskiSolution> kowalski_solve(const KowalskiSpace& s) {
  std::vector<KowalskiSolution> out;
  {
    KowalskiSolution st;
    st.X1 = st.X2 = Coord::of(QuadSurd(Rational(1)));
    st.standard = st.binormal = true;
    auto r = kowalski_ratios<QuadSurd>(s, QuadSurd(Rational(1)), QuadSurd(Rational(1)));
    st.verified = r[0] == r[1] && r[0] == r[2];
    st.einstein_ratio = r[0].to_double();
    out.push_back(st);
  }
  if (s.n == 4) return out;
  const Rational n = s.n, p = s.p, q = s.q;
  Domain window{n / (q * (p + 1)), n / q};
  auto roots = isolate_real_roots(kowalski_cubic(s), window);
  for (const auto& r : roots) {
    if (r.lo == r.hi && r.lo == 1) continue;
    KowalskiSolution k;
    k.X1 = Coord::of(r);
    if (r.lo == r.hi) {
      Rational x2sq = kowalski_x2_squared(s, r.lo);
      if (x2sq <= 0) continue;
      QuadSurd x2 = sqrt_exact(x2sq);
      k.X1 = Coord::of(QuadSurd(r.lo));
      k.X2 = Coord::of(x2);
      auto rr = kowalski_ratios<QuadSurd>(s, QuadSurd(r.lo), x2);
      k.verified = rr[0] == rr[1] && rr[0] == rr[2];
      k.einstein_ratio = rr[0].to_double();
    } else {
      double a = r.value;
      double x2sq = (-to_double(q * q * (p + 1)) * a * a + to_double(n * q * (p + 2)) * a - to_double(n * n)) /
                    to_double(p * p * (q - 1));
      if (!(x2sq > 0)) continue;
      k.X2 = Coord::numeric(std::sqrt(x2sq));
      auto rr = kowalski_ratios(s, a, k.X2.approx);
      k.verified = std::fabs(rr[0] - rr[1]) < 1e-9 && std::fabs(rr[0] - rr[2]) < 1e-9;
      k.einstein_ratio = rr[0];
    }
    k.binormal = std::fabs(k.X1.approx - k.X2.approx) < 1e-9;
    out.push_back(k);
  }
  return out;
}

// g_N Einstein needs mu_1/mu_2 = (b^1/b^2)^(1/2) = q/p while r_1/r_2 is
// forced by c_{k,i}; report whether a given solution has Einstein base
inline bool kowalski_base_einstein(const KowalskiSpace& s, double x1, double x2) {
  auto e = kowalski_eigenvalues(s);
  double r1 = 0.5 * (0.5 + to_double(e.c_k1)), r2 = 0.5 * (0.5 + to_double(e.c_k2));
  // mu_i = 1/X_i; base Einstein iff r_1/mu_1 = r_2/mu_2
  return std::fabs(r1 * x1 - r2 * x2) < 1e-9;
}

// Einstein forces equal parameters within n_1 and within n_2.  With
// nu = 1/mu^2 the k-th component of sum_j nu_j C_{n_{1,j}} is
//   P_k = (k-1)/k nu_{k-1} + sum_{j>=k} nu_j/(j(j+1))
// and P(p) in k needs P_1 = ... = P_p.
struct FormReduction {
  bool reduced = false;
  Rational mu1, mu2;
  int block = 0;    // 1 or 2 when rejected
  int witness = 0;  // mu_{block,witness} != mu_{block,witness+1}
};

inline FormReduction kowalski_form_reduction(const std::vector<Rational>& mu1, const std::vector<Rational>& mu2) {
  for (const auto& m : mu1)
    if (m <= 0) throw invalid_input("form reduction: parameters must be positive");
  for (const auto& m : mu2)
    if (m <= 0) throw invalid_input("form reduction: parameters must be positive");
  if (mu1.empty() || mu2.empty()) throw invalid_input("form reduction: each block needs a parameter");
  FormReduction out;
  auto scan = [](const std::vector<Rational>& mu) -> int {
    const int m = static_cast<int>(mu.size());  // p - 1 summands
    std::vector<Rational> nu;
    for (const auto& x : mu) nu.push_back(1 / (x * x));
    auto P = [&](int k) {
      Rational v = 0;
      if (k >= 2) v += Rational(k - 1, k) * nu[k - 2];
      for (int j = k; j <= m; ++j) v += nu[j - 1] / Rational(j * (j + 1));
      return v;
    };
    for (int k = 2; k <= m; ++k)
      if (P(k + 1) != P(k)) return k - 1;
    return 0;
  };
  if (int w = scan(mu1)) {
    out.block = 1;
    out.witness = w;
    return out;
  }
  if (int w = scan(mu2)) {
    out.block = 2;
    out.witness = w;
    return out;
  }
  out.reduced = true;
  out.mu1 = mu1[0];
  out.mu2 = mu2[0];
  return out;
}

}  // namespace bisym
