#pragma once
// Einstein adapted metrics g = sum_a lambda_a B|p_a + mu B|n on G/L for a
// bisymmetric fibration with symmetric fiber and irreducible symmetric base.
//
// Unknowns are X_a = mu / lambda_a.  With mu = 1 the Ricci ratios are
//   fiber a:     (gamma_a/2 + (1 - gamma_a)/(4 X_a^2)) X_a
//   horizontal:  r - (1/2) sum_a b_a / X_a,           r = c_{k,n} = 1/2.

#include "bisym/casimir.hpp"
#include "bisym/catalog.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace bisym {

// eigenvalue data the solvers consume; either computed or tabulated
struct EinsteinInput {
  std::string id;
  std::vector<Rational> gamma;
  std::vector<ValueSet> b;  // C_{p_a} on n, one value when scalar
  Rational c_kn = Rational(1, 2);
  std::vector<Rational> c_lp;  // C_l on p_a; gamma_a/2 for a symmetric fiber

  int s() const { return static_cast<int>(gamma.size()); }
  bool scalar() const {
    return std::all_of(b.begin(), b.end(), [](const ValueSet& v) { return v.size() == 1; });
  }
  Rational b_of(int a) const {
    if (b[a].size() != 1) throw invalid_input(id + ": C_p" + std::to_string(a + 1) + " is not scalar on n");
    return b[a][0];
  }
  Rational r() const { return c_kn; }
};

inline EinsteinInput symmetric_input(std::string id, std::vector<Rational> gamma, std::vector<ValueSet> b) {
  EinsteinInput in{std::move(id), std::move(gamma), std::move(b), Rational(1, 2), {}};
  for (const auto& g : in.gamma) in.c_lp.push_back(g / 2);
  return in;
}

inline EinsteinInput input_from_report(const TripleInstance& t, const EigenvalueReport& rep) {
  std::vector<Rational> g;
  std::vector<ValueSet> b;
  for (int a = 0; a < rep.s(); ++a) {
    g.push_back(rep.p[a].gamma);
    b.push_back(rep.b_values(a));
  }
  EinsteinInput in = symmetric_input(t.id(), g, b);
  auto ckn = rep.c_kn();
  if (ckn.size() == 1) in.c_kn = ckn[0];
  in.c_lp.clear();
  for (const auto& f : rep.p) in.c_lp.push_back(f.c_l.size() == 1 ? f.c_l[0] : f.gamma / 2);
  return in;
}

inline EinsteinInput input_from_table(const TripleInstance& t) {
  auto e = tabulated(t);
  return symmetric_input(t.id(), e.gamma, e.b);
}

// ---------------------------------------------------------------------------

struct DiscriminantReport {
  std::string tag;  // "Delta", "Delta'", "D(gamma1)"
  Rational value;
  int sign() const { return value.sign(); }
  int solution_count() const { return sign() > 0 ? 2 : sign() == 0 ? 1 : 0; }
};

// exact or certified value of one unknown
struct Coord {
  std::optional<QuadSurd> exact;
  std::optional<IsolatedRoot> root;
  double approx = 0;

  static Coord of(const QuadSurd& q) { return {q, std::nullopt, q.to_double()}; }
  static Coord of(const IsolatedRoot& r) { return {std::nullopt, r, r.value}; }
  static Coord numeric(double v) { return {std::nullopt, std::nullopt, v}; }
  std::string str() const;
};

inline std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

inline std::string Coord::str() const { return exact ? exact->str() : fixed4(approx); }

struct EinsteinSolution {
  std::string id;
  std::vector<Coord> X;  // X_a = mu/lambda_a
  bool binormal = false, fiber_einstein = false, standard = false;
  std::string branch;
  bool verified = false;
  double einstein_ratio = 0;  // Einstein constant with mu = 1
};

struct SolveResult {
  std::vector<DiscriminantReport> discriminants;
  std::vector<EinsteinSolution> solutions;
  std::string note;  // why nothing exists, when that is the answer
  int complex_pairs = 0;
};

// ---------------------------------------------------------------------------
// Ricci ratios

struct RicciCheck {
  std::vector<double> ratios;  // fiber a = 0..s-1, then horizontal
  bool is_einstein = false;
};

template <class T>
std::vector<T> ricci_ratios_t(const EinsteinInput& in, const std::vector<T>& lambda, const T& mu) {
  std::vector<T> out;
  const T one(Rational(1));
  for (int a = 0; a < in.s(); ++a) {
    T g(in.gamma[a]);
    out.push_back((g / T(Rational(2)) + lambda[a] * lambda[a] * (one - g) / (T(Rational(4)) * mu * mu)) / lambda[a]);
  }
  T h(in.r());
  for (int a = 0; a < in.s(); ++a) h = h - lambda[a] * T(in.b_of(a)) / (T(Rational(2)) * mu);
  out.push_back(h / mu);
  return out;
}

// exact test
inline bool ricci_verify_exact(const EinsteinInput& in, const std::vector<QuadSurd>& lambda, const QuadSurd& mu,
                               std::vector<QuadSurd>* ratios = nullptr) {
  for (const auto& l : lambda)
    if (l.sign() <= 0) throw invalid_input("ricci_verify: non-positive lambda");
  if (mu.sign() <= 0) throw invalid_input("ricci_verify: non-positive mu");
  auto r = ricci_ratios_t<QuadSurd>(in, lambda, mu);
  if (ratios) *ratios = r;
  for (const auto& x : r)
    if (!(x == r[0])) return false;
  return true;
}

inline RicciCheck ricci_verify(const EinsteinInput& in, const std::vector<double>& lambda, double mu,
                               double tol = 1e-9) {
  for (double l : lambda)
    if (!(l > 0)) throw invalid_input("ricci_verify: non-positive lambda");
  if (!(mu > 0)) throw invalid_input("ricci_verify: non-positive mu");
  struct D {
    double v;
    D(double x) : v(x) {}  // NOLINT
    D(const Rational& x) : v(to_double(x)) {}  // NOLINT
    D operator+(D o) const { return v + o.v; }
    D operator-(D o) const { return v - o.v; }
    D operator*(D o) const { return v * o.v; }
    D operator/(D o) const { return v / o.v; }
  };
  std::vector<D> l(lambda.begin(), lambda.end());
  auto r = ricci_ratios_t<D>(in, l, D(mu));
  RicciCheck c;
  for (auto x : r) c.ratios.push_back(x.v);
  c.is_einstein = true;
  for (double x : c.ratios)
    if (std::fabs(x - c.ratios[0]) > tol * std::max(1.0, std::fabs(c.ratios[0]))) c.is_einstein = false;
  return c;
}

namespace detail {

// lambda_a = 1/X_a, mu = 1
inline void finish_exact(const EinsteinInput& in, EinsteinSolution& s, const std::vector<QuadSurd>& X) {
  std::vector<QuadSurd> lam;
  for (const auto& x : X) {
    s.X.push_back(Coord::of(x));
    lam.push_back(x.inverse());
  }
  std::vector<QuadSurd> ratios;
  s.verified = ricci_verify_exact(in, lam, QuadSurd(Rational(1)), &ratios);
  s.einstein_ratio = ratios.back().to_double();
}

inline void finish_numeric(const EinsteinInput& in, EinsteinSolution& s) {
  std::vector<double> lam;
  for (const auto& x : s.X) lam.push_back(1.0 / x.approx);
  auto c = ricci_verify(in, lam, 1.0);
  s.verified = c.is_einstein;
  s.einstein_ratio = c.ratios.back();
}

inline bool positive(const QuadSurd& q) { return q.sign() > 0; }

}  // namespace detail

// ---------------------------------------------------------------------------

// binormal metrics: all lambda equal.  Type II needs gamma_1 = gamma_2.
inline SolveResult solve_binormal(const EinsteinInput& in) {
  SolveResult out;
  if (!in.scalar()) {
    out.note = "C_p is not scalar on n";
    return out;
  }
  if (in.s() == 2 && in.gamma[0] != in.gamma[1]) {
    // C_k would have to be scalar on p; with gamma_1 != gamma_2 that forces
    // sqrt(2) to be rational
    out.note = "gamma_1 != gamma_2, no binormal Einstein metric";
    return out;
  }
  Rational g = in.gamma[0], b = 0, clp = in.c_lp[0];
  for (int a = 0; a < in.s(); ++a) b += in.b_of(a);
  bool sym = in.c_kn == Rational(1, 2) && clp == g / 2;
  QuadSurd sq;
  Rational lead, mid;
  if (sym) {
    Rational d = 1 - 2 * g * (1 - g + 2 * b);
    out.discriminants.push_back({"Delta'", d});
    if (d < 0) {
      out.note = "Delta' = " + to_string(d) + " < 0";
      out.complex_pairs = 1;
      return out;
    }
    sq = sqrt_exact(d);
    mid = 1;
    lead = 2 * g;
  } else {
    Rational k = 1 + 2 * in.c_kn, c = g + 2 * clp;
    Rational d = k * k - 4 * c * (1 - g + 2 * b);
    out.discriminants.push_back({"Delta", d});
    if (d < 0) {
      out.note = "Delta = " + to_string(d) + " < 0";
      out.complex_pairs = 1;
      return out;
    }
    sq = sqrt_exact(d);
    mid = k;
    lead = 2 * c;
  }
  std::vector<QuadSurd> roots{(QuadSurd(mid) - sq) / QuadSurd(lead), (QuadSurd(mid) + sq) / QuadSurd(lead)};
  if (sq == QuadSurd()) roots.pop_back();
  for (const auto& x : roots) {
    if (!detail::positive(x)) continue;
    EinsteinSolution s;
    s.id = in.id;
    s.binormal = true;
    s.fiber_einstein = true;
    s.standard = x == QuadSurd(Rational(1));
    s.branch = "binormal";
    detail::finish_exact(in, s, std::vector<QuadSurd>(in.s(), x));
    out.solutions.push_back(s);
  }
  return out;
}

// circle bundle over an irreducible Hermitian symmetric space, m = dim G/K
inline Rational solve_circle_bundle(long m, const Rational& c_kn = Rational(1, 2)) {
  if (m <= 0) throw invalid_input("solve_circle_bundle: m must be positive");
  return Rational(2 + m) / (Rational(m) * (1 + 2 * c_kn));
}

// Type II metrics whose fiber metric is Einstein: gamma_2 in {gamma_1, 1-gamma_1}
inline SolveResult solve_type2_fiber_einstein(const EinsteinInput& in) {
  SolveResult out;
  if (in.s() != 2) throw invalid_input(in.id + ": fiber-Einstein solver needs two fiber summands");
  if (!in.scalar()) {
    out.note = "C_p_a is not scalar on n";
    return out;
  }
  const Rational g1 = in.gamma[0], g2 = in.gamma[1], b1 = in.b_of(0), b2 = in.b_of(1), r = in.r();
  auto add = [&](const QuadSurd& x1, const QuadSurd& x2, const std::string& branch) {
    if (!detail::positive(x1) || !detail::positive(x2)) return;
    for (const auto& s : out.solutions)
      if (*s.X[0].exact == x1 && *s.X[1].exact == x2) return;
    EinsteinSolution s;
    s.id = in.id;
    s.fiber_einstein = true;
    s.binormal = x1 == x2;
    s.standard = s.binormal && x1 == QuadSurd(Rational(1));
    s.branch = branch;
    detail::finish_exact(in, s, {x1, x2});
    out.solutions.push_back(s);
  };
  auto pm = [](const Rational& a, const Rational& d, const Rational& den, std::vector<QuadSurd>& xs) {
    QuadSurd sq = sqrt_exact(d);
    xs.push_back((QuadSurd(a) - sq) / QuadSurd(den));
    if (!(sq == QuadSurd())) xs.push_back((QuadSurd(a) + sq) / QuadSurd(den));
  };
  bool matched = false;
  if (g1 == g2) {
    matched = true;
    auto bin = solve_binormal(in);
    for (auto& d : bin.discriminants) out.discriminants.push_back(d);
    for (auto& s : bin.solutions) add(*s.X[0].exact, *s.X[1].exact, "binormal");
    const Rational g = g1;
    Rational D = 4 * r * r * (1 - g) - 2 * g * (2 * b2 + 1 - g) * (2 * b1 + 1 - g);
    out.discriminants.push_back({"D(gamma1)", D});
    if (D >= 0) {
      std::vector<QuadSurd> xs;
      pm(2 * r * (1 - g), (1 - g) * D, 2 * g * (2 * b2 + 1 - g), xs);
      for (const auto& x1 : xs) add(x1, QuadSurd(1 - g) / (QuadSurd(2 * g) * x1), "equal-gamma");
    }
  }
  if (g2 == 1 - g1) {
    matched = true;
    Rational D = 4 * r * r - 4 * b1 * g1 - 4 * b2 * (1 - g1) - 2 * g1 * (1 - g1);
    out.discriminants.push_back({"D(gamma1)", D});
    if (D >= 0) {
      std::vector<QuadSurd> xs;
      pm(2 * r, D, 2 * g1, xs);
      for (const auto& x1 : xs) add(x1, QuadSurd(g1) * x1 / QuadSurd(1 - g1), "complementary");
    }
    Rational D2 = 4 * r * r - 2 * (2 * b2 + g1) * (2 * b1 + 1 - g1);
    out.discriminants.push_back({"D'(gamma1)", D2});
    if (D2 >= 0) {
      std::vector<QuadSurd> xs;
      pm(2 * r, D2, 2 * (2 * b2 + g1), xs);
      for (const auto& x1 : xs) add(x1, QuadSurd(Rational(1)) / (QuadSurd(Rational(2)) * x1), "complementary-product");
    }
  }
  if (!matched) out.note = "gamma_2 is neither gamma_1 nor 1 - gamma_1";
  else if (out.solutions.empty()) out.note = "all discriminants negative";
  return out;
}

// X_2 eliminated through the horizontal equation:
//   X_2 = -2 b_2 X_1 / Dn,  Dn = 2 g1 X1^2 - 4 r X1 + 2 b1 + 1 - g1
// and substituted into the fiber equation.
inline RatPolynomial type2_eliminant(const EinsteinInput& in) {
  const Rational g1 = in.gamma[0], g2 = in.gamma[1], b1 = in.b_of(0), b2 = in.b_of(1), r = in.r();
  RatPolynomial Dn(std::vector<Rational>{2 * b1 + 1 - g1, -4 * r, 2 * g1});
  RatPolynomial A(std::vector<Rational>{1 - g1, 0, 2 * g1});
  RatPolynomial x2(std::vector<Rational>{0, 0, 8 * g2 * b2 * b2});
  return (2 * b2) * Dn * A + x2 + (1 - g2) * Dn * Dn;
}

struct general_solver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline SolveResult solve_type2_general(const EinsteinInput& in) {
  SolveResult out;
  if (in.s() != 2) throw invalid_input(in.id + ": general Type II solver needs two fiber summands");
  if (!in.scalar()) {
    out.note = "C_p_a is not scalar on n";
    return out;
  }
  const Rational g1 = in.gamma[0], b1 = in.b_of(0), b2 = in.b_of(1), r = in.r();
  if (b2 == 0) throw general_solver_error(in.id + ": b_2 = 0, elimination degenerates");
  RatPolynomial P = type2_eliminant(in);
  if (P.is_zero()) throw general_solver_error(in.id + ": eliminant vanishes identically");
  SturmChain chain(P.squarefree_part());
  int real = chain.count_real();
  out.complex_pairs = (P.squarefree_part().degree() - real) / 2;
  RatPolynomial Dn(std::vector<Rational>{2 * b1 + 1 - g1, -4 * r, 2 * g1});
  for (const auto& root : isolate_real_roots(P, Domain::positive())) {
    double x1 = root.value, dn = Dn.eval(x1);
    if (dn == 0) continue;
    double x2 = -2 * to_double(b2) * x1 / dn;
    if (!(x2 > 0)) continue;
    EinsteinSolution s;
    s.id = in.id;
    s.branch = "general";
    s.X = {Coord::of(root), Coord::numeric(x2)};
    detail::finish_numeric(in, s);
    s.binormal = std::fabs(x1 - x2) < 1e-9;
    out.solutions.push_back(s);
  }
  if (out.solutions.empty()) out.note = "eliminant " + P.str("X1") + " has no admissible positive root";
  return out;
}

// forced ratios: lambda_a/lambda_b = q_a/q_b on the fiber,
// mu_j/mu_k = sqrt(b^j/b^k) on the base
struct RatioConstraints {
  bool fiber_unconstrained = true, base_unconstrained = true, degenerate = false;
  std::vector<Rational> fiber;   // lambda_a / lambda_0
  std::vector<QuadSurd> base;    // mu_j / mu_0
};

inline RatioConstraints einstein_base_fiber_constraints(const std::vector<Rational>& q_fiber,
                                                        const std::vector<Rational>& b_base) {
  RatioConstraints c;
  if (q_fiber.size() > 1) {
    c.fiber_unconstrained = false;
    if (q_fiber[0] == 0)
      c.degenerate = true;
    else
      for (const auto& q : q_fiber) c.fiber.push_back(q / q_fiber[0]);
  }
  if (b_base.size() > 1) {
    c.base_unconstrained = false;
    if (b_base[0] == 0)
      c.degenerate = true;
    else
      for (const auto& b : b_base) {
        if (b < 0) throw invalid_input("einstein_base_fiber_constraints: negative eigenvalue");
        c.base.push_back(sqrt_exact(b / b_base[0]));
      }
  }
  return c;
}

inline RatioConstraints einstein_base_fiber_constraints(const EinsteinInput& in) {
  return einstein_base_fiber_constraints(in.gamma, {});
}

// every Einstein adapted metric the catalog machinery can produce for one input
inline SolveResult solve_all(const EinsteinInput& in) {
  if (in.s() == 1) return solve_binormal(in);
  SolveResult out = solve_type2_general(in);
  auto fe = solve_type2_fiber_einstein(in);
  out.discriminants = fe.discriminants;
  // tag general solutions that coincide with a closed form
  for (auto& s : out.solutions)
    for (const auto& f : fe.solutions)
      if (std::fabs(s.X[0].approx - f.X[0].approx) < 1e-9 && std::fabs(s.X[1].approx - f.X[1].approx) < 1e-9) {
        s = f;
        break;
      }
  return out;
}

}  // namespace bisym
