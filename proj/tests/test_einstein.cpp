// Einstein adapted metrics on bisymmetric fibrations and Kowalski spaces
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bisym/catalog_data.hpp"
#include "bisym/einstein.hpp"
#include "bisym/kowalski.hpp"

using namespace bisym;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::parse(embedded::catalog_json);
  return c;
}

EinsteinInput computed(const std::string& label, Bindings b = {}) {
  auto t = make_instance(catalog(), label, b);
  return input_from_report(t, eigenvalue_report(t).first);
}

EinsteinInput printed(const std::string& label, Bindings b = {}) {
  return input_from_table(make_instance(catalog(), label, b));
}

std::vector<QuadSurd> binormal_X(const SolveResult& r) {
  std::vector<QuadSurd> xs;
  for (const auto& s : r.solutions) xs.push_back(*s.X[0].exact);
  std::sort(xs.begin(), xs.end());
  return xs;
}

std::vector<QuadSurd> pm(const Rational& a, const Rational& d, const Rational& den) {
  QuadSurd sq = sqrt_exact(d);
  return {(QuadSurd(a) - sq) / QuadSurd(den), (QuadSurd(a) + sq) / QuadSurd(den)};
}

Rational at_one(const RatPolynomial& p) {
  Rational v = 0;
  for (const auto& c : p.coefficients()) v += c;
  return v;
}

QuadSurd q(long a, long b = 1) { return QuadSurd(Rational(a, b)); }

const std::vector<TripleInstance>& instances() {
  static const auto v = enumerate_triples(catalog(), {}, 8);
  return v;
}

}  // namespace

TEST_SUITE("type I") {
  TEST_CASE("f4 / sp3+su2 / sp3+R has X in {1/2, 4}") {
    auto r = solve_binormal(computed("cpf42"));
    CHECK(binormal_X(r) == std::vector<QuadSurd>{q(1, 2), q(4)});
    for (const auto& s : r.solutions) CHECK(s.verified);
  }

  TEST_CASE("g2 row under the printed eigenvalues") {
    auto in = printed("cpg22");
    CHECK(in.gamma[0] == Rational(1, 6));
    auto r = solve_binormal(in);
    REQUIRE(r.discriminants.size() == 1);
    CHECK(r.discriminants[0].value == Rational(11, 18));
    CHECK(binormal_X(r) == pm(6, 22, 2));
  }

  TEST_CASE("g2 row is not scalar with the computed eigenvalues") {
    auto in = computed("cpg22");
    CHECK_FALSE(in.scalar());
    CHECK(solve_binormal(in).solutions.empty());
  }

  TEST_CASE("e8 rows: X = (15 ± sqrt(7p^2 - 56p + 113))/14") {
    for (long p = 1; p <= 4; ++p) {
      CAPTURE(p);
      auto r = solve_binormal(computed("cpe81", {{"p", p}}));
      CHECK(binormal_X(r) == pm(15, 7 * p * p - 56 * p + 113, 14));
    }
  }

  TEST_CASE("nonexistence from the sign of Delta'") {
    auto check = [](const EinsteinInput& in, Rational expect) {
      auto r = solve_binormal(in);
      CHECK(r.solutions.empty());
      REQUIRE(r.discriminants.size() == 1);
      CHECK(r.discriminants[0].value == expect);
    };
    check(computed("cpe88"), Rational(-2, 25));
    check(computed("cpe62", {{"p", 4}}), Rational(-1, 9));
    for (long p : {3, 5}) {
      auto r = solve_binormal(computed("cpf41", {{"p", p}}));
      CHECK(r.solutions.empty());
      CHECK(r.discriminants.at(0).sign() < 0);
    }
    // and no positive metric is Einstein there
    auto in = computed("cpe88");
    for (double lam : {0.1, 0.5, 1.0, 2.0, 7.0}) CHECK_FALSE(ricci_verify(in, {lam}, 1.0).is_einstein);
  }

  TEST_CASE("Type I rows have two solutions when Delta' > 0") {
    int rows = 0;
    for (const auto& t : instances()) {
      if (t.rec->type != "I") continue;
      auto in = input_from_report(t, eigenvalue_report(t).first);
      if (!in.scalar()) continue;
      auto r = solve_binormal(in);
      int sign = r.discriminants.at(0).sign();
      CAPTURE(t.id());
      CHECK(static_cast<int>(r.solutions.size()) == (sign > 0 ? 2 : sign == 0 ? 1 : 0));
      ++rows;
    }
    CHECK(rows > 200);
  }
}

TEST_SUITE("type II") {
  TEST_CASE("cpcn7: Delta' = -1/(2p+1)") {
    // gamma_1 = gamma_2 needs n = 2p
    for (long p = 2; p <= 6; ++p) {
      auto r = solve_binormal(computed("cpcn7", {{"n", 2 * p}, {"p", p}}));
      CHECK(r.solutions.empty());
      CHECK(r.discriminants.at(0).value == Rational(-1, 2 * p + 1));
    }
  }

  TEST_CASE("sqrt(2) obstruction when gamma_1 != gamma_2") {
    int seen = 0;
    for (const auto& t : instances()) {
      if (t.rec->type != "II") continue;
      auto in = input_from_report(t, eigenvalue_report(t).first);
      if (!in.scalar() || in.gamma[0] == in.gamma[1]) continue;
      ++seen;
      CAPTURE(t.id());
      CHECK(solve_binormal(in).solutions.empty());
      // equal fiber ratios force lambda/mu = sqrt 2; the horizontal ratio then differs
      QuadSurd lam(Rational(0), Rational(1), 2), mu(Rational(1));
      auto r = ricci_ratios_t<QuadSurd>(in, {lam, lam}, mu);
      CHECK(r[0] == r[1]);
      CHECK_FALSE(r[2] == r[0]);
    }
    CHECK(seen > 50);
  }

  TEST_CASE("binormal solutions appear in the general system") {
    for (const auto& t : instances()) {
      if (t.rec->type != "II") continue;
      auto in = input_from_report(t, eigenvalue_report(t).first);
      if (!in.scalar() || in.gamma[0] != in.gamma[1]) continue;
      auto bin = solve_binormal(in);
      auto all = solve_all(in);
      CAPTURE(t.id());
      for (const auto& b : bin.solutions) {
        double x = b.X[0].approx;
        bool found = std::any_of(all.solutions.begin(), all.solutions.end(), [&](const EinsteinSolution& s) {
          return std::fabs(s.X[0].approx - x) < 1e-9 && std::fabs(s.X[1].approx - x) < 1e-9;
        });
        CHECK(found);
        // X1 = X2 = x is a root of the eliminant
        CHECK(std::fabs(type2_eliminant(in).eval(x)) < 1e-9);
      }
    }
  }

  TEST_CASE("fiber-Einstein closed forms solve the full system exactly") {
    for (const auto& t : instances()) {
      if (t.rec->type != "II") continue;
      auto in = input_from_report(t, eigenvalue_report(t).first);
      if (!in.scalar()) continue;
      for (const auto& s : solve_type2_fiber_einstein(in).solutions) {
        if (s.binormal) continue;
        CAPTURE(t.id());
        const QuadSurd x1 = *s.X[0].exact, x2 = *s.X[1].exact;
        // lambda_a = 1/X_a, mu = 1
        auto r = ricci_ratios_t<QuadSurd>(in, {x1.inverse(), x2.inverse()}, q(1));
        CHECK(r[0] == r[1]);
        CHECK(r[1] == r[2]);
      }
    }
  }

  TEST_CASE("general solution counts under the printed eigenvalues") {
    struct Case {
      std::string label;
      Bindings b;
      size_t count;
    };
    const Case cases[] = {{"cpg23", {}, 2},           {"cpe65", {{"p", 1}}, 4}, {"cpe75", {{"p", 2}}, 4},
                          {"cpe75", {{"p", 4}}, 2},   {"cpe75", {{"p", 6}}, 2}, {"cpe89", {}, 0}};
    for (const auto& c : cases) {
      CAPTURE(c.label);
      auto r = solve_all(printed(c.label, c.b));
      CHECK(r.solutions.size() == c.count);
      for (const auto& s : r.solutions) CHECK(s.verified);
    }
    auto r = solve_all(printed("cpe65", {{"p", 1}}));
    REQUIRE(!r.solutions.empty());
    CHECK(r.solutions[0].X[0].approx == doctest::Approx(0.3702).epsilon(1e-3));
    CHECK(r.solutions[0].X[1].approx == doctest::Approx(4.6215).epsilon(1e-3));
  }

  TEST_CASE("cpe89: neither the printed quartic nor the eliminant has a positive root") {
    RatPolynomial quartic{464, -1395, 1198, -195, 9};
    CHECK(isolate_real_roots(quartic, Domain::positive()).empty());
    auto in = printed("cpe89");
    CHECK(isolate_real_roots(type2_eliminant(in), Domain::positive()).empty());
    CHECK(solve_all(in).note.find("no admissible positive root") != std::string::npos);
  }

  TEST_CASE("every emitted solution is Einstein") {
    int checked = 0;
    for (const auto& t : instances()) {
      auto in = input_from_report(t, eigenvalue_report(t).first);
      if (!in.scalar()) continue;
      for (const auto& s : solve_all(in).solutions) {
        CAPTURE(t.id());
        CHECK(s.verified);
        std::vector<double> lam;
        for (const auto& x : s.X) lam.push_back(1 / x.approx);
        CHECK(ricci_verify(in, lam, 1.0, 1e-9).is_einstein);
        ++checked;
      }
    }
    CHECK(checked > 400);
  }
}

TEST_SUITE("metrics") {
  TEST_CASE("homothety leaves Einstein unchanged and scales the constant by 1/t") {
    auto in = computed("cpf42");
    const Rational ts[] = {Rational(1, 3), Rational(2), Rational(7, 5)};
    for (const auto& s : solve_binormal(in).solutions) {
      QuadSurd lam = s.X[0].exact->inverse();
      auto base = ricci_ratios_t<QuadSurd>(in, {lam}, q(1));
      for (const auto& t : ts) {
        auto r = ricci_ratios_t<QuadSurd>(in, {lam * QuadSurd(t)}, QuadSurd(t));
        CHECK(r[0] == r[1]);
        CHECK(r[0] == base[0] / QuadSurd(t));
      }
    }
    // and a non-Einstein metric stays non-Einstein
    for (const auto& t : ts) {
      auto r = ricci_ratios_t<QuadSurd>(in, {QuadSurd(3 * t)}, QuadSurd(t));
      CHECK_FALSE(r[0] == r[1]);
    }
  }

  TEST_CASE("cpf42 at X = 4 has equal ratios") {
    auto in = computed("cpf42");
    auto r = ricci_ratios_t<QuadSurd>(in, {q(1)}, q(4));
    CHECK(r[0] == r[1]);
  }

  TEST_CASE("standard metric is Einstein exactly when C_l is scalar on the fiber") {
    for (const auto& t : instances()) {
      auto in = input_from_report(t, eigenvalue_report(t).first);
      if (!in.scalar()) continue;
      std::vector<QuadSurd> ones(in.s(), q(1));
      auto r = ricci_ratios_t<QuadSurd>(in, ones, q(1));
      bool einstein = std::all_of(r.begin(), r.end(), [&](const QuadSurd& x) { return x == r[0]; });
      // with lambda = mu = 1 the horizontal ratio is 1/2 - sum b / 2 and the fiber ratio 1/4 + gamma/4
      Rational bsum = 0;
      for (int a = 0; a < in.s(); ++a) bsum += in.b_of(a);
      bool scalar_cl = std::all_of(in.gamma.begin(), in.gamma.end(), [&](const Rational& g) { return g == in.gamma[0]; }) &&
                       1 - bsum == (1 + in.gamma[0]) / 2;
      CAPTURE(t.id());
      CHECK(einstein == scalar_cl);
    }
  }

  TEST_CASE("circle bundles: X = 1/2 + 1/m") {
    for (long m = 2; m <= 200; m += 2) CHECK(solve_circle_bundle(m) == Rational(1, 2) + Rational(1, m));
    CHECK(solve_circle_bundle(32) == Rational(17, 32));
    CHECK(solve_circle_bundle(54) == Rational(14, 27));
    CHECK_THROWS(solve_circle_bundle(0));
  }

  TEST_CASE("forced ratios") {
    auto c = einstein_base_fiber_constraints({Rational(1, 3), Rational(2, 3)}, {});
    CHECK_FALSE(c.fiber_unconstrained);
    CHECK(c.base_unconstrained);
    CHECK(c.fiber.at(1) == 2);
    auto k = kowalski_eigenvalues(KowalskiSpace(6, 2));
    auto d = einstein_base_fiber_constraints({}, {k.b1, k.b2});
    CHECK(d.base.at(1) == sqrt_exact(k.b2 / k.b1));
    CHECK(d.base.at(1) == q(1, 2));  // p/q
    CHECK(einstein_base_fiber_constraints({Rational(1, 2)}, {Rational(1, 4)}).fiber_unconstrained);
    CHECK(einstein_base_fiber_constraints({Rational(0), Rational(1)}, {}).degenerate);
  }
}

TEST_SUITE("kowalski") {
  TEST_CASE("eigenvalues") {
    auto e = kowalski_eigenvalues(KowalskiSpace(6, 2));
    CHECK(e.b1 == Rational(1, 3));
    CHECK(e.b2 == Rational(1, 12));
    CHECK(e.gamma == Rational(5, 12));
    auto f = kowalski_eigenvalues(KowalskiSpace(4, 2));
    CHECK(f.b1 == Rational(1, 4));
    CHECK(f.b2 == Rational(1, 4));
    CHECK(f.gamma == Rational(1, 2));
    for (int n = 4; n <= 20; ++n)
      for (int p = 2; 2 * p <= n; ++p) {
        auto g = kowalski_eigenvalues(KowalskiSpace(n, p));
        CHECK(g.c_k1 - g.c_lp == g.b1);
        CHECK(g.c_k2 - g.c_lp == g.b2);
        // C_g = Id on p, and gamma is C_k there (C_l included)
        CHECK(g.gamma + g.c_n1p + g.c_n2p == 1);
      }
    CHECK_THROWS_AS(KowalskiSpace(5, 1), invalid_input);
    CHECK_THROWS_AS(KowalskiSpace(6, 4), invalid_input);
  }

  TEST_CASE("binormal sets") {
    CHECK(kowalski_binormal(KowalskiSpace(8, 4)) == std::vector<QuadSurd>{q(1), q(2)});
    CHECK(kowalski_binormal(KowalskiSpace(6, 2)) == std::vector<QuadSurd>{q(1)});
    CHECK(kowalski_binormal(KowalskiSpace(4, 2)) == std::vector<QuadSurd>{q(1)});
    for (int n = 5; n <= 20; ++n)
      for (int p = 2; 2 * p <= n; ++p) {
        auto b = kowalski_binormal(KowalskiSpace(n, p));
        if (2 * p == n)
          CHECK(b == std::vector<QuadSurd>{q(1), q(n, 4)});
        else
          CHECK(b == std::vector<QuadSurd>{q(1)});
      }
  }

  TEST_CASE("n = 4: the standard metric is the only one") {
    auto sols = kowalski_solve(KowalskiSpace(4, 2));
    REQUIRE(sols.size() == 1);
    CHECK(sols[0].standard);
    CHECK(sols[0].einstein_ratio == doctest::Approx(3.0 / 8));
  }

  TEST_CASE("(6,2,4): two solutions, cubic root inside (1/2, 3/2)") {
    KowalskiSpace s(6, 2);
    CHECK(at_one(kowalski_cubic(s)) == 72);
    auto sols = kowalski_solve(s);
    REQUIRE(sols.size() == 2);
    const auto& k = sols[1];
    REQUIRE(k.X1.root);
    CHECK(k.X1.root->lo > Rational(1, 2));
    CHECK(k.X1.root->hi < Rational(3, 2));
    CHECK(to_double(k.X1.root->hi - k.X1.root->lo) <= 1e-12);
    CHECK(k.verified);
  }

  TEST_CASE("(8,4,4): the nonstandard solution is the binormal one") {
    auto sols = kowalski_solve(KowalskiSpace(8, 4));
    REQUIRE(sols.size() == 2);
    CHECK(sols[1].X1.exact == q(1, 2));
    CHECK(sols[1].X2.exact == q(1, 2));
    CHECK(sols[1].binormal);
  }

  TEST_CASE("grid: cubic, interval, Ricci system, base Einstein iff p = q and binormal") {
    for (int n = 4; n <= 20; ++n)
      for (int p = 2; 2 * p <= n; ++p) {
        KowalskiSpace s(n, p);
        const int q = n - p;
        CAPTURE(n);
        CAPTURE(p);
        auto t = kowalski_cubic(s);
        CHECK(at_one(t) == Rational(p * (q + 2) * (q - 1) * (n - 4)));
        CHECK(isolate_real_roots(t.derivative()).empty());
        auto sols = kowalski_solve(s);
        CHECK(sols.size() == (n == 4 ? 1u : 2u));
        CHECK(sols[0].einstein_ratio == doctest::Approx(0.25 + 0.5 / n));
        for (const auto& k : sols) {
          CHECK(k.verified);
          if (!k.standard) {
            CHECK(k.X1.approx > double(n) / (q * (p + 1)));
            CHECK(k.X1.approx < double(n) / q);
          }
          CHECK(kowalski_base_einstein(s, k.X1.approx, k.X2.approx) == (p == q && k.binormal));
        }
      }
  }

  TEST_CASE("form reduction") {
    auto r = kowalski_form_reduction({Rational(2), Rational(2)}, {Rational(3)});
    CHECK(r.reduced);
    CHECK(r.mu1 == 2);
    auto w = kowalski_form_reduction({Rational(1), Rational(2), Rational(2)}, {Rational(1)});
    CHECK_FALSE(w.reduced);
    CHECK(w.block == 1);
    CHECK(w.witness == 1);
    auto v = kowalski_form_reduction({Rational(1)}, {Rational(1), Rational(1), Rational(5)});
    CHECK(v.block == 2);
    CHECK(kowalski_form_reduction({Rational(1)}, {Rational(4)}).reduced);
    CHECK_THROWS(kowalski_form_reduction({Rational(0)}, {Rational(1)}));
  }
}
