// numerics, expressions, root systems, Casimir eigenvalues, catalog
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bisym/catalog.hpp"
#include "bisym/catalog_data.hpp"

#include <unsupported/Eigen/Polynomials>

#include <random>

using namespace bisym;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::parse(embedded::catalog_json);
  return c;
}

}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("rationals parse and print in lowest terms") {
    CHECK(to_string(parse_rational("6/8")) == "3/4");
    CHECK(to_string(parse_rational("-4/2")) == "-2");
    CHECK(to_string(rat(0)) == "0");
    CHECK_THROWS(parse_rational("1/0"));
  }

  TEST_CASE("big integers do not overflow") {
    Rational x = 1;
    for (int i = 0; i < 40; ++i) x *= Rational(1000003, 7);
    Rational y = x;
    for (int i = 0; i < 40; ++i) y /= Rational(1000003, 7);
    CHECK(y == 1);
  }

  TEST_CASE("square roots pull out square factors") {
    QuadSurd s = sqrt_exact(Rational(8));
    CHECK(s.radicand() == 2);
    CHECK(s.surd_coefficient() == 2);
    CHECK(sqrt_exact(Rational(9, 4)).is_rational());
    CHECK(sqrt_exact(Rational(9, 4)) == QuadSurd(Rational(3, 2)));
    CHECK(sqrt_exact(Rational(2, 9)).str() == "(√2)/3");
    CHECK_THROWS(sqrt_exact(Rational(-1)));
  }

  TEST_CASE("surd arithmetic agrees with doubles") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> u(-9, 9);
    for (int t = 0; t < 200; ++t) {
      Integer d = std::vector<int>{2, 3, 5, 6, 7, 22}[t % 6];
      QuadSurd a(Rational(u(rng), 3), Rational(u(rng), 2), d), b(Rational(u(rng), 5), Rational(u(rng) | 1, 7), d);
      double x = a.to_double(), y = b.to_double();
      CHECK((a + b).to_double() == doctest::Approx(x + y));
      CHECK((a * b).to_double() == doctest::Approx(x * y));
      if (b.sign() != 0) CHECK((a / b).to_double() == doctest::Approx(x / y));
      CHECK(((a < b) == (x < y)));
      CHECK(a.sign() == (x > 0) - (x < 0));
    }
  }

  TEST_CASE("surds render as (a±b√d)/c") {
    QuadSurd x = (QuadSurd(Rational(6)) + sqrt_exact(Rational(22))) / QuadSurd(Rational(2));
    CHECK(x.pm_str() == "(6±√22)/2");
    QuadSurd y = (QuadSurd(Rational(9)) - sqrt_exact(Rational(8))) / QuadSurd(Rational(14));
    CHECK(y.str() == "(9-2√2)/14");
  }

  TEST_CASE("quadratics are solved exactly") {
    auto r = solve_quadratic(1, -3, 2);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == QuadSurd(Rational(1)));
    CHECK(r[1] == QuadSurd(Rational(2)));
    CHECK(solve_quadratic(1, 0, 1).empty());
    auto s = solve_quadratic(1, -2, -1);
    REQUIRE(s.size() == 2);
    CHECK(s[1].to_double() == doctest::Approx(1 + std::sqrt(2.0)));
  }

  TEST_CASE("polynomial division and gcd") {
    RatPolynomial p{-1, 0, 1};  // z^2 - 1
    RatPolynomial q{1, 1};      // z + 1
    auto [quo, rem] = RatPolynomial::divmod(p, q);
    CHECK(rem.is_zero());
    CHECK(quo == RatPolynomial{-1, 1});
    RatPolynomial r = p * RatPolynomial{2, 1};
    CHECK(RatPolynomial::gcd(r, p * RatPolynomial{3, 1}).monic() == p.monic());
  }

  TEST_CASE("Sturm isolation matches an eigenvalue root finder") {
    // the companion-matrix solver in Eigen is the independent reference
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> u(-20, 20);
    for (int t = 0; t < 60; ++t) {
      int deg = 2 + t % 4;
      std::vector<Rational> c;
      Eigen::VectorXd ce(deg + 1);
      for (int i = 0; i <= deg; ++i) {
        int v = u(rng);
        if (i == deg && v == 0) v = 1;
        c.emplace_back(v);
        ce[i] = v;
      }
      RatPolynomial P(c);
      Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(ce);
      std::vector<double> ref;
      for (const auto& z : solver.roots())
        if (std::fabs(z.imag()) < 1e-7 * std::max(1.0, std::abs(z))) ref.push_back(z.real());
      std::sort(ref.begin(), ref.end());
      auto iso = isolate_real_roots(P.squarefree_part());
      // near-double roots can fool the float solver; only compare clean cases
      bool clean = true;
      for (size_t i = 1; i < ref.size(); ++i) clean = clean && ref[i] - ref[i - 1] > 1e-4;
      if (!clean) continue;
      REQUIRE(iso.size() == ref.size());
      for (size_t i = 0; i < ref.size(); ++i) CHECK(iso[i].value == doctest::Approx(ref[i]).epsilon(1e-8));
    }
  }

  TEST_CASE("isolation respects the domain and refinement") {
    RatPolynomial P{-2, 0, 1};  // roots ±√2
    auto pos = isolate_real_roots(P, Domain::positive());
    REQUIRE(pos.size() == 1);
    CHECK(pos[0].value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(to_double(pos[0].hi - pos[0].lo) < 1e-12);
    CHECK(isolate_real_roots(P).size() == 2);
  }
}

TEST_SUITE("expressions") {
  TEST_CASE("evaluation") {
    CHECK(eval_expr("(106-63*p+7*p^2)/162", {{"p", 3}}) == Rational(-20, 162));
    CHECK(eval_expr("p*(9-p)/72", {{"p", 7}}) == Rational(14, 72));
    CHECK(eval_expr("-1/(2*p+1)", {{"p", 2}}) == Rational(-1, 5));
    CHECK_THROWS(eval_expr("n+1", {}));
    CHECK_THROWS(eval_expr("1/(n-n)", {{"n", 3}}));
  }

  TEST_CASE("constraints") {
    CHECK(eval_constraint("p in {1,3,5,7}", {{"p", 5}}));
    CHECK_FALSE(eval_constraint("p in {1,3,5,7}", {{"p", 4}}));
    CHECK(eval_constraint("n-p>=2", {{"n", 6}, {"p", 4}}));
    CHECK(eval_constraint("p==2*l", {{"p", 6}, {"l", 3}}));
  }

  TEST_CASE("grading patterns") {
    auto v = expand_pattern("1^p,0^(n-p)", {{"n", 5}, {"p", 2}});
    REQUIRE(v.size() == 5);
    CHECK(v[0] == 1);
    CHECK(v[1] == 1);
    CHECK(v[4] == 0);
    CHECK(expand_pattern("1/2^n", {{"n", 3}}) == std::vector<Rational>(3, Rational(1, 2)));
  }
}

TEST_SUITE("roots") {
  TEST_CASE("root counts") {
    for (int n = 1; n <= 8; ++n) CHECK(root_system({Family::A, n}).size() == n * (n + 1));
    for (int n = 2; n <= 8; ++n) CHECK(root_system({Family::B, n}).size() == 2 * n * n);
    for (int n = 3; n <= 8; ++n) CHECK(root_system({Family::C, n}).size() == 2 * n * n);
    for (int n = 4; n <= 8; ++n) CHECK(root_system({Family::D, n}).size() == 2 * n * (n - 1));
    CHECK(root_system({Family::G2, 2}).size() == 12);
    CHECK(root_system({Family::F4, 4}).size() == 48);
    CHECK(root_system({Family::E6, 6}).size() == 72);
    CHECK(root_system({Family::E7, 7}).size() == 126);
    CHECK(root_system({Family::E8, 8}).size() == 240);
  }

  TEST_CASE("Killing normalisation: long roots have |a|^2 = 1/h*") {
    const std::pair<LieFamily, int> cases[] = {{{Family::A, 3}, 4}, {{Family::B, 3}, 5}, {{Family::C, 3}, 4},
                                               {{Family::D, 5}, 8}, {{Family::G2, 2}, 4}, {{Family::F4, 4}, 9},
                                               {{Family::E8, 8}, 30}};
    for (const auto& [g, h] : cases) CHECK(root_system(g).long_length2() == Rational(1, h));
  }

  TEST_CASE("sum of squared root lengths equals the rank") {
    // tr ad(H)^2 = B(H,H) summed over an orthonormal basis of the torus
    for (auto g : {LieFamily{Family::B, 4}, LieFamily{Family::G2, 2}, LieFamily{Family::E6, 6}}) {
      const auto& sys = root_system(g);
      Rational t = 0;
      for (int i = 0; i < sys.size(); ++i) t += sys.length2(i);
      CHECK(t == g.rank);
    }
  }

  TEST_CASE("string symmetry: p + q = -<phi, alpha^vee>, length at most 4") {
    for (auto g : {LieFamily{Family::B, 3}, LieFamily{Family::C, 4}, LieFamily{Family::G2, 2},
                   LieFamily{Family::F4, 4}, LieFamily{Family::E6, 6}}) {
      const auto& sys = root_system(g);
      for (int phi = 0; phi < sys.size(); ++phi)
        for (int a = 0; a < sys.size(); ++a) {
          if (a == phi || a == sys.neg(phi)) continue;
          auto [p, q] = sys.root_string(phi, a);
          Rational cartan = 2 * Rational(sys.dot4(phi, a)) / Rational(sys.dot4(a, a));
          CHECK(Rational(p + q) == -cartan);
          CHECK(q - p <= 3);
          // reversing alpha reverses the string
          auto [p2, q2] = sys.root_string(phi, sys.neg(a));
          CHECK(p2 == -q);
          CHECK(q2 == -p);
          CHECK(d_coefficient(p, q) == d_coefficient(p2, q2));
        }
    }
  }

  TEST_CASE("d coefficients") {
    CHECK(d_coefficient(0, 0) == 0);
    CHECK(d_coefficient(0, 1) == 1);
    CHECK(d_coefficient(-1, 0) == 1);
    CHECK(d_coefficient(-1, 1) == 4);
    CHECK(d_coefficient(0, 3) == 3);
    CHECK(d_coefficient(-1, 2) == 7);
    CHECK_THROWS(d_coefficient(1, 2));
  }

  TEST_CASE("half-sum over positives equals quarter-sum over the whole subset") {
    const auto& sys = root_system({Family::F4, 4});
    std::vector<int> S;
    for (int i = 0; i < sys.size(); ++i)
      if (sys.length2(i) == sys.long_length2()) S.push_back(i);
    auto sub = make_subset(sys, "long", S);
    for (int phi = 0; phi < sys.size(); ++phi)
      if (!sub.contains(phi)) CHECK(casimir_on_root(sys, sub, phi) == casimir_full(sys, S, phi));
  }

  TEST_CASE("casimir of the whole algebra is the identity on every root") {
    for (auto g : {LieFamily{Family::A, 4}, LieFamily{Family::D, 5}, LieFamily{Family::G2, 2}, LieFamily{Family::E7, 7}}) {
      const auto& sys = root_system(g);
      std::vector<int> all(sys.size());
      for (int i = 0; i < sys.size(); ++i) all[i] = i;
      // the torus and the pair ±phi each add |phi|^2 to the other roots' share
      for (int phi = 0; phi < sys.size(); ++phi) {
        CHECK(casimir_full(sys, all, phi) + 2 * sys.length2(phi) == 1);
      }
    }
  }

  TEST_CASE("dual Coxeter numbers from subsystems") {
    const auto& sys = root_system({Family::E7, 7});
    std::vector<int> all(sys.size());
    for (int i = 0; i < sys.size(); ++i) all[i] = i;
    auto t = classify_subsystem(sys, all);
    CHECK(t.hstar == 18);
    CHECK(t.type.family == Family::E7);
  }
}

TEST_SUITE("casimir") {
  TEST_CASE("spot values") {
    auto rep = [](const std::string& label, Bindings b) {
      return eigenvalue_report(make_instance(catalog(), label, b)).first;
    };
    for (long p : {1, 3, 5, 7}) {
      auto r = rep("cpf41", {{"p", p}});
      CHECK(r.b_values(0) == ValueSet{Rational(p * (9 - p), 72)});
    }
    for (long p = 1; p <= 4; ++p) CHECK(rep("cpe81", {{"p", p}}).b_values(0) == ValueSet{Rational(p * (8 - p), 60)});
    CHECK(rep("cpg21", {}).b_values(0) == ValueSet{Rational(1, 8)});
    CHECK(rep("cpbn3", {{"n", 3}, {"p", 1}}).b_values(0) == ValueSet{Rational(1, 10)});
    // gamma = h*(k_a) / (delta h*(g))
    CHECK(rep("cpe81", {{"p", 1}}).p[0].gamma == Rational(7, 15));
  }

  TEST_CASE("identities over the catalog, rank <= 8") {
    int instances = 0;
    for (const auto& t : enumerate_triples(catalog(), {}, 8)) {
      auto [rep, disc] = eigenvalue_report(t);
      ++instances;
      CAPTURE(t.id());
      // c_{k,n} = 1/2 on a symmetric base
      CHECK(rep.c_kn() == ValueSet{Rational(1, 2)});
      for (const auto& f : rep.p) {
        // gamma from the strings equals h*(k_a) / (delta h*(g))
        CHECK(f.gamma == f.gamma_strings);
        // C_g = C_k + sum_j C_{n_j} = Id on p_a
        Rational s = f.gamma;
        for (const auto& c : f.c_n) {
          REQUIRE(c.size() == 1);
          s += c[0];
        }
        CHECK(s == 1);
        CHECK(f.trace_n == (1 - f.gamma) * f.dim);
      }
      // C_l + C_p = C_k on n, summand by summand
      for (const auto& h : rep.n) {
        REQUIRE(h.c_k.size() == 1);
        Rational bsum = 0;
        for (const auto& b : h.b) {
          REQUIRE(b.size() == 1);
          bsum += b[0];
        }
        REQUIRE(h.c_l.size() == 1);
        CHECK(h.c_l[0] + bsum == h.c_k[0]);
      }
    }
    CHECK(instances > 1000);
  }
}

TEST_SUITE("catalog") {
  TEST_CASE("round trip") {
    auto text = catalog().serialize();
    auto again = Catalog::parse(text);
    CHECK(again.serialize() == text);
    CHECK(nlohmann::json::parse(text) == nlohmann::json::parse(embedded::catalog_json));
    CHECK(catalog().records().size() == 55);
  }

  TEST_CASE("every record has the fields the tools rely on") {
    for (const auto& r : catalog().records()) {
      CAPTURE(r.label);
      CHECK(!r.table.empty());
      CHECK((r.type == "I" || r.type == "II"));
      CHECK(static_cast<int>(r.gamma.size()) == r.s());
      CHECK((!r.b.empty() || !r.cases.empty()));
    }
  }

  TEST_CASE("constraints are enforced") {
    CHECK_THROWS_AS(make_instance(catalog(), "cpf41", {{"p", 2}}), invalid_parameter);
    CHECK_THROWS_AS(make_instance(catalog(), "cpbn3", {{"n", 3}}), invalid_parameter);
    CHECK_THROWS_AS(make_instance(catalog(), "nosuch", {}), not_found);
    CHECK_NOTHROW(make_instance(catalog(), "cpbn3", {{"n", 3}, {"p", 1}}));
  }

  TEST_CASE("enumeration is deterministic and bounded") {
    TripleFilter f;
    f.family = "B";
    auto a = enumerate_triples(catalog(), f, 6), b = enumerate_triples(catalog(), f, 6);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].id() == b[i].id());
      CHECK(a[i].family().rank <= 6);
    }
  }

  TEST_CASE("isotropy decomposition has the right sizes") {
    // cpbn3: so_{2n+1} > so_{2n} > so_{2p+1} + so_{2n-2p-1}; Type I
    auto t = make_instance(catalog(), "cpbn3", {{"n", 4}, {"p", 1}});
    auto d = decompose_isotropy(t);
    const auto& sys = root_system(t.family());
    CHECK(d.Rp.size() == 1);
    CHECK(d.Rl.size() + d.Rp[0].size() + d.Rn.size() == sys.size());
  }
}
