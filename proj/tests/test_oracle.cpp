// matrix realisations of small compact algebras against the root-string formulas
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bisym/catalog_data.hpp"
#include "bisym/oracle.hpp"

#include <map>
#include <random>

using namespace bisym;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::parse(embedded::catalog_json);
  return c;
}

const std::vector<LieFamily>& small_algebras() {
  static const std::vector<LieFamily> v = {{Family::A, 2}, {Family::A, 3}, {Family::B, 2}, {Family::B, 3},
                                           {Family::C, 3}, {Family::D, 4}, {Family::G2, 2}};
  return v;
}

const CompactForm& form(const LieFamily& g) {
  static std::map<std::string, CompactForm> cache;
  auto it = cache.find(g.str());
  if (it == cache.end()) it = cache.emplace(g.str(), build_compact_form(g)).first;
  return it->second;
}

int expected_dim(const LieFamily& g) { return g.rank + root_system(g).size(); }

}  // namespace

TEST_CASE("construction: dimension, Jacobi, Killing = -I") {
  for (const auto& g : small_algebras()) {
    CAPTURE(g.str());
    const auto& F = form(g);
    CHECK(F.dim == expected_dim(g));
    CHECK(F.jacobi_residual <= 1e-9);
    CHECK(F.antisymmetry_residual <= 1e-9);
    // recompute the Killing form here rather than trusting the stored one
    double worst = 0;
    for (int i = 0; i < F.dim; ++i)
      for (int j = i; j < F.dim; ++j) {
        double k = (F.ad[i] * F.ad[j]).trace();
        worst = std::max(worst, std::fabs(k + (i == j ? 1.0 : 0.0)));
      }
    CHECK(worst <= 1e-9);
  }
  CHECK(form({Family::G2, 2}).dim == 14);
  CHECK(form({Family::D, 4}).dim == 28);
}

TEST_CASE("Jacobi identity on random triples") {
  for (const auto& g : small_algebras()) {
    const auto& F = form(g);
    std::mt19937 rng(3);
    std::normal_distribution<double> nd;
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd a(F.dim), b(F.dim), c(F.dim);
      for (int i = 0; i < F.dim; ++i) a[i] = nd(rng), b[i] = nd(rng), c[i] = nd(rng);
      Eigen::VectorXd j = F.bracket(a, F.bracket(b, c)) + F.bracket(b, F.bracket(c, a)) + F.bracket(c, F.bracket(a, b));
      CHECK(j.norm() <= 1e-9 * (1 + a.norm() * b.norm() * c.norm()));
    }
  }
}

TEST_CASE("structure constants: |N_{a,b}|^2 = q(1-p)/2 |a|^2") {
  for (const auto& g : small_algebras()) {
    CAPTURE(g.str());
    auto r = check_structure_constants(form(g));
    CHECK(r.pairs > 0);
    CHECK(r.max_error <= 1e-9);
  }
  // A2: every long root, |a|^2 = 1/3, string (0, 1): 1/6
  CHECK(root_system({Family::A, 2}).long_length2() / 2 == Rational(1, 6));
}

TEST_CASE("full Casimir is the identity") {
  for (const auto& g : small_algebras()) {
    const auto& F = form(g);
    std::vector<int> all(F.sys->size());
    for (int i = 0; i < F.sys->size(); ++i) all[i] = i;
    Eigen::MatrixXd C = casimir_matrix(F, all, true);
    CHECK((C - Eigen::MatrixXd::Identity(F.dim, F.dim)).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("spot values") {
  auto clusters = [](const std::string& label, Bindings b) {
    auto t = make_instance(catalog(), label, b);
    auto a = audit_instance(form(t.family()), t);
    CHECK(a.ok());
    return a.b_clusters;
  };
  auto g21 = clusters("cpg21", {});
  REQUIRE(g21.size() == 1);
  REQUIRE(g21[0].size() == 1);
  CHECK(g21[0][0] == doctest::Approx(0.125).epsilon(1e-9));

  // the printed value for this row is 1/6; the operator has two eigenvalues
  auto g22 = clusters("cpg22", {});
  REQUIRE(g22[0].size() == 2);
  CHECK(g22[0][0] == doctest::Approx(1.0 / 8).epsilon(1e-9));
  CHECK(g22[0][1] == doctest::Approx(7.0 / 24).epsilon(1e-9));

  auto b3 = clusters("cpbn3", {{"n", 3}, {"p", 1}});
  REQUIRE(b3[0].size() == 1);
  CHECK(b3[0][0] == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("audit every applicable catalog instance") {
  int audited = 0;
  for (const auto& t : enumerate_triples(catalog(), {}, 4)) {
    if (!oracle_supported(t.family())) continue;
    CAPTURE(t.id());
    auto a = audit_instance(form(t.family()), t);
    CHECK(a.casimir_error <= 1e-9);
    CHECK(a.gamma_error <= 1e-9);
    CHECK(a.c_l_error <= 1e-9);
    CHECK(a.c_kn_error <= 1e-9);
    CHECK(a.additivity <= 1e-9);
    CHECK(a.trace_error <= 1e-6);
    // symbolic eigenvalue sets agree with the numeric clusters
    auto rep = eigenvalue_report(t).first;
    for (int k = 0; k < rep.s(); ++k) {
      auto sym = rep.b_values(k);
      REQUIRE(sym.size() == a.b_clusters[k].size());
      for (size_t i = 0; i < sym.size(); ++i) CHECK(a.b_clusters[k][i] == doctest::Approx(to_double(sym[i])).epsilon(1e-9));
    }
    ++audited;
  }
  CHECK(audited > 30);
}

TEST_CASE("unsupported algebras are refused") {
  CHECK_FALSE(oracle_supported({Family::E8, 8}));
  CHECK_FALSE(oracle_supported({Family::F4, 4}));
  CHECK_FALSE(oracle_supported({Family::A, 5}));
  CHECK_THROWS(build_compact_form({Family::E6, 6}));
}
