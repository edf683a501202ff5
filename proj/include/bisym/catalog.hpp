#pragma once
// Catalog of irreducible bisymmetric triples (g, k, l) of maximal rank.
//
// Each record carries two grading vectors.  With H_k and H_l expanded from
// the pattern strings,
//   R_k = { a : <a, H_k> in 2Z },   R_l = { a in R_k : <a, H_l> in 2Z },
// and <a, H_l> must be an integer on all of R_k.

#include "bisym/casimir.hpp"
#include "bisym/expr.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bisym {

struct not_found : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct ExpectedCase {
  std::string when;
  std::vector<std::vector<std::string>> b;
};

struct TripleRecord {
  std::string label, table, family, rank, g, k, l, type;
  std::vector<std::string> params, constraints;
  std::string subset_k, subset_l;
  std::vector<std::string> gamma;
  std::vector<std::vector<std::string>> b;  // empty when cases are used
  std::vector<ExpectedCase> cases;
  std::optional<std::string> scalar_condition;
  std::optional<bool> four_symmetric;

  int s() const { return type == "I" ? 1 : 2; }
};

class Catalog {
 public:
  using json = nlohmann::ordered_json;

  static Catalog parse(const std::string& text) {
    Catalog c;
    json doc = json::parse(text);
    if (!doc.is_array()) throw parse_error("catalog: top level must be an array");
    for (const auto& j : doc) c.records_.push_back(from_json(j));
    return c;
  }

  std::string serialize() const {
    json doc = json::array();
    for (const auto& r : records_) doc.push_back(to_json(r));
    return doc.dump(2) + "\n";
  }

  const std::vector<TripleRecord>& records() const { return records_; }

  const TripleRecord& find(const std::string& label) const {
    for (const auto& r : records_)
      if (r.label == label) return r;
    throw not_found("unknown triple label '" + label + "'");
  }
  bool has(const std::string& label) const {
    for (const auto& r : records_)
      if (r.label == label) return true;
    return false;
  }

 private:
  std::vector<TripleRecord> records_;

  static std::vector<std::string> strings(const json& j) { return j.get<std::vector<std::string>>(); }

  static TripleRecord from_json(const json& j) {
    TripleRecord r;
    r.label = j.at("label");
    r.table = j.at("table");
    r.family = j.at("family");
    r.rank = j.at("rank");
    r.g = j.at("g");
    r.k = j.at("k");
    r.l = j.at("l");
    r.type = j.at("type");
    if (r.type != "I" && r.type != "II") throw parse_error(r.label + ": type must be I or II");
    r.params = strings(j.at("params"));
    r.constraints = strings(j.at("constraints"));
    r.subset_k = j.at("subsets").at("k");
    r.subset_l = j.at("subsets").at("l");
    const auto& e = j.at("expected");
    r.gamma = strings(e.at("gamma"));
    if (e.contains("b")) r.b = e.at("b").get<std::vector<std::vector<std::string>>>();
    if (e.contains("cases"))
      for (const auto& c : e.at("cases"))
        r.cases.push_back({c.at("when"), c.at("b").get<std::vector<std::vector<std::string>>>()});
    if (r.b.empty() == r.cases.empty()) throw parse_error(r.label + ": need exactly one of expected.b, expected.cases");
    if (static_cast<int>(r.gamma.size()) != r.s()) throw parse_error(r.label + ": gamma count does not match type");
    if (j.contains("scalar_condition")) r.scalar_condition = j.at("scalar_condition").get<std::string>();
    if (j.contains("fourSymmetric")) r.four_symmetric = j.at("fourSymmetric").get<bool>();
    return r;
  }

  static json to_json(const TripleRecord& r) {
    json j;
    j["label"] = r.label;
    j["table"] = r.table;
    j["family"] = r.family;
    j["rank"] = r.rank;
    j["g"] = r.g;
    j["k"] = r.k;
    j["l"] = r.l;
    j["type"] = r.type;
    j["params"] = r.params;
    j["constraints"] = r.constraints;
    j["subsets"] = json{{"k", r.subset_k}, {"l", r.subset_l}};
    json e;
    e["gamma"] = r.gamma;
    if (!r.b.empty()) e["b"] = r.b;
    if (!r.cases.empty()) {
      json cs = json::array();
      for (const auto& c : r.cases) cs.push_back(json{{"when", c.when}, {"b", c.b}});
      e["cases"] = cs;
    }
    j["expected"] = e;
    if (r.scalar_condition) j["scalar_condition"] = *r.scalar_condition;
    if (r.four_symmetric) j["fourSymmetric"] = *r.four_symmetric;
    return j;
  }
};

// ---------------------------------------------------------------------------

struct TripleInstance {
  const TripleRecord* rec = nullptr;
  Bindings params;

  LieFamily family() const {
    Family f = parse_family(rec->family);
    Rational r = eval_expr(rec->rank, params);
    return {f, num(r).convert_to<int>()};
  }
  int s() const { return rec->s(); }
  std::string param_string() const {
    std::string s;
    for (const auto& name : rec->params) {
      if (!s.empty()) s += ",";
      s += name + "=" + std::to_string(params.at(name));
    }
    return s;
  }
  std::string id() const {
    auto p = param_string();
    return p.empty() ? rec->label : rec->label + "(" + p + ")";
  }
  bool scalar_condition() const { return !rec->scalar_condition || eval_constraint(*rec->scalar_condition, params); }
};

inline std::optional<std::string> first_violation(const TripleRecord& r, const Bindings& b) {
  for (const auto& name : r.params)
    if (!b.count(name)) return "missing parameter " + name;
  for (const auto& [name, v] : b) {
    (void)v;
    if (std::find(r.params.begin(), r.params.end(), name) == r.params.end())
      return "unexpected parameter " + name;
  }
  for (const auto& c : r.constraints)
    if (!eval_constraint(c, b)) return c;
  return std::nullopt;
}

inline TripleInstance make_instance(const Catalog& cat, const std::string& label, const Bindings& b) {
  const auto& r = cat.find(label);
  if (auto v = first_violation(r, b)) throw invalid_parameter(label + ": constraint violated: " + *v);
  return {&r, b};
}

struct TripleFilter {
  std::optional<std::string> family, type, label, table;
};

// every valid parameter tuple with n <= rank_bound for classical families
inline std::vector<TripleInstance> enumerate_triples(const Catalog& cat, const TripleFilter& f, int rank_bound = 12) {
  if (f.label && !cat.has(*f.label)) throw not_found("unknown triple label '" + *f.label + "'");
  std::vector<TripleInstance> out;
  for (const auto& r : cat.records()) {
    if (f.family && r.family != *f.family) continue;
    if (f.type && r.type != *f.type) continue;
    if (f.label && r.label != *f.label) continue;
    if (f.table && r.table != *f.table) continue;
    const int hi = std::max(rank_bound, 16);
    Bindings b;
    // odometer over params; n bounded by rank_bound, the rest by a generous box
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == r.params.size()) {
        if (!first_violation(r, b)) out.push_back({&r, b});
        return;
      }
      const auto& name = r.params[i];
      int top = name == "n" ? rank_bound : hi;
      for (int v = 0; v <= top; ++v) {
        b[name] = v;
        rec(i + 1);
      }
      b.erase(name);
    };
    rec(0);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

inline bool even_integer(const Rational& x) { return den(x) == 1 && num(x) % 2 == 0; }

inline int min_support(const RootSystem& sys, const std::vector<int>& S) {
  int best = 1 << 20;
  for (int i : S) {
    const auto& k = sys.doubled(i);
    for (int c = 0; c < static_cast<int>(k.size()); ++c)
      if (k[c] != 0) {
        best = std::min(best, c);
        break;
      }
  }
  return best;
}

// lexicographic compare of doubled coordinates
inline bool lex_greater(const RootSystem& sys, int a, int b) { return sys.doubled(a) > sys.doubled(b); }

}  // namespace detail

struct TabulatedExpectation {
  std::vector<Rational> gamma;
  std::vector<ValueSet> b;
};

inline TabulatedExpectation tabulated(const TripleInstance& t) {
  TabulatedExpectation e;
  for (const auto& g : t.rec->gamma) e.gamma.push_back(eval_expr(g, t.params));
  const std::vector<std::vector<std::string>>* b = &t.rec->b;
  if (b->empty()) {
    b = nullptr;
    for (const auto& c : t.rec->cases)
      if (eval_constraint(c.when, t.params)) {
        b = &c.b;
        break;
      }
    if (!b) throw invalid_parameter(t.id() + ": no tabulated case applies");
  }
  for (const auto& row : *b) {
    ValueSet v;
    for (const auto& x : row) insert_value(v, eval_expr(x, t.params));
    e.b.push_back(v);
  }
  return e;
}

inline IsotropyDecomposition decompose_isotropy(const TripleInstance& t) {
  if (auto v = first_violation(*t.rec, t.params)) throw invalid_parameter(t.rec->label + ": constraint violated: " + *v);
  const RootSystem& sys = root_system(t.family());
  auto Hk = expand_pattern(t.rec->subset_k, t.params);
  auto Hl = expand_pattern(t.rec->subset_l, t.params);
  if (static_cast<int>(Hk.size()) != sys.ambient_dim() || static_cast<int>(Hl.size()) != sys.ambient_dim())
    throw data_integrity_error(t.id() + ": grading vector has wrong length");

  std::vector<int> rk, rl, rn, rp;
  for (int i = 0; i < sys.size(); ++i) {
    Rational hk = dot(sys.root(i), Hk);
    if (!detail::even_integer(hk)) {
      rn.push_back(i);
      continue;
    }
    rk.push_back(i);
    Rational hl = dot(sys.root(i), Hl);
    if (den(hl) != 1) throw data_integrity_error(t.id() + ": H_l not integral on R_k");
    (detail::even_integer(hl) ? rl : rp).push_back(i);
  }
  IsotropyDecomposition d;
  d.Rk = make_subset(sys, "R_k", rk);
  d.Rl = make_subset(sys, "R_l", rl);
  d.Rn = make_subset(sys, "R_n", rn);

  struct Piece {
    std::vector<int> p, ideal;
    Rational gamma;
    int support;
  };
  std::vector<Piece> pieces;
  for (auto& comp : simple_components(sys, rk)) {
    std::vector<int> x;
    for (int i : comp)
      if (std::binary_search(d.Rl.members.begin(), d.Rl.members.end(), i) == false) x.push_back(i);
    if (x.empty()) continue;
    auto ty = classify_subsystem(sys, comp);
    pieces.push_back({x, comp, gamma_eigenvalue(sys.family(), ty.type, ty.delta), detail::min_support(sys, comp)});
  }
  if (static_cast<int>(pieces.size()) != t.s())
    throw data_integrity_error(t.id() + ": found " + std::to_string(pieces.size()) + " fiber summands, expected " +
                               std::to_string(t.s()));
  std::sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) { return a.support < b.support; });
  if (pieces.size() == 2) {
    auto exp = tabulated(t).gamma;
    if (exp[0] != exp[1] && pieces[0].gamma == exp[1] && pieces[1].gamma == exp[0]) std::swap(pieces[0], pieces[1]);
  }
  for (size_t a = 0; a < pieces.size(); ++a) {
    d.Rp.push_back(make_subset(sys, "R_p" + std::to_string(a + 1), pieces[a].p));
    d.kIdeal.push_back(make_subset(sys, "R_k" + std::to_string(a + 1), pieces[a].ideal));
  }

  // L-summands of n: closure under adding roots of l, then with negatives
  std::vector<char> done(sys.size(), 0), in_n(sys.size(), 0);
  for (int i : rn) in_n[i] = 1;
  std::vector<std::pair<int, std::vector<int>>> parts;
  for (int start : rn) {
    if (done[start]) continue;
    std::vector<int> comp{start}, stack{start, sys.neg(start)};
    done[start] = 1;
    if (!done[sys.neg(start)]) {
      done[sys.neg(start)] = 1;
      comp.push_back(sys.neg(start));
    }
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int a : rl) {
        int y = sys.sum(x, a);
        if (y == RootSystem::npos || !in_n[y] || done[y]) continue;
        done[y] = 1;
        comp.push_back(y);
        stack.push_back(y);
        if (!done[sys.neg(y)]) {
          done[sys.neg(y)] = 1;
          comp.push_back(sys.neg(y));
          stack.push_back(sys.neg(y));
        }
      }
    }
    int rep = -1;
    for (int i : comp)
      if (sys.positive(i) && (rep < 0 || detail::lex_greater(sys, i, rep))) rep = i;
    parts.emplace_back(rep, comp);
  }
  std::sort(parts.begin(), parts.end(),
            [&](const auto& a, const auto& b) { return detail::lex_greater(sys, a.first, b.first); });
  for (size_t j = 0; j < parts.size(); ++j) {
    d.Rn_parts.push_back(make_subset(sys, "R_n" + std::to_string(j + 1), parts[j].second));
    d.representative.push_back(parts[j].first);
  }
  return d;
}

struct Discrepancy {
  std::string label, params, quantity, published, computed;
};

inline std::string set_str(const ValueSet& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : ", ") + to_string(x);
  return s;
}

inline std::pair<EigenvalueReport, std::vector<Discrepancy>> eigenvalue_report(const TripleInstance& t) {
  const RootSystem& sys = root_system(t.family());
  auto dec = decompose_isotropy(t);
  auto rep = eigenvalues(sys, dec);
  auto exp = tabulated(t);
  std::vector<Discrepancy> out;
  for (int a = 0; a < rep.s(); ++a) {
    std::string idx = rep.s() > 1 ? "_" + std::to_string(a + 1) : "";
    if (rep.p[a].gamma != exp.gamma[a])
      out.push_back({t.rec->label, t.param_string(), "gamma" + idx, to_string(exp.gamma[a]), to_string(rep.p[a].gamma)});
    auto b = rep.b_values(a);
    if (b != exp.b[a]) out.push_back({t.rec->label, t.param_string(), "b" + idx, set_str(exp.b[a]), set_str(b)});
  }
  return {rep, out};
}

}  // namespace bisym
