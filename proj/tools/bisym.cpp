// bisym: tables, solvers and verification for bisymmetric triples.
//
//   bisym list [--family B] [--type II] [--table eigIclass]
//   bisym table mIexc --format md
//   bisym solve cpe75 --p 4
//   bisym solve kowalski --n 8 --p 4
//   bisym verify cpg22 --oracle
//   bisym verify --all
//
// Exit codes: 0 clean, 1 unexplained mismatch, 2 usage, 3 unsupported.

#include "bisym/allowlist_data.hpp"
#include "bisym/catalog_data.hpp"
#include "bisym/kowalski.hpp"
#include "bisym/output.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace bisym;

namespace {

enum Exit { kClean = 0, kMismatch = 1, kUsage = 2, kUnsupported = 3 };

struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "md";
  int rank_bound = 12;
  bool oracle = false;
  std::string allowlist;
  std::optional<long> n, p, l, s;
  std::string eigenvalues = "auto";
  std::string family, type, table;
  std::string selector, label;
  bool all = false;
};

Allowlist load_allowlist(const Options& o) {
  if (o.allowlist.empty()) return Allowlist::parse(embedded::allowlist_json);
  std::ifstream in(o.allowlist);
  if (!in) throw usage_error("cannot read allowlist " + o.allowlist);
  std::stringstream ss;
  ss << in.rdbuf();
  return Allowlist::parse(ss.str());
}

Bindings bindings_of(const Options& o) {
  Bindings b;
  if (o.n) b["n"] = *o.n;
  if (o.p) b["p"] = *o.p;
  if (o.l) b["l"] = *o.l;
  if (o.s) b["s"] = *o.s;
  return b;
}

std::string coord_str(const Coord& c) {
  if (c.exact && !c.exact->is_rational()) return c.exact->str() + " ≈ " + fixed4(c.approx);
  return c.str();
}

// ---------------------------------------------------------------------------

int cmd_list(const Catalog& cat, const Options& o) {
  TripleFilter f;
  if (!o.family.empty()) f.family = o.family;
  if (!o.type.empty()) f.type = o.type;
  if (!o.table.empty()) f.table = o.table;
  OutputDoc d{"Catalog triples", {"label", "params", "type", "g", "k", "l", "table"}, {}, {}};
  for (const auto& t : enumerate_triples(cat, f, o.rank_bound))
    d.rows.push_back({t.rec->label, t.param_string(), t.rec->type, t.rec->g, t.rec->k, t.rec->l, t.rec->table});
  d.notes.push_back(std::to_string(d.rows.size()) + " instances with rank <= " + std::to_string(o.rank_bound));
  render(std::cout, d, parse_format(o.format));
  return kClean;
}

int cmd_table(const Catalog& cat, const Options& o) {
  if (canonical_table_name(o.selector).empty()) {
    std::string known;
    for (const auto& n : table_names()) known += " " + n;
    throw usage_error("unknown table '" + o.selector + "'; known:" + known);
  }
  TableOptions to{o.rank_bound, o.oracle, std::nullopt};
  auto doc = build_table(cat, o.selector, to, load_allowlist(o));
  render(std::cout, to_output(doc, o.oracle), parse_format(o.format));
  return doc.unexplained() ? kMismatch : kClean;
}

int solve_kowalski(const Options& o) {
  if (!o.n || !o.p) throw usage_error("solve kowalski needs --n and --p");
  KowalskiSpace s(static_cast<int>(*o.n), static_cast<int>(*o.p));
  auto e = kowalski_eigenvalues(s);
  OutputDoc d{"Einstein adapted metrics on " + s.id(), {"#", "kind", "X1", "X2", "einstein_ratio", "verified"}, {}, {}};
  int i = 0;
  for (const auto& k : kowalski_solve(s))
    d.rows.push_back({std::to_string(++i), k.standard ? "standard" : (k.binormal ? "binormal" : "nonstandard"),
                      coord_str(k.X1), coord_str(k.X2), fixed4(k.einstein_ratio), k.verified ? "yes" : "NO"});
  std::string bn;
  for (const auto& y : kowalski_binormal(s)) bn += (bn.empty() ? "" : ", ") + y.str();
  d.notes.push_back("binormal Einstein metrics, mu/lambda in {" + bn + "}");
  d.notes.push_back("X = lambda/mu; b1 = " + to_string(e.b1) + ", b2 = " + to_string(e.b2) +
                    ", gamma = " + to_string(e.gamma));
  if (s.n > 4) d.notes.push_back("cubic t(Z) = " + kowalski_cubic(s).str("Z"));
  render(std::cout, d, parse_format(o.format));
  return kClean;
}

std::string delta_symbol(const std::string& tag) {
  if (tag == "Delta'") return "Δ′";
  if (tag == "Delta") return "Δ";
  return tag;
}

int cmd_solve(const Catalog& cat, const Options& o) {
  if (o.label == "kowalski") return solve_kowalski(o);
  if (!cat.has(o.label)) throw usage_error("unknown triple label '" + o.label + "'");
  TripleInstance t = make_instance(cat, o.label, bindings_of(o));

  std::optional<EinsteinInput> in;
  std::string source;
  if (o.eigenvalues != "table") {
    auto [rep, disc] = eigenvalue_report(t);
    EinsteinInput r = input_from_report(t, rep);
    if (r.scalar() || o.eigenvalues == "roots") {
      in = r;
      source = "root-computed eigenvalues";
    }
  }
  if (!in) {
    in = input_from_table(t);
    source = o.eigenvalues == "table" ? "printed eigenvalues" : "printed eigenvalues (C_p is not scalar on n)";
  }
  SolveResult res = solve_all(*in);

  OutputDoc d{"Einstein adapted metrics on " + t.id(), {"#", "branch", "X1"}, {}, {}};
  if (in->s() == 2) d.columns.push_back("X2");
  d.columns.insert(d.columns.end(), {"einstein_ratio", "verified"});
  int i = 0;
  for (const auto& s : res.solutions) {
    std::vector<std::string> row = {std::to_string(++i), s.branch.empty() ? "general" : s.branch, coord_str(s.X[0])};
    if (in->s() == 2) row.push_back(coord_str(s.X[1]));
    row.insert(row.end(), {fixed4(s.einstein_ratio), s.verified ? "yes" : "NO"});
    d.rows.push_back(std::move(row));
  }
  d.notes.push_back("eigenvalues: " + source);
  for (const auto& x : res.discriminants) d.notes.push_back(delta_symbol(x.tag) + " = " + to_string(x.value));
  if (res.solutions.empty()) {
    std::string msg = "no real Einstein adapted metric";
    for (const auto& x : res.discriminants)
      if (x.sign() < 0) {
        msg += "; " + delta_symbol(x.tag) + "=" + to_string(x.value);
        break;
      }
    if (msg.find(';') == std::string::npos && !res.note.empty()) msg += "; " + res.note;
    d.notes.push_back(msg);
  }
  if (res.complex_pairs) d.notes.push_back(std::to_string(res.complex_pairs) + " complex solution pairs not shown");
  // the printed eigenvalues can give a different system; show what it yields
  EinsteinInput printed = input_from_table(t);
  if (source.rfind("root", 0) == 0 && (printed.gamma != in->gamma || printed.b != in->b)) {
    std::string alt;
    for (const auto& s : solve_all(printed).solutions) {
      std::string x = s.X[0].str();
      if (s.X.size() > 1) x = "(" + x + ", " + s.X[1].str() + ")";
      alt += (alt.empty() ? "" : "; ") + x;
    }
    d.notes.push_back("with the printed eigenvalues instead: " + (alt.empty() ? std::string("none") : alt));
  }
  render(std::cout, d, parse_format(o.format));
  bool all_verified = std::all_of(res.solutions.begin(), res.solutions.end(), [](const auto& s) { return s.verified; });
  return all_verified ? kClean : kMismatch;
}

int cmd_verify(const Catalog& cat, const Options& o) {
  if (o.all == !o.label.empty()) throw usage_error("verify takes a label or --all");
  std::vector<std::string> tables;
  TableOptions to{o.rank_bound, o.oracle, std::nullopt};
  if (o.all) {
    tables = {"eigIexc", "eigIclass", "eigIIexc", "eigIIclass", "appendix"};
  } else {
    if (!cat.has(o.label)) throw usage_error("unknown triple label '" + o.label + "'");
    const auto& rec = cat.find(o.label);
    if (o.oracle) {
      TripleFilter f;
      f.label = o.label;
      auto inst = enumerate_triples(cat, f, o.rank_bound);
      bool any = std::any_of(inst.begin(), inst.end(), [](const auto& t) { return oracle_supported(t.family()); });
      if (!any)
        throw unsupported_error("the numeric oracle covers classical algebras of rank <= 4 and G2; " + o.label +
                                " lives in " + rec.g);
    }
    tables = {rec.table};
    to.label = o.label;
  }
  Allowlist allow = load_allowlist(o);
  OutputDoc d{"Discrepancy report", {"label", "params", "quantity", "published", "computed"}, {}, {}};
  if (o.oracle) d.columns.push_back("oracle");
  d.columns.insert(d.columns.end(), {"status", "note"});
  size_t checked = 0, known = 0, bad = 0;
  for (const auto& name : tables) {
    auto doc = build_table(cat, name, to, allow);
    checked += doc.rows.size();
    known += doc.count(RowStatus::KnownErratum);
    bad += doc.unexplained();
    for (const auto& r : doc.rows) {
      if (r.status == RowStatus::Match) continue;
      std::vector<std::string> row = {r.label, r.params, r.quantity, r.published, r.computed};
      if (o.oracle) row.push_back(r.oracle);
      row.insert(row.end(), {status_str(r.status), r.note});
      d.rows.push_back(std::move(row));
    }
  }
  d.notes.push_back(bad == 0 ? "clean: " + std::to_string(checked) + " quantities checked, " + std::to_string(known) +
                                   " known errata"
                             : std::to_string(bad) + " unexplained mismatches in " + std::to_string(checked) +
                                   " quantities");
  render(std::cout, d, parse_format(o.format));
  return bad ? kMismatch : kClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir eigenvalues and Einstein adapted metrics on bisymmetric fibrations"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* c) {
    c->add_option("--format", o.format, "json, csv or md")->check(CLI::IsMember({"json", "csv", "md"}));
    c->add_option("--rank-bound", o.rank_bound, "largest rank enumerated for classical families")
        ->check(CLI::Range(1, 64));
    c->add_option("--allowlist", o.allowlist, "known-discrepancy file (default: the shipped one)");
  };

  auto* list = app.add_subcommand("list", "enumerate catalog triples");
  common(list);
  list->add_option("--family", o.family, "A, B, C, D, E6, E7, E8, F4, G2");
  list->add_option("--type", o.type, "I or II");
  list->add_option("--table", o.table, "eigenvalue table name");

  auto* table = app.add_subcommand("table", "regenerate a table next to its printed values");
  common(table);
  table->add_option("selector", o.selector, "table name")->required();
  table->add_flag("--oracle", o.oracle, "add the numeric oracle's clusters to eigenvalue tables");

  auto* solve = app.add_subcommand("solve", "all Einstein adapted metrics of one triple");
  common(solve);
  solve->add_option("label", o.label, "catalog label or 'kowalski'")->required();
  solve->add_option("--eigenvalues", o.eigenvalues, "roots, table or auto")
      ->check(CLI::IsMember({"roots", "table", "auto"}));

  auto* verify = app.add_subcommand("verify", "recompute eigenvalues and report discrepancies");
  common(verify);
  verify->add_option("label", o.label, "catalog label");
  verify->add_flag("--all", o.all, "every eigenvalue table");
  verify->add_flag("--oracle", o.oracle, "arbitrate with the numeric oracle where it applies");

  for (auto* c : {solve}) {
    c->add_option("--n", o.n);
    c->add_option("--p", o.p);
    c->add_option("--l", o.l);
    c->add_option("--s", o.s);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    auto cat = Catalog::parse(embedded::catalog_json);
    if (list->parsed()) return cmd_list(cat, o);
    if (table->parsed()) return cmd_table(cat, o);
    if (solve->parsed()) return cmd_solve(cat, o);
    return cmd_verify(cat, o);
  } catch (const usage_error& e) {
    std::cerr << "bisym: " << e.what() << "\n";
    return kUsage;
  } catch (const invalid_parameter& e) {
    std::cerr << "bisym: " << e.what() << "\n";
    return kUsage;
  } catch (const invalid_input& e) {
    std::cerr << "bisym: " << e.what() << "\n";
    return kUsage;
  } catch (const not_found& e) {
    std::cerr << "bisym: " << e.what() << "\n";
    return kUsage;
  } catch (const unsupported_error& e) {
    std::cerr << "bisym: unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::exception& e) {
    std::cerr << "bisym: " << e.what() << "\n";
    return kMismatch;
  }
}
