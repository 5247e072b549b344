// Command-line surface for the q-series engine: series expansion, graph
// series, identity verification, jet-algebra dimensions, and t -> 0+
// asymptotic checks. Exit codes: 0 success / all pass, 1 mathematical
// failure (a failing identity or asymptotic case), 2 usage or
// operational error.

#include "qgraph/asymptotics.hpp"
#include "qgraph/graph_series.hpp"
#include "qgraph/identities.hpp"
#include "qgraph/jet.hpp"
#include "qgraph/qseries.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace qgraph;

namespace {

std::string fmt_ld(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15Lg", x);
  return buf;
}

Rat parse_rat(const std::string& s) {
  try {
    return Rat(s);
  } catch (const std::exception&) {
    throw SeriesError("cannot parse rational: " + s);
  }
}

/// "builtin:NAME" or a path to a JSON file {"r":.., "edges":[[i,j,mult]..],
/// "b":[..]?, "denom_offset":[..]?} with 1-based node indices.
GraphSeriesSpec parse_graph_arg(const std::string& arg) {
  const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) == 0) return builtin(arg.substr(prefix.size()));
  std::ifstream in(arg);
  if (!in) throw SeriesError("cannot open graph file: " + arg);
  json j = json::parse(in);
  int r = j.at("r").get<int>();
  std::vector<std::array<int, 3>> edges;
  for (const auto& e : j.at("edges")) {
    if (e.size() == 2)
      edges.push_back({e[0].get<int>(), e[1].get<int>(), 1});
    else
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
  }
  GraphSeriesSpec spec = make_spec(from_edges(r, edges));
  if (j.contains("b")) {
    spec.b.clear();
    for (const auto& v : j.at("b")) spec.b.push_back(parse_rat(v.is_string()
                                                                  ? v.get<std::string>()
                                                                  : v.dump()));
  }
  if (j.contains("denom_offset")) {
    spec.denom_offset.clear();
    for (const auto& v : j.at("denom_offset")) spec.denom_offset.push_back(v.get<int>());
  }
  spec.validate();
  return spec;
}

Method parse_method(const std::string& m) {
  if (m == "auto") return Method::Auto;
  if (m == "enumerate") return Method::Enumerate;
  if (m == "tree-dp") return Method::TreeDp;
  throw SeriesError("unknown method: " + m);
}

RankMode parse_mode(const std::string& m) {
  if (m == "single-prime") return RankMode::SinglePrime;
  if (m == "dual-prime") return RankMode::DualPrime;
  if (m == "exact") return RankMode::ExactRational;
  throw SeriesError("unknown rank mode: " + m);
}

void print_series(const Series& s, const std::string& format) {
  if (format == "structured") {
    json out;
    out["order"] = s.order().str();
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back({e.str(), c.str()});
    out["terms"] = terms;
    std::cout << out.dump(2) << "\n";
    return;
  }
  for (const auto& [e, c] : s.terms()) std::cout << "q^" << e.str() << "\t" << c.str() << "\n";
  std::cout << "# exact to order " << s.order().str() << "\n";
}

json report_json(const Report& r) {
  json jr;
  jr["id"] = r.id;
  jr["order"] = r.order.str();
  jr["status"] = status_name(r.status);
  jr["seconds"] = r.seconds;
  json inst = json::array();
  for (const auto& ir : r.instances) {
    json ji;
    ji["label"] = ir.label;
    ji["status"] = status_name(ir.status);
    if (ir.status != VerifyStatus::Fail) {
      ji["matched_lhs"] = ir.matched_lhs;
      ji["matched_rhs"] = ir.matched_rhs;
    }
    if (ir.mismatch_exp.has_value()) {
      ji["first_candidate_mismatch"] = {{"exponent", ir.mismatch_exp->str()},
                                        {"lhs", ir.lhs_coeff.str()},
                                        {"rhs", ir.rhs_coeff.str()}};
    }
    inst.push_back(std::move(ji));
  }
  jr["instances"] = inst;
  return jr;
}

std::vector<long double> parse_grid(const std::string& s) {
  std::vector<long double> grid;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    grid.push_back(std::strtold(tok.c_str(), nullptr));
  }
  return grid;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact q-series and graph-series verification engine"};
  app.require_subcommand(1);
  std::string format = "table";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "structured"}));

  // expand
  auto* expand = app.add_subcommand("expand", "expand a catalog series or graph series");
  std::string ex_series, ex_graph, ex_order = "20";
  expand->add_option("--series", ex_series, "catalog series name");
  expand->add_option("--graph", ex_graph, "builtin:NAME or graph JSON path");
  expand->add_option("--order", ex_order, "truncation order (rational)");

  // graph-series
  auto* gs = app.add_subcommand("graph-series", "compute a graph series");
  std::string gs_graph, gs_order = "20", gs_method = "auto";
  gs->add_option("--graph", gs_graph, "builtin:NAME or graph JSON path")->required();
  gs->add_option("--order", gs_order, "truncation order (rational)");
  gs->add_option("--method", gs_method, "evaluation method")
      ->check(CLI::IsMember({"auto", "enumerate", "tree-dp"}));

  // verify
  auto* ver = app.add_subcommand("verify", "verify identities");
  std::string v_id = "all", v_order = "default", v_report;
  std::vector<std::string> v_tags;
  ver->add_option("--identity", v_id, "identity id or 'all'");
  ver->add_option("--order", v_order, "override order, or 'default'");
  ver->add_option("--tag", v_tags, "restrict 'all' to entries with any of these tags");
  ver->add_option("--report", v_report, "write JSON report to this path");

  // jets
  auto* jets = app.add_subcommand("jets", "graded dimensions of the jet algebra");
  std::string j_graph, j_mode = "dual-prime";
  int j_maxdeg = 10;
  std::uint64_t j_seed = 0x9e3779b97f4a7c15ull;
  bool j_compare = false;
  jets->add_option("--graph", j_graph, "builtin:NAME or graph JSON path")->required();
  jets->add_option("--max-degree", j_maxdeg, "top degree (capped at 14)");
  jets->add_option("--mode", j_mode, "rank mode")
      ->check(CLI::IsMember({"single-prime", "dual-prime", "exact"}));
  jets->add_option("--seed", j_seed, "seed for prime selection");
  jets->add_flag("--compare", j_compare, "compare against the graph series");

  // asym
  auto* asy = app.add_subcommand("asym", "t -> 0+ asymptotic checks");
  std::string a_case = "all", a_grid = "0.2,0.1,0.05,0.025";
  bool a_fit = false;
  asy->add_option("--case", a_case, "case id A2..A8 or 'all'");
  asy->add_option("--t", a_grid, "descending comma-separated grid");
  asy->add_flag("--fit", a_fit, "also print fitted correction constants (exploratory)");

  // list
  auto* lst = app.add_subcommand("list", "list identities, graphs, or series");
  std::string l_what = "identities";
  lst->add_option("what", l_what, "identities | graphs | series")
      ->check(CLI::IsMember({"identities", "graphs", "series"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (expand->parsed()) {
      if (ex_series.empty() == ex_graph.empty())
        throw SeriesError("expand needs exactly one of --series or --graph");
      Rat N = parse_rat(ex_order);
      Series s = ex_series.empty() ? evaluate(parse_graph_arg(ex_graph), N)
                                   : named_series(ex_series, N);
      print_series(s, format);
      return 0;
    }

    if (gs->parsed()) {
      Series s = evaluate(parse_graph_arg(gs_graph), parse_rat(gs_order),
                          parse_method(gs_method));
      print_series(s, format);
      return 0;
    }

    if (ver->parsed()) {
      std::optional<Rat> ord;
      if (v_order != "default") ord = parse_rat(v_order);
      std::vector<Report> reports;
      if (v_id == "all")
        reports = verify_all(v_tags, ord);
      else
        reports.push_back(verify(v_id, ord));
      bool any_fail = false;
      for (const auto& r : reports) {
        if (r.status == VerifyStatus::Fail) any_fail = true;
        if (r.status == VerifyStatus::ResolvedVariant)
          std::cerr << "warning: " << r.id
                    << " holds in a variant form, not as first printed\n";
      }
      json jrep = json::array();
      for (const auto& r : reports) jrep.push_back(report_json(r));
      if (!v_report.empty()) {
        std::ofstream out(v_report);
        if (!out) throw SeriesError("cannot write report: " + v_report);
        out << jrep.dump(2) << "\n";
      }
      if (format == "structured")
        std::cout << jrep.dump(2) << "\n";
      else
        std::cout << format_table(reports);
      return any_fail ? 1 : 0;
    }

    if (jets->parsed()) {
      GraphSeriesSpec spec = parse_graph_arg(j_graph);
      GradedDimensionTable t =
          hilbert_series(presentation_of(spec.graph), j_maxdeg, parse_mode(j_mode), j_seed);
      json out;
      out["dims"] = t.dims;
      if (!t.primes.empty()) out["primes"] = t.primes;
      if (j_compare) {
        Series s = evaluate(spec, Rat(j_maxdeg));
        JetComparison cmp = compare_with_series(t, s);
        out["match"] = cmp.match;
        if (!cmp.match) {
          out["mismatch_degree"] = cmp.mismatch_degree;
          out["jet_value"] = cmp.jet_value.str();
          out["series_value"] = cmp.series_value.str();
        }
      }
      if (format == "structured") {
        std::cout << out.dump(2) << "\n";
      } else {
        for (std::size_t d = 0; d < t.dims.size(); ++d)
          std::cout << "deg " << d << "\t" << t.dims[d] << "\n";
        if (j_compare)
          std::cout << "# graph-series match: " << (out["match"].get<bool>() ? "yes" : "no")
                    << "\n";
      }
      if (j_compare && !out["match"].get<bool>()) return 1;
      return 0;
    }

    if (asy->parsed()) {
      std::vector<long double> grid = parse_grid(a_grid);
      std::vector<const AsymptoticCase*> cases;
      if (a_case == "all") {
        for (const auto& c : asymptotic_cases()) cases.push_back(&c);
      } else {
        cases.push_back(&find_case(a_case));
      }
      bool any_fail = false;
      json jall = json::array();
      for (const auto* c : cases) {
        AsymReport rep = check_case(*c, grid);
        if (rep.verdict == AsymVerdict::Fail) any_fail = true;
        if (format == "structured") {
          json jc;
          jc["case"] = rep.id;
          jc["verdict"] = verdict_name(rep.verdict);
          json rows = json::array();
          for (std::size_t i = 0; i < rep.grid.size(); ++i)
            rows.push_back({{"t", fmt_ld(rep.grid[i])},
                            {"value", fmt_ld(rep.values[i])},
                            {"residual", fmt_ld(rep.residuals[i])}});
          jc["points"] = rows;
          json ratios = json::array();
          for (long double r : rep.ratios) ratios.push_back(fmt_ld(r));
          jc["ratios"] = ratios;
          if (a_fit && grid.size() >= 3) {
            CorrectionFit fit = fit_correction(*c, grid);
            jc["fit"] = {{"t_log_t", fmt_ld(fit.a_tlogt)},
                         {"t", fmt_ld(fit.b_t)},
                         {"t^2", fmt_ld(fit.c_t2)}};
          }
          jall.push_back(std::move(jc));
        } else {
          std::cout << rep.id << ": " << verdict_name(rep.verdict) << "\n";
          for (std::size_t i = 0; i < rep.grid.size(); ++i)
            std::cout << "  t=" << fmt_ld(rep.grid[i]) << "  value=" << fmt_ld(rep.values[i])
                      << "  residual=" << fmt_ld(rep.residuals[i]) << "\n";
          for (std::size_t i = 0; i < rep.ratios.size(); ++i)
            std::cout << "  decay " << fmt_ld(rep.grid[i]) << " -> " << fmt_ld(rep.grid[i + 1])
                      << ": " << fmt_ld(rep.ratios[i]) << "\n";
          if (a_fit && grid.size() >= 3) {
            CorrectionFit fit = fit_correction(*c, grid);
            std::cout << "  fit: " << fmt_ld(fit.a_tlogt) << " t log t + " << fmt_ld(fit.b_t)
                      << " t + " << fmt_ld(fit.c_t2) << " t^2\n";
          }
        }
      }
      if (format == "structured") std::cout << jall.dump(2) << "\n";
      return any_fail ? 1 : 0;
    }

    if (lst->parsed()) {
      std::vector<std::string> names;
      if (l_what == "identities") names = list_identities();
      else if (l_what == "graphs") names = builtin_names();
      else
        for (const auto& e : catalog()) names.push_back(e.name);
      if (format == "structured") {
        std::cout << json(names).dump(2) << "\n";
      } else {
        for (const auto& n : names) std::cout << n << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
