#pragma once

#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "formint/io.hpp"

namespace formint::cli {

struct CheckEntry {
  std::string name;
  bool pass = true;
  std::optional<std::string> witness;
};

/// Everything a subcommand produces. `lines` is the human-readable body;
/// metadata/result carry the same content for --json.
struct RunReport {
  std::vector<std::string> command;
  json metadata = json::object();
  json result = json::object();
  std::vector<CheckEntry> checks;
  std::vector<std::string> lines;

  int exit_code() const {
    for (const auto& c : checks)
      if (!c.pass) return 1;
    return 0;
  }

  json to_json() const {
    json checks_json = json::array();
    for (const auto& c : checks) {
      json entry = {{"name", c.name}, {"pass", c.pass}};
      if (c.witness) entry["witness"] = *c.witness;
      checks_json.push_back(entry);
    }
    return {{"command", command},
            {"metadata", metadata},
            {"result", result},
            {"checks", checks_json},
            {"exit_code", exit_code()}};
  }

  void print_text(std::ostream& out) const {
    out << "formint";
    for (const auto& a : command) out << ' ' << (a.find(' ') == std::string::npos ? a : "\"" + a + "\"");
    out << '\n';
    for (const auto& [k, v] : metadata.items())
      out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    for (const auto& l : lines) out << l << '\n';
    if (!checks.empty()) {
      out << "checks:\n";
      for (const auto& c : checks) {
        out << "  " << std::left << std::setw(28) << c.name << (c.pass ? "pass" : "FAIL");
        if (c.witness) out << "  (" << *c.witness << ")";
        out << '\n';
      }
    }
    out << "exit: " << exit_code() << '\n';
  }
};

namespace detail {

inline CheckEntry to_entry(const CheckReport& r, const VarList& names) {
  CheckEntry e{r.name, r.pass, std::nullopt};
  if (!r.pass && !r.witnesses.empty()) {
    const Witness* first = &r.witnesses.front();
    for (const auto& w : r.witnesses)
      if (w.degree < first->degree) first = &w;
    std::string coord = first->coordinate < names.size() ? names[first->coordinate] : std::to_string(first->coordinate);
    e.witness = "coordinate " + coord + ", degree " + std::to_string(first->degree) + ": " + first->detail;
  }
  return e;
}

inline void append_series(std::vector<std::string>& lines, const std::string& title, const TruncSeries& s) {
  lines.push_back(title);
  if (s.is_zero()) lines.push_back("  0");
  for (const auto& [e, c] : s.terms()) {
    std::string element = s.basis_element(e);
    std::ostringstream row;
    row << "  " << std::left << std::setw(16) << (element.empty() ? "1" : element) << c.to_string();
    lines.push_back(row.str());
  }
}

inline std::string vector_field_text(const VectorField& v) {
  std::string out;
  for (std::size_t i = 0; i < v.components.size(); ++i) out += (i ? "; " : "") + v.components[i].to_string();
  return out;
}

struct FlowOptions {
  std::string field = "Q";
  unsigned order = 0;
  std::string basis = "divided";
  std::string vars;
  std::string vector_field;
  bool verify = false;
};

inline void add_flow_options(CLI::App* cmd, FlowOptions& o) {
  cmd->add_option("--field", o.field, "Coefficient field: Q or F<p>")->capture_default_str();
  cmd->add_option("--order", o.order, "Truncation order N (>= 1)")->required();
  cmd->add_option("--basis", o.basis, "monomial or divided")->capture_default_str();
  cmd->add_option("--vars", o.vars, "Comma-separated state variables, e.g. x,y")->required();
  cmd->add_option("vector_field", o.vector_field, "Components separated by ';', e.g. \"x+y; y^2\"")->required();
  cmd->add_flag("--verify", o.verify, "Run counit, tangency and coassociativity checks");
}

inline FlowSolution run_flow(const FlowOptions& o, RunReport& report) {
  const Field field = Field::parse(o.field);
  const Basis basis = parse_basis(o.basis);
  const VarList vars = split_trimmed(o.vars, ',');
  const VectorField v = VectorField::parse(field, vars, o.vector_field);
  FlowSolution flow = integrate_flow(v, o.order, basis);
  report.metadata = {{"field", field.name()}, {"basis", to_string(basis)}, {"order", o.order}, {"state_vars", vars}};
  report.lines.push_back("vector_field: " + vector_field_text(v));
  if (o.verify) {
    report.checks.push_back(to_entry(check_counit(flow), vars));
    report.checks.push_back(to_entry(check_tangency(flow), vars));
    report.checks.push_back(to_entry(check_coassociativity(flow), vars));
  }
  return flow;
}

inline void integrate_cmd(const FlowOptions& o, RunReport& report) {
  FlowSolution flow = run_flow(o, report);
  report.result = {{"flow", to_json(flow)}};
  for (std::size_t i = 0; i < flow.coordinates.size(); ++i)
    append_series(report.lines, flow.vector_field.state_vars[i] + "(t):", flow.coordinates[i]);
}

inline void leaf_cmd(const FlowOptions& o, const std::string& at, RunReport& report) {
  FlowSolution flow = run_flow(o, report);
  std::vector<Coefficient> point;
  for (const auto& c : split_trimmed(at, ',')) point.push_back(Coefficient::parse(flow.vector_field.field, c));
  FormalLeaf leaf = formal_leaf(flow, point);
  json point_json = json::array();
  for (const auto& c : point) point_json.push_back(c.to_string());
  json series = json::array();
  for (const auto& s : leaf.leaf) series.push_back(to_json(s));
  report.result = {{"point", point_json}, {"classification", to_string(leaf.classification)}, {"leaf", series}};
  std::string pt;
  for (std::size_t i = 0; i < point.size(); ++i) pt += (i ? ", " : "") + point[i].to_string();
  report.lines.push_back("point: (" + pt + ")");
  report.lines.push_back("classification: " + std::string(to_string(leaf.classification)));
  for (std::size_t i = 0; i < leaf.leaf.size(); ++i)
    append_series(report.lines, flow.vector_field.state_vars[i] + "(t):", leaf.leaf[i]);
}

struct GmOptions {
  std::string field = "Q";
  unsigned weight = 0;
  unsigned order = 0;
  std::optional<unsigned> restrict_by;
  bool anchor = false;
  bool verify = false;
};

inline void gm_cmd(const GmOptions& o, RunReport& report) {
  const Field field = Field::parse(o.field);
  FormalAction action = gm_action(o.weight, field, o.order);
  report.metadata = {{"field", field.name()}, {"basis", "monomial"}, {"order", o.order}, {"state_vars", action.state_vars}};
  if (o.restrict_by) {
    const FormalAction restricted = restrict_power(action, *o.restrict_by);
    const FormalAction direct = gm_action(o.weight * *o.restrict_by, field, o.order);
    CheckEntry c{"restriction_identity", restricted.coaction == direct.coaction, std::nullopt};
    if (!c.pass) c.witness = "restricted " + restricted.coaction[0].to_string() + " vs " + direct.coaction[0].to_string();
    report.checks.push_back(c);
    action = restricted;
  }
  const bool trivial = action_is_trivial(action, o.order);
  report.result = {{"action", to_json(action)}, {"trivial", trivial}};
  report.lines.push_back("weight: " + std::to_string(action.weight) +
                         (o.restrict_by ? " (" + std::to_string(o.weight) + " restricted along z^" +
                                              std::to_string(*o.restrict_by) + ")"
                                        : ""));
  append_series(report.lines, "x(t):", action.coaction[0]);
  report.lines.push_back("trivial: " + std::string(trivial ? "true" : "false"));
  if (o.anchor) {
    const AnchorField a = anchor(action);
    report.result["anchor"] = vector_field_text(a.field);
    report.result["anchor_is_zero"] = a.is_zero;
    report.lines.push_back("anchor: " + vector_field_text(a.field) + " d/dx");
  }
  if (o.verify) {
    report.checks.push_back(to_entry(check_action_counit(action), action.state_vars));
    report.checks.push_back(to_entry(check_action_coassociativity(action), action.state_vars));
  }
}

struct ArtinianOptions {
  std::string algebra;
  std::string ideal;
};

inline std::string dims_text(const std::vector<std::size_t>& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + std::to_string(v[i]);
  return out + "]";
}

inline void artinian_cmd(const ArtinianOptions& o, RunReport& report) {
  const FiniteAlgebra a = load_algebra(o.algebra);
  const std::vector<Vector> gens = parse_generators(a, o.ideal);
  report.metadata = {{"field", a.field().name()}, {"dim", a.dim()}};
  const IdealChain chain = ideal_powers(a, gens);
  const SquareZeroTower tower = decompose_artinian(a, gens);
  const GradedReport graded = graded_generation(a, gens);
  const TowerVerification verified = verify_tower(a, tower);

  json gens_json = json::array();
  for (const auto& g : gens) gens_json.push_back(vector_to_string(g));
  report.result = {{"algebra", {{"dim", a.dim()}, {"labels", a.labels()}}},
                   {"generators", gens_json},
                   {"chain", to_json(chain)},
                   {"tower", to_json(tower)},
                   {"graded", to_json(graded)}};

  std::string labels;
  for (std::size_t i = 0; i < a.labels().size(); ++i) labels += (i ? ", " : "") + a.labels()[i];
  report.lines.push_back("basis: " + labels);
  report.lines.push_back("ideal power dims: " + dims_text(chain.dims()));
  report.lines.push_back("nilpotency index: " + std::to_string(*chain.nilpotency_index));
  report.lines.push_back("tower length: " + std::to_string(tower.length()));
  report.lines.push_back("kernel dims: " + dims_text(tower.kernel_dims()));
  report.lines.push_back("gr dims: " + dims_text(graded.dims_gr));
  report.lines.push_back("sym bounds: " + dims_text(graded.dims_sym_bound));

  report.checks.push_back({"tower_algebra_maps", verified.algebra_maps, std::nullopt});
  report.checks.push_back({"tower_kernels_exact", verified.kernels_exact, std::nullopt});
  report.checks.push_back({"tower_square_zero", verified.square_zero, std::nullopt});
  report.checks.push_back({"tower_composite", verified.composite, std::nullopt});
  CheckEntry g{"graded_generation", graded.pass, std::nullopt};
  if (!graded.pass) g.witness = "fails in degrees " + dims_text(graded.failing_degrees);
  report.checks.push_back(g);
}

inline std::string one_line(std::string s) {
  for (auto& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

}  // namespace detail

/// Runs one command line (without the program name). Returns the process
/// exit code: 0 all checks pass, 1 a check failed, 2 input error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Formal integration of polynomial vector fields over Q and F_p", "formint"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Emit the JSON report")->configurable(false);

  detail::FlowOptions flow_opts;
  auto* integrate = app.add_subcommand("integrate", "Integrate a vector field into a formal flow");
  add_flow_options(integrate, flow_opts);
  integrate->add_flag("--json", as_json, "Emit the JSON report");

  detail::FlowOptions leaf_opts;
  std::string at;
  auto* leaf = app.add_subcommand("leaf", "Formal leaf of the flow through a point");
  add_flow_options(leaf, leaf_opts);
  leaf->add_option("--at", at, "Point coordinates, e.g. 1,1")->required();
  leaf->add_flag("--json", as_json, "Emit the JSON report");

  detail::GmOptions gm_opts;
  auto* gm = app.add_subcommand("gm", "Weight-n action of the formal multiplicative group on the line");
  gm->add_option("--field", gm_opts.field, "Coefficient field: Q or F<p>")->capture_default_str();
  gm->add_option("--weight", gm_opts.weight, "Weight n >= 0")->required();
  gm->add_option("--order", gm_opts.order, "Truncation order N (>= 1)")->required();
  gm->add_option("--restrict", gm_opts.restrict_by, "Restrict along z -> z^l");
  gm->add_flag("--anchor", gm_opts.anchor, "Report the anchor vector field");
  gm->add_flag("--verify", gm_opts.verify, "Run counit and coassociativity checks");
  gm->add_flag("--json", as_json, "Emit the JSON report");

  detail::ArtinianOptions art_opts;
  auto* artinian = app.add_subcommand("artinian", "Ideal powers, square-zero tower and associated graded");
  artinian->add_option("--algebra", art_opts.algebra, "JSON file or presentation like F2[x]/(x^3)")->required();
  artinian->add_option("--ideal", art_opts.ideal, "Generators: labels or coordinate lists, ';'-separated");
  artinian->add_flag("--json", as_json, "Emit the JSON report");

  RunReport report;
  report.command = args;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (integrate->parsed()) detail::integrate_cmd(flow_opts, report);
    else if (leaf->parsed()) detail::leaf_cmd(leaf_opts, at, report);
    else if (gm->parsed()) detail::gm_cmd(gm_opts, report);
    else if (artinian->parsed()) detail::artinian_cmd(art_opts, report);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "formint: error: " << detail::one_line(e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "formint: error: " << detail::one_line(e.what()) << '\n';
    return 2;
  }
  if (as_json) out << report.to_json().dump(2) << '\n';
  else report.print_text(out);
  return report.exit_code();
}

}  // namespace formint::cli
