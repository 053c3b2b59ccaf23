#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "xlab/admissible.hpp"
#include "xlab/cli.hpp"
#include "xlab/families.hpp"
#include "xlab/norms.hpp"

namespace xlab::cli {

using json = nlohmann::ordered_json;

namespace {

json num(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

json pairs_json(const std::vector<std::pair<std::string, double>>& kv) {
  json j = json::object();
  for (const auto& [k, v] : kv) j[k] = num(v);
  return j;
}

// RFC 4180 quoting.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
      os << "\r\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
    return os.str();
  }
};

// Flat key,value table from a JSON object; nested keys joined with '.'.
void flatten(const json& j, const std::string& prefix, Table& t) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, t);
    return;
  }
  if (j.is_number_float()) {
    t.rows.push_back({prefix, format_double(j.get<double>())});
  } else if (j.is_string()) {
    t.rows.push_back({prefix, j.get<std::string>()});
  } else {
    t.rows.push_back({prefix, j.dump()});
  }
}

Table key_value(const json& j) {
  Table t{{"key", "value"}, {}};
  flatten(j, "", t);
  return t;
}

struct Output {
  json doc;
  std::optional<Table> table;  // preferred CSV form
  int status = kExitPass;
};

std::string render(const Output& o, const std::string& format) {
  if (format == "csv") return o.table ? o.table->str() : key_value(o.doc).str();
  return o.doc.dump(2) + "\n";
}

void write(const RunConfig& c, std::ostream& out, const std::string& text) {
  if (c.output.path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.output.path, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file " + c.output.path);
  f << text;
  if (!f) throw std::runtime_error("write failed: " + c.output.path);
}

GridSpec grid_spec(const RunConfig& c) {
  GridSpec g;
  g.points = c.grid.t_points;
  g.decades = c.grid.t_span_decades;
  g.values = c.grid.t_values;
  return g;
}

Tolerance tolerance(const RunConfig& c) { return {c.tolerances.abs, c.tolerances.rel}; }

json step_json(std::span<const double> b, std::span<const double> v) {
  return {{"breakpoints", std::vector<double>(b.begin(), b.end())}, {"values", std::vector<double>(v.begin(), v.end())}};
}

Output cmd_check_phi(const RunConfig& c) {
  const AdmissibleFunction phi = make_phi(c.kernel.phi);
  const std::vector<double> grid = phi_check_grid(c.grid.x_max, c.grid.x_points);
  const PhiCheckReport r = phi_check(phi, grid);
  Output o;
  o.doc["command"] = "check-phi";
  o.doc["config"] = to_json(c);
  o.doc["phi"] = phi.describe();
  o.doc["normalization"] = {{"passed", r.normalization}, {"error", num(r.normalization_error)}};
  o.doc["log_concavity"] = {{"passed", r.log_concavity}, {"margin", num(r.log_concavity_margin)}};
  o.doc["envelope"] = {{"passed", r.envelope}, {"margin", num(r.envelope_margin)}};
  o.doc["submultiplicative"] = {{"passed", r.submultiplicative}, {"margin", num(r.submultiplicative_margin)}};
  o.doc["degenerate"] = r.degenerate;
  o.doc["passed"] = r.all_passed();
  o.status = r.all_passed() ? kExitPass : kExitFail;
  return o;
}

Output cmd_rearrange(const RunConfig& c) {
  const SimpleFunction f = make_simple(c.function);
  const DecreasingStep fstar = rearrange(f);
  const PiecewiseHyperbolic fss = double_star(fstar);
  Output o;
  o.doc["command"] = "rearrange";
  o.doc["config"] = to_json(c);
  o.doc["total_mass"] = f.total_mass();
  o.doc["integral"] = fstar.integral();
  o.doc["sup"] = fstar.sup();
  o.doc["fstar"] = step_json(fstar.breakpoints(), fstar.values());
  json pieces = json::array();
  for (const auto& pc : fss.pieces()) {
    pieces.push_back({{"lower", num(pc.lower)}, {"upper", num(pc.upper)}, {"a", pc.a}, {"b", pc.b}});
  }
  o.doc["fss"] = pieces;
  Table t{{"lower", "upper", "fstar"}, {}};
  for (std::size_t i = 0; i < fstar.size(); ++i) {
    t.rows.push_back({format_double(fstar.lower(i)), format_double(fstar.breakpoints()[i]),
                      format_double(fstar.values()[i])});
  }
  o.table = t;
  return o;
}

Output cmd_norm(const RunConfig& c) {
  const DecreasingStep fstar = rearrange(make_simple(c.function));
  const NormConfig& n = c.norm;
  double value = 0.0;
  json params = json::object();
  try {
    if (n.kind == "lorentz") {
      value = lorentz_norm(fstar, {n.p, n.q});
      params = {{"p", n.p}, {"q", num(n.q)}};
    } else if (n.kind == "weak") {
      value = weak_lorentz_norm(fstar, n.p);
      params = {{"p", n.p}};
    } else if (n.kind == "llogl") {
      value = llogl_norm(fstar, n.alpha, tolerance(c));
      params = {{"alpha", n.alpha}};
    } else if (n.kind == "llogl-log3") {
      value = llogl_log3_norm(fstar, tolerance(c));
    } else if (n.kind == "mphi") {
      value = mphi_norm(double_star(fstar));
    } else if (n.kind == "lexp") {
      value = lexp_norm(double_star(fstar));
    } else {
      const AdmissibleFunction phi = make_phi(c.kernel.phi);
      value = philog_norm(fstar, n.p, phi);
      params = {{"p", n.p}, {"phi", phi.describe()}};
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("norm: ") + e.what());
  }
  Output o;
  o.doc["command"] = "norm";
  o.doc["config"] = to_json(c);
  o.doc["kind"] = n.kind;
  o.doc["params"] = params;
  o.doc["value"] = num(value);
  o.table = Table{{"kind", "value"}, {{n.kind, format_double(value)}}};
  return o;
}

Output cmd_apply(const RunConfig& c) {
  const KernelSpec spec = make_spec(c.kernel);
  const StepFunction f = make_step(c.function);
  const std::vector<double> ts = grid_spec(c).for_function(rearrange_step(f));
  const CalderonOperator op(spec);
  const std::vector<OperatorValues> vals = op.apply(OperatorInput::from(f), ts);
  Output o;
  o.doc["command"] = "apply";
  o.doc["config"] = to_json(c);
  o.doc["spec"] = spec.describe();
  json rows = json::array();
  Table t{{"t", "P", "Q", "R"}, {}};
  for (std::size_t k = 0; k < ts.size(); ++k) {
    rows.push_back({{"t", ts[k]}, {"P", num(vals[k].p)}, {"Q", num(vals[k].q)}, {"R", num(vals[k].r)}});
    t.rows.push_back({format_double(ts[k]), format_double(vals[k].p), format_double(vals[k].q),
                      format_double(vals[k].r)});
  }
  o.doc["rows"] = rows;
  o.table = t;
  return o;
}

VerificationReport dispatch(const RunConfig& c) {
  const std::string& s = c.suite;
  const GridSpec grid = grid_spec(c);
  if (s == "lemma-infimum") return verify_lemma_infimum(c.family.count, c.family.seed);
  const KernelSpec spec = make_spec(c.kernel);
  if (s == "char-bound") return verify_char_lower_bound(spec, c.m, grid);
  if (s == "dilation") return verify_dilation(spec, c.family.count, c.family.seed);
  if (s == "remark") return verify_remark_p0_1(spec.phi, spec.p1, make_family(c), grid, c.grid.profile_per_decade);
  const std::vector<FamilyMember> family = make_family(c);
  if (s == "gh") return verify_gh_formulas(family, grid);
  if (s == "pgqg") return verify_pg_qg_bounds(spec, family, grid);
  if (s == "forward") return verify_forward(spec, family, grid, c.grid.profile_per_decade);
  if (s == "converse") return verify_converse(spec, c.p.value_or(spec.p1), family, grid);
  if (s == "corollary") return verify_corollary(spec, c.V, family, c.grid.sweep_points);
  if (s == "zygmund") return verify_zygmund_recovery(family, grid);
  if (s == "lemma-identity") return verify_lemma_identity(spec, family, grid);
  throw ConfigError("unknown suite '" + s + "'");
}

Output cmd_verify(const RunConfig& c) {
  VerificationReport r;
  try {
    r = dispatch(c);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(c.suite) + ": " + e.what());
  }
  Output o;
  o.doc = report_json(r, c);
  o.status = r.passed ? kExitPass : kExitFail;
  return o;
}

}  // namespace

json report_json(const VerificationReport& r, const RunConfig& c) {
  json j;
  j["suite"] = r.suite;
  j["config"] = to_json(c);
  j["spec"] = r.spec;
  j["params"] = pairs_json(r.params);
  if (r.seed) j["seed"] = *r.seed;
  j["worst_ratio"] = num(r.worst_ratio);
  j["worst_location"] = {{"function_id", r.worst_location.function_id}, {"t", num(r.worst_location.t)}};
  j["threshold"] = num(r.threshold);
  j["passed"] = r.passed;
  j["details"] = pairs_json(r.details);
  return j;
}

int run(const RunConfig& c, std::ostream& out) {
  c.validate();
  Output o;
  if (c.command == "check-phi") o = cmd_check_phi(c);
  else if (c.command == "rearrange") o = cmd_rearrange(c);
  else if (c.command == "norm") o = cmd_norm(c);
  else if (c.command == "apply") o = cmd_apply(c);
  else o = cmd_verify(c);
  std::string format = c.output.format;
  if (format.empty()) format = c.command == "apply" ? "csv" : "json";
  write(c, out, render(o, format));
  return o.status;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"xlab: Calderon-type operators, rearrangements and norm verification"};
  std::string command;
  std::string suite;
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol_abs;
  std::optional<double> tol_rel;
  bool dump = false;
  app.add_option("command", command, "check-phi | rearrange | norm | apply | verify")->required();
  app.add_option("suite", suite, "suite name for verify");
  app.add_option("--config", config_path, "JSON run config");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format, "json | csv");
  app.add_option("--seed", seed, "family seed");
  app.add_option("--tol-abs", tol_abs, "absolute quadrature tolerance");
  app.add_option("--tol-rel", tol_rel, "relative quadrature tolerance");
  app.add_flag("--dump-config", dump, "print the effective config to stdout and exit");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << "xlab: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    RunConfig c;
    if (!config_path.empty()) {
      std::ifstream f(config_path, std::ios::binary);
      if (!f) throw ConfigError("cannot read config " + config_path);
      std::ostringstream ss;
      ss << f.rdbuf();
      c = parse_config_text(ss.str());
    }
    c.command = command;
    if (!suite.empty()) c.suite = suite;
    if (command != "verify" && !suite.empty()) throw ConfigError("only verify takes a suite argument");
    if (!out_path.empty()) c.output.path = out_path;
    if (!format.empty()) c.output.format = format;
    if (seed) c.family.seed = *seed;
    if (tol_abs) c.tolerances.abs = *tol_abs;
    if (tol_rel) c.tolerances.rel = *tol_rel;
    c.validate();
    if (dump) {
      out << to_json(c).dump(2) << "\n";
      return kExitPass;
    }
    return run(c, out);
  } catch (const ConfigError& e) {
    err << "xlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "xlab: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "xlab: " << e.what() << "\n";
    return kExitFail;
  }
}

}  // namespace xlab::cli
