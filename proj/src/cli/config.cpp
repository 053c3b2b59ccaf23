#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <set>

#include "xlab/cli.hpp"
#include "xlab/families.hpp"

namespace xlab::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> keys) {
  if (!j.is_object()) fail(where + " must be an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) fail("unknown key " + where + "." + k);
  }
}

double as_double(const json& v, const std::string& name, bool allow_inf = false) {
  if (v.is_number()) return v.get<double>();
  if (allow_inf && v.is_string() && v.get<std::string>() == "inf") return kInf;
  fail(name + (allow_inf ? " must be a number or \"inf\"" : " must be a number"));
}

std::uint64_t as_u64(const json& v, const std::string& name) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  fail(name + " must be a nonnegative integer");
}

std::string as_string(const json& v, const std::string& name) {
  if (!v.is_string()) fail(name + " must be a string");
  return v.get<std::string>();
}

std::vector<double> as_doubles(const json& v, const std::string& name) {
  if (!v.is_array()) fail(name + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(as_double(x, name));
  return out;
}

json num(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

template <class T>
void read(const json& j, const char* key, T& dst, T (*conv)(const json&, const std::string&), const std::string& where) {
  if (j.contains(key)) dst = conv(j.at(key), where + "." + key);
}

double plain(const json& v, const std::string& n) { return as_double(v, n); }
double with_inf(const json& v, const std::string& n) { return as_double(v, n, true); }
std::size_t as_size(const json& v, const std::string& n) { return static_cast<std::size_t>(as_u64(v, n)); }

PhiConfig parse_phi(const json& j, const std::string& where) {
  only_keys(j, where, {"gamma", "log_exponents"});
  PhiConfig c;
  read(j, "gamma", c.gamma, plain, where);
  read(j, "log_exponents", c.log_exponents, as_doubles, where);
  return c;
}

FunctionConfig parse_function(const json& j) {
  only_keys(j, "function", {"atoms", "steps"});
  FunctionConfig c;
  if (j.contains("atoms") && j.contains("steps")) fail("function takes atoms or steps, not both");
  const char* key = j.contains("atoms") ? "atoms" : j.contains("steps") ? "steps" : nullptr;
  if (!key) return c;
  c.kind = j.contains("atoms") ? FunctionConfig::Kind::atoms : FunctionConfig::Kind::steps;
  const json& arr = j.at(key);
  const std::string name = std::string("function.") + key;
  if (!arr.is_array()) fail(name + " must be an array of pairs");
  for (const auto& pr : arr) {
    if (!pr.is_array() || pr.size() != 2) fail(name + " entries must be [x, y] pairs");
    c.pairs.push_back({as_double(pr[0], name), as_double(pr[1], name)});
  }
  return c;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"char-bound", "gh",      "pgqg",           "forward",
                                              "converse",   "corollary", "remark",       "zygmund",
                                              "lemma-identity", "lemma-infimum", "dilation"};
  return names;
}

RunConfig parse_config(const json& j) {
  only_keys(j, "config", {"command", "suite", "kernel", "phi", "function", "norm", "family", "grid", "tolerances",
                          "p", "V", "m", "output"});
  RunConfig c;
  if (j.contains("command")) c.command = as_string(j.at("command"), "command");
  if (j.contains("suite")) c.suite = as_string(j.at("suite"), "suite");
  if (j.contains("kernel")) {
    const json& k = j.at("kernel");
    only_keys(k, "kernel", {"p0", "p1", "phi", "delta"});
    read(k, "p0", c.kernel.p0, plain, "kernel");
    read(k, "p1", c.kernel.p1, with_inf, "kernel");
    if (k.contains("phi")) c.kernel.phi = parse_phi(k.at("phi"), "kernel.phi");
    if (k.contains("delta")) {
      const json& d = k.at("delta");
      if (!d.is_number_integer()) fail("kernel.delta must be 0 or 1");
      c.kernel.delta = d.get<int>();
    }
  }
  if (j.contains("phi")) {
    if (j.contains("kernel") && j.at("kernel").contains("phi")) fail("phi given both at top level and in kernel");
    c.kernel.phi = parse_phi(j.at("phi"), "phi");
  }
  if (j.contains("function")) c.function = parse_function(j.at("function"));
  if (j.contains("norm")) {
    const json& n = j.at("norm");
    only_keys(n, "norm", {"kind", "p", "q", "alpha"});
    if (n.contains("kind")) c.norm.kind = as_string(n.at("kind"), "norm.kind");
    read(n, "p", c.norm.p, plain, "norm");
    read(n, "q", c.norm.q, with_inf, "norm");
    read(n, "alpha", c.norm.alpha, plain, "norm");
  }
  if (j.contains("family")) {
    const json& f = j.at("family");
    only_keys(f, "family", {"kind", "count", "seed", "masses"});
    if (f.contains("kind")) c.family.kind = as_string(f.at("kind"), "family.kind");
    read(f, "count", c.family.count, as_size, "family");
    read(f, "seed", c.family.seed, as_u64, "family");
    read(f, "masses", c.family.masses, as_doubles, "family");
  }
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    only_keys(g, "grid",
              {"t_points", "t_span_decades", "t_values", "x_max", "x_points", "profile_per_decade", "sweep_points"});
    read(g, "t_points", c.grid.t_points, as_size, "grid");
    read(g, "t_span_decades", c.grid.t_span_decades, plain, "grid");
    read(g, "t_values", c.grid.t_values, as_doubles, "grid");
    read(g, "x_max", c.grid.x_max, plain, "grid");
    read(g, "x_points", c.grid.x_points, as_size, "grid");
    read(g, "profile_per_decade", c.grid.profile_per_decade, as_size, "grid");
    read(g, "sweep_points", c.grid.sweep_points, as_size, "grid");
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    only_keys(t, "tolerances", {"abs", "rel"});
    read(t, "abs", c.tolerances.abs, plain, "tolerances");
    read(t, "rel", c.tolerances.rel, plain, "tolerances");
  }
  if (j.contains("p")) c.p = as_double(j.at("p"), "p");
  if (j.contains("V")) c.V = as_double(j.at("V"), "V");
  if (j.contains("m")) c.m = as_double(j.at("m"), "m");
  if (j.contains("output")) {
    const json& o = j.at("output");
    only_keys(o, "output", {"path", "format"});
    if (o.contains("path")) c.output.path = as_string(o.at("path"), "output.path");
    if (o.contains("format")) c.output.format = as_string(o.at("format"), "output.format");
  }
  return c;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["suite"] = c.suite;
  j["kernel"] = {{"p0", c.kernel.p0},
                 {"p1", num(c.kernel.p1)},
                 {"phi", {{"gamma", c.kernel.phi.gamma}, {"log_exponents", c.kernel.phi.log_exponents}}},
                 {"delta", c.kernel.delta}};
  json f = json::object();
  if (c.function.kind != FunctionConfig::Kind::none) {
    json arr = json::array();
    for (const auto& pr : c.function.pairs) arr.push_back({pr[0], pr[1]});
    f[c.function.kind == FunctionConfig::Kind::atoms ? "atoms" : "steps"] = arr;
  }
  j["function"] = f;
  j["norm"] = {{"kind", c.norm.kind}, {"p", c.norm.p}, {"q", num(c.norm.q)}, {"alpha", c.norm.alpha}};
  j["family"] = {{"kind", c.family.kind}, {"count", c.family.count}, {"seed", c.family.seed},
                 {"masses", c.family.masses}};
  j["grid"] = {{"t_points", c.grid.t_points},
               {"t_span_decades", c.grid.t_span_decades},
               {"t_values", c.grid.t_values},
               {"x_max", c.grid.x_max},
               {"x_points", c.grid.x_points},
               {"profile_per_decade", c.grid.profile_per_decade},
               {"sweep_points", c.grid.sweep_points}};
  j["tolerances"] = {{"abs", c.tolerances.abs}, {"rel", c.tolerances.rel}};
  if (c.p) j["p"] = *c.p;
  j["V"] = c.V;
  j["m"] = c.m;
  j["output"] = {{"path", c.output.path}, {"format", c.output.format}};
  return j;
}

void RunConfig::validate() const {
  static const std::vector<std::string> commands{"check-phi", "rearrange", "norm", "apply", "verify"};
  if (std::find(commands.begin(), commands.end(), command) == commands.end()) fail("unknown command '" + command + "'");
  if (command == "verify") {
    const auto& s = suite_names();
    if (std::find(s.begin(), s.end(), suite) == s.end()) fail("unknown suite '" + suite + "'");
  }
  const auto finite_pos = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!(kernel.p0 >= 1.0) || !std::isfinite(kernel.p0)) fail("kernel.p0 must be finite and >= 1");
  if (!(kernel.p1 > kernel.p0)) fail("kernel.p1 must be > p0 or \"inf\"");
  if (kernel.delta != 0 && kernel.delta != 1) fail("kernel.delta must be 0 or 1");
  if (!(kernel.phi.gamma >= 0.0) || !std::isfinite(kernel.phi.gamma)) fail("phi.gamma must be finite and >= 0");
  for (double b : kernel.phi.log_exponents) {
    if (!(b >= 0.0) || !std::isfinite(b)) fail("phi.log_exponents must be finite and >= 0");
  }
  if (!(tolerances.abs > 0.0) || !(tolerances.rel > 0.0)) fail("tolerances must be > 0");
  if (!finite_pos(grid.t_span_decades) || grid.t_points < 2) fail("grid needs t_points >= 2 and t_span_decades > 0");
  for (double t : grid.t_values) {
    if (!finite_pos(t)) fail("grid.t_values must be finite and > 0");
  }
  if (!(grid.x_max > 1.0) || !std::isfinite(grid.x_max) || grid.x_points < 2) fail("grid needs x_max > 1, x_points >= 2");
  if (grid.profile_per_decade < 512) fail("grid.profile_per_decade must be >= 512");
  if (grid.sweep_points < 2) fail("grid.sweep_points must be >= 2");
  if (!finite_pos(V) || !finite_pos(m)) fail("V and m must be finite and > 0");
  if (p && !finite_pos(*p)) fail("p must be finite and > 0");
  for (const auto& pr : function.pairs) {
    if (!std::isfinite(pr[0]) || !std::isfinite(pr[1])) fail("function entries must be finite");
  }
  for (double x : family.masses) {
    if (!finite_pos(x)) fail("family.masses must be finite and > 0");
  }
  static const std::vector<std::string> families{"staircase", "indicator", "dyadic", "function"};
  if (std::find(families.begin(), families.end(), family.kind) == families.end()) {
    fail("unknown family.kind '" + family.kind + "'");
  }
  static const std::vector<std::string> norms{"lorentz", "weak", "llogl", "llogl-log3", "mphi", "lexp", "philog"};
  if (std::find(norms.begin(), norms.end(), norm.kind) == norms.end()) fail("unknown norm.kind '" + norm.kind + "'");
  if (!output.format.empty() && output.format != "json" && output.format != "csv") {
    fail("output.format must be json or csv");
  }
}

AdmissibleFunction make_phi(const PhiConfig& c) {
  try {
    return AdmissibleFunction::example(c.gamma, c.log_exponents);
  } catch (const std::invalid_argument& e) {
    fail(std::string("phi: ") + e.what());
  }
}

KernelSpec make_spec(const KernelConfig& c) {
  KernelSpec s{c.p0, c.p1, make_phi(c.phi), c.delta};
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    fail(std::string("kernel: ") + e.what());
  }
  return s;
}

SimpleFunction make_simple(const FunctionConfig& c) {
  try {
    switch (c.kind) {
      case FunctionConfig::Kind::none:
        return {};
      case FunctionConfig::Kind::atoms: {
        std::vector<SimpleFunction::Atom> atoms;
        for (const auto& pr : c.pairs) atoms.push_back({pr[0], pr[1]});
        return SimpleFunction(std::move(atoms));
      }
      case FunctionConfig::Kind::steps: {
        // Each step [b_{i-1}, b_i) becomes an atom in left-to-right order.
        std::vector<SimpleFunction::Atom> atoms;
        const StepFunction s = make_step(c);
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (s.values()[i] > 0.0) atoms.push_back({s.values()[i], s.breakpoints()[i] - s.lower(i)});
        }
        return SimpleFunction(std::move(atoms));
      }
    }
  } catch (const std::invalid_argument& e) {
    fail(std::string("function: ") + e.what());
  }
  return {};
}

StepFunction make_step(const FunctionConfig& c) {
  try {
    if (c.kind == FunctionConfig::Kind::steps) {
      std::vector<double> b, v;
      for (const auto& pr : c.pairs) {
        b.push_back(pr[0]);
        v.push_back(pr[1]);
      }
      return StepFunction(std::move(b), std::move(v));
    }
    return lay_out(make_simple(c));
  } catch (const std::invalid_argument& e) {
    fail(std::string("function: ") + e.what());
  }
}

std::vector<FamilyMember> make_family(const RunConfig& c) {
  if (c.family.kind == "staircase") return staircase_family(c.family.count, c.family.seed);
  if (c.family.kind == "indicator") return indicator_family(c.family.masses);
  if (c.family.kind == "dyadic") return dyadic_family();
  return {FamilyMember{"function", make_simple(c.function)}};
}

}  // namespace xlab::cli
