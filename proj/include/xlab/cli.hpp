#pragma once

// Batch front-end: JSON run configs, command dispatch and report output.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "xlab/calderon.hpp"
#include "xlab/quadrature.hpp"
#include "xlab/rearrangement.hpp"
#include "xlab/verify.hpp"

namespace xlab::cli {

/// Exit statuses.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Malformed or out-of-range configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PhiConfig {
  double gamma = 0.0;
  std::vector<double> log_exponents;
  bool operator==(const PhiConfig&) const = default;
};

struct KernelConfig {
  double p0 = 2.0;
  double p1 = 4.0;  // inf allowed, written as "inf"
  PhiConfig phi;
  int delta = 0;
  bool operator==(const KernelConfig&) const = default;
};

/// {"atoms": [[value, mass], ...]} or {"steps": [[breakpoint, value], ...]}.
struct FunctionConfig {
  enum class Kind { none, atoms, steps };
  Kind kind = Kind::none;
  std::vector<std::array<double, 2>> pairs;
  bool operator==(const FunctionConfig&) const = default;
};

struct NormConfig {
  // lorentz | weak | llogl | llogl-log3 | mphi | lexp | philog
  std::string kind = "lorentz";
  double p = 2.0;
  double q = 1.0;  // inf allowed
  double alpha = 1.0;
  bool operator==(const NormConfig&) const = default;
};

struct FamilyConfig {
  // staircase | indicator | dyadic | function
  std::string kind = "staircase";
  std::size_t count = 20;
  std::uint64_t seed = 1;
  std::vector<double> masses{0.1, 1.0, 10.0};  // indicator family
  bool operator==(const FamilyConfig&) const = default;
};

struct GridConfig {
  std::size_t t_points = 400;
  double t_span_decades = 4.0;
  std::vector<double> t_values;  // explicit t grid, overrides the two above
  double x_max = 1e4;            // check-phi grid [1, x_max]
  std::size_t x_points = 120;
  std::size_t profile_per_decade = 512;
  std::size_t sweep_points = 200;  // corollary (s, t) sweep
  bool operator==(const GridConfig&) const = default;
};

struct ToleranceConfig {
  double abs = 1e-10;
  double rel = 1e-8;
  bool operator==(const ToleranceConfig&) const = default;
};

struct OutputConfig {
  std::string path;    // empty: stdout
  std::string format;  // json | csv; empty: command default
  bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
  std::string command;  // check-phi | rearrange | norm | apply | verify
  std::string suite;    // verify only
  KernelConfig kernel;
  FunctionConfig function;
  NormConfig norm;
  FamilyConfig family;
  GridConfig grid;
  ToleranceConfig tolerances;
  std::optional<double> p;  // converse exponent, defaults to kernel.p1
  double V = 1.0;           // corollary
  double m = 1.0;           // char-bound
  OutputConfig output;
  bool operator==(const RunConfig&) const = default;

  /// Range checks; throws ConfigError.
  void validate() const;
};

/// Suite names accepted by `verify`.
const std::vector<std::string>& suite_names();

/// Throws ConfigError on unknown keys, wrong types or bad values. A
/// top-level "phi" is read as kernel.phi.
RunConfig parse_config(const nlohmann::ordered_json& j);
RunConfig parse_config_text(const std::string& text);
/// Normalized form; parse_config(to_json(c)) == c.
nlohmann::ordered_json to_json(const RunConfig& c);

AdmissibleFunction make_phi(const PhiConfig& c);
KernelSpec make_spec(const KernelConfig& c);
/// atoms: the simple function laid out in atom order; steps: as given.
StepFunction make_step(const FunctionConfig& c);
SimpleFunction make_simple(const FunctionConfig& c);
std::vector<FamilyMember> make_family(const RunConfig& c);

/// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite.
std::string format_double(double x);

/// Report JSON as written by `verify`.
nlohmann::ordered_json report_json(const VerificationReport& r, const RunConfig& c);

/// Runs one command. Writes the result to c.output.path (or `out`) and
/// returns the exit status.
int run(const RunConfig& c, std::ostream& out);

/// Full command line: parses argv, loads --config, applies overrides and
/// runs. Diagnostics go to `err`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xlab::cli
