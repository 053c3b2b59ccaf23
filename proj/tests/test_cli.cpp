#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "xlab/cli.hpp"

using namespace xlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

fs::path temp_file(const std::string& name, const std::string& content) {
  const fs::path p = fs::temp_directory_path() / ("xlab_test_" + name);
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "xlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

Run run_config(const std::string& name, const std::string& json, std::vector<std::string> args) {
  const fs::path p = temp_file(name, json);
  args.push_back("--config");
  args.push_back(p.string());
  return run(args);
}

}  // namespace

TEST_CASE("apply rows") {
  const Run r = run_config("apply.json", R"({"function": {"atoms": [[1, 1]]}, "grid": {"t_values": [0.5, 1]}})",
                           {"apply"});
  CHECK(r.status == 0);
  CHECK(r.out.find("t,P,Q,R\r\n") == 0);
  CHECK(r.out.find("\r\n1,2,0,2\r\n") != std::string::npos);
  CHECK(r.out.find("\r\n0.5,2,0.7568284600108846,") != std::string::npos);

  // Values are the library's, printed to round trip.
  const CalderonOperator op(KernelSpec{});
  const double q = op.apply(OperatorInput::from(StepFunction({1.0}, {1.0})), 0.5).q;
  CHECK(r.out.find("," + cli::format_double(q) + ",") != std::string::npos);
  CHECK(std::stod(cli::format_double(q)) == q);

  const Run empty = run_config("empty.json", R"({"grid": {"t_points": 5}})", {"apply"});
  CHECK(empty.status == 0);
  std::istringstream lines(empty.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    CHECK(line.substr(line.find(',')) == ",0,0,0\r");
    ++rows;
  }
  CHECK(rows == 5);

  const Run steps = run_config("steps.json", R"({"function": {"steps": [[1, 0], [2, 3]]}, "grid": {"t_values": [1.5]}})",
                               {"apply", "--format", "json"});
  CHECK(steps.status == 0);
  const auto j = nlohmann::json::parse(steps.out);
  CHECK(j["rows"][0]["t"] == 1.5);

  CHECK(run_config("bad_fn.json", R"({"function": {"atoms": [[1, -1]]}})", {"apply"}).status == 2);
  CHECK(run_config("bad_fn2.json", R"({"function": {"atoms": [[1]]}})", {"apply"}).status == 2);
  CHECK(run_config("bad_fn3.json", R"({"function": {"steps": [[2, 1], [1, 1]]}})", {"apply"}).status == 2);
}

TEST_CASE("check-phi") {
  const Run g1 = run_config("g1.json", R"({"phi": {"gamma": 1}})", {"check-phi"});
  CHECK(g1.status == 0);
  const auto j = nlohmann::json::parse(g1.out);
  CHECK(j["passed"] == true);
  CHECK(j["degenerate"] == false);
  const Run g0 = run_config("g0.json", R"({"phi": {"gamma": 0}})", {"check-phi"});
  CHECK(g0.status == 0);
  CHECK(nlohmann::json::parse(g0.out)["degenerate"] == true);
  CHECK(run_config("gm.json", R"({"phi": {"gamma": -1}})", {"check-phi"}).status == 2);
  CHECK(run_config("gl.json", R"({"kernel": {"phi": {"gamma": 1, "log_exponents": [1, 0.5]}}})", {"check-phi"}).status == 0);
}

TEST_CASE("rearrange and norm") {
  const Run r = run_config("re.json", R"({"function": {"atoms": [[3, 0.5], [1, 1.0], [2, 0.25]]}})",
                           {"rearrange", "--format", "csv"});
  CHECK(r.status == 0);
  CHECK(r.out == "lower,upper,fstar\r\n0,0.5,3\r\n0.5,0.75,2\r\n0.75,1.75,1\r\n");

  const Run n = run_config("n.json", R"({"function": {"atoms": [[1, 4]]}, "norm": {"kind": "lorentz", "p": 2, "q": 1}})",
                           {"norm"});
  CHECK(n.status == 0);
  CHECK(nlohmann::json::parse(n.out)["value"] == 4.0);
  const Run ph = run_config(
      "ph.json", R"({"function": {"atoms": [[1, 1]]}, "phi": {"gamma": 1}, "norm": {"kind": "philog", "p": 2}})",
      {"norm", "--format", "csv"});
  CHECK(ph.status == 0);
  CHECK(ph.out.find("philog,") != std::string::npos);
  CHECK(run_config("nk.json", R"({"norm": {"kind": "sobolev"}})", {"norm"}).status == 2);
}

TEST_CASE("verify") {
  const Run c = run_config("conv.json", R"({"family": {"kind": "indicator", "masses": [1]}, "p": 4})",
                           {"verify", "converse"});
  CHECK(c.status == 0);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j["suite"] == "converse");
  CHECK(j["passed"] == true);
  CHECK(j["details"]["A_k"].get<double>() == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(j["details"]["A_k_bound"] == 8.0);
  for (const char* key : {"suite", "config", "spec", "params", "worst_ratio", "worst_location", "threshold", "passed",
                          "details"}) {
    CHECK(j.contains(key));
  }

  const Run l = run_config(
      "li.json", R"({"family": {"kind": "function"}, "function": {"atoms": [[1, 1]]}, "grid": {"t_values": [1]}})",
      {"verify", "lemma-identity"});
  CHECK(l.status == 0);
  const auto lj = nlohmann::json::parse(l.out);
  CHECK(lj["details"]["lhs_at_worst"].get<double>() == doctest::Approx(10.0 / 3.0).epsilon(1e-8));
  CHECK(lj["details"]["rhs_at_worst"].get<double>() == doctest::Approx(10.0 / 3.0).epsilon(1e-12));

  CHECK(run({"verify", "bogus"}).status == 2);
  CHECK(run({"verify"}).status == 2);
  CHECK(run({"launch"}).status == 2);
  CHECK(run({"apply", "gh"}).status == 2);
  CHECK(run({"verify", "dilation", "--config", "/nonexistent/cfg.json"}).status == 2);
  CHECK(run_config("badjson.json", "{not json", {"verify", "gh"}).status == 2);
  CHECK(run_config("badkey.json", R"({"kernal": {}})", {"verify", "gh"}).status == 2);
  CHECK(run_config("badp1.json", R"({"kernel": {"p0": 2, "p1": 1}})", {"verify", "pgqg"}).status == 2);
  CHECK(run_config("inf.json", R"({"kernel": {"p0": 2, "p1": "inf"}})", {"verify", "dilation"}).status == 0);
  // Suite preconditions are configuration errors.
  CHECK(run_config("cor.json", R"({"kernel": {"phi": {"gamma": 0}}})", {"verify", "corollary"}).status == 2);
  CHECK(run({"verify", "gh", "--tol-abs", "0"}).status == 2);
  CHECK(run({"verify", "gh", "--format", "xml"}).status == 2);
  CHECK(run({"verify", "gh", "--seed", "-3"}).status == 2);
}

TEST_CASE("seeded runs are byte identical") {
  const std::string cfg = R"({"family": {"count": 5}, "kernel": {"phi": {"gamma": 1}}})";
  const Run a = run_config("det.json", cfg, {"verify", "pgqg", "--seed", "99"});
  const Run b = run_config("det.json", cfg, {"verify", "pgqg", "--seed", "99"});
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["config"]["family"]["seed"] == 99);
  const Run c = run_config("det.json", cfg, {"verify", "pgqg", "--seed", "100"});
  CHECK(c.out != a.out);
}

TEST_CASE("dump-config round trip") {
  const std::string cfg =
      R"({"kernel": {"p0": 1.5, "p1": "inf", "phi": {"gamma": 0.5, "log_exponents": [0, 2]}},
          "function": {"steps": [[0.1, 3], [2.5, 1]]}, "grid": {"t_values": [0.3, 1e-7]},
          "tolerances": {"abs": 1e-12, "rel": 1e-9}, "p": 3, "V": 2.5})";
  const Run d1 = run_config("rt.json", cfg, {"verify", "dilation", "--dump-config", "--seed", "5"});
  CHECK(d1.status == 0);
  const cli::RunConfig c1 = cli::parse_config_text(d1.out);
  CHECK(c1.kernel.p1 == INFINITY);
  CHECK(c1.family.seed == 5u);
  CHECK(c1.suite == "dilation");
  CHECK(c1 == cli::parse_config(cli::to_json(c1)));
  const Run d2 = run_config("rt2.json", d1.out, {"verify", "dilation", "--dump-config"});
  CHECK(d2.out == d1.out);
  // The dumped config reproduces the run.
  const Run r1 = run_config("rt.json", cfg, {"verify", "dilation", "--seed", "5"});
  const Run r2 = run_config("rt3.json", d1.out, {"verify", "dilation"});
  CHECK(r1.out == r2.out);
}

TEST_CASE("output file") {
  const fs::path out = fs::temp_directory_path() / "xlab_test_out.csv";
  fs::remove(out);
  const Run r = run_config("of.json", R"({"function": {"atoms": [[1, 1]]}, "grid": {"t_values": [1]}})",
                           {"apply", "--out", out.string()});
  CHECK(r.status == 0);
  CHECK(r.out.empty());
  std::ifstream f(out, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == "t,P,Q,R\r\n1,2,0,2\r\n");
}

TEST_CASE("format_double") {
  CHECK(cli::format_double(0.1) == "0.1");
  CHECK(cli::format_double(2.0) == "2");
  CHECK(cli::format_double(INFINITY) == "inf");
  CHECK(cli::format_double(NAN) == "nan");
  for (double x : {1.0 / 3.0, 6.02214076e23, 2.2250738585072014e-308, -2.5}) CHECK(std::stod(cli::format_double(x)) == x);
}
