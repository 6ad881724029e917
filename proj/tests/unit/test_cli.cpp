#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "ncps/cli/commands.hpp"

namespace fs = std::filesystem;
using ncps::cli::run;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::map<std::string, std::string>> csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  {
    std::istringstream h(line);
    std::string cell;
    while (std::getline(h, cell, ',')) header.push_back(cell);
  }
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    std::istringstream l(line);
    std::string cell;
    std::map<std::string, std::string> row;
    for (const auto& name : header) {
      std::getline(l, cell, ',');
      row[name] = cell;
    }
    rows.push_back(row);
  }
  return rows;
}

const std::map<std::string, std::string>* level(const std::vector<std::map<std::string, std::string>>& rows,
                                                 const char* np, const char* nm) {
  for (const auto& r : rows)
    if (r.at("n_plus") == np && r.at("n_minus") == nm) return &r;
  return nullptr;
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("ncps_test_" + name); }

}  // namespace

TEST(Verify, DefaultRunFailsOnlyOnDiagonalClosedForms) {
  const Outcome o = call({"verify"});
  EXPECT_EQ(o.code, 1);
  const json j = json::parse(o.out);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["first_failure"], "diagonal: m*omega^2*q2^2*q1^2");
  std::map<std::string, int> failures;
  for (const auto& c : j["checks"])
    if (c["status"] != "pass") ++failures[c["group"].get<std::string>() + "/" + c["name"].get<std::string>()];
  EXPECT_EQ(failures.size(), 3u);
  EXPECT_TRUE(failures.count("diagonal/m*omega^2*q2^2*q1^2"));
  EXPECT_TRUE(failures.count("diagonal/q2^2*pi2^2/m"));
  EXPECT_TRUE(failures.count("diagonal/E_tau/tau"));
  EXPECT_NE(o.err.find("verification failed"), std::string::npos);
}

TEST(Verify, SymbolicGroupsAllPass) {
  const json j = json::parse(call({"verify"}).out);
  std::map<std::string, int> counts;
  for (const auto& c : j["checks"]) {
    const std::string group = c["group"];
    if (group == "diagonal") continue;
    EXPECT_EQ(c["status"], "pass") << group << " " << c["name"];
    ++counts[group];
  }
  EXPECT_EQ(counts["bopp_closure"], 6);
  EXPECT_EQ(counts["deformed_algebra"], 6);
  EXPECT_EQ(counts["jacobi"], 4);
  EXPECT_EQ(counts["adjoint"], 4);
  EXPECT_EQ(counts["hamiltonian"], 1);
  EXPECT_EQ(counts["pt_symmetry"], 9);
}

TEST(Verify, ThetaEtaPolicyReportsKnownDeviation) {
  const json j = json::parse(call({"verify", "--policy", "with_theta_eta"}).out);
  int known = 0;
  for (const auto& c : j["checks"])
    if (c["status"] == "known") {
      ++known;
      EXPECT_EQ(c["residual"], "1/4*i*hbar^-1*theta*eta");
    }
  EXPECT_EQ(known, 2);
  EXPECT_EQ(j["first_failure"], "diagonal: m*omega^2*q2^2*q1^2");
}

TEST(Verify, SabotagedEpsilonBreaksBoppClosure) {
  const Outcome o = call({"verify", "--sabotage-epsilon"});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(json::parse(o.out)["first_failure"], "bopp_closure: [x,y]");
}

TEST(Spectrum, ReferencePointRow) {
  const Outcome o = call({"spectrum", "--theta", "0.02", "--eta", "0.03", "--tau", "0.005", "--cutoff", "16"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv(o.out);
  const auto* r = level(rows, "1", "0");
  ASSERT_NE(r, nullptr);
  EXPECT_EQ(r->at("E_analytic"), "2.0325");
  EXPECT_NEAR(std::stod(r->at("E_numeric_re")), 2.0325, 1e-3);
}

TEST(Spectrum, UndeformedRowsExact) {
  const Outcome o = call({"spectrum"});
  ASSERT_EQ(o.code, 0);
  const auto rows = csv(o.out);
  EXPECT_EQ(rows.size(), 45u);  // n+ + n- <= 8 at the default cutoff 12
  for (const auto& r : rows) EXPECT_LE(std::stod(r.at("abs_err")), 1e-8);
}

TEST(Spectrum, RotationSplitting) {
  const auto rows = csv(call({"spectrum", "--theta", "0.02", "--eta", "0.03", "--cutoff", "16"}).out);
  const double split = std::stod(level(rows, "1", "0")->at("E_numeric_re")) -
                       std::stod(level(rows, "0", "1")->at("E_numeric_re"));
  EXPECT_NEAR(split, 0.05, 1e-10);
}

TEST(Spectrum, JsonFormat) {
  const Outcome o = call({"spectrum", "--format", "json", "--cutoff", "6"});
  const json j = json::parse(o.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["n_plus"], 0);
  EXPECT_DOUBLE_EQ(j[0]["E_numeric_re"].get<double>(), 1.0);
}

TEST(Sweep, GroundStateAnalyticColumn) {
  const Outcome o = call({"sweep", "--param", "tau", "--from", "0", "--to", "0.01", "--steps", "11"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv(o.out);
  std::vector<std::pair<double, double>> ground;
  for (const auto& r : rows)
    if (r.at("n_plus") == "0" && r.at("n_minus") == "0") {
      const double tau = std::stod(r.at("param_value"));
      EXPECT_NEAR(std::stod(r.at("E_analytic")), 1 + tau, 1e-12);
      EXPECT_EQ(r.at("status"), "ok");
      ground.emplace_back(tau, std::stod(r.at("E_analytic")));
    }
  ASSERT_EQ(ground.size(), 11u);
  // halving tau halves E_analytic - hbar omega
  EXPECT_NEAR((ground[10].second - 1) / (ground[5].second - 1), 2.0, 1e-9);
}

TEST(Sweep, AbsoluteErrorGrowsLinearlyInTau) {
  // the numeric ground state moves by tau/2 while the closed form moves by
  // tau, so the discrepancy is first order
  const auto rows = csv(call({"sweep", "--param", "tau", "--from", "0.0025", "--to", "0.01", "--steps", "4"}).out);
  std::vector<double> tau, err;
  for (const auto& r : rows)
    if (r.at("n_plus") == "0" && r.at("n_minus") == "0") {
      tau.push_back(std::log(std::stod(r.at("param_value"))));
      err.push_back(std::log(std::stod(r.at("abs_err"))));
    }
  ASSERT_EQ(tau.size(), 4u);
  const double slope = (err.back() - err.front()) / (tau.back() - tau.front());
  EXPECT_NEAR(slope, 1.0, 0.05);
}

TEST(Sweep, FailingPointsAreRecorded) {
  const Outcome o = call({"sweep", "--param", "mass", "--from", "-1", "--to", "1", "--steps", "3", "--cutoff", "6"});
  EXPECT_EQ(o.code, 3);
  const auto rows = csv(o.out);
  ASSERT_FALSE(rows.empty());
  EXPECT_EQ(rows.front().at("param_value"), "-1");
  EXPECT_EQ(rows.front().at("status").rfind("error:", 0), 0u);
  EXPECT_EQ(rows.back().at("param_value"), "1");
  EXPECT_EQ(rows.back().at("status"), "ok");
}

TEST(Uncertainty, ReferencePoint) {
  const Outcome o = call({"uncertainty", "--theta", "0.1", "--tau", "0.04"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json j = json::parse(o.out);
  EXPECT_NEAR(j["bounds"]["delta_X_min"].get<double>(), 0.02, 1e-9);
  EXPECT_NEAR(j["bounds"]["delta_Py_min"].get<double>(), 0.2, 1e-9);
  EXPECT_NEAR(j["bounds"]["squeezing_upper_bound"].get<double>(), 0.714285714286, 1e-9);
  for (const char* k : {"mean_Y", "delta_Y", "mean_Py", "delta_Py"}) EXPECT_TRUE(j.contains(k));
  EXPECT_FALSE(j.contains("brute_force"));
}

TEST(Uncertainty, FlatLimit) {
  const json j = json::parse(call({"uncertainty"}).out);
  EXPECT_EQ(j["bounds"]["delta_X_min"].get<double>(), 0.0);
  EXPECT_EQ(j["bounds"]["delta_Py_min"].get<double>(), 0.0);
  EXPECT_NEAR(j["bounds"]["squeezing_upper_bound"].get<double>(), 0.707106781187, 1e-12);
  EXPECT_NEAR(j["delta_Y"].get<double>() * j["delta_Py"].get<double>(), 0.5, 1e-9);
}

TEST(Uncertainty, BruteForceBlock) {
  const Outcome o = call({"uncertainty", "--theta", "0.1", "--tau", "0.04", "--brute-force"});
  ASSERT_EQ(o.code, 0) << o.err;
  const json b = json::parse(o.out)["brute_force"];
  EXPECT_EQ(b["max_bound_violation"].get<double>(), 0.0);
  EXPECT_TRUE(b["no_violation"].get<bool>());
  EXPECT_TRUE(b["approaches_within_2pct"].get<bool>());
}

TEST(Uncertainty, DomainErrorSurfaces) {
  const Outcome o = call({"uncertainty", "--tau", "2.5"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("squeezing bound needs hbar tau < 2"), std::string::npos);
}

TEST(Usage, BadInputsExitTwo) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"bogus"}).code, 2);
  EXPECT_EQ(call({"spectrum", "--cutoff", "3"}).code, 2);
  EXPECT_EQ(call({"spectrum", "--policy", "second_order"}).code, 2);
  EXPECT_EQ(call({"spectrum", "--format", "xml"}).code, 2);
  EXPECT_EQ(call({"spectrum", "--mass", "0"}).code, 2);
  EXPECT_EQ(call({"sweep", "--param", "kappa"}).code, 2);
  EXPECT_EQ(call({"uncertainty", "--format", "csv"}).code, 2);
  EXPECT_EQ(call({"spectrum", "--hbar", "abc"}).code, 2);
  EXPECT_EQ(call({"spectrum", "--config", "/nonexistent/ncps.json"}).code, 2);
}

TEST(Config, FileFillsMissingFlagsAndFlagsWin) {
  const fs::path cfg = temp_file("config.json");
  {
    std::ofstream f(cfg);
    f << R"({"theta": 0.02, "eta": 0.03, "tau": 0.005, "cutoff": 16, "format": "json"})";
  }
  const Outcome a = call({"spectrum", "--config", cfg.string()});
  ASSERT_EQ(a.code, 0) << a.err;
  const json ja = json::parse(a.out);
  bool found = false;
  for (const auto& r : ja)
    if (r["n_plus"] == 1 && r["n_minus"] == 0) {
      EXPECT_DOUBLE_EQ(r["E_analytic"].get<double>(), 2.0325);
      found = true;
    }
  EXPECT_TRUE(found);
  const Outcome b = call({"spectrum", "--config", cfg.string(), "--format", "csv", "--tau", "0"});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(level(csv(b.out), "1", "0")->at("E_analytic"), "2.025");

  {
    std::ofstream f(cfg);
    f << R"({"no_such_flag": 1})";
  }
  EXPECT_EQ(call({"spectrum", "--config", cfg.string()}).code, 2);
  fs::remove(cfg);
}

TEST(Output, FileAndDeterminism) {
  const fs::path out = temp_file("sweep.csv");
  const std::vector<std::string> args{"sweep", "--theta", "0.02", "--from", "0", "--to", "0.01",
                                      "--steps", "5", "--cutoff", "10", "--out", out.string()};
  ASSERT_EQ(call(args).code, 0);
  std::stringstream first;
  first << std::ifstream(out).rdbuf();
  ASSERT_EQ(call(args).code, 0);
  std::stringstream second;
  second << std::ifstream(out).rdbuf();
  EXPECT_FALSE(first.str().empty());
  EXPECT_EQ(first.str(), second.str());
  // sweep rows equal single spectrum runs
  const auto rows = csv(first.str());
  const auto single = csv(call({"spectrum", "--theta", "0.02", "--tau", "0.005", "--cutoff", "10"}).out);
  for (const auto& r : rows)
    if (r.at("param_value") == "0.005" && r.at("n_plus") == "2" && r.at("n_minus") == "1") {
      EXPECT_EQ(r.at("E_numeric_re"), level(single, "2", "1")->at("E_numeric_re"));
    }
  fs::remove(out);
}

TEST(Binary, ExitCodes) {
  auto status = [](const std::string& args) {
    const std::string cmd = std::string(NCPS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("spectrum --cutoff 4"), 0);
  EXPECT_EQ(status("verify"), 1);
  EXPECT_EQ(status("spectrum --cutoff 2"), 2);
  EXPECT_EQ(status("--help"), 0);
  EXPECT_EQ(status("sweep --param mass --from -1 --to 1 --steps 2 --cutoff 4"), 3);
}
