#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <entfid/io.hpp>

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

// Runs the installed binary through the shell so env-var prefixes work.
CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const std::string out_path = "cli_out_" + std::to_string(counter) + ".txt";
  const std::string err_path = "cli_err_" + std::to_string(counter) + ".txt";
  ++counter;
  const std::string command =
      args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(command.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return result;
}

CliResult run(const std::string& args) { return run_cli(std::string(ENTFID_CLI_PATH) + " " + args); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

struct TempText {
  std::string path;
  TempText(const std::string& name, const std::string& content) : path("cli_fixture_" + name) {
    std::ofstream(path) << content;
  }
  ~TempText() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("help and argument errors", "[cli]") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("report --help").exit_code == 0);
  CHECK(run("").exit_code == 2);                            // subcommand required
  CHECK(run("report --state mixed:dim=2").exit_code == 2);  // missing --channel
  CHECK(run("verify --format yaml --samples 5").exit_code == 2);
}

TEST_CASE("report on a mixed state and a swap-replace channel", "[cli]") {
  const CliResult r = run("report --state mixed:dim=2 --channel replace:dim=2");
  REQUIRE(r.exit_code == 0);
  const entfid::Json j = entfid::Json::parse(r.out);
  CHECK(std::abs(j["fidelity"].get<double>() - 1.0) < 1e-12);
  CHECK(std::abs(j["fe_kraus"].get<double>() - 0.25) < 1e-12);
  CHECK(j["inequalities"].size() == 2);
  for (const auto& row : j["inequalities"]) CHECK(row["pass"].get<bool>());
}

TEST_CASE("report with the extension search cross-check", "[cli]") {
  const CliResult r = run(
      "report --state mixed:dim=2 --channel depolarizing:p=0.3 "
      "--search --restarts 3 --dt 2 --seed 5");
  REQUIRE(r.exit_code == 0);
  const entfid::Json j = entfid::Json::parse(r.out);
  const double fe = j["fe_kraus"].get<double>();
  CHECK(std::abs(fe - 0.775) < 1e-12);
  CHECK(std::abs(j["extension_search"]["min_value"].get<double>() - fe) < 1e-3);
  CHECK(std::abs(j["dynamics_search"]["min_value"].get<double>() - fe) < 1e-3);
  REQUIRE(j["inequalities"].size() == 5);
  for (const auto& row : j["inequalities"]) CHECK(row["pass"].get<bool>());
}

TEST_CASE("report accepts state and channel files", "[cli]") {
  TempText pure("pure.json", R"({"dim": 2, "amplitudes": [[1, 0], [0, 0]]})");
  const CliResult r = run("report --state " + pure.path + " --channel identity:dim=2");
  REQUIRE(r.exit_code == 0);
  const entfid::Json j = entfid::Json::parse(r.out);
  CHECK(std::abs(j["fidelity"].get<double>() - 1.0) < 1e-12);
  CHECK(std::abs(j["fe_kraus"].get<double>() - 1.0) < 1e-12);
  CHECK(j["inequalities"].size() == 3);  // pure input adds the equality row
}

TEST_CASE("report rejects bad inputs with exit 2 and a field name", "[cli]") {
  TempText bad("bad_trace.json",
               R"({"dim": 2, "entries": [[0.4, 0], [0, 0], [0, 0], [0.5, 0]]})");
  const CliResult trace = run("report --state " + bad.path + " --channel identity:dim=2");
  CHECK(trace.exit_code == 2);
  CHECK(trace.err.find("trace") != std::string::npos);

  const CliResult mismatch = run("report --state mixed:dim=3 --channel identity:dim=2");
  CHECK(mismatch.exit_code == 2);
  CHECK(mismatch.err.find("dim") != std::string::npos);

  const CliResult unknown = run("report --state foo:dim=2 --channel identity:dim=2");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.err.find("state") != std::string::npos);
}

TEST_CASE("basis state through the identity keeps both fidelities at one", "[cli]") {
  const CliResult r = run("report --state basis:dim=2,k=0 --channel identity:dim=2");
  REQUIRE(r.exit_code == 0);
  const entfid::Json j = entfid::Json::parse(r.out);
  CHECK(std::abs(j["fidelity"].get<double>() - 1.0) < 1e-12);
  CHECK(std::abs(j["fe_purification"].get<double>() - 1.0) < 1e-12);
}

TEST_CASE("verify emits the pinned CSV contract and is deterministic", "[cli]") {
  const CliResult first = run("verify --samples 25 --seed 3");
  REQUIRE(first.exit_code == 0);
  const auto lines = lines_of(first.out);
  REQUIRE(lines.size() >= 2);
  CHECK(lines[0] == "property,samples,max_violation,pass");
  CHECK(lines.size() == 29);  // header + one row per suite
  for (std::size_t i = 1; i < lines.size(); ++i) {
    CAPTURE(lines[i]);
    CHECK(lines[i].substr(lines[i].size() - 2) == ",1");
  }

  const CliResult second = run("verify --samples 25 --seed 3");
  CHECK(second.out == first.out);  // byte-identical rerun

  const CliResult as_json = run("verify --samples 25 --seed 3 --format json");
  REQUIRE(as_json.exit_code == 0);
  const entfid::Json j = entfid::Json::parse(as_json.out);
  REQUIRE(j.size() == 28);
  for (const auto& row : j) {
    CHECK(row["pass"].get<bool>());
    CHECK(row["max_violation"].get<double>() <= row["tolerance"].get<double>());
  }
}

TEST_CASE("verify seed can come from the environment", "[cli]") {
  const CliResult flagged = run("verify --samples 10 --seed 7");
  const CliResult from_env =
      run_cli("ENTFID_SEED=7 " + std::string(ENTFID_CLI_PATH) + " verify --samples 10");
  REQUIRE(flagged.exit_code == 0);
  REQUIRE(from_env.exit_code == 0);
  CHECK(from_env.out == flagged.out);

  const CliResult garbage =
      run_cli("ENTFID_SEED=banana " + std::string(ENTFID_CLI_PATH) + " verify --samples 10");
  CHECK(garbage.exit_code == 2);
}

TEST_CASE("verify fault injection flips the exit code", "[cli]") {
  const CliResult faulty = run("verify --samples 10 --inject-fault");
  CHECK(faulty.exit_code == 1);
  CHECK(faulty.out.find("negative_control_broken_channel") != std::string::npos);
  const auto lines = lines_of(faulty.out);
  CHECK(lines.back().substr(lines.back().size() - 2) == ",0");

  const CliResult waived =
      run("verify --samples 10 --inject-fault --tol negative_control_broken_channel=1");
  CHECK(waived.exit_code == 0);

  const CliResult bad_tol = run("verify --samples 10 --tol nonsense");
  CHECK(bad_tol.exit_code == 2);
  CHECK(bad_tol.err.find("tol") != std::string::npos);
}

TEST_CASE("sweep tabulates closed-form values", "[cli]") {
  const CliResult depol = run("sweep --channel depolarizing --grid 0,0.5,1");
  REQUIRE(depol.exit_code == 0);
  const auto lines = lines_of(depol.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "parameter,fidelity,entanglement_fidelity");
  CHECK(lines[1] == "0,1,1");
  CHECK(lines[2] == "0.5,1,0.625");
  CHECK(lines[3] == "1,1,0.25");

  const CliResult replace = run("sweep --channel replace --grid 0,1");
  const auto replace_lines = lines_of(replace.out);
  REQUIRE(replace.exit_code == 0);
  CHECK(replace_lines[1] == "0,1,0.25");
  CHECK(replace_lines[2] == "1,1,0.25");

  const CliResult damping = run("sweep --channel amplitude-damping --grid 0,1");
  const auto damping_lines = lines_of(damping.out);
  REQUIRE(damping.exit_code == 0);
  CHECK(damping_lines[1] == "0,1,1");
  CHECK(damping_lines[2] == "1,0.5,0.25");

  const CliResult as_json = run("sweep --channel dephasing --grid 0.5 --format json");
  REQUIRE(as_json.exit_code == 0);
  const entfid::Json j = entfid::Json::parse(as_json.out);
  REQUIRE(j.size() == 1);
  CHECK(std::abs(j[0]["parameter"].get<double>() - 0.5) < 1e-15);
}

TEST_CASE("sweep rejects bad grids and families", "[cli]") {
  CHECK(run("sweep --channel depolarizing").exit_code == 2);  // --grid required
  const CliResult empty = run("sweep --channel depolarizing --grid ''");
  CHECK(empty.exit_code == 2);
  CHECK(empty.err.find("grid") != std::string::npos);

  const CliResult unknown = run("sweep --channel squeeze --grid 0.5");
  CHECK(unknown.exit_code == 2);
  CHECK(unknown.err.find("channel") != std::string::npos);

  const CliResult wrong_dim =
      run("sweep --channel amplitude-damping --grid 0.5 --state mixed:dim=3");
  CHECK(wrong_dim.exit_code == 2);
  CHECK(wrong_dim.err.find("dim") != std::string::npos);

  const CliResult bad_value = run("sweep --channel depolarizing --grid 0.1,oops");
  CHECK(bad_value.exit_code == 2);
  CHECK(bad_value.err.find("grid") != std::string::npos);
}

TEST_CASE("epr-demo passes and is deterministic", "[cli]") {
  const CliResult first = run("epr-demo --restarts 3 --seed 1");
  REQUIRE(first.exit_code == 0);
  CHECK(first.out.find("identity") != std::string::npos);
  CHECK(first.out.find("swap-replace") != std::string::npos);
  CHECK(first.out.find("verdict: pass") != std::string::npos);

  const CliResult second = run("epr-demo --restarts 3 --seed 1");
  CHECK(second.out == first.out);
}

TEST_CASE("kl-check vouches for a mildly depolarizing channel", "[cli]") {
  const CliResult r =
      run("kl-check --channel depolarizing:p=0.1 --samples 30 --restarts 3 --seed 2");
  REQUIRE(r.exit_code == 0);
  const entfid::Json j = entfid::Json::parse(r.out);
  CHECK(std::abs(j["epsilon_hat"].get<double>() - 0.05) < 1e-6);
  CHECK(std::abs(j["bound"].get<double>() - 0.925) < 1e-5);
  CHECK(j["pass"].get<bool>());
  CHECK(j["violations"].get<int>() == 0);

  CHECK(run("kl-check --channel depolarizing:p=0.1 --format csv").exit_code == 2);
}
