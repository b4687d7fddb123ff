#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "fibroots/cli.hpp"
#include "json.hpp"

using namespace fibroots;

namespace {

std::string run_to_string(RunConfig cfg, int expected_status = 0) {
  std::ostringstream out, err;
  int status = run(cfg, out, err);
  INFO(err.str());
  REQUIRE(status == expected_status);
  return out.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run_binary(const std::string& args) {
  std::string cmd = std::string(FIBROOTS_CLI_PATH) + " " + args;
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("primes csv rows") {
  RunConfig cfg;
  cfg.command = Command::primes;
  cfg.limit = 1301;
  cfg.format = OutputFormat::csv;
  auto rows = parse_csv(run_to_string(cfg));
  REQUIRE(rows.size() == 57);  // header + 56 primes
  CHECK(rows[0] == std::vector<std::string>{"p", "root1", "root2", "class",
                                            "lift_witness"});
  CHECK(rows[1] == std::vector<std::string>{"5", "3", "", "A", ""});
  CHECK(rows[2] == std::vector<std::string>{"11", "4", "8", "B", "85"});
  CHECK(rows.back()[0] == "1301");
}

TEST_CASE("roots csv rows") {
  RunConfig cfg;
  cfg.command = Command::roots;
  cfg.roots_n = 55;
  cfg.format = OutputFormat::csv;
  auto rows = parse_csv(run_to_string(cfg));
  REQUIRE(rows.size() == 3);
  CHECK(rows[1] == std::vector<std::string>{"8", "20"});
  CHECK(rows[2] == std::vector<std::string>{"48", "20"});
}

TEST_CASE("integers csv rows") {
  RunConfig cfg;
  cfg.command = Command::integers;
  cfg.limit = 60;
  cfg.format = OutputFormat::csv;
  auto rows = parse_csv(run_to_string(cfg));
  REQUIRE(rows.size() == 8);
  CHECK(rows[0] == std::vector<std::string>{"n", "lambda", "roots", "f_value"});
  CHECK(rows[1] == std::vector<std::string>{"5", "4", "3", "1"});
  CHECK(rows[6] == std::vector<std::string>{"55", "20", "8;48", "1"});
}

TEST_CASE("csv and json carry identical data") {
  for (Command cmd : {Command::primes, Command::integers, Command::constants,
                      Command::asymptotic, Command::quadratic}) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.limit = 300;
    cfg.prime_limit = 1301;
    cfg.format = OutputFormat::csv;
    auto csv_rows = parse_csv(run_to_string(cfg));
    cfg.format = OutputFormat::json;
    nlohmann::json parsed = nlohmann::json::parse(run_to_string(cfg));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() + 1 == csv_rows.size());
    const auto& header = csv_rows[0];
    for (std::size_t r = 0; r < parsed.size(); ++r) {
      const auto& obj = parsed[r];
      for (std::size_t c = 0; c < header.size(); ++c) {
        const std::string& cell = csv_rows[r + 1][c];
        const auto& val = obj.at(header[c]);
        CAPTURE(r, header[c], cell);
        if (val.is_null()) {
          REQUIRE(cell.empty());
        } else if (val.is_string()) {
          REQUIRE(cell == val.get<std::string>());
        } else if (val.is_number_unsigned()) {
          REQUIRE(cell == std::to_string(val.get<std::uint64_t>()));
        } else {
          // 17-significant-digit text recovers the exact binary double
          REQUIRE(std::stod(cell) == val.get<double>());
        }
      }
    }
  }
}

TEST_CASE("worker count does not change bytes") {
  for (Command cmd : {Command::primes, Command::integers, Command::asymptotic}) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.limit = 20000;
    cfg.format = OutputFormat::csv;
    cfg.workers = 1;
    std::string one = run_to_string(cfg);
    cfg.workers = 8;
    std::string eight = run_to_string(cfg);
    REQUIRE(one == eight);
  }
}

TEST_CASE("verify command reports all checks") {
  RunConfig cfg;
  cfg.command = Command::verify;
  cfg.limit = 300;
  cfg.format = OutputFormat::csv;
  auto rows = parse_csv(run_to_string(cfg));
  REQUIRE(rows.size() >= 10);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    CAPTURE(rows[r][0], rows[r][2]);
    CHECK(rows[r][1] == "PASS");
  }
}

TEST_CASE("verification exit code mapping") {
  std::vector<CheckResult> ok{{"a", true, ""}, {"b", true, ""}};
  CHECK(detail::verification_exit_code(ok) == 0);
  std::vector<CheckResult> bad{{"a", true, ""}, {"b", false, "boom"}};
  CHECK(detail::verification_exit_code(bad) == 2);
}

TEST_CASE("argument validation") {
  RunConfig cfg;
  cfg.command = Command::primes;
  cfg.limit = 1;
  std::ostringstream out, err;
  CHECK(run(cfg, out, err) == 1);
  CHECK(err.str().find("--limit") != std::string::npos);

  RunConfig bad_workers;
  bad_workers.command = Command::primes;
  bad_workers.workers = 0;
  std::ostringstream out2, err2;
  CHECK(run(bad_workers, out2, err2) == 1);

  RunConfig bad_path;
  bad_path.command = Command::roots;
  bad_path.roots_n = 55;
  bad_path.output_path = "/nonexistent-dir/x.csv";
  std::ostringstream out3, err3;
  CHECK(run(bad_path, out3, err3) == 1);
}

TEST_CASE("binary exit codes and file output") {
  std::string tmp = "cli_test_output.csv";
  std::remove(tmp.c_str());
  CHECK(run_binary("roots 55 --format csv --output " + tmp + " >/dev/null 2>&1") == 0);
  std::string content = read_file(tmp);
  CHECK(content == "root,order\n8,20\n48,20\n");
  std::remove(tmp.c_str());

  CHECK(run_binary("--bogus-flag >/dev/null 2>&1") == 1);
  CHECK(run_binary("primes --limit 1 >/dev/null 2>&1") == 1);
  CHECK(run_binary("roots notanumber >/dev/null 2>&1") == 1);
  CHECK(run_binary("--help >/dev/null 2>&1") == 0);
  CHECK(run_binary("verify --limit 120 --format csv >/dev/null 2>&1") == 0);
}

TEST_CASE("workers environment variable is honored") {
  std::string a = "cli_env_a.csv", b = "cli_env_b.csv";
  CHECK(run_binary("primes --limit 5000 --format csv --workers 1 --output " + a +
                   " >/dev/null 2>&1") == 0);
  int status = std::system(("FIBROOTS_WORKERS=5 " + std::string(FIBROOTS_CLI_PATH) +
                            " primes --limit 5000 --format csv --output " + b +
                            " >/dev/null 2>&1")
                               .c_str());
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(read_file(a) == read_file(b));
  std::remove(a.c_str());
  std::remove(b.c_str());
}
