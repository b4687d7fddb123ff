// Command-line front end: enumeration, root solving, constants, asymptotic
// comparison and the verification suite, with table/CSV/JSON output.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "fibroots/cli.hpp"
#include "fibroots/parallel.hpp"

namespace {

void add_output_flags(CLI::App* cmd, fibroots::RunConfig& cfg, std::string& path) {
  static const std::map<std::string, fibroots::OutputFormat> formats{
      {"table", fibroots::OutputFormat::table},
      {"csv", fibroots::OutputFormat::csv},
      {"json", fibroots::OutputFormat::json}};
  cmd->add_option("--format", cfg.format, "Output format: table, csv or json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_option("--output", path, "Write output to this file instead of stdout");
  cmd->add_option("--workers", cfg.workers,
                  "Worker threads (default: FIBROOTS_WORKERS or hardware)");
}

}  // namespace

int main(int argc, char** argv) {
  fibroots::RunConfig cfg;
  cfg.workers = fibroots::default_worker_count();
  std::string output_path;

  CLI::App app{"Fibonacci primitive root toolkit"};
  app.require_subcommand(1);

  auto* primes = app.add_subcommand(
      "primes", "Primes with a Fibonacci primitive root, with A/B class");
  primes->add_option("--limit", cfg.limit, "Upper bound (inclusive)");
  add_output_flags(primes, cfg, output_path);

  auto* integers = app.add_subcommand(
      "integers", "Integers with a Fibonacci primitive root");
  integers->add_option("--limit", cfg.limit, "Upper bound (inclusive)");
  add_output_flags(integers, cfg, output_path);

  auto* roots = app.add_subcommand(
      "roots", "Fibonacci primitive roots of a single modulus");
  roots->add_option("n", cfg.roots_n, "Modulus")->required();
  add_output_flags(roots, cfg, output_path);

  auto* constants = app.add_subcommand(
      "constants", "Density and Mertens-type constants with error bounds");
  constants->add_option("--prime-limit", cfg.prime_limit,
                        "Truncation point of the prime sums and products");
  add_output_flags(constants, cfg, output_path);

  auto* asymptotic = app.add_subcommand(
      "asymptotic", "Exact counts and harmonic sums vs. leading-term predictions");
  asymptotic->add_option("--limit", cfg.limit, "Evaluation point x");
  asymptotic->add_option("--prime-limit", cfg.prime_limit,
                         "Truncation point for the constants used in predictions");
  add_output_flags(asymptotic, cfg, output_path);

  auto* verify = app.add_subcommand(
      "verify", "Oracle-equivalence suite (exit 2 on failure)");
  verify->add_option("--limit", cfg.limit, "Range bound for the checks");
  add_output_flags(verify, cfg, output_path);

  auto* quadratic = app.add_subcommand(
      "quadratic", "Solve a x^2 + b x + c = 0 mod n");
  quadratic->add_option("a", cfg.quad_a, "Leading coefficient")->required();
  quadratic->add_option("b", cfg.quad_b, "Linear coefficient")->required();
  quadratic->add_option("c", cfg.quad_c, "Constant coefficient")->required();
  quadratic->add_option("n", cfg.quad_n, "Modulus")->required();
  add_output_flags(quadratic, cfg, output_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  if (primes->parsed()) cfg.command = fibroots::Command::primes;
  if (integers->parsed()) cfg.command = fibroots::Command::integers;
  if (roots->parsed()) cfg.command = fibroots::Command::roots;
  if (constants->parsed()) cfg.command = fibroots::Command::constants;
  if (asymptotic->parsed()) cfg.command = fibroots::Command::asymptotic;
  if (verify->parsed()) cfg.command = fibroots::Command::verify;
  if (quadratic->parsed()) cfg.command = fibroots::Command::quadratic;
  if (!output_path.empty()) cfg.output_path = output_path;

  return fibroots::run(cfg, std::cout, std::cerr);
}
