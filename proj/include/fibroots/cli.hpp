#pragma once

// Command execution behind the fibroots binary. Flag parsing lives in the
// tool; everything here is testable without a process boundary. Output for
// a fixed config is byte-identical for any worker count.
//
// Exit codes: 0 success, 1 argument/configuration errors, 2 verification
// suite failure.

#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fibroots/analytics.hpp"
#include "fibroots/fibroot.hpp"
#include "fibroots/report.hpp"
#include "fibroots/verify.hpp"

namespace fibroots {

enum class Command { primes, integers, roots, constants, asymptotic, verify, quadratic };

enum class OutputFormat { table, csv, json };

struct RunConfig {
  Command command = Command::primes;
  u64 limit = 10'000;
  u64 prime_limit = 1301;
  OutputFormat format = OutputFormat::table;
  std::optional<std::string> output_path;
  unsigned workers = 1;
  // `roots n`
  u64 roots_n = 0;
  // `quadratic a b c n`
  std::int64_t quad_a = 1;
  std::int64_t quad_b = -1;
  std::int64_t quad_c = -1;
  u64 quad_n = 2;
};

namespace detail {

inline Cell opt_cell(const std::optional<u64>& v) {
  if (v) return Cell{*v};
  return Cell{std::monostate{}};
}

inline Table primes_table(const std::vector<PrimeRecord>& records) {
  Table t;
  t.columns = {"p", "root1", "root2", "class", "lift_witness"};
  for (const PrimeRecord& rec : records) {
    std::optional<u64> r1, r2;
    if (!rec.congruence_roots.empty()) r1 = rec.congruence_roots[0];
    if (rec.congruence_roots.size() > 1) r2 = rec.congruence_roots[1];
    t.rows.push_back({Cell{rec.p}, opt_cell(r1), opt_cell(r2),
                      Cell{std::string(to_string(rec.cls))},
                      opt_cell(rec.lift_witness)});
  }
  return t;
}

inline Table integers_table(const std::vector<FibIntegerRecord>& records) {
  Table t;
  t.columns = {"n", "lambda", "roots", "f_value"};
  for (const FibIntegerRecord& rec : records) {
    std::string roots;
    for (std::size_t i = 0; i < rec.roots.size(); ++i) {
      if (i) roots += ';';
      roots += std::to_string(rec.roots[i]);
    }
    t.rows.push_back({Cell{rec.n}, Cell{rec.lambda_n}, Cell{roots},
                      Cell{static_cast<u64>(rec.f_value)}});
  }
  return t;
}

inline Table roots_table(u64 n) {
  Table t;
  t.columns = {"root", "order"};
  u64 lambda_n = carmichael_lambda(n);
  for (u64 r : solve_fibonacci_roots(n)) {
    if (std::gcd(r, n) != 1) continue;
    u64 ord = multiplicative_order(r, n);
    if (ord == lambda_n) t.rows.push_back({Cell{r}, Cell{ord}});
  }
  return t;
}

inline Table constants_table(const ConstantsReport& rep) {
  Table t;
  t.columns = {"name", "value", "prime_limit", "error_bound"};
  auto row = [&](const char* name, double value, u64 limit, std::optional<double> err) {
    Cell e = err ? Cell{*err} : Cell{std::monostate{}};
    t.rows.push_back({Cell{std::string(name)}, Cell{value}, Cell{limit}, e});
  };
  row("alpha_f", rep.alpha_f, rep.prime_limit, rep.alpha_error);
  row("alpha_f_reference", rep.alpha_reference, rep.alpha_reference_limit,
      rep.alpha_reference_error);
  row("beta_f", rep.beta_f, rep.prime_limit, rep.beta_error);
  row("gamma_f", rep.gamma_f, rep.prime_limit, rep.gamma_error);
  row("nu_f", rep.nu_f, rep.prime_limit, rep.nu_error);
  row("nu_f_closed_form", rep.nu_f_closed_form, rep.prime_limit, std::nullopt);
  row("kappa_f", rep.kappa_f, rep.prime_limit, rep.kappa_error);
  row("correction_a", rep.correction_a.value, rep.correction_a.search_limit,
      std::nullopt);
  row("gamma_f_minus_gamma_alpha", rep.gamma_f_minus_gamma_alpha, rep.prime_limit,
      std::nullopt);
  return t;
}

inline Table asymptotic_table(const std::vector<AsymptoticComparison>& rows) {
  Table t;
  t.columns = {"which", "x", "exact", "predicted", "ratio"};
  for (const AsymptoticComparison& r : rows) {
    t.rows.push_back({Cell{r.which}, Cell{r.x}, Cell{r.exact}, Cell{r.predicted},
                      Cell{r.ratio}});
  }
  return t;
}

inline Table quadratic_table(const std::vector<u64>& xs) {
  Table t;
  t.columns = {"x"};
  for (u64 x : xs) t.rows.push_back({Cell{x}});
  return t;
}

inline Table verify_table(const std::vector<CheckResult>& results) {
  Table t;
  t.columns = {"check", "status", "detail"};
  for (const CheckResult& r : results) {
    t.rows.push_back({Cell{r.name}, Cell{std::string(r.passed ? "PASS" : "FAIL")},
                      Cell{r.detail}});
  }
  return t;
}

inline std::string serialize(const Table& t, OutputFormat format) {
  switch (format) {
    case OutputFormat::csv: return to_csv(t);
    case OutputFormat::json: return to_json(t);
    default: return to_text(t);
  }
}

inline int verification_exit_code(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results) {
    if (!r.passed) return 2;
  }
  return 0;
}

}  // namespace detail

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.workers < 1) {
      err << "error: workers must be >= 1\n";
      return 1;
    }
    bool needs_limit = cfg.command == Command::primes ||
                       cfg.command == Command::integers ||
                       cfg.command == Command::asymptotic ||
                       cfg.command == Command::verify;
    if (needs_limit && cfg.limit < 2) {
      err << "error: --limit must be >= 2\n";
      return 1;
    }

    Table table;
    int status = 0;
    switch (cfg.command) {
      case Command::primes:
        table = detail::primes_table(enumerate_pf(cfg.limit, cfg.workers));
        break;
      case Command::integers:
        table = detail::integers_table(enumerate_nf(cfg.limit, cfg.workers));
        break;
      case Command::roots:
        if (cfg.roots_n < 2) {
          err << "error: roots requires n >= 2\n";
          return 1;
        }
        table = detail::roots_table(cfg.roots_n);
        break;
      case Command::constants:
        table = detail::constants_table(
            compute_constants(cfg.prime_limit, cfg.workers));
        break;
      case Command::asymptotic:
        table = detail::asymptotic_table(asymptotic_comparisons(
            cfg.limit, compute_constants(cfg.prime_limit, cfg.workers),
            cfg.workers));
        break;
      case Command::quadratic:
        table = detail::quadratic_table(
            solve_general_quadratic(cfg.quad_a, cfg.quad_b, cfg.quad_c, cfg.quad_n));
        break;
      case Command::verify: {
        std::vector<CheckResult> results = run_verification(cfg.limit, cfg.workers);
        table = detail::verify_table(results);
        status = detail::verification_exit_code(results);
        break;
      }
    }

    std::string payload = detail::serialize(table, cfg.format);
    if (cfg.output_path) {
      std::ofstream file(*cfg.output_path, std::ios::binary);
      if (!file) {
        err << "error: cannot open output path: " << *cfg.output_path << "\n";
        return 1;
      }
      file << payload;
      file.flush();
      if (!file) {
        err << "error: failed writing output path: " << *cfg.output_path << "\n";
        return 1;
      }
    } else {
      out << payload;
    }
    return status;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace fibroots
