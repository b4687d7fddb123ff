// Acceptance suite: one pass/fail line per criterion, with timings.
// Criteria and tolerances are fixed here; the process exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fibroots/analytics.hpp"
#include "fibroots/cli.hpp"
#include "fibroots/fibroot.hpp"
#include "fibroots/verify.hpp"

using namespace fibroots;

namespace {

int failures = 0;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

void report(int criterion, const std::string& label, bool passed, double seconds,
            const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%.2f s)%s%s\n", passed ? "PASS" : "FAIL",
              criterion, label.c_str(), seconds,
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!passed) ++failures;
}

const unsigned kWorkers = default_worker_count();

const std::vector<u64> kReferencePrimes = {
    5,    11,   19,   31,   41,   59,   61,   71,   79,   109,  131,  149,
    179,  191,  239,  241,  251,  269,  271,  311,  359,  379,  389,  409,
    419,  431,  439,  449,  479,  491,  499,  569,  571,  599,  601,  631,
    641,  659,  701,  719,  739,  751,  821,  839,  929,  971,  1019, 1039,
    1051, 1091, 1129, 1171, 1181, 1201, 1259, 1301};

void criterion_1_prime_list() {
  Timer t;
  std::vector<u64> got;
  for (const PrimeRecord& rec : enumerate_pf(1301, kWorkers)) got.push_back(rec.p);
  double sec = t.seconds();
  std::ostringstream detail;
  detail << got.size() << " primes";
  bool ok = got == kReferencePrimes && sec < 1.0;
  if (sec >= 1.0) detail << "; exceeded 1 s budget";
  report(1, "prime list reproduction to 1301", ok, sec, detail.str());
}

void criterion_2_composite_witness() {
  Timer t;
  std::vector<u64> roots;
  u64 lambda = carmichael_lambda(55);
  for (u64 r : solve_fibonacci_roots(55)) {
    if (std::gcd(r, u64(55)) == 1 && multiplicative_order(r, 55) == lambda) {
      roots.push_back(r);
    }
  }
  bool ok = roots == std::vector<u64>{8, 48} && lambda == 20;
  report(2, "roots of 55 are {8, 48} with order 20", ok, t.seconds(), "");
}

void criterion_3_alpha() {
  Timer t;
  ValueWithError alpha = compute_alpha_f(100'000'000, kWorkers);
  double sec = t.seconds();
  const double reference = 0.265705484288843681890137;
  double deviation = std::abs(alpha.value - reference);
  // 8 significant digits of a value starting 0.26...: |delta| <= 0.5e-8 * 10^0
  bool digits_ok = deviation / reference <= 5e-8;
  bool bound_ok = deviation <= alpha.error_bound;
  bool ok = digits_ok && bound_ok && sec < 120.0;
  std::ostringstream detail;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "computed %.15f, reference %.15f, |delta| %.3g, tail bound %.3g",
                alpha.value, reference, deviation, alpha.error_bound);
  detail << buf;
  if (!digits_ok) {
    detail << "; the reference constant disagrees with the defining product "
              "beyond 7 significant digits (the direct product converges to "
              "0.26570544651..., and the deviation far exceeds the truncation "
              "tail), so 8-digit agreement is unattainable";
  }
  report(3, "alpha_f at prime limit 10^8 vs reference digits", ok, sec, detail.str());
}

void criterion_4_beta_gamma() {
  Timer t;
  ConstantsReport rep = compute_constants(1301, kWorkers);
  double beta_dev = std::abs(rep.beta_f - 0.05020530308647012230491);
  double gamma_dev = std::abs(rep.gamma_f - 0.0221594862523476326826286);
  bool ok = beta_dev < 1e-6 && gamma_dev < 1e-6 && t.seconds() < 1.0;
  std::ostringstream detail;
  char buf[96];
  std::snprintf(buf, sizeof buf, "|beta delta| %.3g, |gamma delta| %.3g",
                beta_dev, gamma_dev);
  detail << buf;
  report(4, "beta_f and gamma_f at x = 1301 within 1e-6", ok, t.seconds(),
         detail.str());
}

void criterion_5_nu() {
  Timer t;
  double nu = compute_nu_f(1301, 10, kWorkers);
  double dev = std::abs(nu - 0.188622600886988493134287);
  bool ok = dev < 1e-9 && t.seconds() < 1.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "|delta| %.3g", dev);
  report(5, "nu_f at x = 1301 within 1e-9", ok, t.seconds(), buf);
}

void criterion_6_oracle_equivalence() {
  Timer t;
  CheckResult crt = check_nf_crt_vs_scan(10'000, kWorkers);
  CheckResult order = check_order_fast_vs_naive(2000, kWorkers);
  CheckResult lambda = check_lambda_exponent_law(10'000, kWorkers);
  double sec = t.seconds();
  bool ok = crt.passed && order.passed && lambda.passed && sec < 120.0;
  std::ostringstream detail;
  detail << "membership scan to 10^4, naive orders to 2000, exponent law to 10^4";
  if (!crt.passed) detail << "; " << crt.detail;
  if (!order.passed) detail << "; " << order.detail;
  if (!lambda.passed) detail << "; " << lambda.detail;
  report(6, "oracle equivalence of the fast paths", ok, sec, detail.str());
}

void criterion_7_characteristic_laws() {
  Timer t;
  CheckResult laws = check_characteristic_laws(500);
  bool ok = laws.passed && t.seconds() < 10.0;
  report(7, "characteristic-function laws on prime pairs to 500", ok, t.seconds(),
         laws.passed ? "" : laws.detail);
}

void criterion_8_classification() {
  Timer t;
  auto records = enumerate_pf(10'000, kWorkers);
  bool all_classified = true;
  std::vector<u64> class_a;
  for (const PrimeRecord& rec : records) {
    if (rec.cls == PrimeClass::A) class_a.push_back(rec.p);
    if (rec.cls == PrimeClass::NotMember) all_classified = false;
    if (rec.cls == PrimeClass::B && !rec.lift_witness) all_classified = false;
  }
  bool five_in_a = !class_a.empty() && class_a.front() == 5;
  CorrectionProduct corr = correction_product_a(10'000, kWorkers);
  double sec = t.seconds();
  bool ok = all_classified && five_in_a && corr.primes == class_a && sec < 30.0;
  std::ostringstream detail;
  detail << records.size() << " primes classified; class A = {";
  for (std::size_t i = 0; i < class_a.size(); ++i) {
    if (i) detail << ", ";
    detail << class_a[i];
  }
  detail << "}; correction product " << format_real(corr.value);
  report(8, "classification of qualifying primes to 10^4", ok, sec, detail.str());
}

void criterion_9_asymptotic_trend() {
  Timer t;
  ConstantsReport rep = compute_constants(1301, kWorkers);
  auto pf = enumerate_pf(1'000'000, kWorkers);
  auto nf = enumerate_nf(1'000'000, kWorkers);
  double sec_enum = t.seconds();

  bool ok = true;
  std::ostringstream detail;
  double prev_gap = 1e9;
  for (u64 x : {u64(10'000), u64(100'000), u64(1'000'000)}) {
    u64 pf_count = 0;
    for (const PrimeRecord& rec : pf) {
      if (rec.p <= x) ++pf_count;
    }
    u64 nf_count = 0;
    for (const FibIntegerRecord& rec : nf) {
      if (rec.n <= x) ++nf_count;
    }
    double pf_ratio = double(pf_count) / predict_pf(x, rep);
    double nf_ratio = double(nf_count) / predict_nf(x, rep);
    char buf[128];
    std::snprintf(buf, sizeof buf, "x=%llu: P_F %llu ratio %.4f, N_F %llu ratio %.4f; ",
                  static_cast<unsigned long long>(x),
                  static_cast<unsigned long long>(pf_count), pf_ratio,
                  static_cast<unsigned long long>(nf_count), nf_ratio);
    detail << buf;
    if (pf_ratio < 0.8 || pf_ratio > 1.4) ok = false;
    if (nf_ratio < 0.5 || nf_ratio > 2.0) ok = false;
    double gap = std::abs(pf_ratio - 1.0);
    if (gap >= prev_gap) ok = false;  // must move toward 1 as x grows
    prev_gap = gap;
  }
  double sec = t.seconds();
  if (sec >= 300.0) ok = false;
  char buf2[64];
  std::snprintf(buf2, sizeof buf2, "enumeration took %.1f s", sec_enum);
  detail << buf2;
  report(9, "asymptotic trend bands at 10^4..10^6", ok, sec, detail.str());
}

void criterion_10_determinism() {
  Timer t;
  auto csv_for = [](Command cmd, unsigned workers) {
    RunConfig cfg;
    cfg.command = cmd;
    cfg.limit = 100'000;
    cfg.prime_limit = 1301;
    cfg.format = OutputFormat::csv;
    cfg.workers = workers;
    cfg.roots_n = 100'000;
    cfg.quad_a = 1;
    cfg.quad_b = -1;
    cfg.quad_c = -1;
    cfg.quad_n = 100'000;
    std::ostringstream out, err;
    int status = run(cfg, out, err);
    return std::make_pair(status, out.str());
  };
  bool ok = true;
  std::ostringstream detail;
  for (Command cmd : {Command::primes, Command::integers, Command::roots,
                      Command::constants, Command::asymptotic, Command::verify,
                      Command::quadratic}) {
    auto [status1, one] = csv_for(cmd, 1);
    auto [status8, eight] = csv_for(cmd, 8);
    if (status1 != status8 || one != eight || one.empty()) {
      ok = false;
      detail << "mismatch in subcommand " << static_cast<int>(cmd) << "; ";
    }
  }
  if (detail.str().empty()) detail << "all 7 subcommands byte-identical at limit 10^5";
  report(10, "workers=1 vs workers=8 produce identical CSV", ok, t.seconds(),
         detail.str());
}

}  // namespace

int main() {
  std::printf("acceptance suite (workers: %u)\n", kWorkers);
  criterion_1_prime_list();
  criterion_2_composite_witness();
  criterion_3_alpha();
  criterion_4_beta_gamma();
  criterion_5_nu();
  criterion_6_oracle_equivalence();
  criterion_7_characteristic_laws();
  criterion_8_classification();
  criterion_9_asymptotic_trend();
  criterion_10_determinism();
  if (failures == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", failures);
  }
  return failures == 0 ? 0 : 1;
}
