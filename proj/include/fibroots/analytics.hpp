#pragma once

// Numerical side of the toolkit: the Artin-type density constant alpha_F,
// the Mertens-type constants beta_F / gamma_F / nu_F / kappa_F, harmonic
// sums and Euler-type products restricted to the primes with Fibonacci
// primitive roots, and the leading-term counting predictions they feed.
//
// All floating accumulation uses compensated (Kahan/Neumaier) summation over
// fixed chunk boundaries, so results are bit-reproducible for any worker
// count. Constants are reported together with truncation error estimates;
// the printed digits are only as good as those estimates allow.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fibroots/fibroot.hpp"
#include "fibroots/modarith.hpp"
#include "fibroots/parallel.hpp"

namespace fibroots {

// Euler's constant, stored well beyond double precision.
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243104;

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

struct ValueWithError {
  double value = 0.0;
  double error_bound = 0.0;
};

// alpha_F = (27/38) * prod_{p <= prime_limit} (1 - 1/(p(p-1))), accumulated
// as a compensated sum of log1p terms over fixed 2^22-wide prime ranges.
// The error bound covers the tail of the infinite product: the omitted
// factors shrink the true value by roughly sum_{p > L} 1/(p(p-1)), bounded
// by 1.5/(L log L).
inline ValueWithError compute_alpha_f(u64 prime_limit, unsigned workers = 1) {
  if (prime_limit < 2) throw std::invalid_argument("compute_alpha_f: prime_limit must be >= 2");
  const u64 width = u64(1) << 22;
  std::size_t chunks = static_cast<std::size_t>((prime_limit - 2) / width) + 1;
  std::vector<double> sums(chunks, 0.0), carries(chunks, 0.0);
  run_chunked(chunks, workers, [&](std::size_t ci) {
    u64 lo = 2 + ci * width;
    u64 hi = std::min(prime_limit, lo + width - 1);
    KahanSum ks;
    for_each_prime(lo, hi, [&](u64 p) {
      double pd = static_cast<double>(p);
      ks.add(std::log1p(-1.0 / (pd * (pd - 1.0))));
    });
    sums[ci] = ks.sum;
    carries[ci] = ks.carry;
  });
  KahanSum total;
  for (std::size_t ci = 0; ci < chunks; ++ci) {
    total.add(sums[ci]);
    total.add(carries[ci]);
  }
  double alpha = 27.0 / 38.0 * std::exp(total.value());
  double ld = static_cast<double>(prime_limit);
  double tail = 1.5 / (ld * std::log(ld));
  return {alpha, alpha * tail};
}

namespace detail {

inline std::vector<u64> pf_primes_upto(u64 x, unsigned workers) {
  std::vector<u64> primes;
  for (const PrimeRecord& rec : enumerate_pf(x, workers)) primes.push_back(rec.p);
  return primes;
}

}  // namespace detail

// Exact sum of 1/p over primes p <= x possessing a Fibonacci primitive root.
inline double harmonic_sum_pf(u64 x, unsigned workers = 1) {
  if (x < 2) throw std::invalid_argument("harmonic_sum_pf: x must be >= 2");
  KahanSum s;
  for (u64 p : detail::pf_primes_upto(x, workers)) s.add(1.0 / static_cast<double>(p));
  return s.value();
}

// Exact sum of log(p)/(p-1) over the same primes.
inline double log_weighted_sum_pf(u64 x, unsigned workers = 1) {
  if (x < 2) throw std::invalid_argument("log_weighted_sum_pf: x must be >= 2");
  KahanSum s;
  for (u64 p : detail::pf_primes_upto(x, workers)) {
    double pd = static_cast<double>(p);
    s.add(std::log(pd) / (pd - 1.0));
  }
  return s.value();
}

// Double sum over qualifying primes p <= x of sum_{k>=2} (1/k) t^k with
// t = log(p)/(p-1). inner_terms bounds the inner index k; the default 10
// reproduces the reference tabulation of this constant, whose remaining
// inner tail at p = 5 is about 6.5e-6. inner_terms = 0 evaluates the closed
// form -log(1-t) - t, i.e. the full inner series.
inline double compute_nu_f(u64 x, unsigned inner_terms = 10, unsigned workers = 1) {
  if (x < 2) throw std::invalid_argument("compute_nu_f: x must be >= 2");
  KahanSum s;
  for (u64 p : detail::pf_primes_upto(x, workers)) {
    double pd = static_cast<double>(p);
    double t = std::log(pd) / (pd - 1.0);  // < 1 for every qualifying prime
    if (inner_terms == 0) {
      s.add(-std::log1p(-t) - t);
    } else {
      double tk = t;
      KahanSum inner;
      for (unsigned k = 2; k <= inner_terms; ++k) {
        tk *= t;
        inner.add(tk / k);
      }
      s.add(inner.value());
    }
  }
  return s.value();
}

// The class-A correction product prod (1 - 1/p^2) over classified primes up
// to search_limit, with the contributing primes listed. Whether the class-A
// set is finite is an open problem, so the search limit is always reported
// next to the value.
struct CorrectionProduct {
  double value = 1.0;
  std::vector<u64> primes;
  u64 search_limit = 0;
};

inline CorrectionProduct correction_product_a(u64 search_limit, unsigned workers = 1) {
  CorrectionProduct out;
  out.search_limit = search_limit;
  if (search_limit < 5) return out;  // empty product
  for (const PrimeRecord& rec : enumerate_pf(search_limit, workers)) {
    if (rec.cls == PrimeClass::A) out.primes.push_back(rec.p);
  }
  KahanSum logs;
  for (u64 p : out.primes) {
    double pd = static_cast<double>(p);
    logs.add(std::log1p(-1.0 / (pd * pd)));
  }
  out.value = std::exp(logs.value());
  return out;
}

// Truncation-parameterized constants report. alpha_f is the Euler product
// truncated exactly at prime_limit; the beta/gamma/kappa recipes instead use
// alpha_reference, a higher-precision truncation (at least 10^7), because
// their sensitivity to alpha exceeds what small truncations justify. The
// beta_f and gamma_f values follow the convention x = prime_limit inside
// log log x and log x.
struct ConstantsReport {
  u64 prime_limit = 0;
  double alpha_f = 0.0;
  double alpha_error = 0.0;
  double alpha_reference = 0.0;
  double alpha_reference_error = 0.0;
  u64 alpha_reference_limit = 0;
  double beta_f = 0.0;
  double beta_error = 0.0;
  double gamma_f = 0.0;
  double gamma_error = 0.0;
  double nu_f = 0.0;
  double nu_error = 0.0;
  double nu_f_closed_form = 0.0;
  unsigned nu_inner_terms = 10;
  double kappa_f = 0.0;
  double kappa_error = 0.0;
  CorrectionProduct correction_a;
  // gamma_F - gamma * alpha_F at this truncation; conjecturally zero in the
  // limit, reported here as data rather than assumed.
  double gamma_f_minus_gamma_alpha = 0.0;
};

inline ConstantsReport compute_constants(u64 prime_limit, unsigned workers = 1,
                                         u64 class_a_search_limit = 10'000) {
  if (prime_limit < 5) throw std::invalid_argument("compute_constants: prime_limit must be >= 5");
  ConstantsReport rep;
  rep.prime_limit = prime_limit;

  ValueWithError alpha = compute_alpha_f(prime_limit, workers);
  rep.alpha_f = alpha.value;
  rep.alpha_error = alpha.error_bound;

  rep.alpha_reference_limit = std::max<u64>(prime_limit, 10'000'000);
  ValueWithError alpha_ref = compute_alpha_f(rep.alpha_reference_limit, workers);
  rep.alpha_reference = alpha_ref.value;
  rep.alpha_reference_error = alpha_ref.error_bound;

  std::vector<u64> pf = detail::pf_primes_upto(prime_limit, workers);
  KahanSum inv_p, logw;
  for (u64 p : pf) {
    double pd = static_cast<double>(p);
    inv_p.add(1.0 / pd);
    logw.add(std::log(pd) / (pd - 1.0));
  }
  double x = static_cast<double>(prime_limit);
  rep.beta_f = inv_p.value() - rep.alpha_reference * std::log(std::log(x));
  rep.beta_error = rep.alpha_reference_error * std::log(std::log(x)) + 1e-14;
  rep.gamma_f = logw.value() - rep.alpha_reference * std::log(x);
  rep.gamma_error = rep.alpha_reference_error * std::log(x) + 1e-14;

  rep.nu_f = compute_nu_f(prime_limit, rep.nu_inner_terms, workers);
  rep.nu_error = 1e-14;
  rep.nu_f_closed_form = compute_nu_f(prime_limit, 0, workers);

  rep.correction_a = correction_product_a(class_a_search_limit, workers);

  double a = rep.alpha_reference;
  rep.kappa_f = std::exp(rep.gamma_f - kEulerGamma * a) / (a * std::tgamma(a)) *
                rep.correction_a.value;
  rep.kappa_error = rep.kappa_f * (rep.gamma_error + rep.alpha_reference_error * 10.0);
  rep.gamma_f_minus_gamma_alpha = rep.gamma_f - kEulerGamma * a;
  return rep;
}

// The three finite Euler-type products over qualifying primes p <= x,
// paired with their leading-term predictions from a constants report:
//   [0] prod (1 - 1/p)^(-1)          ~ e^gamma_F (log x)^alpha_F
//   [1] prod (1 + 1/p)               ~ e^gamma_F prod(1 - p^-2) (log x)^alpha_F
//   [2] prod (1 - log p/(p-1))^(-1)  ~ e^(nu_F - gamma_F) x^alpha_F
struct MertensProducts {
  double exact[3] = {1.0, 1.0, 1.0};
  double predicted[3] = {0.0, 0.0, 0.0};
};

inline MertensProducts mertens_products(u64 x, const ConstantsReport& constants,
                                        unsigned workers = 1) {
  if (x < 2) throw std::invalid_argument("mertens_products: x must be >= 2");
  MertensProducts out;
  KahanSum l0, l1, l2, lp2;
  for (u64 p : detail::pf_primes_upto(x, workers)) {
    double pd = static_cast<double>(p);
    l0.add(-std::log1p(-1.0 / pd));
    l1.add(std::log1p(1.0 / pd));
    l2.add(-std::log1p(-std::log(pd) / (pd - 1.0)));
    lp2.add(std::log1p(-1.0 / (pd * pd)));
  }
  out.exact[0] = std::exp(l0.value());
  out.exact[1] = std::exp(l1.value());
  out.exact[2] = std::exp(l2.value());
  double xd = static_cast<double>(x);
  double logx_pow = std::pow(std::log(xd), constants.alpha_reference);
  out.predicted[0] = std::exp(constants.gamma_f) * logx_pow;
  out.predicted[1] = out.predicted[0] * std::exp(lp2.value());
  out.predicted[2] =
      std::exp(constants.nu_f_closed_form - constants.gamma_f) *
      std::pow(xd, constants.alpha_reference);
  return out;
}

// Leading term alpha_F x / log x of the qualifying-prime counting function.
inline double predict_pf(u64 x, const ConstantsReport& constants) {
  if (x < 2) throw std::invalid_argument("predict_pf: x must be >= 2");
  double xd = static_cast<double>(x);
  return constants.alpha_reference * xd / std::log(xd);
}

// Leading term of the qualifying-integer counting function:
// e^(gamma_F - gamma alpha_F) / Gamma(alpha_F) * x / (log x)^(1 - alpha_F)
// times the class-A correction product.
inline double predict_nf(u64 x, const ConstantsReport& constants) {
  if (x < 2) throw std::invalid_argument("predict_nf: x must be >= 2");
  double a = constants.alpha_reference;
  double xd = static_cast<double>(x);
  double coeff = std::exp(constants.gamma_f - kEulerGamma * a) / std::tgamma(a);
  return coeff * xd / std::pow(std::log(xd), 1.0 - a) * constants.correction_a.value;
}

// Exact sum of 1/n over qualifying integers n <= x, paired with the
// prediction kappa_F (log x)^alpha_F + gamma_F.
struct HarmonicNf {
  double exact = 0.0;
  double predicted = 0.0;
};

inline HarmonicNf harmonic_sum_nf(u64 x, const ConstantsReport& constants,
                                  unsigned workers = 1) {
  if (x < 2) throw std::invalid_argument("harmonic_sum_nf: x must be >= 2");
  KahanSum s;
  for (const FibIntegerRecord& rec : enumerate_nf(x, workers)) {
    s.add(1.0 / static_cast<double>(rec.n));
  }
  HarmonicNf out;
  out.exact = s.value();
  out.predicted = constants.kappa_f *
                      std::pow(std::log(static_cast<double>(x)),
                               constants.alpha_reference) +
                  constants.gamma_f;
  return out;
}

// Number of n in [2, x] with multiplicative characteristic f(n) = 1.
// f(1) = 1 by the empty-product convention but n = 1 is excluded from the
// count, aligning it with the enumeration of integers >= 2. Implemented by
// trial division with a precomputed f-table over qualifying prime powers,
// independent of enumerate_nf.
inline u64 count_f_indicator(u64 x, unsigned workers = 1) {
  if (x == 0) throw std::invalid_argument("count_f_indicator: x must be positive");
  if (x < 5) return 0;

  std::vector<u64> usable;
  for_each_prime(2, x, [&](u64 p) {
    if (p == 5 || p % 10 == 1 || p % 10 == 9) usable.push_back(p);
  });
  constexpr std::size_t kPrimeChunk = 512;
  std::size_t prime_chunks = (usable.size() + kPrimeChunk - 1) / kPrimeChunk;
  std::vector<std::vector<std::pair<u64, int>>> fparts(prime_chunks);
  run_chunked(prime_chunks, workers, [&](std::size_t ci) {
    std::size_t begin = ci * kPrimeChunk;
    std::size_t end = std::min(begin + kPrimeChunk, usable.size());
    for (std::size_t i = begin; i < end; ++i) {
      u64 p = usable[i];
      u64 pk = p;
      unsigned k = 1;
      while (true) {
        fparts[ci].emplace_back(pk, characteristic_f(p, k));
        if (pk > x / p) break;
        pk *= p;
        ++k;
      }
    }
  });
  std::unordered_map<u64, int> f_table;
  for (const auto& part : fparts) {
    for (const auto& [pk, f] : part) f_table.emplace(pk, f);
  }

  auto f_is_one = [&](u64 n) {
    if (n % 2 == 0 || n % 3 == 0) return false;
    auto component_ok = [&](u64 pk) {
      auto it = f_table.find(pk);
      return it != f_table.end() && it->second == 1;
    };
    if (n % 5 == 0) {
      u64 pk = 1;
      while (n % 5 == 0) {
        n /= 5;
        pk *= 5;
      }
      if (!component_ok(pk)) return false;
    }
    for (u64 p = 7; p * p <= n; p += 2) {
      if (n % p != 0) continue;
      u64 last = p % 10;
      if (last != 1 && last != 9) return false;
      u64 pk = 1;
      while (n % p == 0) {
        n /= p;
        pk *= p;
      }
      if (!component_ok(pk)) return false;
    }
    if (n > 1) {
      u64 last = n % 10;
      if (last != 1 && last != 9) return false;
      if (!component_ok(n)) return false;
    }
    return true;
  };

  const u64 width = 1 << 16;
  std::size_t chunks = static_cast<std::size_t>((x - 2) / width) + 1;
  std::vector<u64> counts(chunks, 0);
  run_chunked(chunks, workers, [&](std::size_t ci) {
    u64 lo = 2 + ci * width;
    u64 hi = std::min(x, lo + width - 1);
    u64 count = 0;
    for (u64 n = lo; n <= hi; ++n) {
      if (f_is_one(n)) ++count;
    }
    counts[ci] = count;
  });
  u64 total = 0;
  for (u64 c : counts) total += c;
  return total;
}

// (x, exact count, prediction, ratio) rows for the four tracked quantities.
struct AsymptoticComparison {
  std::string which;  // P_F, N_F, harmonic_P or harmonic_N
  u64 x = 0;
  double exact = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;
};

inline std::vector<AsymptoticComparison> asymptotic_comparisons(
    u64 x, const ConstantsReport& constants, unsigned workers = 1) {
  if (x < 5) throw std::invalid_argument("asymptotic_comparisons: x must be >= 5");
  std::vector<AsymptoticComparison> rows;
  auto push = [&](const char* which, double exact, double predicted) {
    rows.push_back({which, x, exact, predicted,
                    predicted > 0.0 ? exact / predicted : 0.0});
  };
  std::vector<PrimeRecord> pf = enumerate_pf(x, workers);
  std::vector<FibIntegerRecord> nf = enumerate_nf(x, workers);
  KahanSum hp;
  for (const PrimeRecord& rec : pf) hp.add(1.0 / static_cast<double>(rec.p));
  KahanSum hn;
  for (const FibIntegerRecord& rec : nf) hn.add(1.0 / static_cast<double>(rec.n));
  double logx = std::log(static_cast<double>(x));
  double a = constants.alpha_reference;
  push("P_F", static_cast<double>(pf.size()), predict_pf(x, constants));
  push("N_F", static_cast<double>(nf.size()), predict_nf(x, constants));
  push("harmonic_P", hp.value(),
       a * std::log(logx) + constants.beta_f);
  push("harmonic_N", hn.value(),
       constants.kappa_f * std::pow(logx, a) + constants.gamma_f);
  return rows;
}

}  // namespace fibroots
