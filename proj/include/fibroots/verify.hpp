#pragma once

// Oracle-equivalence suite behind the `verify` subcommand. Every check pits
// a fast implementation against an independent brute-force computation
// (naive iteration, exhaustive residue scans, exhaustive squaring). The
// brute-force side deliberately avoids the code paths it is checking.
//
// Expensive scans are capped at the documented bounds regardless of the
// requested limit: naive order comparison at 2000, residue scans at 10^4,
// square tables at 1000, lift scans at 100.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "fibroots/analytics.hpp"
#include "fibroots/fibroot.hpp"
#include "fibroots/modarith.hpp"
#include "fibroots/parallel.hpp"

namespace fibroots {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

namespace oracle {

// Order by plain repeated multiplication.
inline u64 naive_order(u64 r, u64 n) {
  u64 v = r % n;
  u64 ord = 1;
  while (v != 1) {
    v = mulmod(v, r, n);
    ++ord;
  }
  return ord;
}

// All residues solving x^2 = x + 1 mod n by full scan.
inline std::vector<u64> scan_congruence_roots(u64 n) {
  std::vector<u64> roots;
  for (u64 r = 0; r < n; ++r) {
    u64 v = mulmod(r, r, n);
    v = submod(v, r, n);
    v = submod(v, 1 % n, n);
    if (v == 0) roots.push_back(r);
  }
  return roots;
}

// Existential membership by scan: some unit root of the congruence whose
// naive order reaches lambda(n).
inline bool scan_has_fib_primitive_root(u64 n, u64 lambda_n) {
  for (u64 r : scan_congruence_roots(n)) {
    if (std::gcd(r, n) != 1) continue;
    if (naive_order(r, n) == lambda_n) return true;
  }
  return false;
}

}  // namespace oracle

namespace detail {

template <typename Fn>
CheckResult make_check(const std::string& name, Fn&& body) {
  CheckResult res;
  res.name = name;
  std::ostringstream detail;
  res.passed = body(detail);
  res.detail = detail.str();
  return res;
}

}  // namespace detail

// Units r mod n satisfy r^lambda(n) = 1.
inline CheckResult check_lambda_exponent_law(u64 limit, unsigned workers = 1) {
  u64 cap = std::min<u64>(limit, 10'000);
  return detail::make_check("lambda_exponent_law", [&](std::ostringstream& msg) {
    const u64 width = 512;
    std::size_t chunks = cap >= 2 ? static_cast<std::size_t>((cap - 2) / width) + 1 : 0;
    std::vector<u64> bad(chunks, 0);
    run_chunked(chunks, workers, [&](std::size_t ci) {
      u64 lo = 2 + ci * width;
      u64 hi = std::min(cap, lo + width - 1);
      for (u64 n = lo; n <= hi; ++n) {
        u64 lam = carmichael_lambda(n);
        for (u64 r = 1; r < n; ++r) {
          if (std::gcd(r, n) != 1) continue;
          if (powmod(r, lam, n) != 1) {
            bad[ci] = n;
            return;
          }
        }
      }
    });
    for (u64 b : bad) {
      if (b != 0) {
        msg << "violated at n=" << b;
        return false;
      }
    }
    msg << "all units to n<=" << cap;
    return true;
  });
}

// lambda(n) divides phi(n); they coincide exactly for 1, 2, 4, p^m, 2p^m.
inline CheckResult check_lambda_divides_phi(u64 limit) {
  u64 cap = std::min<u64>(limit, 100'000);
  return detail::make_check("lambda_divides_phi", [&](std::ostringstream& msg) {
    for (u64 n = 1; n <= cap; ++n) {
      u64 lam = carmichael_lambda(n);
      u64 phi = euler_phi(n);
      if (phi % lam != 0) {
        msg << "lambda does not divide phi at n=" << n;
        return false;
      }
      Factorization f = factorize(n);
      bool coincide_expected =
          n == 1 || n == 2 || n == 4 ||
          (f.factors.size() == 1 && f.factors[0].prime > 2) ||
          (f.factors.size() == 2 && f.factors[0] == PrimePower{2, 1} &&
           f.factors[1].prime > 2);
      if (n >= 1 && (lam == phi) != coincide_expected) {
        msg << "equality classification failed at n=" << n;
        return false;
      }
    }
    msg << "n<=" << cap;
    return true;
  });
}

// Factor-stripping order computation equals naive iteration.
inline CheckResult check_order_fast_vs_naive(u64 limit, unsigned workers = 1) {
  u64 cap = std::min<u64>(limit, 2000);
  return detail::make_check("order_fast_vs_naive", [&](std::ostringstream& msg) {
    const u64 width = 64;
    std::size_t chunks = cap >= 2 ? static_cast<std::size_t>((cap - 2) / width) + 1 : 0;
    std::vector<u64> bad_n(chunks, 0), bad_r(chunks, 0);
    run_chunked(chunks, workers, [&](std::size_t ci) {
      u64 lo = 2 + ci * width;
      u64 hi = std::min(cap, lo + width - 1);
      for (u64 n = lo; n <= hi; ++n) {
        for (u64 r = 1; r < n; ++r) {
          if (std::gcd(r, n) != 1) continue;
          if (multiplicative_order(r, n) != oracle::naive_order(r, n)) {
            bad_n[ci] = n;
            bad_r[ci] = r;
            return;
          }
        }
      }
    });
    for (std::size_t ci = 0; ci < chunks; ++ci) {
      if (bad_n[ci] != 0) {
        msg << "mismatch at r=" << bad_r[ci] << " n=" << bad_n[ci];
        return false;
      }
    }
    msg << "all units, n<=" << cap;
    return true;
  });
}

// Tonelli-Shanks square roots against exhaustive squaring tables.
inline CheckResult check_sqrt_mod_partition(u64 limit) {
  u64 cap = std::min<u64>(limit, 1000);
  return detail::make_check("sqrt_mod_partition", [&](std::ostringstream& msg) {
    bool ok = true;
    for_each_prime(3, cap, [&](u64 p) {
      if (!ok) return;
      std::vector<char> is_square(p, 0);
      for (u64 s = 0; s < p; ++s) is_square[mulmod(s, s, p)] = 1;
      for (u64 a = 0; a < p; ++a) {
        auto roots = sqrt_mod(a, p);
        if (roots.has_value() != static_cast<bool>(is_square[a])) {
          msg << "residue partition mismatch at a=" << a << " p=" << p;
          ok = false;
          return;
        }
        if (roots && mulmod(roots->first, roots->first, p) != a) {
          msg << "root check failed at a=" << a << " p=" << p;
          ok = false;
          return;
        }
      }
    });
    if (ok) msg << "odd primes p<=" << cap;
    return ok;
  });
}

// CRT-constructed membership in the qualifying-integer set equals
// exhaustive-scan membership.
inline CheckResult check_nf_crt_vs_scan(u64 limit, unsigned workers = 1) {
  u64 cap = std::min<u64>(limit, 10'000);
  return detail::make_check("nf_crt_vs_scan", [&](std::ostringstream& msg) {
    if (cap < 2) {
      msg << "empty range";
      return true;
    }
    std::vector<char> member(cap + 1, 0);
    for (const FibIntegerRecord& rec : enumerate_nf(cap, workers)) member[rec.n] = 1;
    const u64 width = 256;
    std::size_t chunks = static_cast<std::size_t>((cap - 2) / width) + 1;
    std::vector<u64> bad(chunks, 0);
    run_chunked(chunks, workers, [&](std::size_t ci) {
      u64 lo = 2 + ci * width;
      u64 hi = std::min(cap, lo + width - 1);
      for (u64 n = lo; n <= hi; ++n) {
        bool scan = oracle::scan_has_fib_primitive_root(n, carmichael_lambda(n));
        if (scan != static_cast<bool>(member[n])) {
          bad[ci] = n;
          return;
        }
      }
    });
    for (u64 b : bad) {
      if (b != 0) {
        msg << "membership mismatch at n=" << b;
        return false;
      }
    }
    msg << "n<=" << cap;
    return true;
  });
}

// f is multiplicative on coprime prime pairs; the prime 5 witnesses the
// failure of complete multiplicativity: f(25) = 0 != f(5)^2.
inline CheckResult check_characteristic_laws(u64 limit) {
  u64 cap = std::min<u64>(limit, 500);
  return detail::make_check("characteristic_laws", [&](std::ostringstream& msg) {
    if (characteristic_f(5, 2) != 0 || characteristic_f(5, 1) != 1) {
      msg << "complete-multiplicativity witness failed at p=5";
      return false;
    }
    std::vector<u64> primes;
    for_each_prime(2, cap, [&](u64 p) { primes.push_back(p); });
    for (u64 p : primes) {
      for (u64 q : primes) {
        if (p == q) continue;
        if (characteristic_f_composite(p * q) !=
            characteristic_f(p, 1) * characteristic_f(q, 1)) {
          msg << "f(pq) != f(p)f(q) at p=" << p << " q=" << q;
          return false;
        }
      }
    }
    msg << "prime pairs p,q<=" << cap;
    return true;
  });
}

// Congruence roots force the prime into the residue classes +-1 mod 10
// (or p = 5 itself).
inline CheckResult check_residue_classes(u64 limit) {
  return detail::make_check("residue_classes", [&](std::ostringstream& msg) {
    bool ok = true;
    for_each_prime(2, limit, [&](u64 p) {
      if (!ok) return;
      if (!fib_component_roots(p, 1).empty() &&
          !(p == 5 || p % 10 == 1 || p % 10 == 9)) {
        msg << "unexpected congruence roots at p=" << p;
        ok = false;
      }
    });
    if (ok) msg << "primes p<=" << limit;
    return ok;
  });
}

// f(n) = 1 implies existential membership. The converse fails; the size of
// the one-sided discrepancy set is measured and reported.
inline CheckResult check_f_implies_membership(u64 limit, unsigned workers = 1) {
  u64 cap = std::min<u64>(limit, 10'000);
  return detail::make_check("f_implies_membership", [&](std::ostringstream& msg) {
    if (cap < 2) {
      msg << "empty range";
      return true;
    }
    std::vector<char> member(cap + 1, 0);
    u64 member_count = 0;
    u64 first_discrepancy = 0;
    for (const FibIntegerRecord& rec : enumerate_nf(cap, workers)) {
      member[rec.n] = 1;
      ++member_count;
      if (rec.f_value == 0 && first_discrepancy == 0) first_discrepancy = rec.n;
    }
    u64 f_count = 0;
    for (u64 n = 2; n <= cap; ++n) {
      if (characteristic_f_composite(n) == 1) {
        ++f_count;
        if (!member[n]) {
          msg << "f(n)=1 but n not a member at n=" << n;
          return false;
        }
      }
    }
    msg << "f-count " << f_count << " of " << member_count
        << " members to n<=" << cap << "; members with f=0: "
        << (member_count - f_count);
    if (first_discrepancy != 0) msg << " (first: " << first_discrepancy << ")";
    return true;
  });
}

// Hensel lifts against exhaustive per-level scans: existence, uniqueness,
// and the defining congruence of the lifted root.
inline CheckResult check_hensel_lifts(u64 limit) {
  u64 cap = std::min<u64>(limit, 100);
  return detail::make_check("hensel_lifts", [&](std::ostringstream& msg) {
    bool ok = true;
    for_each_prime(2, cap, [&](u64 p) {
      if (!ok) return;
      for (u64 r : fib_component_roots(p, 1)) {
        for (unsigned k = 2; k <= 3; ++k) {
          u64 pk = pow_u64(p, k);
          std::vector<u64> expected;
          for (u64 cand = r; cand < pk; cand += p) {
            if (fib_poly_mod(cand, pk) == 0) expected.push_back(cand);
          }
          auto lifted = hensel_lift_quadratic(r, p, k);
          if (lifted.has_value() != (expected.size() == 1) ||
              (lifted && *lifted != expected.front())) {
            msg << "lift mismatch at p=" << p << " k=" << k;
            ok = false;
            return;
          }
        }
      }
    });
    if (ok) msg << "roots of primes p<=" << cap << ", k<=3";
    return ok;
  });
}

// Every root returned by the solvers satisfies its congruence when replayed
// through direct modular evaluation, and the generic quadratic solver agrees
// with the specialized one on the Fibonacci coefficients.
inline CheckResult check_root_replay(u64 limit, unsigned workers = 1) {
  u64 cap = std::min<u64>(limit, 3000);
  return detail::make_check("root_replay", [&](std::ostringstream& msg) {
    for (u64 n = 2; n <= cap; ++n) {
      std::vector<u64> direct = solve_fibonacci_roots(n);
      for (u64 r : direct) {
        if (fib_poly_mod(r, n) != 0) {
          msg << "replay failed at n=" << n << " r=" << r;
          return false;
        }
      }
      if (direct != solve_general_quadratic(1, -1, -1, n)) {
        msg << "solver routes disagree at n=" << n;
        return false;
      }
    }
    for (const FibIntegerRecord& rec : enumerate_nf(cap, workers)) {
      for (u64 r : rec.roots) {
        if (fib_poly_mod(r, rec.n) != 0 ||
            multiplicative_order(r, rec.n) != rec.lambda_n) {
          msg << "record root invalid at n=" << rec.n << " r=" << r;
          return false;
        }
      }
    }
    msg << "n<=" << cap;
    return true;
  });
}

// Existential count vs indicator count, reported side by side.
inline CheckResult check_count_consistency(u64 limit, unsigned workers = 1) {
  u64 cap = std::min<u64>(limit, 10'000);
  return detail::make_check("count_consistency", [&](std::ostringstream& msg) {
    if (cap < 5) {
      msg << "empty range";
      return true;
    }
    u64 existential = enumerate_nf(cap, workers).size();
    u64 indicator = count_f_indicator(cap, workers);
    msg << "existential " << existential << ", f-indicator " << indicator
        << " at x=" << cap;
    return indicator <= existential;
  });
}

inline std::vector<CheckResult> run_verification(u64 limit, unsigned workers = 1) {
  if (limit < 2) throw std::invalid_argument("run_verification: limit must be >= 2");
  std::vector<CheckResult> results;
  results.push_back(check_lambda_exponent_law(limit, workers));
  results.push_back(check_lambda_divides_phi(limit));
  results.push_back(check_order_fast_vs_naive(limit, workers));
  results.push_back(check_sqrt_mod_partition(limit));
  results.push_back(check_nf_crt_vs_scan(limit, workers));
  results.push_back(check_characteristic_laws(limit));
  results.push_back(check_residue_classes(limit));
  results.push_back(check_f_implies_membership(limit, workers));
  results.push_back(check_hensel_lifts(limit));
  results.push_back(check_root_replay(limit, workers));
  results.push_back(check_count_consistency(limit, workers));
  return results;
}

}  // namespace fibroots
