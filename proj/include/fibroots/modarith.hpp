#pragma once

// Exact integer arithmetic over 64-bit moduli: primality, factorization,
// totients, multiplicative orders, modular square roots, Hensel lifting and
// a segmented prime sieve. Everything here is a pure function of its
// arguments and safe to call concurrently.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fibroots {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(u128(a) * b % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Modular inverse via extended Euclid. Throws if gcd(a, m) != 1.
inline u64 inv_mod(u64 a, u64 m) {
  using i128 = __int128;
  i128 t = 0, new_t = 1;
  i128 r = static_cast<i128>(m), new_r = static_cast<i128>(a % m);
  while (new_r != 0) {
    i128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) throw std::domain_error("inv_mod: argument is not a unit");
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

// Deterministic Miller-Rabin. The witness set {2,...,37} is a proven
// complete test for all n < 3.3e24, which covers the full 64-bit range.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  constexpr u64 witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : witnesses) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : witnesses) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace detail {

// Pollard rho with Brent cycle detection. Expects n odd, composite, > 3.
inline u64 pollard_brent(u64 n) {
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, q = 1, g = 1, saved = 2;
    const u64 block = 128;
    u64 r = 1;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      for (u64 k = 0; k < r && g == 1; k += block) {
        saved = y;
        u64 steps = std::min(block, r - k);
        for (u64 i = 0; i < steps; ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
      r <<= 1;
    }
    if (g == n) {
      // backtrack one step at a time from the last saved point
      g = 1;
      y = saved;
      while (g == 1) {
        y = (mulmod(y, y, n) + c) % n;
        g = std::gcd(x > y ? x - y : y - x, n);
      }
    }
    if (g != n) return g;
  }
}

inline void factor_recursive(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_brent(n);
  factor_recursive(d, out);
  factor_recursive(n / d, out);
}

}  // namespace detail

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Complete prime factorization. factors are (prime, exponent) pairs with
// strictly increasing primes; factorize(1) has an empty factor list.
struct Factorization {
  u64 value = 1;
  std::vector<PrimePower> factors;
};

inline Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization result;
  result.value = n;
  u64 rest = n;
  auto strip = [&](u64 p) {
    unsigned k = 0;
    while (rest % p == 0) {
      rest /= p;
      ++k;
    }
    if (k > 0) result.factors.push_back({p, k});
  };
  strip(2);
  strip(3);
  strip(5);
  if (rest < 1'000'000) {
    for (u64 p = 7; p * p <= rest; p += 2) {
      if (rest % p == 0) strip(p);
    }
    if (rest > 1) result.factors.push_back({rest, 1});
    return result;
  }
  for (u64 p = 7; p < 100; p += 2) {
    if (rest % p == 0) strip(p);
  }
  if (rest > 1) {
    std::vector<u64> primes;
    detail::factor_recursive(rest, primes);
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
      std::size_t j = i;
      while (j < primes.size() && primes[j] == primes[i]) ++j;
      result.factors.push_back({primes[i], static_cast<unsigned>(j - i)});
      i = j;
    }
  }
  return result;
}

inline u64 pow_u64(u64 base, unsigned exp) {
  u64 r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

inline u64 euler_phi(u64 n) {
  u64 result = 1;
  for (const PrimePower& pp : factorize(n).factors) {
    result *= (pp.prime - 1) * pow_u64(pp.prime, pp.exponent - 1);
  }
  return result;
}

// lambda(p^v): phi(p^v) except 2^(v-2) for p = 2, v >= 3.
inline u64 lambda_prime_power(u64 p, unsigned v) {
  if (p == 2 && v >= 3) return u64(1) << (v - 2);
  return (p - 1) * pow_u64(p, v - 1);
}

// Carmichael function: exponent of the unit group mod n.
inline u64 carmichael_lambda(u64 n) {
  u64 result = 1;
  for (const PrimePower& pp : factorize(n).factors) {
    result = std::lcm(result, lambda_prime_power(pp.prime, pp.exponent));
  }
  return result;
}

// Least m >= 1 with r^m = 1 mod n. Computed by stripping prime factors of
// lambda(n) from a candidate exponent, never by naive iteration.
inline u64 multiplicative_order(u64 r, u64 n) {
  if (n < 2) throw std::invalid_argument("multiplicative_order: n must be >= 2");
  r %= n;
  if (std::gcd(r, n) != 1) throw std::domain_error("not a unit");
  u64 e = carmichael_lambda(n);
  for (const PrimePower& pp : factorize(e).factors) {
    for (unsigned i = 0; i < pp.exponent; ++i) {
      if (e % pp.prime == 0 && powmod(r, e / pp.prime, n) == 1) {
        e /= pp.prime;
      } else {
        break;
      }
    }
  }
  return e;
}

// Square roots of a mod an odd prime p (Tonelli-Shanks). Returns the pair
// {s, p-s} with s <= p-s, the pair {0, 0} for a = 0, or nothing when a is a
// non-residue. Calling with composite p is a contract violation (checked in
// debug builds only).
inline std::optional<std::pair<u64, u64>> sqrt_mod(u64 a, u64 p) {
  assert(p > 2 && p % 2 == 1 && is_prime(p));
  a %= p;
  if (a == 0) return std::pair<u64, u64>{0, 0};
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  u64 s;
  if (p % 4 == 3) {
    s = powmod(a, (p + 1) / 4, p);
  } else {
    u64 q = p - 1;
    unsigned e = 0;
    while ((q & 1) == 0) {
      q >>= 1;
      ++e;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 m = e;
    u64 c = powmod(z, q, p);
    u64 t = powmod(a, q, p);
    u64 root = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
      u64 i = 0, tt = t;
      while (tt != 1) {
        tt = mulmod(tt, tt, p);
        ++i;
      }
      u64 b = powmod(c, u64(1) << (m - i - 1), p);
      m = i;
      c = mulmod(b, b, p);
      t = mulmod(t, c, p);
      root = mulmod(root, b, p);
    }
    s = root;
  }
  u64 other = p - s;
  if (s > other) std::swap(s, other);
  return std::pair<u64, u64>{s, other};
}

// a - b mod m for a, b already reduced; no intermediate overflow.
inline u64 submod(u64 a, u64 b, u64 m) {
  return a >= b ? a - b : a + (m - b);
}

// a + b mod m for a, b already reduced; no intermediate overflow.
inline u64 addmod(u64 a, u64 b, u64 m) {
  return b >= m - a ? a - (m - b) : a + b;
}

// x^2 - x - 1 evaluated mod m (the defining congruence of a Fibonacci
// primitive root rearranged to vanish at roots).
inline u64 fib_poly_mod(u64 r, u64 m) {
  r %= m;
  u64 v = mulmod(r, r, m);
  v = submod(v, r, m);
  v = submod(v, 1 % m, m);
  return v;
}

// Lifts a root r of x^2 = x + 1 mod p to the unique root mod p^k congruent
// to r, one prime-power level at a time. Returns nothing when the root does
// not lift (non-simple root, which for this polynomial happens only at
// p = 5). Throws if r is not a root mod p. Requires p^k < 2^63.
inline std::optional<u64> hensel_lift_quadratic(u64 r, u64 p, unsigned k) {
  if (k < 1) throw std::invalid_argument("hensel_lift_quadratic: k must be >= 1");
  r %= p;
  if (fib_poly_mod(r, p) != 0) throw std::domain_error("not a root mod p");
  u64 mod = p;
  u64 cur = r;
  for (unsigned level = 1; level < k; ++level) {
    if (mod > (u64(1) << 62) / p) {
      throw std::invalid_argument("hensel_lift_quadratic: p^k out of range");
    }
    u64 next_mod = mod * p;
    u64 val = fib_poly_mod(cur, next_mod);  // divisible by mod
    u64 step = (val / mod) % p;
    u64 deriv = submod(2 * (cur % p) % p, 1 % p, p);  // (2r - 1) mod p
    if (deriv != 0) {
      u64 t = mulmod((p - step) % p, inv_mod(deriv, p), p);
      cur += t * mod;
    } else {
      // non-simple root: scan the p candidates at this level
      bool found = false;
      for (u64 t = 0; t < p; ++t) {
        u64 cand = cur + t * mod;
        if (fib_poly_mod(cand, next_mod) == 0) {
          cur = cand;
          found = true;
          break;
        }
      }
      if (!found) return std::nullopt;
    }
    mod = next_mod;
  }
  return cur;
}

// Combines x = a mod m, x = b mod n for coprime m, n with m*n < 2^64.
inline u64 crt_pair(u64 a, u64 m, u64 b, u64 n) {
  u64 diff = submod(b % n, a % n, n);
  u64 t = mulmod(diff, inv_mod(m % n, n), n);
  return a + m * t;
}

struct SieveOptions {
  u64 segment_size = u64(1) << 20;
  u64 max_segments = u64(1) << 16;
};

struct SieveRange {
  u64 lo = 0;
  u64 hi = 0;
  std::vector<u64> primes;
};

namespace detail {

inline u64 isqrt_u64(u64 n) {
  u64 s = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (s > 0 && u128(s) * s > n) --s;
  while (u128(s + 1) * (s + 1) <= n) ++s;
  return s;
}

inline std::vector<u64> small_primes(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<char> composite(limit + 1, 0);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

}  // namespace detail

// Streams every prime in [lo, hi] through fn in increasing order, using a
// segmented sieve. Throws std::length_error when the range exceeds the
// configured segment budget.
template <typename Fn>
void for_each_prime(u64 lo, u64 hi, Fn&& fn, const SieveOptions& opt = {}) {
  if (hi < lo) return;
  if (lo < 2) lo = 2;
  if (lo > hi) return;
  if ((hi - lo) / opt.segment_size + 1 > opt.max_segments) {
    throw std::length_error("for_each_prime: range exceeds segment budget");
  }
  const std::vector<u64> base = detail::small_primes(detail::isqrt_u64(hi));
  std::vector<char> flags;
  for (u64 seg_lo = lo; seg_lo <= hi;) {
    u64 seg_hi = std::min(hi, seg_lo + opt.segment_size - 1);
    flags.assign(static_cast<std::size_t>(seg_hi - seg_lo + 1), 1);
    for (u64 p : base) {
      if (u128(p) * p > seg_hi) break;
      u64 start = std::max(p * p, (seg_lo + p - 1) / p * p);
      for (u64 j = start; j <= seg_hi; j += p) {
        flags[static_cast<std::size_t>(j - seg_lo)] = 0;
        if (j > seg_hi - p) break;  // avoid wrap for j near 2^64
      }
    }
    for (u64 v = seg_lo; v <= seg_hi; ++v) {
      if (flags[static_cast<std::size_t>(v - seg_lo)]) fn(v);
      if (v == seg_hi) break;
    }
    if (seg_hi == hi) break;
    seg_lo = seg_hi + 1;
  }
}

// Exact, complete list of primes in [lo, hi].
inline SieveRange sieve_primes(u64 lo, u64 hi, const SieveOptions& opt = {}) {
  if (lo < 2) throw std::invalid_argument("sieve_primes: lo must be >= 2");
  if (hi < lo) throw std::invalid_argument("sieve_primes: hi must be >= lo");
  SieveRange range;
  range.lo = lo;
  range.hi = hi;
  for_each_prime(lo, hi, [&](u64 p) { range.primes.push_back(p); }, opt);
  return range;
}

}  // namespace fibroots
