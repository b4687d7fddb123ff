#pragma once

// Fibonacci primitive roots: solutions of r^2 = r + 1 mod n whose
// multiplicative order equals lambda(n). Provides the congruence solver,
// the membership test, the multiplicative characteristic function f, the
// A/B classification of qualifying primes, and enumeration of the prime
// set P_F and the integer set N_F.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibroots/modarith.hpp"
#include "fibroots/parallel.hpp"

namespace fibroots {

enum class PrimeClass { A, B, NotMember };

inline const char* to_string(PrimeClass c) {
  switch (c) {
    case PrimeClass::A: return "A";
    case PrimeClass::B: return "B";
    default: return "NotMember";
  }
}

// A prime together with its congruence roots, the subset that are primitive,
// and whether a primitive root extends to the square of the prime (class B)
// or not (class A). lift_witness is the extended root mod p^2 certifying B.
struct PrimeRecord {
  u64 p = 0;
  std::vector<u64> congruence_roots;
  std::vector<u64> fib_primitive_roots;
  PrimeClass cls = PrimeClass::NotMember;
  std::optional<u64> lift_witness;
};

// An integer possessing at least one Fibonacci primitive root, with the full
// (ascending) set of such roots. f_value is the multiplicative
// characteristic function, which is NOT equivalent to membership: an integer
// can have a root of full combined order built from components of less than
// full component order (smallest example: 145).
struct FibIntegerRecord {
  u64 n = 0;
  u64 lambda_n = 0;
  std::vector<u64> roots;
  int f_value = 0;
};

// All roots of x^2 = x + 1 mod p^k, ascending. Solutions exist only for
// p = 5 (the single double root 3, and only at k = 1 since it does not
// lift) and for p = +-1 mod 10 (two simple roots at every k).
inline std::vector<u64> fib_component_roots(u64 p, unsigned k) {
  if (p <= 3) return {};
  if (p == 5) {
    if (k == 1) return {3};
    return {};
  }
  auto s = sqrt_mod(5 % p, p);
  if (!s) return {};
  u64 inv2 = (p + 1) / 2;
  std::vector<u64> roots;
  for (u64 sq : {s->first, s->second}) {
    u64 base = mulmod((1 + sq) % p, inv2, p);
    auto lifted = hensel_lift_quadratic(base, p, k);
    if (lifted) roots.push_back(*lifted);
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// All residues r mod n with r^2 = r + 1 mod n (no order condition), built
// from prime-power solutions recombined with the CRT.
inline std::vector<u64> solve_fibonacci_roots(u64 n) {
  if (n < 2) throw std::invalid_argument("solve_fibonacci_roots: n must be >= 2");
  std::vector<u64> acc{0};
  u64 mod = 1;
  for (const PrimePower& pp : factorize(n).factors) {
    std::vector<u64> roots = fib_component_roots(pp.prime, pp.exponent);
    if (roots.empty()) return {};
    u64 pk = pow_u64(pp.prime, pp.exponent);
    std::vector<u64> next;
    next.reserve(acc.size() * roots.size());
    for (u64 a : acc) {
      for (u64 r : roots) next.push_back(crt_pair(a, mod, r, pk));
    }
    acc = std::move(next);
    mod *= pk;
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

inline bool is_fibonacci_primitive_root(u64 r, u64 n) {
  if (n < 2) throw std::invalid_argument("is_fibonacci_primitive_root: n must be >= 2");
  r %= n;
  if (std::gcd(r, n) != 1) return false;
  if (fib_poly_mod(r, n) != 0) return false;
  return multiplicative_order(r, n) == carmichael_lambda(n);
}

// Characteristic function of prime powers: 1 iff some residue mod p^k is
// both a root of the congruence and of full order p^(k-1)(p-1); 0 for
// p <= 3 and whenever no such residue exists.
inline int characteristic_f(u64 p, unsigned k) {
  if (p <= 3) return 0;
  u64 pk = pow_u64(p, k);
  u64 target = lambda_prime_power(p, k);
  for (u64 r : fib_component_roots(p, k)) {
    if (multiplicative_order(r, pk) == target) return 1;
  }
  return 0;
}

// Multiplicative extension of characteristic_f; f(1) = 1 (empty product).
inline int characteristic_f_composite(u64 n) {
  if (n == 0) throw std::invalid_argument("characteristic_f_composite: n must be positive");
  for (const PrimePower& pp : factorize(n).factors) {
    if (characteristic_f(pp.prime, pp.exponent) == 0) return 0;
  }
  return 1;
}

// Classifies a prime: NotMember when it has no Fibonacci primitive root,
// B when some primitive root extends to a root mod p^2 of order p(p-1),
// A otherwise. Requires p < 2^31 so that p^2 fits the order machinery.
inline PrimeRecord classify_prime(u64 p) {
  if (!is_prime(p)) throw std::invalid_argument("classify_prime: p must be prime");
  PrimeRecord rec;
  rec.p = p;
  rec.congruence_roots = fib_component_roots(p, 1);
  for (u64 r : rec.congruence_roots) {
    if (multiplicative_order(r, p) == p - 1) rec.fib_primitive_roots.push_back(r);
  }
  if (rec.fib_primitive_roots.empty()) return rec;
  if (p >= (u64(1) << 31)) throw std::invalid_argument("classify_prime: p too large");
  rec.cls = PrimeClass::A;
  for (u64 r : rec.fib_primitive_roots) {
    auto lifted = hensel_lift_quadratic(r, p, 2);
    if (!lifted) continue;
    u64 p2 = p * p;
    if (multiplicative_order(*lifted, p2) == p * (p - 1)) {
      rec.cls = PrimeClass::B;
      rec.lift_witness = *lifted;
      break;
    }
  }
  return rec;
}

// All primes p <= x possessing a Fibonacci primitive root, ascending.
// Classification work is partitioned over fixed chunks, so output is
// identical for any worker count.
inline std::vector<PrimeRecord> enumerate_pf(u64 x, unsigned workers = 1) {
  if (x < 2) throw std::invalid_argument("enumerate_pf: x must be >= 2");
  std::vector<u64> candidates;
  for_each_prime(2, x, [&](u64 p) {
    if (p == 5 || p % 10 == 1 || p % 10 == 9) candidates.push_back(p);
  });
  constexpr std::size_t kChunk = 512;
  std::size_t chunks = (candidates.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<PrimeRecord>> parts(chunks);
  run_chunked(chunks, workers, [&](std::size_t ci) {
    std::size_t begin = ci * kChunk;
    std::size_t end = std::min(begin + kChunk, candidates.size());
    for (std::size_t i = begin; i < end; ++i) {
      PrimeRecord rec = classify_prime(candidates[i]);
      if (rec.cls != PrimeClass::NotMember) parts[ci].push_back(std::move(rec));
    }
  });
  std::vector<PrimeRecord> out;
  for (auto& part : parts) {
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

namespace detail {

// Roots of the congruence mod p^k with their multiplicative orders, plus
// whether any reaches the full order phi(p^k).
struct FibComponent {
  u64 pk = 0;
  u64 lambda_pk = 0;
  std::vector<std::pair<u64, u64>> roots_orders;
  bool has_full_order = false;
};

inline FibComponent make_component(u64 p, unsigned k) {
  FibComponent c;
  c.pk = pow_u64(p, k);
  c.lambda_pk = lambda_prime_power(p, k);
  for (u64 r : fib_component_roots(p, k)) {
    u64 ord = multiplicative_order(r, c.pk);
    c.roots_orders.emplace_back(r, ord);
    if (ord == c.lambda_pk) c.has_full_order = true;
  }
  return c;
}

struct NfCandidate {
  u64 n = 0;
  // (index into the usable-prime table, exponent)
  std::vector<std::pair<std::uint32_t, std::uint32_t>> parts;
};

// Walks every choice of one root per component; a combination whose orders
// have lcm equal to lambda(n) yields a Fibonacci primitive root by the CRT.
inline void collect_combined_roots(const std::vector<const FibComponent*>& comps,
                                   std::size_t idx, u64 residue, u64 modulus,
                                   u64 lcm_so_far, u64 lambda_n,
                                   std::vector<u64>& out) {
  if (idx == comps.size()) {
    if (lcm_so_far == lambda_n) out.push_back(residue);
    return;
  }
  const FibComponent& c = *comps[idx];
  for (const auto& [root, ord] : c.roots_orders) {
    collect_combined_roots(comps, idx + 1, crt_pair(residue, modulus, root, c.pk),
                           modulus * c.pk, std::lcm(lcm_so_far, ord), lambda_n, out);
  }
}

// Emits every integer <= x all of whose prime factors carry congruence
// roots (5 at exponent 1, or p = +-1 mod 10), with its factorization.
inline void generate_candidates(const std::vector<u64>& usable, u64 x,
                                std::size_t idx, u64 value,
                                std::vector<std::pair<std::uint32_t, std::uint32_t>>& parts,
                                std::vector<NfCandidate>& out) {
  if (value > 1) out.push_back({value, parts});
  for (std::size_t i = idx; i < usable.size(); ++i) {
    u64 p = usable[i];
    if (value > x / p) break;  // primes ascend, so no later one fits either
    u64 next = value * p;
    unsigned k = 1;
    while (true) {
      parts.emplace_back(static_cast<std::uint32_t>(i), k);
      generate_candidates(usable, x, i + 1, next, parts, out);
      parts.pop_back();
      if (p == 5) break;  // 5^2 has no congruence roots
      if (next > x / p) break;
      next *= p;
      ++k;
    }
  }
}

}  // namespace detail

// All integers n <= x possessing at least one Fibonacci primitive root
// (existential membership), ascending, with their full root sets. Candidate
// integers are generated multiplicatively from qualifying primes; each is
// accepted when some CRT combination of component roots has combined order
// lambda(n).
inline std::vector<FibIntegerRecord> enumerate_nf(u64 x, unsigned workers = 1) {
  if (x < 2) throw std::invalid_argument("enumerate_nf: x must be >= 2");

  std::vector<u64> usable;
  for_each_prime(2, x, [&](u64 p) {
    if (p == 5 || p % 10 == 1 || p % 10 == 9) usable.push_back(p);
  });

  // per-prime component data, indexed [prime][k-1] for p^k <= x
  std::vector<std::vector<detail::FibComponent>> comps(usable.size());
  constexpr std::size_t kPrimeChunk = 512;
  std::size_t prime_chunks = (usable.size() + kPrimeChunk - 1) / kPrimeChunk;
  run_chunked(prime_chunks, workers, [&](std::size_t ci) {
    std::size_t begin = ci * kPrimeChunk;
    std::size_t end = std::min(begin + kPrimeChunk, usable.size());
    for (std::size_t i = begin; i < end; ++i) {
      u64 p = usable[i];
      u64 pk = p;
      unsigned k = 1;
      while (true) {
        comps[i].push_back(detail::make_component(p, k));
        if (p == 5) break;
        if (pk > x / p) break;
        pk *= p;
        ++k;
      }
    }
  });

  std::vector<detail::NfCandidate> candidates;
  {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> parts;
    detail::generate_candidates(usable, x, 0, 1, parts, candidates);
  }
  std::sort(candidates.begin(), candidates.end(),
            [](const detail::NfCandidate& a, const detail::NfCandidate& b) {
              return a.n < b.n;
            });

  constexpr std::size_t kChunk = 1024;
  std::size_t chunks = (candidates.size() + kChunk - 1) / kChunk;
  std::vector<std::vector<FibIntegerRecord>> parts_out(chunks);
  run_chunked(chunks, workers, [&](std::size_t ci) {
    std::size_t begin = ci * kChunk;
    std::size_t end = std::min(begin + kChunk, candidates.size());
    std::vector<const detail::FibComponent*> comp_list;
    for (std::size_t i = begin; i < end; ++i) {
      const detail::NfCandidate& cand = candidates[i];
      u64 lambda_n = 1;
      bool f_one = true;
      comp_list.clear();
      for (auto [pi, k] : cand.parts) {
        const detail::FibComponent& c = comps[pi][k - 1];
        comp_list.push_back(&c);
        lambda_n = std::lcm(lambda_n, c.lambda_pk);
        f_one = f_one && c.has_full_order;
      }
      std::vector<u64> roots;
      detail::collect_combined_roots(comp_list, 0, 0, 1, 1, lambda_n, roots);
      if (!roots.empty()) {
        std::sort(roots.begin(), roots.end());
        parts_out[ci].push_back({cand.n, lambda_n, std::move(roots), f_one ? 1 : 0});
      }
    }
  });

  std::vector<FibIntegerRecord> out;
  for (auto& part : parts_out) {
    out.insert(out.end(), std::make_move_iterator(part.begin()),
               std::make_move_iterator(part.end()));
  }
  return out;
}

// All x mod n with a x^2 + b x + c = 0 mod n. Components where the leading
// coefficient or the discriminant degenerates (p | 2a or p | b^2 - 4ac) are
// solved by exhaustive scan, which requires the component p^k <= 10^6; all
// other components go through completing the square and a lifted modular
// square root.
inline std::vector<u64> solve_general_quadratic(std::int64_t a, std::int64_t b,
                                                std::int64_t c, u64 n) {
  if (n < 2) throw std::invalid_argument("solve_general_quadratic: n must be >= 2");
  auto reduce = [&](std::int64_t v, u64 m) -> u64 {
    __int128 r = static_cast<__int128>(v) % static_cast<__int128>(m);
    if (r < 0) r += m;
    return static_cast<u64>(r);
  };

  std::vector<u64> acc{0};
  u64 mod = 1;
  for (const PrimePower& pp : factorize(n).factors) {
    u64 p = pp.prime;
    u64 pk = pow_u64(p, pp.exponent);
    u64 am = reduce(a, pk), bm = reduce(b, pk), cm = reduce(c, pk);
    u64 disc = submod(mulmod(bm, bm, pk), mulmod(4 % pk, mulmod(am, cm, pk), pk), pk);
    bool degenerate = (p == 2) || (am % p == 0) || (disc % p == 0);
    std::vector<u64> sols;
    if (degenerate) {
      if (pk > 1'000'000) {
        throw std::domain_error(
            "solve_general_quadratic: degenerate component exceeds the exhaustive-scan bound");
      }
      for (u64 r = 0; r < pk; ++r) {
        u64 v = mulmod(am, mulmod(r, r, pk), pk);
        v = (v + mulmod(bm, r, pk)) % pk;
        v = (v + cm) % pk;
        if (v == 0) sols.push_back(r);
      }
    } else {
      auto s = sqrt_mod(disc % p, p);
      if (!s) return {};
      // lift the square root of the discriminant level by level
      u64 root = s->first;
      u64 cur_mod = p;
      while (cur_mod < pk) {
        u64 next_mod = cur_mod * p;
        u64 d = disc % next_mod;
        u64 val = submod(mulmod(root, root, next_mod), d, next_mod);  // divisible by cur_mod
        u64 t = mulmod((p - (val / cur_mod) % p) % p,
                       inv_mod(mulmod(2 % p, root % p, p), p), p);
        root += t * cur_mod;
        cur_mod = next_mod;
      }
      u64 inv2a = inv_mod(mulmod(2 % pk, am, pk), pk);
      u64 minus_b = (pk - bm) % pk;
      u64 x1 = mulmod(addmod(minus_b, root % pk, pk), inv2a, pk);
      u64 x2 = mulmod(submod(minus_b, root % pk, pk), inv2a, pk);
      sols = {std::min(x1, x2), std::max(x1, x2)};
    }
    if (sols.empty()) return {};
    if (u128(acc.size()) * sols.size() > (u64(1) << 20)) {
      throw std::length_error("solve_general_quadratic: too many CRT combinations");
    }
    std::vector<u64> next;
    next.reserve(acc.size() * sols.size());
    for (u64 base : acc) {
      for (u64 r : sols) next.push_back(crt_pair(base, mod, r, pk));
    }
    acc = std::move(next);
    mod *= pk;
  }
  std::sort(acc.begin(), acc.end());
  return acc;
}

}  // namespace fibroots
