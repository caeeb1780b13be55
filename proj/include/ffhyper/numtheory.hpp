#pragma once

#include <cstdint>
#include <vector>

namespace ffhyper::nt {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for all 64-bit inputs.
bool is_prime(u64 n);

// Distinct prime factors, ascending.
std::vector<u64> prime_factors(u64 n);

u64 gcd(u64 a, u64 b);

// Floor-mod into [0, m).
inline std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Returns (p, r) with q = p^r, or (0, 0) when q is not a prime power.
struct PrimePower {
  u64 p = 0;
  unsigned r = 0;
};
PrimePower as_prime_power(u64 q);

}  // namespace ffhyper::nt
