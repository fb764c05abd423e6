#ifndef CHEBMERT_INTMOD_HPP
#define CHEBMERT_INTMOD_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace chebmert {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
  a %= m;
  b %= m;
  uint64_t s = a + b;
  if (s < a || s >= m) s -= m;
  return s;
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);

// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime_u64(uint64_t n);

// Prime factorisation of a 64-bit integer (trial division + Pollard rho).
// Returns (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<uint64_t, int>> factorize_u64(uint64_t n);

// Full Kronecker symbol (a|n), extending the Jacobi symbol to all
// integers n (including n <= 0).
int kronecker(long long a, long long n);

// Largest integer r with r*r <= n.
uint64_t isqrt_u64(uint64_t n);

inline bool is_perfect_square_u64(uint64_t n) {
  uint64_t r = isqrt_u64(n);
  return r * r == n;
}

// Fundamental discriminant of the quadratic field Q(sqrt(n)) for a
// non-square integer n: the squarefree kernel d of n, adjusted to d or
// 4d so the result is 0 or 1 mod 4.
long long fundamental_discriminant(long long n);

}  // namespace chebmert

#endif
