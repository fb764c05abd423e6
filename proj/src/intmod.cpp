#include "chebmert/intmod.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chebmert/errors.hpp"

namespace chebmert {

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are sufficient for all n < 2^64.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a % n, d, n);
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

namespace {

uint64_t pollard_rho(uint64_t n) {
  if ((n & 1) == 0) return 2;
  uint64_t x = 2, y = 2, c = 1;
  while (true) {
    x = 2;
    y = 2;
    uint64_t d = 1;
    auto step = [&](uint64_t v) { return addmod(mulmod(v, v, n), c, n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      uint64_t diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
    ++c;
  }
}

void factor_rec(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  uint64_t d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<std::pair<uint64_t, int>> factorize_u64(uint64_t n) {
  std::vector<uint64_t> fs;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    while (n % p == 0) {
      fs.push_back(p);
      n /= p;
    }
  }
  if (n > 1) factor_rec(n, fs);
  std::sort(fs.begin(), fs.end());
  std::vector<std::pair<uint64_t, int>> result;
  for (uint64_t p : fs) {
    if (!result.empty() && result.back().first == p)
      ++result.back().second;
    else
      result.push_back({p, 1});
  }
  return result;
}

int kronecker(long long a, long long n) {
  // (a|0) and the sign/two extensions follow the GMP conventions.
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  if (n % 2 == 0) {
    if (a % 2 == 0) return 0;
    int twos = 0;
    while (n % 2 == 0) {
      n /= 2;
      ++twos;
    }
    long long am8 = ((a % 8) + 8) % 8;
    if (twos % 2 == 1 && (am8 == 3 || am8 == 5)) result = -result;
  }
  // Now n is odd and positive; run the Jacobi reciprocity loop.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      long long nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

uint64_t isqrt_u64(uint64_t n) {
  if (n == 0) return 0;
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

long long fundamental_discriminant(long long n) {
  if (n == 0) throw UsageError("fundamental_discriminant: zero input");
  long long sign = n < 0 ? -1 : 1;
  uint64_t mag = static_cast<uint64_t>(n < 0 ? -n : n);
  uint64_t kernel = 1;
  for (auto [p, e] : factorize_u64(mag)) {
    if (e % 2 == 1) kernel *= p;
  }
  long long d = sign * static_cast<long long>(kernel);
  if (d == 1) throw UsageError("fundamental_discriminant: square input");
  long long m4 = ((d % 4) + 4) % 4;
  return m4 == 1 ? d : 4 * d;
}

}  // namespace chebmert
