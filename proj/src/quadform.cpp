#include "chebmert/quadform.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "chebmert/errors.hpp"
#include "chebmert/intmod.hpp"

namespace chebmert {

std::string QuadForm::to_string() const {
  std::ostringstream os;
  os << a << "," << b << "," << c;
  return os.str();
}

QuadForm make_quadform(long long a, long long b, long long c) {
  if (a <= 0 || c <= 0) throw UsageError("form must have a > 0 and c > 0");
  if (std::gcd(std::gcd(a, b), c) != 1) throw UsageError("form must be primitive");
  QuadForm f{a, b, c};
  if (f.discriminant() >= 0)
    throw UsageError("form must have negative discriminant");
  return f;
}

QuadForm parse_quadform(const std::string& text) {
  long long a, b, c;
  char c1, c2;
  std::istringstream is(text);
  if (!(is >> a >> c1 >> b >> c2 >> c) || c1 != ',' || c2 != ',')
    throw UsageError("form spec must be a,b,c, got '" + text + "'");
  return make_quadform(a, b, c);
}

namespace {

long long floor_div(long long x, long long y) {
  long long q = x / y;
  if (x % y != 0 && ((x < 0) != (y < 0))) --q;
  return q;
}

}  // namespace

QuadForm reduce(QuadForm f) {
  while (true) {
    // Normalise: -a < b <= a, via b -> b + 2ka.
    if (f.b > f.a || f.b <= -f.a) {
      long long k = floor_div(f.a - f.b, 2 * f.a);
      long long b2 = f.b + 2 * k * f.a;
      long long c2 = f.a * k * k + f.b * k + f.c;
      f.b = b2;
      f.c = c2;
      continue;
    }
    if (f.a > f.c) {
      f = QuadForm{f.c, -f.b, f.a};
      continue;
    }
    break;
  }
  // b = -a was removed by normalisation; only a = c still forces b >= 0.
  if (f.a == f.c && f.b < 0) f.b = -f.b;
  return f;
}

bool is_ambiguous(const QuadForm& f) {
  QuadForm opp{f.a, -f.b, f.c};
  QuadForm r1 = reduce(f), r2 = reduce(opp);
  return r1.a == r2.a && r1.b == r2.b && r1.c == r2.c;
}

int class_number(long long d) {
  if (d >= 0) throw UsageError("class_number needs D < 0");
  long long m4 = ((d % 4) + 4) % 4;
  if (m4 != 0 && m4 != 1) throw UsageError("discriminant must be 0 or 1 mod 4");
  int count = 0;
  for (long long a = 1; 3 * a * a <= -d; ++a) {
    // b = -a is equivalent to b = a, so the range (-a, a] covers every
    // class once; a = c additionally forces b >= 0.
    for (long long b = -a + 1; b <= a; ++b) {
      long long num = b * b - d;
      if (num % (4 * a) != 0) continue;
      long long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      ++count;
    }
  }
  return count;
}

bool represents_prime(const QuadForm& f, uint64_t p) {
  // a x^2 + b xy + c y^2 = p bounds 4ac - b^2 times y^2 by 4ap.
  const long long disc = f.discriminant();
  const long long absd = -disc;
  const long long pp = static_cast<long long>(p);
  long long ymax = static_cast<long long>(
      std::sqrt(static_cast<double>(4 * f.a * pp) / static_cast<double>(absd))) + 1;
  for (long long y = 0; y <= ymax; ++y) {
    // Solve a x^2 + (b y) x + (c y^2 - p) = 0 over the integers.
    long long dx = disc * y * y + 4 * f.a * pp;  // = (by)^2 - 4a(cy^2 - p)
    if (dx < 0) continue;
    uint64_t s = isqrt_u64(static_cast<uint64_t>(dx));
    if (static_cast<long long>(s) * static_cast<long long>(s) != dx) continue;
    for (long long sign : {1ll, -1ll}) {
      long long num = -f.b * y + sign * static_cast<long long>(s);
      if (num % (2 * f.a) == 0) return true;
    }
  }
  return false;
}

}  // namespace chebmert
