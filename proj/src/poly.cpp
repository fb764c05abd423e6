#include "chebmert/poly.hpp"

#include <algorithm>
#include <sstream>

#include "chebmert/errors.hpp"
#include "chebmert/intmod.hpp"

namespace chebmert {

IntPolynomial::IntPolynomial(std::vector<BigInt> coefficients)
    : coeffs_(std::move(coefficients)) {
  while (coeffs_.size() > 1 && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.size() < 2)
    throw UsageError("polynomial must have degree >= 1");
}

IntPolynomial IntPolynomial::parse_leading_first(const std::string& text) {
  std::vector<BigInt> high_first;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty coefficient in list: " + text);
    try {
      high_first.emplace_back(BigInt(item));
    } catch (const std::exception&) {
      throw UsageError("bad coefficient '" + item + "' in list: " + text);
    }
  }
  std::reverse(high_first.begin(), high_first.end());
  return IntPolynomial(std::move(high_first));
}

BigInt IntPolynomial::eval(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<uint64_t> IntPolynomial::reduced_mod(uint64_t p) const {
  std::vector<uint64_t> out(coeffs_.size());
  const BigInt bp = p;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    BigInt r = coeffs_[i] % bp;
    if (r < 0) r += bp;
    out[i] = static_cast<uint64_t>(r);
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

bool IntPolynomial::has_integer_root() const {
  const BigInt& c0 = coeffs_.front();
  if (c0 == 0) return true;
  BigInt mag = c0 < 0 ? BigInt(-c0) : c0;
  if (mag > BigInt(std::numeric_limits<long long>::max()))
    throw UsageError("constant term too large for the rational root test");
  uint64_t m = static_cast<uint64_t>(mag);
  std::vector<uint64_t> divisors{1};
  for (auto [p, e] : factorize_u64(m)) {
    std::size_t existing = divisors.size();
    uint64_t q = 1;
    for (int i = 0; i < e; ++i) {
      q *= p;
      for (std::size_t j = 0; j < existing; ++j) divisors.push_back(divisors[j] * q);
    }
  }
  for (uint64_t d : divisors) {
    BigInt r(d);
    if (eval(r) == 0 || eval(-r) == 0) return true;
  }
  return false;
}

std::string IntPolynomial::to_string() const {
  std::ostringstream os;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    if (it != coeffs_.rbegin()) os << ",";
    os << *it;
  }
  return os.str();
}

BigInt poly_discriminant(const IntPolynomial& f) {
  if (f.degree() == 2) {
    // a x^2 + b x + c -> b^2 - 4ac
    const BigInt &c = f.coeff(0), &b = f.coeff(1), &a = f.coeff(2);
    return b * b - 4 * a * c;
  }
  if (f.degree() == 3) {
    // a x^3 + b x^2 + c x + d
    const BigInt &d = f.coeff(0), &c = f.coeff(1), &b = f.coeff(2), &a = f.coeff(3);
    return 18 * a * b * c * d - 4 * b * b * b * d + b * b * c * c -
           4 * a * c * c * c - 27 * a * a * d * d;
  }
  throw UsageError("poly_discriminant supports degrees 2 and 3 only");
}

namespace {

// Dense polynomial arithmetic over F_p, coefficients low to high.
using Poly = std::vector<uint64_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly mul_mod(const Poly& a, const Poly& b, uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = addmod(out[i + j], mulmod(a[i], b[j], p), p);
  }
  trim(out);
  return out;
}

// Remainder of a modulo b (b nonconstant), in place.
void rem_mod(Poly& a, const Poly& b, uint64_t p) {
  const int db = deg(b);
  const uint64_t lead_inv = powmod(b[db], p - 2, p);
  while (deg(a) >= db) {
    const int da = deg(a);
    uint64_t q = mulmod(a[da], lead_inv, p);
    if (q != 0) {
      for (int i = 0; i <= db; ++i) {
        uint64_t sub = mulmod(q, b[i], p);
        uint64_t idx = da - db + i;
        a[idx] = addmod(a[idx], p - sub, p);
      }
    }
    trim(a);
    if (a.empty()) break;
  }
}

Poly gcd_mod(Poly a, Poly b, uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    rem_mod(a, b, p);
    std::swap(a, b);
  }
  if (!a.empty() && a.back() != 1) {
    uint64_t inv = powmod(a.back(), p - 2, p);
    for (auto& c : a) c = mulmod(c, inv, p);
  }
  return a;
}

Poly pow_mod(Poly base, uint64_t e, const Poly& modulus, uint64_t p) {
  Poly result{1};
  rem_mod(base, modulus, p);
  while (e > 0) {
    if (e & 1) {
      result = mul_mod(result, base, p);
      rem_mod(result, modulus, p);
    }
    base = mul_mod(base, base, p);
    rem_mod(base, modulus, p);
    e >>= 1;
  }
  return result;
}

Poly div_exact(const Poly& a, const Poly& b, uint64_t p) {
  Poly r = a;
  Poly q(a.size(), 0);
  const int db = deg(b);
  const uint64_t lead_inv = powmod(b[db], p - 2, p);
  while (deg(r) >= db) {
    const int dr = deg(r);
    uint64_t c = mulmod(r[dr], lead_inv, p);
    q[dr - db] = c;
    for (int i = 0; i <= db; ++i) {
      uint64_t sub = mulmod(c, b[i], p);
      r[dr - db + i] = addmod(r[dr - db + i], p - sub, p);
    }
    trim(r);
    if (r.empty()) break;
  }
  trim(q);
  return q;
}

}  // namespace

DegreePattern ddf_degrees(std::vector<uint64_t> f, uint64_t p) {
  trim(f);
  // Normalise to monic (reduction of a monic integer polynomial is
  // already monic whenever p does not divide the leading coefficient).
  if (f.back() != 1) {
    uint64_t inv = powmod(f.back(), p - 2, p);
    for (auto& c : f) c = mulmod(c, inv, p);
  }
  DegreePattern pattern;
  Poly remaining = f;
  Poly frob{0, 1};  // x^(p^d) mod remaining, advanced one power per round
  int d = 0;
  while (deg(remaining) >= 1) {
    ++d;
    if (2 * d > deg(remaining)) {
      // What is left is a single irreducible factor.
      pattern.push_back({deg(remaining), 1});
      break;
    }
    frob = pow_mod(frob, p, remaining, p);
    Poly diff = frob;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = addmod(diff[1], p - 1, p);
    trim(diff);
    Poly g = gcd_mod(diff, remaining, p);
    if (deg(g) >= 1) {
      pattern.push_back({d, deg(g) / d});
      remaining = div_exact(remaining, g, p);
      rem_mod(frob, remaining, p);
    }
  }
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

DegreePattern factor_degrees_mod_p(const IntPolynomial& f, uint64_t p) {
  if (!f.monic()) throw UsageError("factor_degrees_mod_p requires a monic polynomial");
  BigInt disc = poly_discriminant(f);
  if (disc % BigInt(p) == 0)
    throw RamifiedPrimeError("p divides disc(f): p = " + std::to_string(p));
  return ddf_degrees(f.reduced_mod(p), p);
}

}  // namespace chebmert
