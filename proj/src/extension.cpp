#include "chebmert/extension.hpp"

#include <algorithm>
#include <numeric>

#include "chebmert/errors.hpp"
#include "chebmert/intmod.hpp"

namespace chebmert {

namespace {

// Allocation-free Frobenius classification for a monic cubic mod p
// (p not dividing the discriminant, so f is squarefree mod p): the
// number of roots is deg gcd(x^p - x, f), and a squarefree cubic has
// 3 roots (C1), 1 root (C2), or none (C3, irreducible).
int cubic_frobenius_class(const std::array<long long, 4>& coeffs, uint64_t p) {
  // f = x^3 + f2 x^2 + f1 x + f0 mod p.
  auto red = [&](long long c) {
    long long r = c % static_cast<long long>(p);
    return static_cast<uint64_t>(r < 0 ? r + static_cast<long long>(p) : r);
  };
  const uint64_t f0 = red(coeffs[0]), f1 = red(coeffs[1]), f2 = red(coeffs[2]);

  using Res = std::array<uint64_t, 3>;  // value + degree<=2 remainder
  // x^3 = -(f2 x^2 + f1 x + f0), extended once for x^4.
  const uint64_t r3_0 = (p - f0) % p, r3_1 = (p - f1) % p, r3_2 = (p - f2) % p;
  const uint64_t r4_0 = mulmod(r3_2, r3_0, p);
  const uint64_t r4_1 = addmod(mulmod(r3_2, r3_1, p), r3_0, p);
  const uint64_t r4_2 = addmod(mulmod(r3_2, r3_2, p), r3_1, p);

  auto mulred = [&](const Res& a, const Res& b) {
    uint64_t c0 = mulmod(a[0], b[0], p);
    uint64_t c1 = addmod(mulmod(a[0], b[1], p), mulmod(a[1], b[0], p), p);
    uint64_t c2 = addmod(addmod(mulmod(a[0], b[2], p), mulmod(a[1], b[1], p), p),
                         mulmod(a[2], b[0], p), p);
    uint64_t c3 = addmod(mulmod(a[1], b[2], p), mulmod(a[2], b[1], p), p);
    uint64_t c4 = mulmod(a[2], b[2], p);
    return Res{addmod(c0, addmod(mulmod(c3, r3_0, p), mulmod(c4, r4_0, p), p), p),
               addmod(c1, addmod(mulmod(c3, r3_1, p), mulmod(c4, r4_1, p), p), p),
               addmod(c2, addmod(mulmod(c3, r3_2, p), mulmod(c4, r4_2, p), p), p)};
  };

  // h = x^p mod f by square-and-multiply over the bits of p.
  Res h{1, 0, 0};
  Res base{0, 1, 0};
  uint64_t e = p;
  while (e > 0) {
    if (e & 1) h = mulred(h, base);
    base = mulred(base, base);
    e >>= 1;
  }

  // Number of roots of f = deg gcd(h - x, f); squarefree cubics have
  // 0, 1, or 3 roots.
  const uint64_t a2 = h[2], a1 = (h[1] + p - 1) % p, a0 = h[0];
  int roots;
  if (a2 == 0 && a1 == 0 && a0 == 0) {
    roots = 3;  // f divides x^p - x
  } else if (a2 != 0) {
    // f mod a for quadratic a, then Euclid down to a constant.
    const uint64_t inv = powmod(a2, p - 2, p);
    const uint64_t q1 = inv;
    const uint64_t t2 = addmod(f2, p - mulmod(q1, a1, p), p);
    const uint64_t t1 = addmod(f1, p - mulmod(q1, a0, p), p);
    const uint64_t q0 = mulmod(t2, inv, p);
    const uint64_t b1 = addmod(t1, p - mulmod(q0, a1, p), p);
    const uint64_t b0 = addmod(f0, p - mulmod(q0, a0, p), p);
    if (b1 == 0 && b0 == 0)
      throw Error("degree-2 gcd for a squarefree cubic");
    if (b1 == 0) {
      roots = 0;  // constant remainder: coprime
    } else {
      const uint64_t binv = powmod(b1, p - 2, p);
      const uint64_t s1 = mulmod(a2, binv, p);
      const uint64_t r1 = addmod(a1, p - mulmod(s1, b0, p), p);
      const uint64_t s0 = mulmod(r1, binv, p);
      const uint64_t r0 = addmod(a0, p - mulmod(s0, b0, p), p);
      roots = r0 == 0 ? 1 : 0;
    }
  } else if (a1 != 0) {
    // Linear h - x: one root iff its root is a root of f.
    const uint64_t root =
        mulmod(a0 == 0 ? 0 : p - a0, powmod(a1, p - 2, p), p);
    const uint64_t v = addmod(
        mulmod(addmod(mulmod(addmod(root, f2, p), root, p), f1, p), root, p),
        f0, p);
    roots = v == 0 ? 1 : 0;
  } else {
    roots = 0;  // nonzero constant
  }
  return roots == 3 ? 0 : roots == 1 ? 1 : 2;
}

bool is_squarefree(uint64_t n) {
  for (auto [p, e] : factorize_u64(n)) {
    (void)p;
    if (e > 1) return false;
  }
  return true;
}

std::vector<uint64_t> prime_support_u64(uint64_t n) {
  std::vector<uint64_t> out;
  for (auto [p, e] : factorize_u64(n)) {
    (void)e;
    out.push_back(p);
  }
  return out;
}

std::vector<uint64_t> prime_support_big(const BigInt& n) {
  BigInt mag = n < 0 ? BigInt(-n) : n;
  if (mag > BigInt(std::numeric_limits<long long>::max()))
    throw UsageError("discriminant too large to factor the ramified set");
  return prime_support_u64(static_cast<uint64_t>(mag));
}

}  // namespace

ExtensionModel ExtensionModel::quadratic(long long d) {
  if (d == 0 || d == 1) throw UsageError("quadratic model needs D != 0, 1");
  uint64_t mag = static_cast<uint64_t>(d < 0 ? -d : d);
  if (!is_squarefree(mag)) throw UsageError("quadratic model needs squarefree D");

  ExtensionModel m;
  m.kind_ = ModelKind::kQuadratic;
  m.group_order_ = 2;
  m.classes_ = {{"split", 1}, {"inert", 1}};
  long long m4 = ((d % 4) + 4) % 4;
  m.field_disc_ = m4 == 1 ? d : 4 * d;
  m.ramified_ = prime_support_u64(static_cast<uint64_t>(
      m.field_disc_ < 0 ? -m.field_disc_ : m.field_disc_));
  m.description_ = "quadratic:" + std::to_string(d);
  return m;
}

ExtensionModel ExtensionModel::cyclotomic(long long b) {
  if (b < 3) throw UsageError("cyclotomic model needs b >= 3");
  ExtensionModel m;
  m.kind_ = ModelKind::kCyclotomic;
  m.modulus_ = b;
  m.residue_class_index_.assign(b, kRamified);
  for (long long a = 1; a < b; ++a) {
    if (std::gcd(a, b) == 1) {
      m.residue_class_index_[a] = static_cast<int>(m.classes_.size());
      m.classes_.push_back({std::to_string(a) + " mod " + std::to_string(b), 1});
    }
  }
  m.group_order_ = static_cast<int64_t>(m.classes_.size());
  m.ramified_ = prime_support_u64(static_cast<uint64_t>(b));
  m.description_ = "cyclotomic:" + std::to_string(b);
  return m;
}

ExtensionModel ExtensionModel::s3_cubic(IntPolynomial f) {
  if (f.degree() != 3) throw UsageError("S3 model needs a cubic polynomial");
  if (!f.monic()) throw UsageError("S3 model needs a monic cubic");
  if (f.has_integer_root()) throw UsageError("cubic is reducible over Q");
  BigInt disc = poly_discriminant(f);
  if (disc == 0) throw UsageError("cubic has zero discriminant");
  if (disc > 0) {
    BigInt r = boost::multiprecision::sqrt(disc);
    if (r * r == disc)
      throw UsageError("cubic has square discriminant (Galois group A3, not S3)");
  }

  ExtensionModel m;
  m.kind_ = ModelKind::kS3Cubic;
  m.group_order_ = 6;
  m.classes_ = {{"C1", 1}, {"C2", 3}, {"C3", 2}};
  m.cubic_disc_ = disc;
  m.ramified_ = prime_support_big(disc);
  m.description_ = "cubic:" + f.to_string();
  const BigInt i64max(std::numeric_limits<long long>::max());
  for (int i = 0; i <= 3; ++i) {
    if (f.coeff(i) > i64max || f.coeff(i) < -i64max)
      throw UsageError("cubic coefficients must fit 64-bit integers");
    m.cubic_i64_[i] = f.coeff(i).convert_to<long long>();
  }
  m.cubic_ = std::make_shared<IntPolynomial>(std::move(f));
  return m;
}

int ExtensionModel::classify(uint64_t p) const {
  switch (kind_) {
    case ModelKind::kQuadratic: {
      int k = kronecker(field_disc_, static_cast<long long>(p));
      if (k == 0) return kRamified;
      return k == 1 ? 0 : 1;  // split, inert
    }
    case ModelKind::kCyclotomic: {
      return residue_class_index_[p % static_cast<uint64_t>(modulus_)];
    }
    case ModelKind::kS3Cubic: {
      if (std::binary_search(ramified_.begin(), ramified_.end(), p))
        return kRamified;
      return cubic_frobenius_class(cubic_i64_, p);
    }
  }
  return kRamified;
}

int ExtensionModel::class_index(const std::string& label) const {
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (classes_[i].label == label) return static_cast<int>(i);
  return -1;
}

double ExtensionModel::ramified_factor() const {
  double f = 1.0;
  for (uint64_t p : ramified_) f /= 1.0 - 1.0 / static_cast<double>(p);
  return f;
}

long long ExtensionModel::quadratic_field_discriminant() const {
  if (kind_ != ModelKind::kQuadratic) throw Error("not a quadratic model");
  return field_disc_;
}

long long ExtensionModel::cyclotomic_modulus() const {
  if (kind_ != ModelKind::kCyclotomic) throw Error("not a cyclotomic model");
  return modulus_;
}

const IntPolynomial& ExtensionModel::cubic() const {
  if (kind_ != ModelKind::kS3Cubic) throw Error("not an S3 model");
  return *cubic_;
}

const BigInt& ExtensionModel::cubic_discriminant() const {
  if (kind_ != ModelKind::kS3Cubic) throw Error("not an S3 model");
  return cubic_disc_;
}

uint32_t ExtensionModel::hash() const {
  // FNV-1a over the description.
  uint32_t h = 2166136261u;
  for (unsigned char c : description_) {
    h ^= c;
    h *= 16777619u;
  }
  return h;
}

ExtensionModel parse_model(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw UsageError("model spec must be kind:params, got '" + spec + "'");
  std::string kind = spec.substr(0, colon);
  std::string params = spec.substr(colon + 1);
  try {
    if (kind == "quadratic") return ExtensionModel::quadratic(std::stoll(params));
    if (kind == "cyclotomic") return ExtensionModel::cyclotomic(std::stoll(params));
    if (kind == "cubic")
      return ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first(params));
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError("bad model spec '" + spec + "': " + e.what());
  }
  throw UsageError("unknown model kind '" + kind + "'");
}

}  // namespace chebmert
