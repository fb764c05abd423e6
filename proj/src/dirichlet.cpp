#include "chebmert/dirichlet.hpp"

#include <cmath>
#include <numeric>

#include "chebmert/errors.hpp"
#include "chebmert/intmod.hpp"

namespace chebmert {

DirichletCharacter DirichletCharacter::from_table(const ExtensionModel& model,
                                                  const CharacterTable& table,
                                                  int char_idx) {
  const long long b = model.cyclotomic_modulus();
  const Character& chi = table.chars()[char_idx];
  DirichletCharacter dc;
  dc.modulus_ = b;
  dc.trivial_ = chi.is_trivial();
  dc.label_ = chi.label() + " mod " + std::to_string(b);
  dc.values_.assign(b, {0.0, 0.0});
  dc.nonzero_.assign(b, 0);
  for (long long a = 1; a < b; ++a) {
    // Cyclotomic classification is a pure residue lookup, so it doubles
    // as the residue -> class map here.
    int cls = model.classify(static_cast<uint64_t>(a));
    if (cls == kRamified) continue;
    dc.values_[a] = chi.value(cls);
    dc.nonzero_[a] = 1;
  }
  return dc;
}

DirichletCharacter DirichletCharacter::quadratic(long long d) {
  if (d == 1 || d == 0) throw UsageError("quadratic character needs |D| > 1");
  long long b = d < 0 ? -d : d;
  DirichletCharacter dc;
  dc.modulus_ = b;
  dc.trivial_ = false;
  dc.label_ = "kronecker(" + std::to_string(d) + ")";
  dc.values_.assign(b, {0.0, 0.0});
  dc.nonzero_.assign(b, 0);
  for (long long a = 0; a < b; ++a) {
    int v = kronecker(d, a);
    if (v != 0) {
      dc.values_[a] = {static_cast<double>(v), 0.0};
      dc.nonzero_[a] = 1;
    }
  }
  return dc;
}

long long DirichletCharacter::conductor() const {
  const long long b = modulus_;
  for (long long f = 1; f <= b; ++f) {
    if (b % f != 0) continue;
    // chi is induced mod f iff chi(a) = 1 whenever a = 1 (mod f) and
    // gcd(a, b) = 1.
    bool induced = true;
    for (long long a = 1; a < b && induced; a += f) {
      if (!nonzero_[a % b]) continue;
      std::complex<double> v = values_[a % b];
      if (std::abs(v - std::complex<double>(1.0, 0.0)) > 1e-9) induced = false;
    }
    if (induced) return f;
  }
  return b;
}

DirichletCharacter DirichletCharacter::primitivize() const {
  const long long f = conductor();
  if (f == modulus_) return *this;
  DirichletCharacter dc;
  dc.modulus_ = f;
  dc.trivial_ = (f == 1);
  dc.label_ = label_ + " primitivized mod " + std::to_string(f);
  dc.values_.assign(f, {0.0, 0.0});
  dc.nonzero_.assign(f, 0);
  for (long long a = 0; a < f; ++a) {
    if (std::gcd(a, f) != 1) continue;
    // Lift to a residue coprime to the original modulus.
    long long lift = a;
    while (std::gcd(lift, modulus_) != 1) lift += f;
    dc.values_[a] = values_[lift % modulus_];
    dc.nonzero_[a] = 1;
  }
  return dc;
}

std::complex<double> DirichletCharacter::gauss_sum() const {
  const double b = static_cast<double>(modulus_);
  std::complex<double> tau = 0.0;
  for (long long a = 1; a < modulus_; ++a) {
    if (!nonzero_[a]) continue;
    double theta = 2.0 * M_PI * static_cast<double>(a) / b;
    tau += values_[a] * std::complex<double>(std::cos(theta), std::sin(theta));
  }
  return tau;
}

}  // namespace chebmert
