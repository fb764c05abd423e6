#ifndef CHEBMERT_DIRICHLET_HPP
#define CHEBMERT_DIRICHLET_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "chebmert/characters.hpp"

namespace chebmert {

// A Dirichlet character mod b as a function on the integers: values on
// the coprime residues, zero elsewhere, totally multiplicative.
class DirichletCharacter {
public:
  // Lifts one character of a cyclotomic table to its residue function.
  static DirichletCharacter from_table(const ExtensionModel& cyclotomic_model,
                                       const CharacterTable& table, int char_idx);

  // The real character n -> kronecker(D, n) of a fundamental
  // discriminant D, taken mod |D| (primitive).
  static DirichletCharacter quadratic(long long fundamental_disc);

  long long modulus() const { return modulus_; }
  bool is_trivial() const { return trivial_; }
  const std::string& label() const { return label_; }

  std::complex<double> operator()(long long n) const {
    long long r = n % modulus_;
    if (r < 0) r += modulus_;
    return values_[r];
  }
  bool nonzero_at(long long n) const {
    long long r = n % modulus_;
    if (r < 0) r += modulus_;
    return nonzero_[r];
  }

  // Smallest f | b with chi induced by a character mod f.
  long long conductor() const;

  // The inducing primitive character mod conductor().
  DirichletCharacter primitivize() const;

  // Gauss sum sum_a chi(a) e^(2 pi i a / b) by direct summation.
  std::complex<double> gauss_sum() const;

private:
  DirichletCharacter() = default;
  long long modulus_ = 1;
  bool trivial_ = true;
  std::string label_;
  std::vector<std::complex<double>> values_;
  std::vector<char> nonzero_;
};

}  // namespace chebmert

#endif
