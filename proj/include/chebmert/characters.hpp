#ifndef CHEBMERT_CHARACTERS_HPP
#define CHEBMERT_CHARACTERS_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chebmert/extension.hpp"

namespace chebmert {

// Exact root of unity e^(2 pi i num/den), kept alongside the floating
// value so multiplicativity and conjugation stay exact.
struct RootOfUnity {
  long long num = 0;
  long long den = 1;

  static RootOfUnity make(long long num, long long den);
  RootOfUnity operator*(const RootOfUnity& o) const;
  RootOfUnity conjugate() const { return make(-num, den); }
  bool is_one() const { return num == 0; }
  std::complex<double> value() const;
  bool operator==(const RootOfUnity&) const = default;
};

// Characteristic polynomial of Frobenius on one conjugacy class,
// f(T) = det(I - rho(Frob) T) = 1 - chi T + g(T) T^2.
struct FrobCharPoly {
  std::vector<std::complex<double>> f;  // low to high degree, f[0] = 1
  std::vector<std::complex<double>> g;  // f with the 1 - chi T part stripped

  std::complex<double> eval_f(std::complex<double> t) const;
  std::complex<double> eval_g(std::complex<double> t) const;
  double eval_f_real(double t) const;  // valid when all coefficients are real
  double eval_g_real(double t) const;
};

class Character {
public:
  Character(std::string label, int dimension, bool trivial,
            std::vector<std::complex<double>> values,
            std::vector<FrobCharPoly> charpolys,
            std::vector<RootOfUnity> exact = {});

  const std::string& label() const { return label_; }
  int dimension() const { return dimension_; }
  bool is_trivial() const { return trivial_; }
  int num_classes() const { return static_cast<int>(values_.size()); }
  std::complex<double> value(int class_idx) const { return values_[class_idx]; }
  bool value_is_real(int class_idx) const { return values_[class_idx].imag() == 0.0; }
  const FrobCharPoly& charpoly(int class_idx) const { return charpolys_[class_idx]; }

  // Exact root-of-unity value; only one-dimensional characters carry it.
  const RootOfUnity* exact_value(int class_idx) const {
    return exact_.empty() ? nullptr : &exact_[class_idx];
  }

private:
  std::string label_;
  int dimension_;
  bool trivial_;
  std::vector<std::complex<double>> values_;
  std::vector<FrobCharPoly> charpolys_;
  std::vector<RootOfUnity> exact_;
};

// Irreducible character table of Gal(E/Q) for a supported model, with
// per-class Frobenius characteristic polynomials.  Immutable.
class CharacterTable {
public:
  static CharacterTable for_model(const ExtensionModel& model);

  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  const std::vector<Character>& chars() const { return chars_; }
  int64_t group_order() const { return group_order_; }
  std::size_t num_chars() const { return chars_.size(); }
  int trivial_index() const { return trivial_index_; }

  // Norms below which a class leaves the exceptional-free set: the
  // class is outside S at norm np iff some |chi(class)| >= np.
  bool in_exceptional_free_set(int class_idx, double np) const {
    return class_max_abs_[class_idx] < np;
  }

private:
  std::vector<ConjugacyClass> classes_;
  std::vector<Character> chars_;
  std::vector<double> class_max_abs_;
  int64_t group_order_ = 0;
  int trivial_index_ = 0;
};

// Column orthogonality sum_chi chi(p_class) conj(chi(c)); |G|/|C| when
// the classes agree, 0 otherwise.
std::complex<double> orthogonality_sum(const CharacterTable& table, int c,
                                       int p_class);

// Row orthogonality sum_C |C| chi_i(C) conj(chi_j(C)); |G| delta_ij.
std::complex<double> row_orthogonality_sum(const CharacterTable& table, int i,
                                           int j);

// xi bound: sup over classes and T in [0, 1/2] of |g(T)|; zero for
// one-dimensional characters.
double xi_bound(const Character& chi);

}  // namespace chebmert

#endif
