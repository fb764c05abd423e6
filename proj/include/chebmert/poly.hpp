#ifndef CHEBMERT_POLY_HPP
#define CHEBMERT_POLY_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace chebmert {

using BigInt = boost::multiprecision::cpp_int;

// Integer polynomial, coefficients low to high degree.  Field-defining
// polynomials must be monic.
class IntPolynomial {
public:
  explicit IntPolynomial(std::vector<BigInt> coefficients);

  // Parses a comma-separated coefficient list, leading coefficient
  // first ("1,0,-1,-1" is x^3 - x - 1).
  static IntPolynomial parse_leading_first(const std::string& text);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool monic() const { return coeffs_.back() == 1; }
  const BigInt& coeff(int i) const { return coeffs_[i]; }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  BigInt eval(const BigInt& x) const;

  // Reduction mod p, still low to high degree, with the (possibly zero)
  // top coefficients trimmed.
  std::vector<uint64_t> reduced_mod(uint64_t p) const;

  // True for a monic polynomial with an integer root (rational root
  // test; monic means every rational root is an integer dividing the
  // constant term).
  bool has_integer_root() const;

  std::string to_string() const;

private:
  std::vector<BigInt> coeffs_;
};

// Exact discriminant; degrees 2 and 3 only.
BigInt poly_discriminant(const IntPolynomial& f);

// Multiset of degrees of the irreducible factors of f mod p, as sorted
// (degree, count) pairs.
using DegreePattern = std::vector<std::pair<int, int>>;

// Distinct-degree factorisation of monic f mod p: repeated squaring of
// x^p mod f and gcds with x^(p^d) - x.  Only degrees are computed.
// Throws RamifiedPrimeError when p divides disc(f).
DegreePattern factor_degrees_mod_p(const IntPolynomial& f, uint64_t p);

// Same, for callers that already know p does not divide disc(f).
DegreePattern ddf_degrees(std::vector<uint64_t> f_mod_p, uint64_t p);

}  // namespace chebmert

#endif
