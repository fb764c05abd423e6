#ifndef CHEBMERT_QUADFORM_HPP
#define CHEBMERT_QUADFORM_HPP

#include <cstdint>
#include <string>

namespace chebmert {

// Primitive, irreducible, positive definite binary quadratic form
// a x^2 + b xy + c y^2.
struct QuadForm {
  long long a = 1, b = 0, c = 1;

  long long discriminant() const { return b * b - 4 * a * c; }
  std::string to_string() const;
};

// Validates the invariants (gcd 1, a,c > 0, D < 0) and returns the form.
QuadForm make_quadform(long long a, long long b, long long c);

// Parses "a,b,c".
QuadForm parse_quadform(const std::string& text);

// Gauss reduction to the canonical representative |b| <= a <= c with
// b >= 0 when |b| = a or a = c.
QuadForm reduce(QuadForm f);

// A form is ambiguous when it is equivalent to its opposite (a,-b,c).
bool is_ambiguous(const QuadForm& f);

// Number of reduced primitive forms of negative discriminant D
// (D = 0 or 1 mod 4).
int class_number(long long d);

// True iff a x^2 + b xy + c y^2 = p has an integer solution; exhaustive
// search inside the positive-definite ellipse.
bool represents_prime(const QuadForm& f, uint64_t p);

}  // namespace chebmert

#endif
