#include "chebmert/idealnorms.hpp"

#include <cmath>

#include "chebmert/errors.hpp"
#include "chebmert/intmod.hpp"
#include "chebmert/primes.hpp"
#include "chebmert/quadform.hpp"

namespace chebmert {

ImagQuadBase make_imag_quad_base(long long d) {
  if (d >= 0) throw UsageError("imaginary quadratic base needs D < 0");
  for (auto [p, e] : factorize_u64(static_cast<uint64_t>(-d))) {
    (void)p;
    if (e > 1) throw UsageError("imaginary quadratic base needs squarefree D");
  }
  ImagQuadBase base;
  base.d = d;
  long long m4 = ((d % 4) + 4) % 4;
  base.field_discriminant = m4 == 1 ? d : 4 * d;
  base.class_number = chebmert::class_number(base.field_discriminant);
  base.unit_count = base.field_discriminant == -3   ? 6
                    : base.field_discriminant == -4 ? 4
                                                    : 2;
  base.kappa = 2.0 * M_PI * base.class_number /
               (base.unit_count * std::sqrt(static_cast<double>(-base.field_discriminant)));
  return base;
}

void for_each_ideal_norm(const ImagQuadBase& base, uint64_t limit,
                         const std::function<void(uint64_t, int)>& f) {
  if (limit < 2) return;
  for_each_prime_in_range(2, limit, [&](uint64_t p) {
    int k = kronecker(base.field_discriminant, static_cast<long long>(p));
    if (k == 1) {
      f(p, 2);
    } else if (k == 0) {
      f(p, 1);
    } else if (p * p <= limit) {
      f(p * p, 1);
    }
  });
}

}  // namespace chebmert
