#ifndef CHEBMERT_IDEALNORMS_HPP
#define CHEBMERT_IDEALNORMS_HPP

#include <cstdint>
#include <functional>

namespace chebmert {

// Imaginary quadratic base field Q(sqrt(D)), D < 0 squarefree, with the
// data entering the residue of its Dedekind zeta at s = 1.
struct ImagQuadBase {
  long long d = -1;              // squarefree D
  long long field_discriminant = -4;
  int class_number = 1;
  int unit_count = 4;            // w: 6 for disc -3, 4 for disc -4, else 2
  double kappa = 0.0;            // 2*pi*h / (w * sqrt(|disc|))
};

ImagQuadBase make_imag_quad_base(long long d);

// Enumerates the prime-ideal norms of the base field up to limit, in
// increasing order of the underlying rational prime (not of the norm):
// split p gives (p, 2), inert p gives (p^2, 1) when p^2 <= limit,
// ramified p gives (p, 1).
void for_each_ideal_norm(const ImagQuadBase& base, uint64_t limit,
                         const std::function<void(uint64_t norm, int mult)>& f);

}  // namespace chebmert

#endif
