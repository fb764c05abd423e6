#ifndef CHEBMERT_EULER_LOCAL_HPP
#define CHEBMERT_EULER_LOCAL_HPP

#include <complex>
#include <vector>

#include "chebmert/characters.hpp"

namespace chebmert {

// k value at one prime: np * [1 - (1 - chi/np)(1 - 1/np)^(-chi)], the
// datum making (1 - 1/np)^chi = M^(-1) K exact at every prime.  The
// complex power uses the principal log of the positive real base.
// Throws OutOfSetError when |chi(class)| >= np.
std::complex<double> k_chi(const Character& chi, int class_idx, double np);

// Per-character local data at one classified prime.
struct CharLocalFactors {
  std::complex<double> m_factor;  // M_P = (1 - chi/np)^(-1)
  std::complex<double> k_value;   // k_chi(P)
  std::complex<double> k_factor;  // K_P = (1 - k/np)^(-1)
  std::complex<double> r_factor;  // R_P^(-1) = (1 + g(1/np)/(np(np-chi)))^(-1)
  std::complex<double> l_factor;  // Artin factor f(1/np)^(-1)
  bool excluded = false;          // prime outside S: only l_factor is usable
};

struct LocalFactorSet {
  uint64_t np = 0;
  int class_idx = 0;
  double mertens = 0.0;  // 1 - 1/np
  std::vector<CharLocalFactors> per_char;
};

// All local factors at one unramified prime of norm np.  Characters at
// primes outside S get excluded=true and only the Artin factor filled.
LocalFactorSet local_factors(const CharacterTable& table, int class_idx,
                             uint64_t np);

// Log-space terms consumed by the product ledger, one character at a
// prime inside S.
struct CharLogTerms {
  std::complex<double> log_m_inv;   // log(1 - chi/np)
  std::complex<double> log_k;       // -log(1 - k/np)
  std::complex<double> log_r_inv;   // -log R_P
  double abs_k_over_np;
};

CharLogTerms char_log_terms(const Character& chi, int class_idx, double np,
                            double log_mertens);

// The two sides of the series identity behind the k bound: the left is
// the k definition over np = b, the right its expansion
// a(a-1)/b [1/2 + sum ((a+1)...(a+n))/(b^n (n+1)!) (n+1)/(n+2)].
std::complex<double> k_series_lhs(std::complex<double> a, double b);
std::complex<double> k_series_rhs(std::complex<double> a, double b, int terms);

// C_d = d(d+1)/d! * sum_{n>=0} (n-1+d)!/n! * 2^(-n).
double c_d_constant(int d);

// d(d+1)/(2 np) + C_d/np^2.
double k_chi_bound(int d, double np);

}  // namespace chebmert

#endif
