#ifndef CHEBMERT_LFUNCTIONS_HPP
#define CHEBMERT_LFUNCTIONS_HPP

#include <complex>
#include <string>
#include <vector>

#include "chebmert/dirichlet.hpp"
#include "chebmert/idealnorms.hpp"
#include "chebmert/ledger.hpp"

namespace chebmert {

enum class LMethod { kClosedForm, kDirichletSeries, kZetaRatioEuler };

struct LValue {
  std::string char_label;
  std::complex<double> value{0.0, 0.0};
  LMethod method = LMethod::kClosedForm;
  double error_estimate = 0.0;
  bool wide_error = false;  // set when the estimator ran short of data

  const char* method_name() const {
    switch (method) {
      case LMethod::kClosedForm: return "closed_form";
      case LMethod::kDirichletSeries: return "dirichlet_series";
      case LMethod::kZetaRatioEuler: return "zeta_ratio_euler";
    }
    return "?";
  }
};

// Exact finite form for a primitive nontrivial character:
// L(1,chi) = -(tau(chi)/b) sum_a conj(chi)(a) log(1 - e^(-2 pi i a/b)).
LValue dirichlet_l1_closed(const DirichletCharacter& chi);

// Partial sums of sum chi(n)/n with period-averaged stabilisation.
LValue dirichlet_l1_series(const DirichletCharacter& chi,
                           uint64_t terms = 10'000'000);

// Closed-form route for arbitrary (possibly imprimitive) nontrivial
// characters: primitivize, then restore the Euler factors at primes
// dividing the modulus but not the conductor.
LValue dirichlet_l1(const DirichletCharacter& chi);

// L(1, chi) estimated from the ledger's truncated Artin Euler product
// (used for higher-dimensional characters, where no Dirichlet series is
// available).  Error c/log(x_max) with c fitted from checkpoint
// differences.
LValue artin_l1_from_ledger(const ProductLedger& ledger, int char_idx);

// kappa_F = 2 pi h / (w sqrt(|disc|)).
double kappa_imag_quadratic(const ImagQuadBase& base);

// One L-value per nontrivial character of the model, under the same
// exclusion conventions as the ledger products.  Slot of the trivial
// character is left empty.
std::vector<LValue> lvalues_for_model(const ProductLedger& ledger);

}  // namespace chebmert

#endif
