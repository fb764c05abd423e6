#ifndef CHEBMERT_CONSTANTS_HPP
#define CHEBMERT_CONSTANTS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "chebmert/idealnorms.hpp"
#include "chebmert/ledger.hpp"
#include "chebmert/lfunctions.hpp"
#include "chebmert/quadform.hpp"

namespace chebmert {

// First determination: (NDelta/phi(Delta)) e^(-gamma_F) times the
// product over nontrivial chi of (B R M K / L(1,chi))^conj(chi(C)) with
// the truncated R and K products at x_max.  Log-space; the imaginary
// residue must stay below 1e-9 and the result positive, else this
// throws with a diagnostic.
double constant_method_a(const ProductLedger& ledger, const Corrections& corr,
                         const std::vector<LValue>& lvalues, int class_idx);

// Second determination: e^(-gamma_F) prod (1 - 1/np)^alpha truncated at
// the snapshot, alpha = -1 at ramified primes, |G|/|C| - 1 on the
// target class, -1 elsewhere.
double constant_method_b(const ProductLedger& ledger, const LedgerSnapshot& snap,
                         int class_idx);

// Direct Williams assembly e^(-gamma) b/phi(b) prod (K/L)^conj(chi(a))
// for cyclotomic models (must agree with method A).
double williams_constant(const ProductLedger& ledger,
                         const std::vector<LValue>& lvalues, int class_idx);

struct ResidualRow {
  uint64_t x = 0;
  double product = 0.0;          // prod over C(x) of (1 - 1/np)
  double residual = 0.0;         // |product - (c/log x)^delta|
  double scaled_residual = 0.0;  // residual * (log x)^(delta+1)
};

struct ConvergenceReport {
  std::vector<ResidualRow> rows;
  double predicted_rate_exponent = 0.0;  // delta(C) + 1
  double fitted_rate_exponent = 0.0;     // -slope of log r vs log log x
  double max_scaled = 0.0;
  double median_scaled = 0.0;
  bool pass = false;
  std::string verdict;  // PASS/FAIL plus the rule that fired
};

// Residual decay of the class product against (constant/log x)^delta.
// PASS when the scaled residuals are non-increasing over the last three
// checkpoints or bounded by 3x their median (engineering thresholds,
// not theorem statements).
ConvergenceReport convergence_verdict(const ProductLedger& ledger, int class_idx,
                                      double best_constant);

struct ConstantEstimate {
  std::string model;
  std::string class_label;
  uint64_t x_max = 0;
  double method_a = 0.0;
  double method_b = 0.0;
  double discrepancy = 0.0;  // |log A - log B|
  double gamma_f = 0.0;
  ConvergenceReport convergence;
};

// Runs corrections + L-values + both determinations + the convergence
// report for one target class.
ConstantEstimate estimate_constant(const ProductLedger& ledger, int class_idx);

std::string constant_estimate_json(const ConstantEstimate& est);
std::string constant_estimate_csv(const ConstantEstimate& est);

// Rosen / Mertens product reports.
struct ProductRow {
  uint64_t x = 0;
  double product = 0.0;
  double product_times_logx = 0.0;
  double scaled_residual = 0.0;  // (product*log x - e^(-gamma_F)) * log x
};

struct RosenReport {
  std::string field;   // e.g. "Q(sqrt(-1))" or "Q"
  double gamma_f = 0.0;
  double target = 0.0;  // e^(-gamma_F)
  std::vector<ProductRow> rows;
};

RosenReport rosen_product(const ImagQuadBase& base, uint64_t x_max,
                          const std::vector<uint64_t>& checkpoints);

// The F = Q degenerate case: the classic Mertens product.
RosenReport mertens_product_report(uint64_t x_max,
                                   const std::vector<uint64_t>& checkpoints);

std::string rosen_report_json(const RosenReport& report);

// Quadratic-form product with the density-exponent fit.
struct QuadFormReport {
  QuadForm form;
  long long disc = 0;
  int class_number = 0;
  bool ambiguous = false;
  double target_exponent = 0.0;  // |C|/(2h) resp. 1/h via the dichotomy
  double fitted_exponent = 0.0;
  std::vector<std::pair<uint64_t, double>> log_products;  // (x, log prod)
};

QuadFormReport quadform_product(const QuadForm& form, uint64_t x_max,
                                const std::vector<uint64_t>& checkpoints);

std::string quadform_report_json(const QuadFormReport& report);

}  // namespace chebmert

#endif
