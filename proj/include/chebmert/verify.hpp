#ifndef CHEBMERT_VERIFY_HPP
#define CHEBMERT_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace chebmert {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// The property suites behind `verify` and the acceptance harness.  Each
// check prints measured values in its detail string.

// Per-prime factor identities (1-1/np)^chi = M^-1 K and L = M R^-1 over
// every classified prime <= xmax of the three canonical models, plus
// the ledger-level product identities and reassembly checks.
std::vector<CheckResult> verify_identities(uint64_t xmax);

// Row and column orthogonality for S3, Quadratic(5), and all
// cyclotomic tables with b <= max_b.
std::vector<CheckResult> verify_orthogonality(long long max_b);

// The series identity behind the k bound, on random complex pairs.
std::vector<CheckResult> verify_nonsense(int pairs, int terms);

// |k_chi(p)| <= d(d+1)/(2np) + C_d/np^2 over every prime in S.
std::vector<CheckResult> verify_kbound(uint64_t xmax);

// K-product and k-sum tail decay fits; defaults to the S3 model when
// none is given.  For models with a higher-dimensional character the
// ledger-based L estimates must also stabilise decade over decade.
std::vector<CheckResult> verify_rates(uint64_t fit_lo, uint64_t fit_hi,
                                      uint64_t x_max,
                                      const std::string& model_spec = "");

// Empirical Chebotarev densities at xmax.
std::vector<CheckResult> verify_densities(uint64_t xmax);

// Class-product partition identity against the full Mertens product.
std::vector<CheckResult> verify_partition(uint64_t xmax);

// Rosen product for Q(sqrt(d)) plus the classic Mertens reduction.
std::vector<CheckResult> verify_rosen(long long d, uint64_t xmax);

// Quadratic-form density fits and the cyclotomic product identity.
std::vector<CheckResult> verify_quadform(uint64_t xmax);

// Closed form vs series for primitive characters and the class number
// formula cross-check.
std::vector<CheckResult> verify_lvalues(long long max_b, uint64_t series_terms);

// Scaled-residual data for the b = 4 progression class 1: the class
// product against (best-constant/log x)^(1/2) over decade checkpoints.
struct WilliamsResiduals {
  double best_constant = 0.0;
  std::vector<std::pair<uint64_t, double>> scaled;  // (x, r(x) (log x)^1.5)
  double max_scaled = 0.0;
  double median_scaled = 0.0;
  bool verdict_pass = false;       // rate-verdict rule
  std::string verdict;
};

WilliamsResiduals williams_residuals(uint64_t xmax);

// Rate-verdict view of the residuals above.
std::vector<CheckResult> verify_williams(uint64_t xmax);

// Two-determination agreement for the three canonical models.
std::vector<CheckResult> verify_two_determinations(uint64_t xmax_hi,
                                                   uint64_t xmax_lo);

// Suite registry used by the CLI: runs the named suite ("all" runs
// everything) with defaults scaled to xmax.  model_spec (when present)
// selects the model for the rates suite.
std::vector<CheckResult> run_suite(const std::string& name, uint64_t xmax,
                                   long long rosen_d,
                                   const std::string& model_spec = "");

std::vector<std::string> suite_names();

// Checkpoint grid helper: geometric half-decade grid ending at x_max
// with at least four points.
std::vector<uint64_t> default_checkpoints(uint64_t x_max);

}  // namespace chebmert

#endif
