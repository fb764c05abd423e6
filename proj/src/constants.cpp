#include "chebmert/constants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "chebmert/errors.hpp"
#include "chebmert/numeric.hpp"
#include "chebmert/primes.hpp"

namespace chebmert {

namespace {

using nlohmann::json;

double j15(double x) { return round_sig15(x); }

double assemble_real(std::complex<double> log_value, const char* what) {
  if (std::abs(log_value.imag()) >= 1e-9)
    throw Error(std::string(what) + ": imaginary residue " +
                std::to_string(log_value.imag()) + " exceeds 1e-9");
  return std::exp(log_value.real());
}

}  // namespace

double constant_method_a(const ProductLedger& ledger, const Corrections& corr,
                         const std::vector<LValue>& lvalues, int class_idx) {
  const CharacterTable& table = ledger.table();
  const LedgerSnapshot& snap = ledger.final_snapshot();
  std::complex<double> log_a =
      std::log(ledger.model().ramified_factor()) - euler_gamma();
  for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
    const Character& chi = table.chars()[ci];
    if (chi.is_trivial()) continue;
    const LValue& lv = lvalues[ci];
    if (std::abs(lv.value) == 0.0)
      throw Error("constant_method_a: missing L-value for " + chi.label());
    std::complex<double> bracket = corr.log_b[ci] + snap.log_r_inv[ci] +
                                   corr.log_m[ci] + snap.log_k[ci] -
                                   std::log(lv.value);
    log_a += std::conj(chi.value(class_idx)) * bracket;
  }
  double a = assemble_real(log_a, "constant_method_a");
  if (!(a > 0.0) || !std::isfinite(a))
    throw Error("constant_method_a: non-positive result (convention mismatch?)");
  return a;
}

double constant_method_b(const ProductLedger& ledger, const LedgerSnapshot& snap,
                         int class_idx) {
  const auto& classes = ledger.model().classes();
  const double over =
      static_cast<double>(ledger.model().group_order()) / classes[class_idx].size;
  double log_b = -euler_gamma() - snap.log_mertens_ramified;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    double alpha = static_cast<int>(c) == class_idx ? over - 1.0 : -1.0;
    log_b += alpha * snap.class_log_mertens[c];
  }
  return std::exp(log_b);
}

double williams_constant(const ProductLedger& ledger,
                         const std::vector<LValue>& lvalues, int class_idx) {
  const ExtensionModel& model = ledger.model();
  if (model.kind() != ModelKind::kCyclotomic)
    throw UsageError("williams_constant applies to cyclotomic models");
  const CharacterTable& table = ledger.table();
  const LedgerSnapshot& snap = ledger.final_snapshot();
  std::complex<double> log_w =
      std::log(model.ramified_factor()) - euler_gamma();
  for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
    const Character& chi = table.chars()[ci];
    if (chi.is_trivial()) continue;
    log_w += std::conj(chi.value(class_idx)) *
             (snap.log_k[ci] - std::log(lvalues[ci].value));
  }
  return assemble_real(log_w, "williams_constant");
}

ConvergenceReport convergence_verdict(const ProductLedger& ledger, int class_idx,
                                      double best_constant) {
  const auto& snaps = ledger.snapshots();
  if (snaps.size() < 4)
    throw UsageError("convergence_verdict needs at least 4 checkpoints");
  const double delta =
      ledger.model().classes()[class_idx].density(ledger.model().group_order());
  ConvergenceReport rep;
  rep.predicted_rate_exponent = delta + 1.0;
  std::vector<double> lx, ly, scaled;
  for (const auto& s : snaps) {
    ResidualRow row;
    row.x = s.x;
    row.product = std::exp(s.class_log_mertens[class_idx]);
    const double logx = std::log(static_cast<double>(s.x));
    row.residual = std::abs(row.product - std::pow(best_constant / logx, delta));
    row.scaled_residual = row.residual * std::pow(logx, delta + 1.0);
    rep.rows.push_back(row);
    scaled.push_back(row.scaled_residual);
    if (row.residual > 0) {
      lx.push_back(std::log(logx));
      ly.push_back(std::log(row.residual));
    }
  }
  if (lx.size() >= 2) rep.fitted_rate_exponent = -fit_line(lx, ly).slope;
  rep.max_scaled = *std::max_element(scaled.begin(), scaled.end());
  rep.median_scaled = median(scaled);
  const std::size_t n = scaled.size();
  bool tail_nonincreasing =
      scaled[n - 1] <= scaled[n - 2] && scaled[n - 2] <= scaled[n - 3];
  bool bounded = rep.max_scaled <= 3.0 * rep.median_scaled;
  rep.pass = tail_nonincreasing || bounded;
  std::ostringstream v;
  v << (rep.pass ? "PASS" : "FAIL") << " (scaled residual "
    << (bounded ? "max <= 3*median" : tail_nonincreasing ? "non-increasing tail"
                                                         : "unbounded")
    << ")";
  rep.verdict = v.str();
  return rep;
}

ConstantEstimate estimate_constant(const ProductLedger& ledger, int class_idx) {
  ConstantEstimate est;
  est.model = ledger.model().description();
  est.class_label = ledger.model().classes()[class_idx].label;
  est.x_max = ledger.x_max();
  est.gamma_f = euler_gamma();  // base field Q
  Corrections corr = corrections(ledger);
  std::vector<LValue> lvalues = lvalues_for_model(ledger);
  est.method_a = constant_method_a(ledger, corr, lvalues, class_idx);
  est.method_b = constant_method_b(ledger, ledger.final_snapshot(), class_idx);
  est.discrepancy = std::abs(std::log(est.method_a) - std::log(est.method_b));
  if (ledger.snapshots().size() >= 4) {
    est.convergence = convergence_verdict(ledger, class_idx, est.method_a);
  } else {
    est.convergence.verdict = "SKIPPED (needs >= 4 checkpoints)";
    est.convergence.predicted_rate_exponent =
        ledger.model().classes()[class_idx].density(ledger.model().group_order()) + 1.0;
    for (const auto& s : ledger.snapshots()) {
      ResidualRow row;
      row.x = s.x;
      row.product = std::exp(s.class_log_mertens[class_idx]);
      est.convergence.rows.push_back(row);
    }
  }
  return est;
}

std::string constant_estimate_json(const ConstantEstimate& est) {
  json j;
  j["model"] = est.model;
  j["class"] = est.class_label;
  j["x_max"] = est.x_max;
  j["method_A"] = j15(est.method_a);
  j["method_B"] = j15(est.method_b);
  j["discrepancy"] = j15(est.discrepancy);
  j["gamma_F"] = j15(est.gamma_f);
  j["ramified_factor_convention"] = Corrections::kRamifiedConvention;
  j["predicted_rate_exponent"] = j15(est.convergence.predicted_rate_exponent);
  j["fitted_rate_exponent"] = j15(est.convergence.fitted_rate_exponent);
  j["checkpoints"] = json::array();
  for (const auto& row : est.convergence.rows) {
    j["checkpoints"].push_back({{"x", row.x},
                                {"product", j15(row.product)},
                                {"scaled_residual", j15(row.scaled_residual)}});
  }
  j["verdict"] = est.convergence.verdict;
  return j.dump(2);
}

std::string constant_estimate_csv(const ConstantEstimate& est) {
  std::ostringstream os;
  char buf[256];
  os << "# model=" << est.model << " class=" << est.class_label;
  std::snprintf(buf, sizeof(buf), " method_A=%.15g method_B=%.15g discrepancy=%.15g\n",
                est.method_a, est.method_b, est.discrepancy);
  os << buf << "x,product,scaled_residual\n";
  for (const auto& row : est.convergence.rows) {
    std::snprintf(buf, sizeof(buf), "%llu,%.15g,%.15g\n",
                  static_cast<unsigned long long>(row.x), row.product,
                  row.scaled_residual);
    os << buf;
  }
  return os.str();
}

namespace {

RosenReport product_report(const std::string& field, double gamma_f,
                           uint64_t x_max, std::vector<uint64_t> cps,
                           const std::function<void(
                               const std::function<void(uint64_t, double)>&)>& feed) {
  cps.push_back(x_max);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  std::vector<KahanSum> acc(cps.size());
  feed([&](uint64_t norm, double log_term) {
    for (std::size_t i = 0; i < cps.size(); ++i)
      if (norm <= cps[i]) acc[i].add(log_term);
  });
  RosenReport rep;
  rep.field = field;
  rep.gamma_f = gamma_f;
  rep.target = std::exp(-gamma_f);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    ProductRow row;
    row.x = cps[i];
    row.product = std::exp(acc[i].value());
    const double logx = std::log(static_cast<double>(cps[i]));
    row.product_times_logx = row.product * logx;
    row.scaled_residual = (row.product_times_logx - rep.target) * logx;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace

RosenReport rosen_product(const ImagQuadBase& base, uint64_t x_max,
                          const std::vector<uint64_t>& checkpoints) {
  const double gamma_f = euler_gamma() + std::log(base.kappa);
  std::string field = "Q(sqrt(" + std::to_string(base.d) + "))";
  return product_report(field, gamma_f, x_max, checkpoints,
                        [&](const std::function<void(uint64_t, double)>& sink) {
                          for_each_ideal_norm(base, x_max, [&](uint64_t norm, int mult) {
                            double t = mult * std::log1p(-1.0 / static_cast<double>(norm));
                            sink(norm, t);
                          });
                        });
}

RosenReport mertens_product_report(uint64_t x_max,
                                   const std::vector<uint64_t>& checkpoints) {
  return product_report("Q", euler_gamma(), x_max, checkpoints,
                        [&](const std::function<void(uint64_t, double)>& sink) {
                          for_each_prime_in_range(2, x_max, [&](uint64_t p) {
                            sink(p, std::log1p(-1.0 / static_cast<double>(p)));
                          });
                        });
}

std::string rosen_report_json(const RosenReport& report) {
  json j;
  j["field"] = report.field;
  j["gamma_F"] = j15(report.gamma_f);
  j["target"] = j15(report.target);
  j["ramified_factor_convention"] = Corrections::kRamifiedConvention;
  j["checkpoints"] = json::array();
  for (const auto& row : report.rows) {
    j["checkpoints"].push_back({{"x", row.x},
                                {"product", j15(row.product)},
                                {"product_times_logx", j15(row.product_times_logx)},
                                {"scaled_residual", j15(row.scaled_residual)}});
  }
  return j.dump(2);
}

QuadFormReport quadform_product(const QuadForm& form, uint64_t x_max,
                                const std::vector<uint64_t>& checkpoints) {
  QuadFormReport rep;
  rep.form = form;
  rep.disc = form.discriminant();
  rep.class_number = chebmert::class_number(rep.disc);
  rep.ambiguous = is_ambiguous(form);
  rep.target_exponent = rep.ambiguous ? 1.0 / (2.0 * rep.class_number)
                                      : 1.0 / rep.class_number;

  std::vector<uint64_t> cps = checkpoints;
  cps.push_back(x_max);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  std::vector<KahanSum> acc(cps.size());
  for_each_prime_in_range(2, x_max, [&](uint64_t p) {
    if (!represents_prime(form, p)) return;
    double t = std::log1p(-1.0 / static_cast<double>(p));
    for (std::size_t i = 0; i < cps.size(); ++i)
      if (p <= cps[i]) acc[i].add(t);
  });
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < cps.size(); ++i) {
    rep.log_products.push_back({cps[i], acc[i].value()});
    lx.push_back(std::log(std::log(static_cast<double>(cps[i]))));
    ly.push_back(acc[i].value());
  }
  // log prod = const - e log log x.
  if (lx.size() >= 2) rep.fitted_exponent = -fit_line(lx, ly).slope;
  return rep;
}

std::string quadform_report_json(const QuadFormReport& report) {
  json j;
  j["form"] = report.form.to_string();
  j["discriminant"] = report.disc;
  j["class_number"] = report.class_number;
  j["ambiguous"] = report.ambiguous;
  j["target_exponent"] = j15(report.target_exponent);
  j["fitted_exponent"] = j15(report.fitted_exponent);
  j["checkpoints"] = json::array();
  for (const auto& [x, lp] : report.log_products)
    j["checkpoints"].push_back({{"x", x}, {"log_product", j15(lp)}});
  return j.dump(2);
}

}  // namespace chebmert
