#include "chebmert/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "chebmert/constants.hpp"
#include "chebmert/errors.hpp"
#include "chebmert/euler_local.hpp"
#include "chebmert/ledger.hpp"
#include "chebmert/lfunctions.hpp"
#include "chebmert/numeric.hpp"
#include "chebmert/primes.hpp"

namespace chebmert {

namespace {

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

CheckResult check(const std::string& name, bool pass, const std::string& detail) {
  return {name, pass, detail};
}

std::vector<ExtensionModel> canonical_models() {
  return {ExtensionModel::quadratic(5), ExtensionModel::cyclotomic(4),
          ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first("1,0,-1,-1"))};
}

ProductLedger quick_run(const ExtensionModel& model, uint64_t xmax,
                        std::vector<uint64_t> cps = {}) {
  CharacterTable table = CharacterTable::for_model(model);
  RunOptions opt;
  opt.x_max = xmax;
  opt.checkpoints = cps.empty() ? default_checkpoints(xmax) : std::move(cps);
  opt.threads = 4;
  return run_products(model, table, opt);
}

}  // namespace

std::vector<uint64_t> default_checkpoints(uint64_t x_max) {
  double top = std::log10(static_cast<double>(x_max));
  double start = std::min(3.0, top - 1.5);
  if (start < 0.5) start = 0.5;
  return geometric_checkpoints(start, top, 0.5, x_max);
}

std::vector<CheckResult> verify_identities(uint64_t xmax) {
  std::vector<CheckResult> out;
  for (const auto& model : canonical_models()) {
    CharacterTable table = CharacterTable::for_model(model);
    double worst_mk = 0.0, worst_lmr = 0.0;
    uint64_t checked = 0;
    for_each_prime_in_range(2, xmax, [&](uint64_t p) {
      int cls = model.classify(p);
      if (cls == kRamified) return;
      LocalFactorSet lf = local_factors(table, cls, p);
      const double lm = std::log1p(-1.0 / static_cast<double>(p));
      for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
        const auto& f = lf.per_char[ci];
        if (f.excluded) continue;
        std::complex<double> raw =
            std::exp(table.chars()[ci].value(cls) * lm);
        std::complex<double> mk = f.k_factor / f.m_factor;
        worst_mk = std::max(worst_mk, std::abs(raw - mk) / std::abs(raw));
        std::complex<double> mr = f.m_factor * f.r_factor;
        worst_lmr = std::max(worst_lmr,
                             std::abs(f.l_factor - mr) / std::abs(f.l_factor));
        ++checked;
      }
    });
    out.push_back(check(
        "mk_identity[" + model.description() + "]", worst_mk < 1e-13,
        "max rel err " + fmt(worst_mk) + " over " + std::to_string(checked) +
            " (prime, char) pairs vs 1e-13"));
    out.push_back(check("lmr_identity[" + model.description() + "]",
                        worst_lmr < 1e-13,
                        "max rel err " + fmt(worst_lmr) + " vs 1e-13"));
  }

  // Ledger-level identities at the checkpoints.
  for (const auto& model : canonical_models()) {
    ProductLedger ledger = quick_run(model, std::max<uint64_t>(xmax, 1000));
    const CharacterTable& table = ledger.table();
    double worst_mk = 0.0, worst_orth = 0.0, worst_imag = 0.0;
    for (const auto& snap : ledger.snapshots()) {
      Corrections corr = corrections(ledger, snap.x);
      for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
        std::complex<double> lhs = snap.log_raw[ci] - corr.log_b[ci];
        std::complex<double> rhs = snap.log_m_inv[ci] + snap.log_k[ci];
        worst_mk = std::max(worst_mk, std::abs(lhs - rhs));
      }
      for (std::size_t c = 0; c < model.classes().size(); ++c) {
        ComplexKahanSum reassembled;
        for (std::size_t ci = 0; ci < table.num_chars(); ++ci)
          reassembled.add(std::conj(table.chars()[ci].value(static_cast<int>(c))) *
                          snap.log_raw[ci]);
        double expected = static_cast<double>(model.group_order()) /
                          model.classes()[c].size * snap.class_log_mertens[c];
        worst_orth = std::max(worst_orth,
                              std::abs(reassembled.value().real() - expected));
        worst_imag = std::max(worst_imag, std::abs(reassembled.value().imag()));
      }
    }
    out.push_back(check("ledger_mk[" + model.description() + "]", worst_mk < 1e-10,
                        "max |log raw - log M^-1 K| = " + fmt(worst_mk) +
                            " vs 1e-10"));
    out.push_back(check("reassembly[" + model.description() + "]",
                        worst_orth < 1e-9 && worst_imag < 1e-9,
                        "max log diff " + fmt(worst_orth) + ", imag " +
                            fmt(worst_imag) + " vs 1e-9"));
  }
  return out;
}

std::vector<CheckResult> verify_orthogonality(long long max_b) {
  std::vector<CheckResult> out;
  double worst = 0.0;
  auto scan_table = [&](const ExtensionModel& model) {
    CharacterTable table = CharacterTable::for_model(model);
    const auto& classes = table.classes();
    for (std::size_t i = 0; i < table.num_chars(); ++i)
      for (std::size_t j = 0; j < table.num_chars(); ++j) {
        std::complex<double> s = row_orthogonality_sum(table, static_cast<int>(i),
                                                       static_cast<int>(j));
        std::complex<double> expect = i == j
            ? std::complex<double>(static_cast<double>(table.group_order()), 0)
            : std::complex<double>(0, 0);
        worst = std::max(worst, std::abs(s - expect));
      }
    for (std::size_t c = 0; c < classes.size(); ++c)
      for (std::size_t pc = 0; pc < classes.size(); ++pc) {
        std::complex<double> s =
            orthogonality_sum(table, static_cast<int>(c), static_cast<int>(pc));
        std::complex<double> expect =
            c == pc ? std::complex<double>(static_cast<double>(table.group_order()) /
                                               classes[c].size,
                                           0)
                    : std::complex<double>(0, 0);
        worst = std::max(worst, std::abs(s - expect));
      }
  };
  scan_table(ExtensionModel::quadratic(5));
  scan_table(ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first("1,0,-1,-1")));
  for (long long b = 3; b <= max_b; ++b) scan_table(ExtensionModel::cyclotomic(b));
  out.push_back(check("orthogonality", worst < 1e-12,
                      "max |deviation| " + fmt(worst) + " vs 1e-12 (S3, Quadratic(5), "
                      "cyclotomic b<=" + std::to_string(max_b) + ")"));
  return out;
}

std::vector<CheckResult> verify_nonsense(int pairs, int terms) {
  std::mt19937 rng(20240517);
  std::uniform_real_distribution<double> bdist(2.0, 50.0);
  std::uniform_real_distribution<double> adist(-3.0, 3.0);
  double worst = 0.0;
  int done = 0;
  while (done < pairs) {
    double b = bdist(rng);
    std::complex<double> a(adist(rng), adist(rng));
    if (std::abs(a) > 3.0 || std::abs(a) / b >= 1.0) continue;
    ++done;
    double diff = std::abs(k_series_lhs(a, b) - k_series_rhs(a, b, terms));
    worst = std::max(worst, diff);
  }
  return {check("k_series_identity", worst < 1e-10,
                "max |lhs - rhs| = " + fmt(worst) + " over " +
                    std::to_string(pairs) + " pairs, " + std::to_string(terms) +
                    " terms, vs 1e-10")};
}

std::vector<CheckResult> verify_kbound(uint64_t xmax) {
  std::vector<CheckResult> out;
  for (const auto& model : canonical_models()) {
    CharacterTable table = CharacterTable::for_model(model);
    double worst_margin = 1e300;
    bool ok = true;
    for_each_prime_in_range(2, xmax, [&](uint64_t p) {
      int cls = model.classify(p);
      if (cls == kRamified) return;
      const double npd = static_cast<double>(p);
      if (!table.in_exceptional_free_set(cls, npd)) return;
      for (const auto& chi : table.chars()) {
        double bound = k_chi_bound(chi.dimension(), npd);
        double kv = std::abs(k_chi(chi, cls, npd));
        worst_margin = std::min(worst_margin, bound - kv);
        if (kv > bound) ok = false;
      }
    });
    out.push_back(check("k_bound[" + model.description() + "]", ok,
                        "min (bound - |k|) = " + fmt(worst_margin)));
  }
  return out;
}

std::vector<CheckResult> verify_rates(uint64_t fit_lo, uint64_t fit_hi,
                                      uint64_t x_max,
                                      const std::string& model_spec) {
  ExtensionModel model =
      model_spec.empty()
          ? ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first("1,0,-1,-1"))
          : parse_model(model_spec);
  ProductLedger ledger = quick_run(
      model, x_max,
      geometric_checkpoints(std::log10(static_cast<double>(fit_lo)),
                            std::log10(static_cast<double>(x_max)), 0.5, x_max));
  auto fits = tail_bounds_report(ledger, fit_lo, fit_hi);
  std::vector<CheckResult> out;
  for (const auto& f : fits) {
    bool in_window = f.k_product_slope > -1.2 && f.k_product_slope < -0.8;
    out.push_back(check("k_product_tail_rate[" + f.char_label + "]", in_window,
                        "fitted slope " + fmt(f.k_product_slope) +
                            " vs [-1.2, -0.8] over " + std::to_string(f.points) +
                            " checkpoints"));
    bool sum_ok = f.k_sum_slope > -1.2 && f.k_sum_slope < -0.8;
    out.push_back(check("k_sum_tail_rate[" + f.char_label + "]", sum_ok,
                        "fitted slope " + fmt(f.k_sum_slope) + " vs [-1.2, -0.8]"));
  }
  // For higher-dimensional characters the ledger L estimates at decade
  // checkpoints must stabilise: successive |differences| decreasing.
  for (std::size_t ci = 0; ci < ledger.table().num_chars(); ++ci) {
    if (ledger.table().chars()[ci].dimension() < 2) continue;
    std::vector<double> decades;
    for (const auto& s : ledger.snapshots()) {
      double lg = std::log10(static_cast<double>(s.x));
      if (std::abs(lg - std::llround(lg)) > 1e-9) continue;
      decades.push_back(
          std::abs(std::exp(log_l_truncated(ledger, s, static_cast<int>(ci)))));
    }
    bool decreasing = decades.size() >= 3;
    std::string seq;
    double prev_diff = 1e300;
    for (std::size_t i = 0; i + 1 < decades.size(); ++i) {
      double d = std::abs(decades[i + 1] - decades[i]);
      seq += " " + fmt(d);
      if (d > prev_diff) decreasing = false;
      prev_diff = d;
    }
    out.push_back(check(
        "artin_l1_stabilising[" + ledger.table().chars()[ci].label() + "]",
        decreasing, "decade-to-decade |diff|:" + seq));
  }
  return out;
}

std::vector<CheckResult> verify_densities(uint64_t xmax) {
  std::vector<CheckResult> out;
  {
    auto model = ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first("1,0,-1,-1"));
    ProductLedger ledger = quick_run(model, xmax, {xmax});
    const auto& snap = ledger.final_snapshot();
    uint64_t total = 0;
    for (auto c : snap.class_counts) total += c;
    const double expect[3] = {1.0 / 6, 1.0 / 2, 1.0 / 3};
    double worst = 0.0;
    for (int c = 0; c < 3; ++c)
      worst = std::max(worst, std::abs(static_cast<double>(snap.class_counts[c]) /
                                           static_cast<double>(total) -
                                       expect[c]));
    out.push_back(check("chebotarev_density[s3]", worst < 0.01,
                        "max |proportion - density| = " + fmt(worst) +
                            " vs 0.01 at x=" + std::to_string(xmax)));
  }
  {
    ProductLedger ledger = quick_run(ExtensionModel::quadratic(5), xmax, {xmax});
    const auto& snap = ledger.final_snapshot();
    uint64_t total = snap.class_counts[0] + snap.class_counts[1];
    double worst = std::max(
        std::abs(static_cast<double>(snap.class_counts[0]) / total - 0.5),
        std::abs(static_cast<double>(snap.class_counts[1]) / total - 0.5));
    out.push_back(check("chebotarev_density[quadratic]", worst < 0.01,
                        "max |proportion - 1/2| = " + fmt(worst) + " vs 0.01"));
  }
  return out;
}

std::vector<CheckResult> verify_partition(uint64_t xmax) {
  std::vector<CheckResult> out;
  for (const auto& model : canonical_models()) {
    ProductLedger ledger = quick_run(model, xmax, {xmax});
    const auto& snap = ledger.final_snapshot();
    KahanSum lhs;
    for (double v : snap.class_log_mertens) lhs.add(v);
    lhs.add(snap.log_mertens_ramified);
    double diff = std::abs(lhs.value() - snap.log_mertens_all);
    out.push_back(check("partition[" + model.description() + "]", diff < 1e-12,
                        "|log lhs - log rhs| = " + fmt(diff) + " vs 1e-12"));
  }
  return out;
}

std::vector<CheckResult> verify_rosen(long long d, uint64_t xmax) {
  std::vector<CheckResult> out;
  {
    RosenReport rep = mertens_product_report(xmax, {});
    const auto& row = rep.rows.back();
    bool ok = row.product_times_logx >= 0.556 && row.product_times_logx <= 0.567;
    out.push_back(check("mertens_classic", ok,
                        "product*log x = " + fmt(row.product_times_logx) +
                            " vs [0.556, 0.567] (e^-gamma = " + fmt(rep.target) +
                            " +- 0.005)"));
  }
  {
    ImagQuadBase base = make_imag_quad_base(d);
    RosenReport rep = rosen_product(base, xmax, {});
    const auto& row = rep.rows.back();
    double diff = std::abs(row.product_times_logx - rep.target);
    out.push_back(check("rosen[D=" + std::to_string(d) + "]", diff < 0.01,
                        "product*log x = " + fmt(row.product_times_logx) +
                            ", e^-gamma_F = " + fmt(rep.target) + ", |diff| = " +
                            fmt(diff) + " vs 0.01"));
  }
  return out;
}

std::vector<CheckResult> verify_quadform(uint64_t xmax) {
  std::vector<CheckResult> out;
  auto cps = default_checkpoints(xmax);
  {
    QuadFormReport rep = quadform_product(make_quadform(1, 0, 1), xmax, cps);
    out.push_back(check("quadform_exponent[1,0,1]",
                        std::abs(rep.fitted_exponent - 0.5) < 0.05,
                        "fitted " + fmt(rep.fitted_exponent) + " vs 0.5 +- 0.05"));
    // Same prime set as the 1 mod 4 progression plus p = 2.
    ProductLedger ledger = quick_run(ExtensionModel::cyclotomic(4), xmax, {xmax});
    int cls = ledger.model().class_index("1 mod 4");
    double lhs = rep.log_products.back().second - std::log1p(-0.5);
    double rhs = ledger.final_snapshot().class_log_mertens[cls];
    out.push_back(check("quadform_cyclotomic_identity",
                        std::abs(lhs - rhs) < 1e-12,
                        "|log diff| = " + fmt(std::abs(lhs - rhs)) + " vs 1e-12"));
  }
  {
    QuadFormReport rep = quadform_product(make_quadform(1, 0, 5), xmax, cps);
    out.push_back(check("quadform_exponent[1,0,5]",
                        std::abs(rep.fitted_exponent - 0.25) < 0.05,
                        "fitted " + fmt(rep.fitted_exponent) + " vs 0.25 +- 0.05"));
  }
  return out;
}

std::vector<CheckResult> verify_lvalues(long long max_b, uint64_t series_terms) {
  std::vector<CheckResult> out;
  double worst = 0.0;
  int tested = 0;
  bool ok = true;
  for (long long b = 3; b <= max_b; ++b) {
    ExtensionModel model = ExtensionModel::cyclotomic(b);
    CharacterTable table = CharacterTable::for_model(model);
    for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
      if (table.chars()[ci].is_trivial()) continue;
      DirichletCharacter chi =
          DirichletCharacter::from_table(model, table, static_cast<int>(ci));
      if (chi.conductor() != b) continue;  // imprimitive
      LValue closed = dirichlet_l1_closed(chi);
      LValue series = dirichlet_l1_series(chi, series_terms);
      double diff = std::abs(closed.value - series.value);
      double budget = closed.error_estimate + series.error_estimate;
      worst = std::max(worst, diff / budget);
      if (diff > budget) ok = false;
      ++tested;
    }
  }
  out.push_back(check("lvalue_closed_vs_series", ok,
                      "max diff/budget = " + fmt(worst) + " over " +
                          std::to_string(tested) + " primitive chars, b<=" +
                          std::to_string(max_b)));

  double worst_cnf = 0.0;
  for (long long d : {-3ll, -4ll, -7ll, -8ll, -11ll, -15ll, -20ll}) {
    LValue lv = dirichlet_l1_closed(DirichletCharacter::quadratic(d));
    int h = class_number(d);
    int w = d == -3 ? 6 : d == -4 ? 4 : 2;
    double cnf = 2.0 * M_PI * h / (w * std::sqrt(static_cast<double>(-d)));
    worst_cnf = std::max(worst_cnf, std::abs(lv.value.real() - cnf));
    worst_cnf = std::max(worst_cnf, std::abs(lv.value.imag()));
  }
  out.push_back(check("lvalue_class_number_formula", worst_cnf < 1e-8,
                      "max |L(1,chi_d) - 2 pi h/(w sqrt|d|)| = " + fmt(worst_cnf) +
                          " vs 1e-8"));
  return out;
}

WilliamsResiduals williams_residuals(uint64_t xmax) {
  ExtensionModel model = ExtensionModel::cyclotomic(4);
  CharacterTable table = CharacterTable::for_model(model);
  RunOptions opt;
  opt.x_max = xmax;
  opt.checkpoints = geometric_checkpoints(4.0, std::log10(static_cast<double>(xmax)),
                                          1.0, xmax);
  opt.threads = 4;
  ProductLedger ledger = run_products(model, table, opt);
  int cls = model.class_index("1 mod 4");
  Corrections corr = corrections(ledger);
  std::vector<LValue> lvalues = lvalues_for_model(ledger);
  WilliamsResiduals out;
  out.best_constant = constant_method_a(ledger, corr, lvalues, cls);
  ConvergenceReport rep = convergence_verdict(ledger, cls, out.best_constant);
  for (const auto& row : rep.rows) out.scaled.push_back({row.x, row.scaled_residual});
  out.max_scaled = rep.max_scaled;
  out.median_scaled = rep.median_scaled;
  out.verdict_pass = rep.pass;
  out.verdict = rep.verdict;
  return out;
}

std::vector<CheckResult> verify_williams(uint64_t xmax) {
  WilliamsResiduals res = williams_residuals(xmax);
  std::ostringstream det;
  det << res.verdict << "; scaled residuals (x: r*(log x)^1.5):";
  for (const auto& [x, s] : res.scaled) det << " " << x << ":" << fmt(s);
  det << "; max " << fmt(res.max_scaled) << " vs 3*median "
      << fmt(3.0 * res.median_scaled);
  return {check("williams_b4_residual_verdict", res.verdict_pass, det.str())};
}

std::vector<CheckResult> verify_two_determinations(uint64_t xmax_hi,
                                                   uint64_t xmax_lo) {
  std::vector<CheckResult> out;
  for (const auto& model : canonical_models()) {
    ProductLedger hi = quick_run(model, xmax_hi);
    ProductLedger lo = quick_run(model, xmax_lo);
    for (std::size_t c = 0; c < model.classes().size(); ++c) {
      ConstantEstimate est_hi = estimate_constant(hi, static_cast<int>(c));
      ConstantEstimate est_lo = estimate_constant(lo, static_cast<int>(c));
      bool ok = est_hi.discrepancy < 0.02 && est_hi.discrepancy < est_lo.discrepancy;
      out.push_back(check(
          "two_determinations[" + model.description() + "," +
              model.classes()[c].label + "]",
          ok,
          "A = " + fmt(est_hi.method_a) + ", B = " + fmt(est_hi.method_b) +
              ", |log A - log B| = " + fmt(est_hi.discrepancy) + " (vs 0.02) at x=" +
              std::to_string(xmax_hi) + ", " + fmt(est_lo.discrepancy) + " at x=" +
              std::to_string(xmax_lo)));
    }
  }
  return out;
}

std::vector<std::string> suite_names() {
  return {"identities", "orthogonality", "nonsense", "kbound",  "rates",
          "densities",  "partition",     "rosen",    "quadform", "lvalues",
          "williams",   "constants",     "all"};
}

std::vector<CheckResult> run_suite(const std::string& name, uint64_t xmax,
                                   long long rosen_d,
                                   const std::string& model_spec) {
  std::vector<CheckResult> out;
  auto append = [&](std::vector<CheckResult> r) {
    out.insert(out.end(), r.begin(), r.end());
  };
  bool all = name == "all";
  bool known = all;
  if (all || name == "identities") {
    append(verify_identities(xmax));
    known = true;
  }
  if (all || name == "orthogonality") {
    append(verify_orthogonality(100));
    known = true;
  }
  if (all || name == "nonsense") {
    append(verify_nonsense(200, 60));
    known = true;
  }
  if (all || name == "kbound") {
    append(verify_kbound(xmax));
    known = true;
  }
  if (all || name == "rates") {
    uint64_t hi = std::max<uint64_t>(xmax, 1000000);
    append(verify_rates(1000, hi / 10, hi, model_spec));
    known = true;
  }
  if (all || name == "densities") {
    append(verify_densities(xmax));
    known = true;
  }
  if (all || name == "partition") {
    append(verify_partition(xmax));
    known = true;
  }
  if (all || name == "rosen") {
    append(verify_rosen(rosen_d, xmax));
    known = true;
  }
  if (all || name == "quadform") {
    append(verify_quadform(xmax));
    known = true;
  }
  if (all || name == "lvalues") {
    append(verify_lvalues(50, 1000000));
    known = true;
  }
  if (all || name == "williams") {
    append(verify_williams(std::max<uint64_t>(xmax, 10000000)));
    known = true;
  }
  if (all || name == "constants") {
    append(verify_two_determinations(xmax, std::max<uint64_t>(xmax / 1000, 10000)));
    known = true;
  }
  if (!known) throw UsageError("unknown verify suite '" + name + "'");
  return out;
}

}  // namespace chebmert
