#include <doctest.h>

#include <json.hpp>

#include "chebmert/constants.hpp"
#include "chebmert/errors.hpp"
#include "chebmert/numeric.hpp"
#include "chebmert/primes.hpp"
#include "chebmert/verify.hpp"

using namespace chebmert;

namespace {

ExtensionModel s3_default() {
  return ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first("1,0,-1,-1"));
}

ProductLedger run(const ExtensionModel& model, uint64_t xmax) {
  RunOptions opt;
  opt.x_max = xmax;
  opt.checkpoints = default_checkpoints(xmax);
  opt.threads = 4;
  return run_products(model, CharacterTable::for_model(model), opt);
}

// L-values replaced by the ledger's own truncated Euler products; with
// these, the two determinations agree exactly (up to accumulation
// error), independent of how far the products ran.
std::vector<LValue> truncated_lvalues(const ProductLedger& ledger) {
  std::vector<LValue> out(ledger.table().num_chars());
  for (std::size_t ci = 0; ci < ledger.table().num_chars(); ++ci) {
    if (ledger.table().chars()[ci].is_trivial()) continue;
    out[ci].char_label = ledger.table().chars()[ci].label();
    out[ci].value =
        std::exp(log_l_truncated(ledger, ledger.final_snapshot(), ci));
  }
  return out;
}

}  // namespace

TEST_CASE("degenerate trivial-extension constant is e^-gamma") {
  // With no nontrivial characters and no ramified primes both formulas
  // collapse to e^-gamma_Q.
  CHECK(std::exp(-euler_gamma()) == doctest::Approx(0.561459).epsilon(1e-6));
}

TEST_CASE("the two determinations coincide exactly under truncated L values") {
  for (const auto& model :
       {ExtensionModel::quadratic(5), ExtensionModel::cyclotomic(4),
        ExtensionModel::cyclotomic(5), s3_default()}) {
    ProductLedger ledger = run(model, 30000);
    Corrections corr = corrections(ledger);
    auto lhat = truncated_lvalues(ledger);
    for (std::size_t c = 0; c < model.classes().size(); ++c) {
      double a = constant_method_a(ledger, corr, lhat, static_cast<int>(c));
      double b = constant_method_b(ledger, ledger.final_snapshot(),
                                   static_cast<int>(c));
      CHECK(std::abs(std::log(a) - std::log(b)) < 1e-9);
    }
  }
}

TEST_CASE("method B against a direct independent pass") {
  // Reassemble e^-gamma_F (NDelta/phi Delta) prod (1-1/p)^alpha from a
  // plain prime loop with the S3 exponents (5,-1,-1), (-1,1,-1), (-1,-1,2).
  auto model = s3_default();
  ProductLedger ledger = run(model, 10000);
  for (int target = 0; target < 3; ++target) {
    double over = 6.0 / model.classes()[target].size;
    KahanSum log_prod;
    for_each_prime_in_range(2, 10000, [&](uint64_t p) {
      int cls = model.classify(p);
      double alpha = cls == kRamified ? -1.0 : cls == target ? over - 1.0 : -1.0;
      log_prod.add(alpha * std::log1p(-1.0 / static_cast<double>(p)));
    });
    double direct = std::exp(-euler_gamma() + log_prod.value());
    double b = constant_method_b(ledger, ledger.final_snapshot(), target);
    CHECK(std::abs(std::log(direct) - std::log(b)) < 1e-12);
  }
}

TEST_CASE("williams reduction for cyclotomic models") {
  auto model = ExtensionModel::cyclotomic(4);
  ProductLedger ledger = run(model, 100000);
  Corrections corr = corrections(ledger);
  auto lvalues = lvalues_for_model(ledger);
  for (std::size_t c = 0; c < model.classes().size(); ++c) {
    double a = constant_method_a(ledger, corr, lvalues, static_cast<int>(c));
    double w = williams_constant(ledger, lvalues, static_cast<int>(c));
    CHECK(std::abs(std::log(a) - std::log(w)) < 1e-9);
  }
  CHECK_THROWS_AS(williams_constant(run(s3_default(), 1000), lvalues, 0),
                  UsageError);
}

TEST_CASE("discrepancy shrinks from 1e4 to 1e6") {
  for (const auto& model : {ExtensionModel::cyclotomic(4), s3_default()}) {
    ConstantEstimate lo = estimate_constant(run(model, 10000), 0);
    ConstantEstimate hi = estimate_constant(run(model, 1000000), 0);
    CHECK(hi.discrepancy < lo.discrepancy);
    CHECK(hi.discrepancy < 0.02);
  }
}

TEST_CASE("constant estimate JSON carries the schema fields") {
  ConstantEstimate est = estimate_constant(run(ExtensionModel::quadratic(5), 50000), 0);
  auto j = nlohmann::json::parse(constant_estimate_json(est));
  for (const char* key : {"model", "class", "x_max", "method_A", "method_B",
                          "discrepancy", "gamma_F", "checkpoints", "verdict"})
    CHECK(j.contains(key));
  CHECK(j["model"] == "quadratic:5");
  CHECK(j["class"] == "split");
  REQUIRE(j["checkpoints"].is_array());
  REQUIRE(j["checkpoints"].size() > 0);
  for (const char* key : {"x", "product", "scaled_residual"})
    CHECK(j["checkpoints"][0].contains(key));
}

TEST_CASE("rosen product for Q(i)") {
  RosenReport rep = rosen_product(make_imag_quad_base(-1), 100000, {1000, 10000});
  REQUIRE(rep.rows.size() == 3);
  // e^-gamma_F = e^-gamma * 4/pi.
  CHECK(rep.target ==
        doctest::Approx(std::exp(-euler_gamma()) * 4.0 / M_PI).epsilon(1e-12));
  CHECK(std::abs(rep.rows.back().product_times_logx - rep.target) < 0.02);
  // Residuals scaled by log x stay comparable across checkpoints.
  for (const auto& row : rep.rows) CHECK(std::abs(row.scaled_residual) < 2.0);
}

TEST_CASE("rosen product via direct ideal enumeration") {
  // Independent recomputation of the product at one x.
  ImagQuadBase base = make_imag_quad_base(-3);
  RosenReport rep = rosen_product(base, 5000, {});
  KahanSum direct;
  for_each_ideal_norm(base, 5000, [&](uint64_t n, int m) {
    direct.add(m * std::log1p(-1.0 / static_cast<double>(n)));
  });
  CHECK(rep.rows.back().product ==
        doctest::Approx(std::exp(direct.value())).epsilon(1e-14));
}

TEST_CASE("degenerate and tiny rosen inputs") {
  RosenReport rep = mertens_product_report(1000000, {});
  CHECK(std::abs(rep.rows.back().product_times_logx - rep.target) < 0.005);
  RosenReport tiny = rosen_product(make_imag_quad_base(-1), 1, {});
  CHECK(tiny.rows.back().product == 1.0);
}

TEST_CASE("quadform product identity with the 1 mod 4 progression") {
  QuadFormReport rep = quadform_product(make_quadform(1, 0, 1), 100000,
                                        {1000, 10000});
  ProductLedger ledger = run(ExtensionModel::cyclotomic(4), 100000);
  int cls = ledger.model().class_index("1 mod 4");
  double lhs = rep.log_products.back().second - std::log1p(-0.5);
  CHECK(std::abs(lhs - ledger.final_snapshot().class_log_mertens[cls]) < 1e-12);
  CHECK(rep.ambiguous);
  CHECK(rep.class_number == 1);
  CHECK(rep.target_exponent == doctest::Approx(0.5));
}

TEST_CASE("quadform exponent targets") {
  QuadFormReport rep = quadform_product(make_quadform(1, 0, 5), 200000,
                                        default_checkpoints(200000));
  CHECK(rep.class_number == 2);
  CHECK(rep.target_exponent == doctest::Approx(0.25));
  CHECK(std::abs(rep.fitted_exponent - 0.25) < 0.08);
  // Non-ambiguous form of discriminant -23: density 1/h.
  QuadFormReport rep23 = quadform_product(make_quadform(2, 1, 3), 10000, {});
  CHECK_FALSE(rep23.ambiguous);
  CHECK(rep23.target_exponent == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("convergence verdict shape") {
  ProductLedger ledger = run(ExtensionModel::cyclotomic(4), 1000000);
  Corrections corr = corrections(ledger);
  auto lvalues = lvalues_for_model(ledger);
  int cls = ledger.model().class_index("1 mod 4");
  double best = constant_method_a(ledger, corr, lvalues, cls);
  ConvergenceReport rep = convergence_verdict(ledger, cls, best);
  CHECK(rep.predicted_rate_exponent == doctest::Approx(1.5));
  CHECK(rep.rows.size() == ledger.snapshots().size());
  CHECK(rep.max_scaled >= rep.median_scaled);
  CHECK(rep.pass);
}

TEST_CASE("insufficient checkpoints are reported, not computed") {
  ProductLedger ledger = run_products(ExtensionModel::quadratic(5),
                                      CharacterTable::for_model(ExtensionModel::quadratic(5)),
                                      RunOptions{.x_max = 1000, .checkpoints = {},
                                                 .threads = 1, .cache_path = ""});
  CHECK_THROWS_AS(convergence_verdict(ledger, 0, 1.0), UsageError);
  ConstantEstimate est = estimate_constant(ledger, 0);
  CHECK(est.convergence.verdict.find("SKIPPED") != std::string::npos);
}
