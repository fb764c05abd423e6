#include <doctest.h>

#include <cstdio>
#include <random>

#include "chebmert/errors.hpp"
#include "chebmert/euler_local.hpp"
#include "chebmert/ledger.hpp"
#include "chebmert/numeric.hpp"
#include "chebmert/primes.hpp"

using namespace chebmert;

namespace {

ExtensionModel s3_default() {
  return ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first("1,0,-1,-1"));
}

std::vector<ExtensionModel> canonical_models() {
  return {ExtensionModel::quadratic(5), ExtensionModel::cyclotomic(4), s3_default()};
}

ProductLedger small_run(const ExtensionModel& model, uint64_t xmax, int threads = 1,
                        std::vector<uint64_t> cps = {}) {
  RunOptions opt;
  opt.x_max = xmax;
  opt.checkpoints = std::move(cps);
  opt.threads = threads;
  return run_products(model, CharacterTable::for_model(model), opt);
}

}  // namespace

TEST_CASE("k values match the closed cases") {
  auto table = CharacterTable::for_model(s3_default());
  const auto& chi1 = table.chars()[1];
  const auto& chi2 = table.chars()[2];
  for (double p : {3.0, 5.0, 101.0}) {
    // chi = 0 and chi = 1 give k = 0.
    CHECK(std::abs(k_chi(chi2, 1, p)) < 1e-15);
    CHECK(std::abs(k_chi(chi1, 0, p)) < 1e-15);
    // chi = -1 gives 1/p.
    CHECK(std::abs(k_chi(chi1, 1, p) - 1.0 / p) < 1e-13);
    CHECK(std::abs(k_chi(chi2, 2, p) - 1.0 / p) < 1e-13);
    // chi = 2 gives p/(p-1)^2.
    CHECK(std::abs(k_chi(chi2, 0, p) - p / ((p - 1) * (p - 1))) < 1e-14);
  }
  CHECK_THROWS_AS(k_chi(chi2, 0, 2.0), OutOfSetError);
}

TEST_CASE("series identity for k on random complex pairs") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> bdist(2.0, 40.0);
  std::uniform_real_distribution<double> adist(-3.0, 3.0);
  int done = 0;
  double worst = 0;
  while (done < 200) {
    double b = bdist(rng);
    std::complex<double> a(adist(rng), adist(rng));
    if (std::abs(a) > 3.0 || std::abs(a) / b >= 1.0) continue;
    ++done;
    worst = std::max(worst, std::abs(k_series_lhs(a, b) - k_series_rhs(a, b, 60)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("C_d closed values") {
  // d = 1: 2 * sum 2^-n = 4.  d = 2: 3 * sum (n+1) 2^-n = 12.
  CHECK(c_d_constant(1) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(c_d_constant(2) == doctest::Approx(12.0).epsilon(1e-12));
  CHECK(k_chi_bound(2, 10.0) == doctest::Approx(0.3 + 0.12));
}

TEST_CASE("k bound holds for every character on primes in S") {
  for (const auto& model : canonical_models()) {
    auto table = CharacterTable::for_model(model);
    for_each_prime_in_range(2, 20000, [&](uint64_t p) {
      int cls = model.classify(p);
      if (cls == kRamified) return;
      if (!table.in_exceptional_free_set(cls, static_cast<double>(p))) return;
      for (const auto& chi : table.chars()) {
        double kv = std::abs(k_chi(chi, cls, static_cast<double>(p)));
        CHECK(kv <= k_chi_bound(chi.dimension(), static_cast<double>(p)));
      }
    });
  }
}

TEST_CASE("local factor examples for the two-dimensional character") {
  auto table = CharacterTable::for_model(s3_default());
  for (uint64_t p : {5ull, 7ull, 97ull}) {
    const double pd = static_cast<double>(p);
    LocalFactorSet lf = local_factors(table, 1, p);  // C2
    const auto& f2 = lf.per_char[2];
    CHECK(std::abs(f2.m_factor - 1.0) < 1e-15);
    CHECK(std::abs(f2.k_value) < 1e-15);
    CHECK(std::abs(f2.k_factor - 1.0) < 1e-15);
    CHECK(std::abs(f2.r_factor - 1.0 / (1.0 - 1.0 / (pd * pd))) < 1e-14);
    CHECK(std::abs(f2.l_factor - 1.0 / (1.0 - 1.0 / (pd * pd))) < 1e-14);

    LocalFactorSet lf3 = local_factors(table, 2, p);  // C3
    const auto& g2 = lf3.per_char[2];
    CHECK(std::abs(g2.r_factor - 1.0 / (1.0 + 1.0 / (pd * (pd + 1)))) < 1e-14);
    // f(1/p) = (1 - chi/p) / r to 1e-14.
    std::complex<double> lhs = table.chars()[2].charpoly(2).eval_f(1.0 / pd);
    std::complex<double> rhs = (1.0 + 1.0 / pd) / g2.r_factor;
    CHECK(std::abs(lhs - rhs) < 1e-14);
    // L_5(1,chi2) at C2 is 25/24; L_7 at C3 is 49/57.
  }
  CHECK(std::abs(local_factors(table, 1, 5).per_char[2].l_factor - 25.0 / 24.0) < 1e-14);
  CHECK(std::abs(local_factors(table, 2, 7).per_char[2].l_factor - 49.0 / 57.0) < 1e-14);
}

TEST_CASE("one-dimensional characters have unit r factor") {
  for (const auto& model : canonical_models()) {
    auto table = CharacterTable::for_model(model);
    for (uint64_t p : {3ull, 11ull, 1009ull}) {
      int cls = model.classify(p);
      if (cls == kRamified) continue;
      LocalFactorSet lf = local_factors(table, cls, p);
      for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
        if (table.chars()[ci].dimension() != 1 || lf.per_char[ci].excluded) continue;
        CHECK(lf.per_char[ci].r_factor == std::complex<double>(1.0, 0.0));
        CHECK(std::abs(lf.per_char[ci].m_factor - lf.per_char[ci].l_factor) < 1e-15);
      }
    }
  }
}

TEST_CASE("per-prime factor identities to 1e-13") {
  for (const auto& model : canonical_models()) {
    auto table = CharacterTable::for_model(model);
    for_each_prime_in_range(2, 10000, [&](uint64_t p) {
      int cls = model.classify(p);
      if (cls == kRamified) return;
      LocalFactorSet lf = local_factors(table, cls, p);
      const double lm = std::log1p(-1.0 / static_cast<double>(p));
      for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
        const auto& f = lf.per_char[ci];
        if (f.excluded) continue;
        std::complex<double> raw = std::exp(table.chars()[ci].value(cls) * lm);
        CHECK(std::abs(raw - f.k_factor / f.m_factor) <= 1e-13 * std::abs(raw));
        CHECK(std::abs(f.l_factor - f.m_factor * f.r_factor) <=
              1e-13 * std::abs(f.l_factor));
      }
    });
  }
}

TEST_CASE("empty products below the smallest unramified prime") {
  auto model = ExtensionModel::cyclotomic(4);
  ProductLedger ledger = small_run(model, 2);
  const auto& snap = ledger.final_snapshot();
  CHECK(snap.class_counts[0] == 0);
  CHECK(snap.class_counts[1] == 0);
  for (std::size_t ci = 0; ci < ledger.table().num_chars(); ++ci) {
    CHECK(snap.log_m_inv[ci] == std::complex<double>(0, 0));
    CHECK(snap.log_k[ci] == std::complex<double>(0, 0));
    CHECK(snap.log_raw[ci] == std::complex<double>(0, 0));
  }
  CHECK(snap.ramified_count == 1);  // p = 2
}

TEST_CASE("cyclotomic(4) partition identity is exact in log space") {
  auto model = ExtensionModel::cyclotomic(4);
  ProductLedger ledger = small_run(model, 100000);
  const auto& snap = ledger.final_snapshot();
  double lhs = snap.class_log_mertens[model.class_index("1 mod 4")] +
               snap.class_log_mertens[model.class_index("3 mod 4")] +
               std::log1p(-0.5);
  CHECK(std::abs(lhs - snap.log_mertens_all) < 1e-12);
}

TEST_CASE("partition identity for every model") {
  for (const auto& model : canonical_models()) {
    ProductLedger ledger = small_run(model, 200000);
    const auto& snap = ledger.final_snapshot();
    KahanSum lhs;
    for (double v : snap.class_log_mertens) lhs.add(v);
    lhs.add(snap.log_mertens_ramified);
    CHECK(std::abs(lhs.value() - snap.log_mertens_all) < 1e-12);
  }
}

TEST_CASE("ledger MK identity and orthogonality reassembly at checkpoints") {
  for (const auto& model : canonical_models()) {
    ProductLedger ledger = small_run(model, 100000, 2, {1000, 10000});
    const auto& table = ledger.table();
    for (const auto& snap : ledger.snapshots()) {
      Corrections corr = corrections(ledger, snap.x);
      for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
        std::complex<double> lhs = snap.log_raw[ci] - corr.log_b[ci];
        std::complex<double> rhs = snap.log_m_inv[ci] + snap.log_k[ci];
        CHECK(std::abs(lhs - rhs) < 1e-10);
      }
      for (std::size_t c = 0; c < model.classes().size(); ++c) {
        std::complex<double> sum = 0;
        for (std::size_t ci = 0; ci < table.num_chars(); ++ci)
          sum += std::conj(table.chars()[ci].value(static_cast<int>(c))) *
                 snap.log_raw[ci];
        double expected = static_cast<double>(model.group_order()) /
                          model.classes()[c].size * snap.class_log_mertens[c];
        CHECK(std::abs(sum.real() - expected) < 1e-9);
        CHECK(std::abs(sum.imag()) < 1e-9);
      }
    }
  }
}

TEST_CASE("checkpoint snapshots depend only on primes up to x") {
  auto model = ExtensionModel::quadratic(5);
  ProductLedger big = small_run(model, 50000, 4, {1000, 20000});
  ProductLedger small = small_run(model, 1000);
  const auto& s_big = big.at(1000);
  const auto& s_small = small.final_snapshot();
  CHECK(s_big.class_log_mertens == s_small.class_log_mertens);
  CHECK(s_big.class_counts == s_small.class_counts);
  CHECK(s_big.log_m_inv == s_small.log_m_inv);
  CHECK(s_big.log_raw == s_small.log_raw);
}

TEST_CASE("thread count does not change results bit for bit") {
  for (const auto& model : canonical_models()) {
    ProductLedger a = small_run(model, 300000, 1, {1000, 10000, 100000});
    ProductLedger b = small_run(model, 300000, 8, {1000, 10000, 100000});
    REQUIRE(a.snapshots().size() == b.snapshots().size());
    for (std::size_t i = 0; i < a.snapshots().size(); ++i) {
      CHECK(a.snapshots()[i].class_log_mertens == b.snapshots()[i].class_log_mertens);
      CHECK(a.snapshots()[i].log_m_inv == b.snapshots()[i].log_m_inv);
      CHECK(a.snapshots()[i].log_k == b.snapshots()[i].log_k);
      CHECK(a.snapshots()[i].log_r_inv == b.snapshots()[i].log_r_inv);
      CHECK(a.snapshots()[i].log_raw == b.snapshots()[i].log_raw);
      CHECK(a.snapshots()[i].log_mertens_all == b.snapshots()[i].log_mertens_all);
    }
  }
}

TEST_CASE("synthetic corrections reproduce the totally-split-2 cases") {
  // The identity class at np = 2 cannot arise from cubic factorisation
  // patterns, so drive the correction arithmetic directly.
  auto table = CharacterTable::for_model(s3_default());
  std::vector<ExclusionRecord> ex{{2, 0}};  // p = 2, Frob = C1, unramified
  Corrections corr = corrections_from(table, ex);
  // B = (1 - 1/2)^chi(2): chi2 -> 1/4, chi1 -> 1/2, chi0 -> 1/2.
  CHECK(std::abs(std::exp(corr.log_b[2]) - 0.25) < 1e-15);
  CHECK(std::abs(std::exp(corr.log_b[1]) - 0.5) < 1e-15);
  // M includes L_2(1, chi2) = (1 - 1/2)^-2 = 4 and L_2(1, chi1) = 2.
  CHECK(std::abs(std::exp(corr.log_m[2]) - 4.0) < 1e-15);
  CHECK(std::abs(std::exp(corr.log_m[1]) - 2.0) < 1e-15);
  // Ramified records contribute the unit factor.
  std::vector<ExclusionRecord> ram{{23, kRamified}};
  Corrections corr2 = corrections_from(table, ram);
  CHECK(std::exp(corr2.log_m[2]) == std::complex<double>(1.0, 0.0));
  CHECK(std::exp(corr2.log_b[2]) == std::complex<double>(1.0, 0.0));
}

TEST_CASE("no corrections for the default models") {
  for (const auto& model : canonical_models()) {
    ProductLedger ledger = small_run(model, 10000);
    Corrections corr = corrections(ledger);
    for (std::size_t ci = 0; ci < ledger.table().num_chars(); ++ci) {
      CHECK(corr.log_b[ci] == std::complex<double>(0, 0));
      CHECK(corr.log_m[ci] == std::complex<double>(0, 0));
    }
    for (const auto& ex : ledger.exclusions()) CHECK(ex.ramified());
  }
}

TEST_CASE("one-dimensional k sums are dominated by sum 1/p^2") {
  // For the S3 sign character k is 0 or 1/p, so the |k|/np tail is at
  // most the direct tail of 1/p^2 over the same primes.
  auto model = s3_default();
  ProductLedger ledger = small_run(model, 100000, 4, {1000, 10000});
  const auto& last = ledger.final_snapshot();
  for (const auto& snap : ledger.snapshots()) {
    if (snap.x == last.x) continue;
    double tail_k = last.abs_k_over_np[1] - snap.abs_k_over_np[1];
    KahanSum bound;
    for_each_prime_in_range(snap.x + 1, last.x, [&](uint64_t p) {
      if (model.classify(p) == kRamified) return;
      bound.add(1.0 / (static_cast<double>(p) * static_cast<double>(p)));
    });
    CHECK(tail_k <= bound.value() + 1e-15);
  }
}

TEST_CASE("cache round trip") {
  auto model = s3_default();
  std::string path = "/tmp/chebmert_test_cache.frob";
  std::remove(path.c_str());
  RunOptions opt;
  opt.x_max = 20000;
  opt.threads = 2;
  opt.cache_path = path;
  auto table = CharacterTable::for_model(model);
  ProductLedger fresh = run_products(model, table, opt);
  // Reload and compare a sample against direct classification.
  FrobeniusCache cache = FrobeniusCache::load(path, model);
  REQUIRE(cache.primes.size() > 1000);
  for (std::size_t i = 0; i < cache.primes.size(); i += 7) {
    CHECK(static_cast<int>(cache.classes[i]) == model.classify(cache.primes[i]));
  }
  // Rerun from the cache: identical snapshots.
  ProductLedger cached = run_products(model, table, opt);
  CHECK(fresh.final_snapshot().log_m_inv == cached.final_snapshot().log_m_inv);
  CHECK(fresh.final_snapshot().class_counts == cached.final_snapshot().class_counts);
  // Extending the range reuses the prefix and classifies the rest.
  opt.x_max = 40000;
  ProductLedger extended = run_products(model, table, opt);
  FrobeniusCache cache2 = FrobeniusCache::load(path, model);
  CHECK(cache2.primes.size() > cache.primes.size());
  ProductLedger direct = small_run(model, 40000);
  CHECK(extended.final_snapshot().log_m_inv == direct.final_snapshot().log_m_inv);
  // Model mismatch is rejected.
  CHECK_THROWS_AS(FrobeniusCache::load(path, ExtensionModel::quadratic(5)), UsageError);
  std::remove(path.c_str());
}

TEST_CASE("truncated L products approach the Dirichlet values") {
  auto model = ExtensionModel::cyclotomic(4);
  ProductLedger ledger = small_run(model, 200000);
  std::complex<double> lhat =
      std::exp(log_l_truncated(ledger, ledger.final_snapshot(), 1));
  CHECK(std::abs(lhat - M_PI / 4) < 1e-3);
}

TEST_CASE("invalid run options") {
  auto model = ExtensionModel::quadratic(5);
  auto table = CharacterTable::for_model(model);
  RunOptions bad;
  bad.x_max = 1;
  CHECK_THROWS_AS(run_products(model, table, bad), UsageError);
  bad.x_max = 100;
  bad.threads = 0;
  CHECK_THROWS_AS(run_products(model, table, bad), UsageError);
  bad.threads = 1;
  bad.checkpoints = {200};
  CHECK_THROWS_AS(run_products(model, table, bad), UsageError);
}
