#include <doctest.h>

#include <numeric>

#include "chebmert/characters.hpp"
#include "chebmert/dirichlet.hpp"
#include "chebmert/intmod.hpp"

using namespace chebmert;

namespace {

ExtensionModel s3_default() {
  return ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first("1,0,-1,-1"));
}

long long phi(long long b) {
  long long out = b;
  for (auto [p, e] : factorize_u64(static_cast<uint64_t>(b))) {
    (void)e;
    out = out / static_cast<long long>(p) * (static_cast<long long>(p) - 1);
  }
  return out;
}

}  // namespace

TEST_CASE("root of unity bookkeeping is exact") {
  auto i = RootOfUnity::make(1, 4);
  CHECK(i.value() == std::complex<double>(0, 1));
  CHECK((i * i) == RootOfUnity::make(1, 2));
  CHECK((i * i).value() == std::complex<double>(-1, 0));
  CHECK(i.conjugate() == RootOfUnity::make(3, 4));
  auto w = RootOfUnity::make(1, 3);
  CHECK((w * w * w).is_one());
  CHECK((RootOfUnity::make(2, 6) == w));
}

TEST_CASE("S3 character table values") {
  auto table = CharacterTable::for_model(s3_default());
  REQUIRE(table.num_chars() == 3);
  const auto& chi2 = table.chars()[2];
  CHECK(chi2.dimension() == 2);
  CHECK(chi2.value(0) == std::complex<double>(2, 0));
  CHECK(chi2.value(1) == std::complex<double>(0, 0));
  CHECK(chi2.value(2) == std::complex<double>(-1, 0));
  const auto& chi1 = table.chars()[1];
  CHECK(chi1.value(0) == std::complex<double>(1, 0));
  CHECK(chi1.value(1) == std::complex<double>(-1, 0));
  CHECK(chi1.value(2) == std::complex<double>(1, 0));
  CHECK(table.chars()[0].is_trivial());
}

TEST_CASE("S3 characteristic polynomials") {
  auto table = CharacterTable::for_model(s3_default());
  const auto& chi2 = table.chars()[2];
  // C1 -> 1 - 2T + T^2, C2 -> 1 - T^2, C3 -> 1 + T + T^2.
  CHECK(chi2.charpoly(0).f == std::vector<std::complex<double>>{{1, 0}, {-2, 0}, {1, 0}});
  CHECK(chi2.charpoly(1).f == std::vector<std::complex<double>>{{1, 0}, {0, 0}, {-1, 0}});
  CHECK(chi2.charpoly(2).f == std::vector<std::complex<double>>{{1, 0}, {1, 0}, {1, 0}});
  CHECK(chi2.charpoly(0).g == std::vector<std::complex<double>>{{1, 0}});
  CHECK(chi2.charpoly(1).g == std::vector<std::complex<double>>{{-1, 0}});
  CHECK(chi2.charpoly(2).g == std::vector<std::complex<double>>{{1, 0}});
}

TEST_CASE("charpoly decomposition f = 1 - chi T + g T^2 holds coefficient-wise") {
  for (const auto& model :
       {ExtensionModel::quadratic(5), ExtensionModel::cyclotomic(12), s3_default()}) {
    auto table = CharacterTable::for_model(model);
    for (const auto& chi : table.chars()) {
      for (int c = 0; c < chi.num_classes(); ++c) {
        const auto& cp = chi.charpoly(c);
        REQUIRE(cp.f.size() >= 2);
        CHECK(cp.f[0] == std::complex<double>(1, 0));
        CHECK(cp.f[1] == -chi.value(c));
        for (std::size_t j = 0; j + 2 < cp.f.size(); ++j) CHECK(cp.g[j] == cp.f[j + 2]);
        CHECK(std::abs(cp.eval_f(0.3) -
                       (1.0 - chi.value(c) * 0.3 + cp.eval_g(0.3) * 0.09)) < 1e-15);
      }
    }
  }
}

TEST_CASE("cyclotomic(4) characters") {
  auto model = ExtensionModel::cyclotomic(4);
  auto table = CharacterTable::for_model(model);
  REQUIRE(table.num_chars() == 2);
  int c3 = model.class_index("3 mod 4");
  CHECK(table.chars()[0].value(c3) == std::complex<double>(1, 0));
  CHECK(table.chars()[1].value(c3) == std::complex<double>(-1, 0));
  // Identity column equals dimensions.
  int c1 = model.class_index("1 mod 4");
  for (const auto& chi : table.chars())
    CHECK(chi.value(c1) == std::complex<double>(1, 0));
}

TEST_CASE("cyclotomic tables have phi(b) multiplicative characters") {
  for (long long b : {3, 4, 5, 8, 9, 12, 15, 16, 24, 40, 60, 100}) {
    auto model = ExtensionModel::cyclotomic(b);
    auto table = CharacterTable::for_model(model);
    CHECK(static_cast<long long>(table.num_chars()) == phi(b));
    // Exact total multiplicativity on all residue pairs.
    const auto& classes = model.classes();
    std::vector<long long> residues;
    for (const auto& cls : classes)
      residues.push_back(std::stoll(cls.label));
    for (const auto& chi : table.chars()) {
      for (std::size_t i = 0; i < residues.size(); ++i)
        for (std::size_t j = 0; j < residues.size(); ++j) {
          long long prod = residues[i] * residues[j] % b;
          const RootOfUnity* vi = chi.exact_value(static_cast<int>(i));
          const RootOfUnity* vj = chi.exact_value(static_cast<int>(j));
          const RootOfUnity* vp = chi.exact_value(model.classify(prod));
          REQUIRE(vi);
          CHECK((*vi * *vj) == *vp);
        }
    }
  }
}

TEST_CASE("orthogonality examples") {
  auto s3 = CharacterTable::for_model(s3_default());
  CHECK(std::abs(orthogonality_sum(s3, 1, 1) - std::complex<double>(2, 0)) < 1e-12);
  CHECK(std::abs(orthogonality_sum(s3, 0, 2)) < 1e-12);
  auto c4 = CharacterTable::for_model(ExtensionModel::cyclotomic(4));
  CHECK(std::abs(orthogonality_sum(c4, 0, 0) - std::complex<double>(2, 0)) < 1e-12);
}

TEST_CASE("row and column orthogonality to 1e-12 for b up to 100") {
  for (long long b = 3; b <= 100; ++b) {
    auto model = ExtensionModel::cyclotomic(b);
    auto table = CharacterTable::for_model(model);
    double worst = 0;
    for (std::size_t i = 0; i < table.num_chars(); ++i)
      for (std::size_t j = 0; j < table.num_chars(); ++j) {
        auto s = row_orthogonality_sum(table, static_cast<int>(i), static_cast<int>(j));
        auto expect = i == j ? std::complex<double>(static_cast<double>(phi(b)), 0)
                             : std::complex<double>(0, 0);
        worst = std::max(worst, std::abs(s - expect));
      }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("xi bound") {
  auto s3 = CharacterTable::for_model(s3_default());
  CHECK(xi_bound(s3.chars()[0]) == 0.0);
  CHECK(xi_bound(s3.chars()[1]) == 0.0);
  // g constants are {1, -1, 1}, so the sup of |g| is 1.
  CHECK(xi_bound(s3.chars()[2]) == doctest::Approx(1.0));
}

TEST_CASE("exceptional set membership") {
  auto s3 = CharacterTable::for_model(s3_default());
  // |chi2(C1)| = 2, so the identity class leaves S exactly at np = 2.
  CHECK_FALSE(s3.in_exceptional_free_set(0, 2.0));
  CHECK(s3.in_exceptional_free_set(0, 3.0));
  CHECK(s3.in_exceptional_free_set(1, 2.0));
  CHECK(s3.in_exceptional_free_set(2, 2.0));
  auto quad = CharacterTable::for_model(ExtensionModel::quadratic(5));
  CHECK(quad.in_exceptional_free_set(0, 2.0));
  CHECK(quad.in_exceptional_free_set(1, 2.0));
}

TEST_CASE("dirichlet character lift, conductor, primitivization") {
  auto model = ExtensionModel::cyclotomic(8);
  auto table = CharacterTable::for_model(model);
  int imprimitive = -1;
  for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
    if (table.chars()[ci].is_trivial()) continue;
    auto chi = DirichletCharacter::from_table(model, table, static_cast<int>(ci));
    CHECK(chi(3 * 8 + 1) == chi(1));
    CHECK(chi(2) == std::complex<double>(0, 0));
    if (chi.conductor() == 4) imprimitive = static_cast<int>(ci);
  }
  REQUIRE(imprimitive >= 0);
  auto chi8 = DirichletCharacter::from_table(model, table, imprimitive);
  auto prim = chi8.primitivize();
  CHECK(prim.modulus() == 4);
  CHECK(prim.conductor() == 4);
  CHECK(std::abs(prim(3) - std::complex<double>(-1, 0)) < 1e-15);
}

TEST_CASE("quadratic dirichlet characters") {
  auto chi = DirichletCharacter::quadratic(-4);
  CHECK(chi(1) == std::complex<double>(1, 0));
  CHECK(chi(3) == std::complex<double>(-1, 0));
  CHECK(chi(2) == std::complex<double>(0, 0));
  CHECK(chi.conductor() == 4);
  auto chi5 = DirichletCharacter::quadratic(5);
  CHECK(chi5.conductor() == 5);
  CHECK(chi5(2) == std::complex<double>(-1, 0));
  // Gauss sum of a primitive character has modulus sqrt(b).
  CHECK(std::abs(chi5.gauss_sum()) == doctest::Approx(std::sqrt(5.0)));
  CHECK(std::abs(chi.gauss_sum()) == doctest::Approx(2.0));
}
