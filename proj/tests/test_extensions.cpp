#include <doctest.h>

#include <map>
#include <numeric>

#include "chebmert/errors.hpp"
#include "chebmert/extension.hpp"
#include "chebmert/idealnorms.hpp"
#include "chebmert/intmod.hpp"
#include "chebmert/primes.hpp"
#include "chebmert/quadform.hpp"

using namespace chebmert;

namespace {

ExtensionModel s3_default() {
  return ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first("1,0,-1,-1"));
}

// Exhaustive root count of a cubic mod p.
int root_count_mod_p(const IntPolynomial& f, uint64_t p) {
  auto c = f.reduced_mod(p);
  c.resize(4, 0);
  int roots = 0;
  for (uint64_t x = 0; x < p; ++x) {
    uint64_t acc = 0;
    for (int i = 3; i >= 0; --i) acc = (mulmod(acc, x, p) + c[i]) % p;
    if (acc == 0) ++roots;
  }
  return roots;
}

// Second, independent enumeration of reduced forms: scan b first.
int class_number_by_b(long long d) {
  int count = 0;
  for (long long b = (d % 2 + 2) % 2; b * b <= -d / 3; b += 2) {
    for (long long a = std::max(b, 1ll); 4 * a * a <= b * b - d; ++a) {
      if ((b * b - d) % (4 * a) != 0) continue;
      long long c = (b * b - d) / (4 * a);
      if (c < a || b > a) continue;
      if (std::gcd(std::gcd(a, b), c) != 1) continue;
      ++count;                      // (a, b, c)
      if (b > 0 && b < a && a < c) ++count;  // (a, -b, c) distinct
    }
  }
  return count;
}

}  // namespace

TEST_CASE("model construction validates inputs") {
  CHECK_THROWS_AS(ExtensionModel::quadratic(0), UsageError);
  CHECK_THROWS_AS(ExtensionModel::quadratic(1), UsageError);
  CHECK_THROWS_AS(ExtensionModel::quadratic(12), UsageError);  // not squarefree
  CHECK_THROWS_AS(ExtensionModel::cyclotomic(2), UsageError);
  // x^3 - x = x(x-1)(x+1) is reducible.
  CHECK_THROWS_AS(ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first("1,0,-1,0")),
                  UsageError);
  // x^3 - 3x - 1 has discriminant 81: cyclic cubic, not S3.
  CHECK_THROWS_AS(ExtensionModel::s3_cubic(IntPolynomial::parse_leading_first("1,0,-3,-1")),
                  UsageError);
  CHECK_THROWS_AS(parse_model("septic:1"), UsageError);
  CHECK(parse_model("quadratic:5").kind() == ModelKind::kQuadratic);
}

TEST_CASE("quadratic model data") {
  auto m5 = ExtensionModel::quadratic(5);
  CHECK(m5.quadratic_field_discriminant() == 5);
  CHECK(m5.ramified_primes() == std::vector<uint64_t>{5});
  CHECK(m5.group_order() == 2);
  auto m1 = ExtensionModel::quadratic(-1);
  CHECK(m1.quadratic_field_discriminant() == -4);
  CHECK(m1.ramified_primes() == std::vector<uint64_t>{2});
  auto m6 = ExtensionModel::quadratic(-6);
  CHECK(m6.quadratic_field_discriminant() == -24);
  CHECK(m6.ramified_primes() == std::vector<uint64_t>{2, 3});
}

TEST_CASE("classification examples") {
  auto m5 = ExtensionModel::quadratic(5);
  // kronecker(5,11) = 1 by brute force QR check elsewhere.
  CHECK(m5.classes()[m5.classify(11)].label == "split");
  CHECK(m5.classify(5) == kRamified);

  auto c4 = ExtensionModel::cyclotomic(4);
  CHECK(c4.classes()[c4.classify(7)].label == "3 mod 4");
  CHECK(c4.classify(2) == kRamified);

  auto s3 = s3_default();
  // Oracle: exhaustive root count at every residue.
  CHECK(root_count_mod_p(s3.cubic(), 59) == 3);
  CHECK(s3.classes()[s3.classify(59)].label == "C1");
  CHECK(s3.classify(23) == kRamified);
  // x^3 - x - 1 mod 2 has no roots, hence is irreducible: C3.
  CHECK(root_count_mod_p(s3.cubic(), 2) == 0);
  CHECK(s3.classes()[s3.classify(2)].label == "C3");
}

TEST_CASE("classification is total and matches the root-count oracle") {
  auto s3 = s3_default();
  for_each_prime_in_range(2, 2000, [&](uint64_t p) {
    int cls = s3.classify(p);
    if (cls == kRamified) {
      CHECK(p == 23);
      return;
    }
    int roots = root_count_mod_p(s3.cubic(), p);
    int expect = roots == 3 ? 0 : roots == 1 ? 1 : 2;
    CHECK(cls == expect);
  });
}

TEST_CASE("ramified factor") {
  CHECK(ExtensionModel::cyclotomic(4).ramified_factor() == doctest::Approx(2.0));
  CHECK(ExtensionModel::quadratic(5).ramified_factor() == doctest::Approx(1.25));
  CHECK(ExtensionModel::cyclotomic(15).ramified_factor() == doctest::Approx(1.875));
  CHECK(s3_default().ramified_factor() == doctest::Approx(23.0 / 22.0));
}

TEST_CASE("class labels and sizes") {
  auto s3 = s3_default();
  CHECK(s3.classes().size() == 3);
  CHECK(s3.classes()[1].size == 3);
  int64_t total = 0;
  for (const auto& c : s3.classes()) total += c.size;
  CHECK(total == s3.group_order());
  auto c15 = ExtensionModel::cyclotomic(15);
  CHECK(c15.group_order() == 8);  // phi(15)
  CHECK(c15.class_index("2 mod 15") == 1);
}

TEST_CASE("quadform validation") {
  CHECK_THROWS_AS(make_quadform(2, 0, 4), UsageError);   // imprimitive
  CHECK_THROWS_AS(make_quadform(-1, 0, 1), UsageError);  // a <= 0
  CHECK_THROWS_AS(make_quadform(1, 3, 1), UsageError);   // D = 5 > 0
  CHECK_THROWS_AS(parse_quadform("1;0;1"), UsageError);
}

TEST_CASE("quadform representation examples") {
  QuadForm pyth = make_quadform(1, 0, 1);
  CHECK(represents_prime(pyth, 5));   // 1 + 4
  CHECK(represents_prime(pyth, 2));   // 1 + 1
  CHECK_FALSE(represents_prime(pyth, 3));
  QuadForm f5 = make_quadform(1, 0, 5);
  CHECK(represents_prime(f5, 29));    // 9 + 20
  CHECK(represents_prime(f5, 5));     // 0 + 5
  CHECK_FALSE(represents_prime(f5, 7));
}

TEST_CASE("x^2 + y^2 criterion for all primes up to 1e4") {
  QuadForm pyth = make_quadform(1, 0, 1);
  for_each_prime_in_range(2, 10000, [&](uint64_t p) {
    bool classical = p == 2 || p % 4 == 1;
    CHECK(represents_prime(pyth, p) == classical);
  });
}

TEST_CASE("class numbers") {
  CHECK(class_number(-4) == 1);
  CHECK(class_number(-3) == 1);
  CHECK(class_number(-20) == 2);
  CHECK(class_number(-23) == 3);
  CHECK(class_number(-47) == 5);
  CHECK_THROWS_AS(class_number(-5), UsageError);  // -5 = 3 mod 4
  CHECK_THROWS_AS(class_number(4), UsageError);
}

TEST_CASE("class number agrees with a second enumeration order") {
  for (long long d = -3; d >= -200; --d) {
    long long m4 = ((d % 4) + 4) % 4;
    if (m4 != 0 && m4 != 1) continue;
    CHECK(class_number(d) == class_number_by_b(d));
  }
}

TEST_CASE("form reduction and ambiguity") {
  QuadForm r = reduce(QuadForm{3, 7, 5});
  CHECK(r.a <= r.c);
  CHECK(std::abs(r.b) <= r.a);
  CHECK(r.discriminant() == QuadForm{3, 7, 5}.discriminant());
  CHECK(is_ambiguous(make_quadform(1, 0, 1)));
  CHECK(is_ambiguous(make_quadform(1, 0, 5)));
  CHECK(is_ambiguous(make_quadform(2, 2, 3)));
  // Discriminant -23 has h = 3 with non-ambiguous forms (2, +-1, 3).
  CHECK_FALSE(is_ambiguous(make_quadform(2, 1, 3)));
}

TEST_CASE("imaginary quadratic bases") {
  auto b1 = make_imag_quad_base(-1);
  CHECK(b1.field_discriminant == -4);
  CHECK(b1.class_number == 1);
  CHECK(b1.unit_count == 4);
  CHECK(b1.kappa == doctest::Approx(M_PI / 4));
  auto b3 = make_imag_quad_base(-3);
  CHECK(b3.unit_count == 6);
  CHECK(b3.kappa == doctest::Approx(M_PI / (3 * std::sqrt(3.0))));
  auto b5 = make_imag_quad_base(-5);
  CHECK(b5.class_number == 2);
  CHECK(b5.unit_count == 2);
  CHECK(b5.kappa == doctest::Approx(M_PI / std::sqrt(5.0)));
  CHECK_THROWS_AS(make_imag_quad_base(5), UsageError);
  CHECK_THROWS_AS(make_imag_quad_base(-12), UsageError);
}

TEST_CASE("ideal norm stream for Q(i)") {
  std::map<uint64_t, int> norms;
  for_each_ideal_norm(make_imag_quad_base(-1), 10,
                      [&](uint64_t n, int m) { norms[n] += m; });
  // 2 ramified, 3 inert (norm 9), 5 split (two ideals of norm 5),
  // 7 inert with 49 > 10.
  CHECK(norms == std::map<uint64_t, int>{{2, 1}, {5, 2}, {9, 1}});
}

TEST_CASE("ideal norms count Gaussian primes correctly") {
  // Total number of prime ideals of norm <= x equals the number of
  // split primes twice + ramified + inert squares.
  uint64_t count = 0;
  for_each_ideal_norm(make_imag_quad_base(-1), 1000,
                      [&](uint64_t, int m) { count += m; });
  uint64_t expect = 0;
  for_each_prime_in_range(2, 1000, [&](uint64_t p) {
    if (p == 2) expect += 1;
    else if (p % 4 == 1) expect += 2;
    else if (p * p <= 1000) expect += 1;
  });
  CHECK(count == expect);
}

TEST_CASE("model hash distinguishes models") {
  CHECK(ExtensionModel::quadratic(5).hash() != ExtensionModel::quadratic(-5).hash());
  CHECK(ExtensionModel::cyclotomic(4).hash() != ExtensionModel::cyclotomic(8).hash());
  CHECK(parse_model("cubic:1,0,-1,-1").hash() == s3_default().hash());
}

TEST_CASE("fast cubic classifier agrees with the degree-pattern route") {
  for (const char* spec : {"1,0,-1,-1", "1,2,-7,3", "1,-1,0,4", "1,0,0,-2"}) {
    auto f = IntPolynomial::parse_leading_first(spec);
    BigInt disc = poly_discriminant(f);
    if (disc == 0) continue;
    bool sq = false;
    if (disc > 0) {
      BigInt r = boost::multiprecision::sqrt(disc);
      sq = r * r == disc;
    }
    if (sq || f.has_integer_root()) continue;
    auto model = ExtensionModel::s3_cubic(f);
    for_each_prime_in_range(2, 5000, [&](uint64_t p) {
      int cls = model.classify(p);
      if (cls == kRamified) {
        CHECK(disc % BigInt(p) == 0);
        return;
      }
      DegreePattern pat = factor_degrees_mod_p(f, p);
      int expect = pat.size() == 2 ? 1 : pat[0].first == 1 ? 0 : 2;
      CHECK(cls == expect);
    });
  }
}
