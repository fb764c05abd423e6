#ifndef CHEBMERT_EXTENSION_HPP
#define CHEBMERT_EXTENSION_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chebmert/poly.hpp"

namespace chebmert {

enum class ModelKind { kQuadratic, kCyclotomic, kS3Cubic };

struct ConjugacyClass {
  std::string label;
  int size = 1;
  double density(int64_t group_order) const {
    return static_cast<double>(size) / static_cast<double>(group_order);
  }
};

// Sentinel returned by classify() for primes excluded from all products
// (ramified, or conservatively treated as such).
inline constexpr int kRamified = -1;

// A concrete Galois extension of Q with its conjugacy classes, ramified
// primes, and a total Frobenius classifier.  Immutable after
// construction; safe to share across threads.
class ExtensionModel {
public:
  // E = Q(sqrt(D)), D squarefree, D != 0, 1.
  static ExtensionModel quadratic(long long d);
  // E = Q(zeta_b), b >= 3.  Classes are the residues coprime to b.
  static ExtensionModel cyclotomic(long long b);
  // Splitting field of a monic irreducible cubic with non-square
  // discriminant; classes C1 (identity), C2 (transpositions), C3
  // (3-cycles).  Primes dividing disc(f) are conservatively excluded.
  static ExtensionModel s3_cubic(IntPolynomial f);

  ModelKind kind() const { return kind_; }
  int64_t group_order() const { return group_order_; }
  const std::vector<ConjugacyClass>& classes() const { return classes_; }
  const std::vector<uint64_t>& ramified_primes() const { return ramified_; }

  // Class index for an unramified prime, kRamified otherwise.  Total on
  // primes >= 2.
  int classify(uint64_t p) const;

  int class_index(const std::string& label) const;  // -1 when absent

  // prod over ramified p of (1 - 1/p)^(-1): the N(Delta)/phi(Delta)
  // factor both constant formulas share.
  double ramified_factor() const;

  // Kind-specific accessors.
  long long quadratic_field_discriminant() const;  // Quadratic only
  long long cyclotomic_modulus() const;            // Cyclotomic only
  const IntPolynomial& cubic() const;              // S3Cubic only
  const BigInt& cubic_discriminant() const;        // S3Cubic only

  // Stable textual form, e.g. "quadratic:5", "cyclotomic:4",
  // "cubic:1,0,-1,-1"; feeds cache hashing and reports.
  const std::string& description() const { return description_; }
  uint32_t hash() const;

private:
  ExtensionModel() = default;

  ModelKind kind_ = ModelKind::kQuadratic;
  int64_t group_order_ = 0;
  std::vector<ConjugacyClass> classes_;
  std::vector<uint64_t> ramified_;
  std::string description_;

  long long field_disc_ = 0;                 // quadratic
  long long modulus_ = 0;                    // cyclotomic
  std::vector<int> residue_class_index_;     // cyclotomic: a -> class
  std::shared_ptr<IntPolynomial> cubic_;     // s3
  BigInt cubic_disc_;
  std::array<long long, 4> cubic_i64_{};     // s3 classification fast path
};

// Parses "quadratic:D" / "cyclotomic:b" / "cubic:a3,a2,a1,a0".
ExtensionModel parse_model(const std::string& spec);

}  // namespace chebmert

#endif
