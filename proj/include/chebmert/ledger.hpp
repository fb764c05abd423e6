#ifndef CHEBMERT_LEDGER_HPP
#define CHEBMERT_LEDGER_HPP

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "chebmert/characters.hpp"
#include "chebmert/extension.hpp"

namespace chebmert {

struct RunOptions {
  uint64_t x_max = 1'000'000;
  std::vector<uint64_t> checkpoints;  // sorted ascending; x_max is implied
  int threads = 1;
  std::string cache_path;             // empty disables the cache
};

// Geometric grid 10^start, 10^(start+step), ..., clipped to x_max.
std::vector<uint64_t> geometric_checkpoints(double start_exp, double stop_exp,
                                            double step_exp, uint64_t x_max);

// One prime excluded from the per-character products, with why.
struct ExclusionRecord {
  uint64_t p = 0;
  int class_idx = kRamified;  // kRamified, or the class of a prime outside S
  bool ramified() const { return class_idx == kRamified; }
};

// State of every accumulator after all primes <= x.
struct LedgerSnapshot {
  uint64_t x = 0;
  std::vector<double> class_log_mertens;  // per class: sum log(1-1/np) over C(x)
  std::vector<uint64_t> class_counts;
  uint64_t ramified_count = 0;
  double log_mertens_all = 0.0;        // over every prime <= x
  double log_mertens_ramified = 0.0;   // over ramified primes <= x
  double log_mertens_unramified = 0.0; // over classified primes <= x
  // Per character, log-space with compensated accumulation:
  std::vector<std::complex<double>> log_m_inv;  // sum log(1 - chi/np) over S(x)
  std::vector<std::complex<double>> log_k;      // -sum log(1 - k/np) over S(x)
  std::vector<std::complex<double>> log_r_inv;  // -sum log R_P over S(x)
  std::vector<std::complex<double>> log_raw;    // sum chi log(1-1/np), all unramified
  std::vector<double> abs_k_over_np;            // sum |k|/np over S(x)
};

// Checkpointed truncated products for one model, produced by a single
// pass over the primes up to x_max.  The pass is split at fixed block
// boundaries; blocks may run on any thread and are merged in block
// order, so results are bit-identical for a given x_max regardless of
// the thread count.
class ProductLedger {
public:
  const ExtensionModel& model() const { return model_; }
  const CharacterTable& table() const { return table_; }
  uint64_t x_max() const { return x_max_; }
  const std::vector<LedgerSnapshot>& snapshots() const { return snapshots_; }
  const LedgerSnapshot& final_snapshot() const { return snapshots_.back(); }
  const LedgerSnapshot& at(uint64_t x) const;  // snapshot with this x
  const std::vector<ExclusionRecord>& exclusions() const { return exclusions_; }

private:
  friend ProductLedger run_products(const ExtensionModel&, const CharacterTable&,
                                    const RunOptions&);
  ProductLedger(ExtensionModel model, CharacterTable table, uint64_t x_max)
      : model_(std::move(model)), table_(std::move(table)), x_max_(x_max) {}

  ExtensionModel model_;
  CharacterTable table_;
  uint64_t x_max_ = 0;
  std::vector<LedgerSnapshot> snapshots_;
  std::vector<ExclusionRecord> exclusions_;
};

ProductLedger run_products(const ExtensionModel& model, const CharacterTable& table,
                           const RunOptions& options);

// Finite corrections from the exclusion log, truncated to primes <= x:
// B is the raw-power product over unramified excluded primes, M the
// Artin factors there.  Ramified primes contribute the unit factor (the
// inertia-invariant data is not modelled); every report flags this.
struct Corrections {
  std::vector<std::complex<double>> log_b;  // per char
  std::vector<std::complex<double>> log_m;  // per char
  static constexpr const char* kRamifiedConvention = "unit";
};

Corrections corrections_from(const CharacterTable& table,
                             const std::vector<ExclusionRecord>& exclusions,
                             uint64_t up_to_x = UINT64_MAX);

Corrections corrections(const ProductLedger& ledger,
                        uint64_t up_to_x = UINT64_MAX);

// Truncated Euler product for L(1, chi) implied by the ledger at x:
// prod over unramified p <= x of the Artin local factor, under the same
// exclusion conventions as everything else.
std::complex<double> log_l_truncated(const ProductLedger& ledger,
                                     const LedgerSnapshot& snap, int char_idx);

// Decay fits for the K-product and k-sum tails against the reference
// values at x_max (Lemma-rate verification data).
struct TailFit {
  std::string char_label;
  double k_product_slope = 0.0;  // log-log slope of |K(x) - K(x_max)|
  double k_sum_slope = 0.0;      // log-log slope of the |k|/np tail
  int points = 0;
};

std::vector<TailFit> tail_bounds_report(const ProductLedger& ledger,
                                        uint64_t fit_lo, uint64_t fit_hi);

// Classification cache: little-endian stream of (uint64 prime, uint8
// class index) for the unramified primes, after a 16-byte header
// {magic "CHEBMERT", uint16 version, uint32 model hash, 2 zero bytes}.
struct FrobeniusCache {
  std::vector<uint64_t> primes;
  std::vector<uint8_t> classes;

  static FrobeniusCache load(const std::string& path, const ExtensionModel& model);
  void save(const std::string& path, const ExtensionModel& model) const;
};

// Checkpoint table in the fixed CSV schema.  Class rows leave the
// character columns empty and vice versa; complex logs print as re+imi.
void write_checkpoint_csv(const ProductLedger& ledger, std::ostream& os);

}  // namespace chebmert

#endif
