#ifndef CHEBMERT_PRIMES_HPP
#define CHEBMERT_PRIMES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace chebmert {

// Primes above this bound would break the exact double-word residue
// arithmetic used by the classifiers.
inline constexpr uint64_t kMaxSieveLimit = 1ull << 52;

inline constexpr uint64_t kDefaultSegmentSize = 1u << 20;

// Calls f(p) for every prime p in [lo, hi], in increasing order, using a
// segmented sieve.  Memory stays O(segment_size + sqrt(hi)).
void for_each_prime_in_range(uint64_t lo, uint64_t hi,
                             const std::function<void(uint64_t)>& f,
                             uint64_t segment_size = kDefaultSegmentSize);

// All primes <= limit, materialised.  Intended for small limits.
std::vector<uint64_t> primes_up_to(uint64_t limit,
                                   uint64_t segment_size = kDefaultSegmentSize);

// Pull-style stream over the primes <= limit, in increasing order.  A
// stream is independently owned: concurrent consumers each construct
// their own over disjoint ranges.
class PrimeStream {
public:
  explicit PrimeStream(uint64_t limit, uint64_t segment_size = kDefaultSegmentSize);

  // Next prime, or nullopt when the stream is exhausted.
  std::optional<uint64_t> next();

  uint64_t limit() const { return limit_; }

private:
  void fill_buffer();

  uint64_t limit_;
  uint64_t segment_size_;
  uint64_t segment_lo_;
  std::vector<uint64_t> base_primes_;  // primes <= sqrt(limit)
  std::vector<uint64_t> buffer_;
  std::size_t buffer_pos_ = 0;
};

}  // namespace chebmert

#endif
