#include "chebmert/primes.hpp"

#include <algorithm>
#include <cmath>

#include "chebmert/errors.hpp"
#include "chebmert/intmod.hpp"

namespace chebmert {

namespace {

// Simple sieve for the base primes <= bound.
std::vector<uint64_t> small_primes(uint64_t bound) {
  std::vector<uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<char> is_prime(bound + 1, 1);
  for (uint64_t i = 2; i * i <= bound; ++i)
    if (is_prime[i])
      for (uint64_t j = i * i; j <= bound; j += i) is_prime[j] = 0;
  for (uint64_t i = 2; i <= bound; ++i)
    if (is_prime[i]) primes.push_back(i);
  return primes;
}

void check_limit(uint64_t hi) {
  if (hi > kMaxSieveLimit)
    throw ResourceError("sieve limit exceeds 2^52 residue-arithmetic budget");
}

// Sieves [lo, hi] against the given base primes and reports survivors.
template <typename F>
void sieve_segmented(uint64_t lo, uint64_t hi, uint64_t segment_size,
                     const std::vector<uint64_t>& base, F&& report) {
  if (lo < 2) lo = 2;
  if (lo > hi) return;
  std::vector<char> sieve;
  for (uint64_t seg_lo = lo; seg_lo <= hi; ) {
    uint64_t seg_hi = std::min(hi, seg_lo + segment_size - 1);
    uint64_t len = seg_hi - seg_lo + 1;
    sieve.assign(len, 1);
    for (uint64_t p : base) {
      if (p * p > seg_hi) break;
      uint64_t start = std::max(p * p, ((seg_lo + p - 1) / p) * p);
      for (uint64_t j = start; j <= seg_hi; j += p) sieve[j - seg_lo] = 0;
    }
    for (uint64_t n = seg_lo; n <= seg_hi; ++n)
      if (sieve[n - seg_lo]) report(n);
    if (seg_hi == hi) break;
    seg_lo = seg_hi + 1;
  }
}

}  // namespace

void for_each_prime_in_range(uint64_t lo, uint64_t hi,
                             const std::function<void(uint64_t)>& f,
                             uint64_t segment_size) {
  if (hi < 2 || lo > hi) return;
  check_limit(hi);
  if (segment_size == 0) segment_size = kDefaultSegmentSize;
  auto base = small_primes(isqrt_u64(hi));
  sieve_segmented(lo, hi, segment_size, base, f);
}

std::vector<uint64_t> primes_up_to(uint64_t limit, uint64_t segment_size) {
  std::vector<uint64_t> out;
  for_each_prime_in_range(2, limit, [&](uint64_t p) { out.push_back(p); },
                          segment_size);
  return out;
}

PrimeStream::PrimeStream(uint64_t limit, uint64_t segment_size)
    : limit_(limit),
      segment_size_(segment_size ? segment_size : kDefaultSegmentSize),
      segment_lo_(2) {
  if (limit_ >= 2) {
    check_limit(limit_);
    base_primes_ = small_primes(isqrt_u64(limit_));
  }
}

void PrimeStream::fill_buffer() {
  buffer_.clear();
  buffer_pos_ = 0;
  while (buffer_.empty() && segment_lo_ <= limit_) {
    uint64_t seg_hi = std::min(limit_, segment_lo_ + segment_size_ - 1);
    sieve_segmented(segment_lo_, seg_hi, segment_size_, base_primes_,
                    [&](uint64_t p) { buffer_.push_back(p); });
    if (seg_hi == limit_) {
      segment_lo_ = limit_ + 1;
      break;
    }
    segment_lo_ = seg_hi + 1;
  }
}

std::optional<uint64_t> PrimeStream::next() {
  if (limit_ < 2) return std::nullopt;
  if (buffer_pos_ >= buffer_.size()) {
    if (segment_lo_ > limit_) return std::nullopt;
    fill_buffer();
    if (buffer_.empty()) return std::nullopt;
  }
  return buffer_[buffer_pos_++];
}

}  // namespace chebmert
