#include "chebmert/ledger.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstring>
#include <fstream>
#include <memory>
#include <ostream>
#include <thread>

#include "chebmert/errors.hpp"
#include "chebmert/euler_local.hpp"
#include "chebmert/numeric.hpp"
#include "chebmert/primes.hpp"

namespace chebmert {

std::vector<uint64_t> geometric_checkpoints(double start_exp, double stop_exp,
                                            double step_exp, uint64_t x_max) {
  std::vector<uint64_t> cps;
  if (step_exp <= 0) throw UsageError("checkpoint step must be positive");
  for (double e = start_exp; e <= stop_exp + 1e-12; e += step_exp) {
    uint64_t x = static_cast<uint64_t>(std::llround(std::pow(10.0, e)));
    if (x >= 2 && x <= x_max) cps.push_back(x);
  }
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

const LedgerSnapshot& ProductLedger::at(uint64_t x) const {
  for (const auto& s : snapshots_)
    if (s.x == x) return s;
  throw Error("no snapshot at x = " + std::to_string(x));
}

namespace {

constexpr uint64_t kBlockWidth = 1ull << 22;

// Accumulators for one contiguous prime range.
struct BlockAccum {
  std::vector<KahanSum> class_log;
  std::vector<uint64_t> counts;
  uint64_t ramified_count = 0;
  KahanSum all_log, ram_log, unram_log;
  std::vector<ComplexKahanSum> m_inv, k, r_inv, raw;
  std::vector<KahanSum> absk;
  std::vector<ExclusionRecord> exclusions;
  std::vector<uint64_t> cached_primes;   // classification output, optional
  std::vector<uint8_t> cached_classes;

  BlockAccum(std::size_t nclasses, std::size_t nchars)
      : class_log(nclasses),
        counts(nclasses, 0),
        m_inv(nchars),
        k(nchars),
        r_inv(nchars),
        raw(nchars),
        absk(nchars) {}

  void merge(const BlockAccum& o) {
    for (std::size_t i = 0; i < class_log.size(); ++i) {
      class_log[i].merge(o.class_log[i]);
      counts[i] += o.counts[i];
    }
    ramified_count += o.ramified_count;
    all_log.merge(o.all_log);
    ram_log.merge(o.ram_log);
    unram_log.merge(o.unram_log);
    for (std::size_t i = 0; i < m_inv.size(); ++i) {
      m_inv[i].merge(o.m_inv[i]);
      k[i].merge(o.k[i]);
      r_inv[i].merge(o.r_inv[i]);
      raw[i].merge(o.raw[i]);
      absk[i].merge(o.absk[i]);
    }
    exclusions.insert(exclusions.end(), o.exclusions.begin(), o.exclusions.end());
  }
};

struct CacheView {
  const FrobeniusCache* cache = nullptr;
  std::size_t begin = 0, end = 0;
};

void process_block(const ExtensionModel& model, const CharacterTable& table,
                   uint64_t lo, uint64_t hi, const CacheView& cache,
                   bool collect_classifications, BlockAccum& acc) {
  std::size_t cache_idx = cache.begin;
  for_each_prime_in_range(lo, hi, [&](uint64_t p) {
    int cls;
    if (cache.cache && cache_idx < cache.end &&
        cache.cache->primes[cache_idx] == p) {
      cls = static_cast<int>(cache.cache->classes[cache_idx]);
      ++cache_idx;
    } else {
      cls = model.classify(p);
    }
    const double npd = static_cast<double>(p);
    const double lm = std::log1p(-1.0 / npd);
    acc.all_log.add(lm);
    if (cls == kRamified) {
      acc.ram_log.add(lm);
      ++acc.ramified_count;
      acc.exclusions.push_back({p, kRamified});
      return;
    }
    if (collect_classifications) {
      acc.cached_primes.push_back(p);
      acc.cached_classes.push_back(static_cast<uint8_t>(cls));
    }
    acc.class_log[cls].add(lm);
    ++acc.counts[cls];
    acc.unram_log.add(lm);
    const bool in_s = table.in_exceptional_free_set(cls, npd);
    if (!in_s) acc.exclusions.push_back({p, cls});
    for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
      const Character& chi = table.chars()[ci];
      acc.raw[ci].add(chi.value(cls) * lm);
      if (in_s) {
        CharLogTerms t = char_log_terms(chi, cls, npd, lm);
        acc.m_inv[ci].add(t.log_m_inv);
        acc.k[ci].add(t.log_k);
        acc.r_inv[ci].add(t.log_r_inv);
        acc.absk[ci].add(t.abs_k_over_np);
      }
    }
  });
}

LedgerSnapshot snapshot_of(uint64_t x, const BlockAccum& acc) {
  LedgerSnapshot s;
  s.x = x;
  s.class_counts = acc.counts;
  s.ramified_count = acc.ramified_count;
  s.class_log_mertens.reserve(acc.class_log.size());
  for (const auto& a : acc.class_log) s.class_log_mertens.push_back(a.value());
  s.log_mertens_all = acc.all_log.value();
  s.log_mertens_ramified = acc.ram_log.value();
  s.log_mertens_unramified = acc.unram_log.value();
  const std::size_t nchars = acc.m_inv.size();
  s.log_m_inv.reserve(nchars);
  for (std::size_t i = 0; i < nchars; ++i) {
    s.log_m_inv.push_back(acc.m_inv[i].value());
    s.log_k.push_back(acc.k[i].value());
    s.log_r_inv.push_back(acc.r_inv[i].value());
    s.log_raw.push_back(acc.raw[i].value());
    s.abs_k_over_np.push_back(acc.absk[i].value());
  }
  return s;
}

}  // namespace

ProductLedger run_products(const ExtensionModel& model, const CharacterTable& table,
                           const RunOptions& options) {
  if (options.x_max < 2) throw UsageError("x_max must be at least 2");
  if (options.x_max > kMaxSieveLimit)
    throw ResourceError("x_max exceeds the 2^52 budget");
  if (options.threads < 1) throw UsageError("thread count must be >= 1");

  // Normalise the checkpoint set; x_max is always the final checkpoint.
  std::vector<uint64_t> cps = options.checkpoints;
  cps.push_back(options.x_max);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  if (cps.front() < 2 || cps.back() > options.x_max)
    throw UsageError("checkpoints must lie in [2, x_max]");

  // Block boundaries: every checkpoint, with long gaps subdivided at a
  // fixed width so the decomposition never depends on the thread count.
  std::vector<uint64_t> bounds;
  uint64_t lo = 2;
  for (uint64_t cp : cps) {
    while (cp - lo + 1 > kBlockWidth) {
      bounds.push_back(lo + kBlockWidth - 1);
      lo += kBlockWidth;
    }
    bounds.push_back(cp);
    lo = cp + 1;
  }

  FrobeniusCache cache;
  bool have_cache = false;
  if (!options.cache_path.empty()) {
    std::ifstream probe(options.cache_path, std::ios::binary);
    if (probe.good()) {
      cache = FrobeniusCache::load(options.cache_path, model);
      have_cache = true;
    }
  }
  const bool collect = !options.cache_path.empty();

  const std::size_t nblocks = bounds.size();
  std::vector<std::unique_ptr<BlockAccum>> blocks(nblocks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= nblocks) return;
      uint64_t block_lo = i == 0 ? 2 : bounds[i - 1] + 1;
      uint64_t block_hi = bounds[i];
      auto acc = std::make_unique<BlockAccum>(model.classes().size(),
                                              table.num_chars());
      CacheView view;
      if (have_cache) {
        view.cache = &cache;
        view.begin = std::lower_bound(cache.primes.begin(), cache.primes.end(),
                                      block_lo) -
                     cache.primes.begin();
        view.end = std::upper_bound(cache.primes.begin(), cache.primes.end(),
                                    block_hi) -
                   cache.primes.begin();
      }
      process_block(model, table, block_lo, block_hi, view, collect, *acc);
      blocks[i] = std::move(acc);
    }
  };
  if (options.threads == 1 || nblocks == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    int nthreads = std::min<int>(options.threads, static_cast<int>(nblocks));
    pool.reserve(nthreads);
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Deterministic merge in block order, snapshotting at checkpoints.
  ProductLedger ledger(model, table, options.x_max);
  BlockAccum running(model.classes().size(), table.num_chars());
  FrobeniusCache fresh;
  std::size_t cp_idx = 0;
  for (std::size_t i = 0; i < nblocks; ++i) {
    running.merge(*blocks[i]);
    if (collect) {
      fresh.primes.insert(fresh.primes.end(), blocks[i]->cached_primes.begin(),
                          blocks[i]->cached_primes.end());
      fresh.classes.insert(fresh.classes.end(), blocks[i]->cached_classes.begin(),
                           blocks[i]->cached_classes.end());
    }
    blocks[i].reset();
    if (cp_idx < cps.size() && bounds[i] == cps[cp_idx]) {
      ledger.snapshots_.push_back(snapshot_of(cps[cp_idx], running));
      ++cp_idx;
    }
  }
  ledger.exclusions_ = std::move(running.exclusions);

  // Create the cache, or extend it when this run went further than the
  // stored one; never truncate a longer cache with a shorter run.
  if (collect) {
    bool extend = !have_cache || cache.primes.empty() ||
                  (!fresh.primes.empty() && fresh.primes.back() > cache.primes.back());
    if (extend) fresh.save(options.cache_path, model);
  }
  return ledger;
}

Corrections corrections_from(const CharacterTable& table,
                             const std::vector<ExclusionRecord>& exclusions,
                             uint64_t up_to_x) {
  Corrections c;
  c.log_b.assign(table.num_chars(), {0.0, 0.0});
  c.log_m.assign(table.num_chars(), {0.0, 0.0});
  for (const auto& ex : exclusions) {
    if (ex.p > up_to_x) continue;
    if (ex.ramified()) continue;  // unit factor by convention
    const double np = static_cast<double>(ex.p);
    const double lm = std::log1p(-1.0 / np);
    for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
      const Character& chi = table.chars()[ci];
      c.log_b[ci] += chi.value(ex.class_idx) * lm;
      c.log_m[ci] += -std::log(chi.charpoly(ex.class_idx).eval_f(1.0 / np));
    }
  }
  return c;
}

Corrections corrections(const ProductLedger& ledger, uint64_t up_to_x) {
  return corrections_from(ledger.table(), ledger.exclusions(), up_to_x);
}

std::complex<double> log_l_truncated(const ProductLedger& ledger,
                                     const LedgerSnapshot& snap, int char_idx) {
  // L_P = M_P R_P^{-1}: the truncated L product over S(x) is
  // -(log M_inv) + log R_inv; excluded unramified primes re-enter via M.
  Corrections c = corrections(ledger, snap.x);
  return -snap.log_m_inv[char_idx] + snap.log_r_inv[char_idx] + c.log_m[char_idx];
}

std::vector<TailFit> tail_bounds_report(const ProductLedger& ledger,
                                        uint64_t fit_lo, uint64_t fit_hi) {
  const auto& snaps = ledger.snapshots();
  if (snaps.size() < 2)
    throw UsageError("tail_bounds_report needs at least 2 checkpoints");
  const LedgerSnapshot& ref = ledger.final_snapshot();
  std::vector<TailFit> fits;
  for (std::size_t ci = 0; ci < ledger.table().num_chars(); ++ci) {
    const auto& chi = ledger.table().chars()[ci];
    if (chi.is_trivial()) continue;
    std::vector<double> lx_prod, ly_prod, lx_sum, ly_sum;
    const std::complex<double> k_ref = std::exp(ref.log_k[ci]);
    for (const auto& s : snaps) {
      if (s.x < fit_lo || s.x > fit_hi || s.x == ref.x) continue;
      double dprod = std::abs(std::exp(s.log_k[ci]) - k_ref);
      if (dprod > 0) {
        lx_prod.push_back(std::log(static_cast<double>(s.x)));
        ly_prod.push_back(std::log(dprod));
      }
      double dsum = ref.abs_k_over_np[ci] - s.abs_k_over_np[ci];
      if (dsum > 0) {
        lx_sum.push_back(std::log(static_cast<double>(s.x)));
        ly_sum.push_back(std::log(dsum));
      }
    }
    TailFit f;
    f.char_label = chi.label();
    f.points = static_cast<int>(lx_prod.size());
    if (lx_prod.size() >= 2) f.k_product_slope = fit_line(lx_prod, ly_prod).slope;
    if (lx_sum.size() >= 2) f.k_sum_slope = fit_line(lx_sum, ly_sum).slope;
    fits.push_back(f);
  }
  return fits;
}

namespace {

constexpr char kCacheMagic[8] = {'C', 'H', 'E', 'B', 'M', 'E', 'R', 'T'};
constexpr uint16_t kCacheVersion = 1;

void put_u16(std::ostream& os, uint16_t v) {
  char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  os.write(b, 2);
}

void put_u32(std::ostream& os, uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 4);
}

void put_u64(std::ostream& os, uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  os.write(b, 8);
}

uint64_t get_uint(std::istream& is, int bytes) {
  uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) {
    int c = is.get();
    if (c == EOF) throw UsageError("truncated cache file");
    v |= static_cast<uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

}  // namespace

FrobeniusCache FrobeniusCache::load(const std::string& path,
                                    const ExtensionModel& model) {
  std::ifstream is(path, std::ios::binary);
  if (!is.good()) throw UsageError("cannot open cache file: " + path);
  char magic[8];
  is.read(magic, 8);
  if (is.gcount() != 8 || std::memcmp(magic, kCacheMagic, 8) != 0)
    throw UsageError("bad cache magic in " + path);
  uint16_t version = static_cast<uint16_t>(get_uint(is, 2));
  if (version != kCacheVersion)
    throw UsageError("unsupported cache version in " + path);
  uint32_t hash = static_cast<uint32_t>(get_uint(is, 4));
  if (hash != model.hash())
    throw UsageError("cache model hash mismatch in " + path);
  get_uint(is, 2);  // reserved padding
  FrobeniusCache cache;
  while (true) {
    int c = is.peek();
    if (c == EOF) break;
    uint64_t p = get_uint(is, 8);
    int cls = is.get();
    if (cls == EOF) throw UsageError("truncated cache entry in " + path);
    cache.primes.push_back(p);
    cache.classes.push_back(static_cast<uint8_t>(cls));
  }
  return cache;
}

void FrobeniusCache::save(const std::string& path,
                          const ExtensionModel& model) const {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os.good()) throw ResourceError("cannot write cache file: " + path);
  os.write(kCacheMagic, 8);
  put_u16(os, kCacheVersion);
  put_u32(os, model.hash());
  put_u16(os, 0);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    put_u64(os, primes[i]);
    os.put(static_cast<char>(classes[i]));
  }
  if (!os.good()) throw ResourceError("failed writing cache file: " + path);
}

void write_checkpoint_csv(const ProductLedger& ledger, std::ostream& os) {
  os << "x,class,count,log_mertens_product,char_label,log_M_inv,log_K,log_R_inv,log_raw\n";
  char buf[256];
  auto cxs = [&](std::complex<double> z) {
    std::snprintf(buf, sizeof(buf), "%.15g%+.15gi", z.real(), z.imag());
    return std::string(buf);
  };
  for (const auto& s : ledger.snapshots()) {
    const auto& classes = ledger.table().classes();
    for (std::size_t c = 0; c < classes.size(); ++c) {
      std::snprintf(buf, sizeof(buf), "%llu,%s,%llu,%.15g,,,,,\n",
                    static_cast<unsigned long long>(s.x), classes[c].label.c_str(),
                    static_cast<unsigned long long>(s.class_counts[c]),
                    s.class_log_mertens[c]);
      os << buf;
    }
    uint64_t total = s.ramified_count;
    for (uint64_t c : s.class_counts) total += c;
    std::snprintf(buf, sizeof(buf), "%llu,(ramified),%llu,%.15g,,,,,\n",
                  static_cast<unsigned long long>(s.x),
                  static_cast<unsigned long long>(s.ramified_count),
                  s.log_mertens_ramified);
    os << buf;
    std::snprintf(buf, sizeof(buf), "%llu,(all),%llu,%.15g,,,,,\n",
                  static_cast<unsigned long long>(s.x),
                  static_cast<unsigned long long>(total), s.log_mertens_all);
    os << buf;
    for (std::size_t ci = 0; ci < ledger.table().num_chars(); ++ci) {
      os << s.x << ",,,," << ledger.table().chars()[ci].label() << ","
         << cxs(s.log_m_inv[ci]) << "," << cxs(s.log_k[ci]) << ","
         << cxs(s.log_r_inv[ci]) << "," << cxs(s.log_raw[ci]) << "\n";
    }
  }
}

}  // namespace chebmert
