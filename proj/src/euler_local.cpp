#include "chebmert/euler_local.hpp"

#include <cmath>

#include "chebmert/errors.hpp"

namespace chebmert {

namespace {

// (1 - 1/np)^v for complex v; the base is positive real, so the
// principal branch is the only sensible one.
inline std::complex<double> mertens_power(std::complex<double> v, double log_base) {
  return std::exp(v * log_base);
}

inline std::complex<double> k_of(std::complex<double> v, double np, double log_base) {
  return np * (1.0 - (1.0 - v / np) * mertens_power(-v, log_base));
}

}  // namespace

std::complex<double> k_chi(const Character& chi, int class_idx, double np) {
  std::complex<double> v = chi.value(class_idx);
  if (std::abs(v) >= np)
    throw OutOfSetError("k_chi: |chi| >= np at class " + std::to_string(class_idx));
  return k_of(v, np, std::log1p(-1.0 / np));
}

LocalFactorSet local_factors(const CharacterTable& table, int class_idx,
                             uint64_t np) {
  LocalFactorSet out;
  out.np = np;
  out.class_idx = class_idx;
  const double npd = static_cast<double>(np);
  out.mertens = 1.0 - 1.0 / npd;
  const double log_base = std::log1p(-1.0 / npd);
  const bool in_s = table.in_exceptional_free_set(class_idx, npd);
  const double inp = 1.0 / npd;

  out.per_char.reserve(table.num_chars());
  for (const auto& chi : table.chars()) {
    CharLocalFactors lf;
    const std::complex<double> v = chi.value(class_idx);
    lf.l_factor = 1.0 / chi.charpoly(class_idx).eval_f(inp);
    if (!in_s) {
      lf.excluded = true;
    } else {
      lf.m_factor = 1.0 / (1.0 - v * inp);
      lf.k_value = k_of(v, npd, log_base);
      lf.k_factor = 1.0 / (1.0 - lf.k_value * inp);
      std::complex<double> g = chi.charpoly(class_idx).eval_g(inp);
      lf.r_factor = 1.0 / (1.0 + g / (npd * (npd - v)));
    }
    out.per_char.push_back(lf);
  }
  return out;
}

CharLogTerms char_log_terms(const Character& chi, int class_idx, double np,
                            double log_mertens) {
  CharLogTerms t;
  // Real-valued characters keep the hot loop in real arithmetic.
  if (chi.value_is_real(class_idx)) {
    const double v = chi.value(class_idx).real();
    const double k = np * (1.0 - (1.0 - v / np) * std::exp(-v * log_mertens));
    const double g = chi.charpoly(class_idx).eval_g_real(1.0 / np);
    t.log_m_inv = std::log1p(-v / np);
    t.log_k = -std::log1p(-k / np);
    t.log_r_inv = -std::log1p(g / (np * (np - v)));
    t.abs_k_over_np = std::abs(k) / np;
  } else {
    const std::complex<double> v = chi.value(class_idx);
    const std::complex<double> k = k_of(v, np, log_mertens);
    const std::complex<double> g = chi.charpoly(class_idx).eval_g(1.0 / np);
    t.log_m_inv = std::log(1.0 - v / np);
    t.log_k = -std::log(1.0 - k / np);
    t.log_r_inv = -std::log(1.0 + g / (np * (np - v)));
    t.abs_k_over_np = std::abs(k) / np;
  }
  return t;
}

std::complex<double> k_series_lhs(std::complex<double> a, double b) {
  return k_of(a, b, std::log1p(-1.0 / b));
}

std::complex<double> k_series_rhs(std::complex<double> a, double b, int terms) {
  // ratio_n = (a+1)...(a+n) / (b^n (n+1)!), advanced one factor per term.
  std::complex<double> ratio = 1.0;
  std::complex<double> bracket = 0.5;
  for (int n = 1; n <= terms; ++n) {
    ratio *= (a + static_cast<double>(n)) / (b * (n + 1));
    bracket += ratio * (static_cast<double>(n + 1) / (n + 2));
  }
  return a * (a - 1.0) / b * bracket;
}

double c_d_constant(int d) {
  // (n-1+d)!/n! is a degree d-1 polynomial in n, so the 2^(-n) series
  // converges fast; stop when terms vanish at double precision.
  double fact_d = 1.0;
  for (int i = 2; i <= d; ++i) fact_d *= i;
  double sum = 0.0;
  for (int n = 0; n < 400; ++n) {
    double ratio = 1.0;  // (n-1+d)!/n! = (n+1)(n+2)...(n+d-1)
    for (int i = 1; i <= d - 1; ++i) ratio *= n + i;
    double term = ratio * std::pow(0.5, n);
    sum += term;
    if (term < 1e-17 * sum && n > d) break;
  }
  return d * (d + 1) / fact_d * sum;
}

double k_chi_bound(int d, double np) {
  return d * (d + 1) / (2.0 * np) + c_d_constant(d) / (np * np);
}

}  // namespace chebmert
