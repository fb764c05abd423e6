#ifndef CHEBMERT_NUMERIC_HPP
#define CHEBMERT_NUMERIC_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace chebmert {

// Kahan-compensated accumulator.  All long products in the engine are
// sums of logarithms accumulated through this type, added in a fixed
// order so that reruns are bit-identical.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    double y = x - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }

  // Folds another accumulator into this one.  The merge is itself a
  // compensated add, so merging block partials in a fixed order gives
  // the same result regardless of how many threads produced them.
  void merge(const KahanSum& other) {
    add(other.sum);
    add(-other.comp);
  }

  double value() const { return sum; }
};

// Complex log-space accumulator (separate compensation per part).
struct ComplexKahanSum {
  KahanSum re, im;

  void add(std::complex<double> z) {
    re.add(z.real());
    im.add(z.imag());
  }
  void merge(const ComplexKahanSum& other) {
    re.merge(other.re);
    im.merge(other.im);
  }
  std::complex<double> value() const { return {re.value(), im.value()}; }
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};

// Ordinary least squares of y against x.
inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  LineFit f;
  if (denom != 0.0) {
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
  }
  return f;
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Rounds to 15 significant digits (the precision all outputs print with).
double round_sig15(double x);

// Euler's constant via Euler-Maclaurin on the harmonic sum; accurate to
// well below 1e-12.  Computed, not hard-coded, so the oracle chain stays
// self-contained.
double euler_gamma();

}  // namespace chebmert

#endif
