#include "chebmert/numeric.hpp"

#include <cstdio>
#include <cstdlib>

namespace chebmert {

double round_sig15(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return std::strtod(buf, nullptr);
}

double euler_gamma() {
  static const double gamma = [] {
    // H_N = log N + gamma + 1/(2N) - 1/(12N^2) + 1/(120N^4) - ...
    const uint64_t n = 1'000'000;
    KahanSum h;
    for (uint64_t k = 1; k <= n; ++k) h.add(1.0 / static_cast<double>(k));
    const double nd = static_cast<double>(n);
    return h.value() - std::log(nd) - 1.0 / (2 * nd) + 1.0 / (12 * nd * nd) -
           1.0 / (120 * nd * nd * nd * nd);
  }();
  return gamma;
}

}  // namespace chebmert
