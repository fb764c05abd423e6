#include "chebmert/lfunctions.hpp"

#include <cmath>

#include "chebmert/errors.hpp"
#include "chebmert/intmod.hpp"
#include "chebmert/numeric.hpp"

namespace chebmert {

LValue dirichlet_l1_closed(const DirichletCharacter& chi) {
  if (chi.is_trivial())
    throw UsageError("dirichlet_l1_closed: character must be nontrivial");
  if (chi.conductor() != chi.modulus())
    throw UsageError("dirichlet_l1_closed: character must be primitive");
  const long long b = chi.modulus();
  const std::complex<double> tau = chi.gauss_sum();
  ComplexKahanSum s;
  for (long long a = 1; a < b; ++a) {
    if (!chi.nonzero_at(a)) continue;
    double theta = 2.0 * M_PI * static_cast<double>(a) / static_cast<double>(b);
    std::complex<double> root{std::cos(theta), -std::sin(theta)};
    s.add(std::conj(chi(a)) * std::log(1.0 - root));
  }
  LValue out;
  out.char_label = chi.label();
  out.value = -(tau / static_cast<double>(b)) * s.value();
  out.method = LMethod::kClosedForm;
  out.error_estimate = 1e-13 * static_cast<double>(b);
  return out;
}

LValue dirichlet_l1_series(const DirichletCharacter& chi, uint64_t terms) {
  if (chi.is_trivial())
    throw UsageError("dirichlet_l1_series: series diverges for the trivial character");
  const long long b = chi.modulus();
  if (terms < 2 * static_cast<uint64_t>(b))
    throw UsageError("dirichlet_l1_series: too few terms");
  // Partial sums oscillate with period b; averaging the last full
  // period of partial sums cancels the leading oscillation.
  ComplexKahanSum partial;
  ComplexKahanSum window;
  const uint64_t window_start = terms - static_cast<uint64_t>(b);
  for (uint64_t n = 1; n <= terms; ++n) {
    long long r = static_cast<long long>(n % static_cast<uint64_t>(b));
    if (chi.nonzero_at(r))
      partial.add(chi(r) / static_cast<double>(n));
    if (n > window_start) window.add(partial.value());
  }
  LValue out;
  out.char_label = chi.label();
  out.value = window.value() / static_cast<double>(b);
  out.method = LMethod::kDirichletSeries;
  // Abel-summation tail bound: character block sums are bounded by b.
  out.error_estimate = 4.0 * static_cast<double>(b) / static_cast<double>(terms);
  return out;
}

LValue dirichlet_l1(const DirichletCharacter& chi) {
  if (chi.is_trivial())
    throw UsageError("dirichlet_l1: character must be nontrivial");
  DirichletCharacter prim = chi.primitivize();
  LValue lv = dirichlet_l1_closed(prim);
  // Restore Euler factors missing from the mod-b character.
  const long long b = chi.modulus();
  for (auto [p, e] : factorize_u64(static_cast<uint64_t>(b))) {
    (void)e;
    if (prim.modulus() % static_cast<long long>(p) == 0) continue;
    lv.value *= 1.0 - prim(static_cast<long long>(p)) / static_cast<double>(p);
  }
  lv.char_label = chi.label();
  return lv;
}

LValue artin_l1_from_ledger(const ProductLedger& ledger, int char_idx) {
  const auto& snaps = ledger.snapshots();
  LValue out;
  out.char_label = ledger.table().chars()[char_idx].label();
  out.method = LMethod::kZetaRatioEuler;
  const LedgerSnapshot& last = ledger.final_snapshot();
  out.value = std::exp(log_l_truncated(ledger, last, char_idx));
  // Fit the O(1/log x) envelope from successive checkpoint estimates.
  std::vector<double> cs;
  for (std::size_t i = 0; i + 1 < snaps.size(); ++i) {
    double l0 = std::abs(std::exp(log_l_truncated(ledger, snaps[i], char_idx)));
    double l1 = std::abs(std::exp(log_l_truncated(ledger, snaps[i + 1], char_idx)));
    double dx = 1.0 / std::log(static_cast<double>(snaps[i].x)) -
                1.0 / std::log(static_cast<double>(snaps[i + 1].x));
    if (dx > 0) cs.push_back(std::abs(l1 - l0) / dx);
  }
  double c = cs.empty() ? std::abs(out.value) : median(cs);
  out.error_estimate = c / std::log(static_cast<double>(last.x));
  if (last.x < 1'000'000) {
    out.wide_error = true;
    out.error_estimate *= 10.0;
  }
  return out;
}

double kappa_imag_quadratic(const ImagQuadBase& base) { return base.kappa; }

std::vector<LValue> lvalues_for_model(const ProductLedger& ledger) {
  const ExtensionModel& model = ledger.model();
  const CharacterTable& table = ledger.table();
  std::vector<LValue> out(table.num_chars());
  for (std::size_t ci = 0; ci < table.num_chars(); ++ci) {
    const Character& chi = table.chars()[ci];
    if (chi.is_trivial()) continue;
    switch (model.kind()) {
      case ModelKind::kQuadratic: {
        out[ci] = dirichlet_l1(
            DirichletCharacter::quadratic(model.quadratic_field_discriminant()));
        break;
      }
      case ModelKind::kCyclotomic: {
        out[ci] = dirichlet_l1(DirichletCharacter::from_table(
            model, table, static_cast<int>(ci)));
        break;
      }
      case ModelKind::kS3Cubic: {
        if (chi.dimension() == 1) {
          // The sign character factors through the quadratic resolvent
          // Q(sqrt(disc f)).  Primes dividing disc(f) are excluded from
          // every ledger product, so strip their Euler factors from the
          // Dirichlet value to keep the two constant determinations on
          // the same convention.
          long long d0 = fundamental_discriminant(
              static_cast<long long>(model.cubic_discriminant()));
          DirichletCharacter dchi = DirichletCharacter::quadratic(d0);
          LValue lv = dirichlet_l1_closed(dchi);
          for (uint64_t p : model.ramified_primes())
            lv.value *= 1.0 - dchi(static_cast<long long>(p)) / static_cast<double>(p);
          lv.char_label = chi.label();
          out[ci] = lv;
        } else {
          out[ci] = artin_l1_from_ledger(ledger, static_cast<int>(ci));
        }
        break;
      }
    }
  }
  return out;
}

}  // namespace chebmert
