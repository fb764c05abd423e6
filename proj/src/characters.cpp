#include "chebmert/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chebmert/errors.hpp"
#include "chebmert/intmod.hpp"
#include "chebmert/numeric.hpp"

namespace chebmert {

RootOfUnity RootOfUnity::make(long long num, long long den) {
  if (den <= 0) throw Error("root of unity needs positive denominator");
  num %= den;
  if (num < 0) num += den;
  long long g = std::gcd(num, den);
  if (num == 0) return {0, 1};
  return {num / g, den / g};
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& o) const {
  long long l = std::lcm(den, o.den);
  return make(num * (l / den) + o.num * (l / o.den), l);
}

std::complex<double> RootOfUnity::value() const {
  switch (den) {
    case 1: return {1, 0};
    case 2: return {-1, 0};
    case 4: return num == 1 ? std::complex<double>{0, 1} : std::complex<double>{0, -1};
    default: {
      double theta = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den);
      return {std::cos(theta), std::sin(theta)};
    }
  }
}

std::complex<double> FrobCharPoly::eval_f(std::complex<double> t) const {
  std::complex<double> acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::complex<double> FrobCharPoly::eval_g(std::complex<double> t) const {
  std::complex<double> acc = 0;
  for (auto it = g.rbegin(); it != g.rend(); ++it) acc = acc * t + *it;
  return acc;
}

double FrobCharPoly::eval_f_real(double t) const {
  double acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * t + it->real();
  return acc;
}

double FrobCharPoly::eval_g_real(double t) const {
  double acc = 0;
  for (auto it = g.rbegin(); it != g.rend(); ++it) acc = acc * t + it->real();
  return acc;
}

namespace {

FrobCharPoly charpoly_from_f(std::vector<std::complex<double>> f) {
  FrobCharPoly cp;
  cp.g.assign(f.size() > 2 ? f.begin() + 2 : f.end(), f.end());
  cp.f = std::move(f);
  return cp;
}

// f(T) = 1 - vT for a one-dimensional character value v.
FrobCharPoly charpoly_linear(std::complex<double> v) {
  return charpoly_from_f({{1, 0}, -v});
}

Character make_one_dim(std::string label, bool trivial,
                       std::vector<RootOfUnity> exact) {
  std::vector<std::complex<double>> values;
  std::vector<FrobCharPoly> polys;
  values.reserve(exact.size());
  for (const auto& r : exact) {
    values.push_back(r.value());
    polys.push_back(charpoly_linear(values.back()));
  }
  return Character(std::move(label), 1, trivial, std::move(values),
                   std::move(polys), std::move(exact));
}

// Decomposition of (Z/bZ)^x into cyclic components, with discrete-log
// tables per component so classification stays O(#components) per prime.
struct UnitComponent {
  uint64_t prime_power;
  long long order;
  std::vector<long long> dlog;  // indexed by residue mod prime_power; -1 off units
};

long long find_primitive_root(uint64_t pe, uint64_t p) {
  // Group (Z/p^e)^x is cyclic for odd p; test candidates against the
  // maximal proper subgroup orders.
  uint64_t phi = pe / p * (p - 1);
  auto fac = factorize_u64(phi);
  for (uint64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool primitive = true;
    for (auto [q, e] : fac) {
      (void)e;
      if (powmod(g, phi / q, pe) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return static_cast<long long>(g);
  }
  throw Error("no primitive root found");
}

std::vector<UnitComponent> unit_group_components(uint64_t b) {
  std::vector<UnitComponent> comps;
  for (auto [p, e] : factorize_u64(b)) {
    uint64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    if (p == 2) {
      if (e == 1) continue;  // trivial group
      if (e == 2) {
        UnitComponent c{pe, 2, std::vector<long long>(pe, -1)};
        c.dlog[1] = 0;
        c.dlog[3] = 1;
        comps.push_back(std::move(c));
      } else {
        // (Z/2^e)^x = <-1> x <5>.
        long long half = static_cast<long long>(pe / 4);
        UnitComponent sign{pe, 2, std::vector<long long>(pe, -1)};
        UnitComponent five{pe, half, std::vector<long long>(pe, -1)};
        uint64_t v = 1;
        for (long long k = 0; k < half; ++k) {
          sign.dlog[v] = 0;
          five.dlog[v] = k;
          sign.dlog[pe - v] = 1;
          five.dlog[pe - v] = k;
          v = mulmod(v, 5, pe);
        }
        comps.push_back(std::move(sign));
        comps.push_back(std::move(five));
      }
    } else {
      uint64_t phi = pe / p * (p - 1);
      long long g = find_primitive_root(pe, p);
      UnitComponent c{pe, static_cast<long long>(phi),
                      std::vector<long long>(pe, -1)};
      uint64_t v = 1;
      for (uint64_t k = 0; k < phi; ++k) {
        c.dlog[v] = static_cast<long long>(k);
        v = mulmod(v, static_cast<uint64_t>(g), pe);
      }
      comps.push_back(std::move(c));
    }
  }
  return comps;
}

std::vector<Character> dirichlet_table_chars(const ExtensionModel& model) {
  const uint64_t b = static_cast<uint64_t>(model.cyclotomic_modulus());
  const auto comps = unit_group_components(b);
  long long lcm_order = 1;
  for (const auto& c : comps) lcm_order = std::lcm(lcm_order, c.order);

  // Exact angle of the class residue under each component generator.
  const auto& classes = model.classes();
  std::vector<long long> residues;
  residues.reserve(classes.size());
  for (const auto& cls : classes)
    residues.push_back(std::stoll(cls.label.substr(0, cls.label.find(' '))));

  std::size_t nchars = classes.size();  // phi(b)
  std::vector<Character> chars;
  chars.reserve(nchars);
  std::vector<long long> index(comps.size(), 0);
  for (std::size_t k = 0; k < nchars; ++k) {
    std::vector<RootOfUnity> exact;
    exact.reserve(classes.size());
    bool trivial = true;
    for (const auto& j : index)
      if (j != 0) trivial = false;
    for (long long a : residues) {
      long long angle_num = 0;
      for (std::size_t i = 0; i < comps.size(); ++i) {
        long long dl = comps[i].dlog[a % static_cast<long long>(comps[i].prime_power)];
        angle_num += (index[i] * dl % comps[i].order) * (lcm_order / comps[i].order);
      }
      exact.push_back(RootOfUnity::make(angle_num, lcm_order));
    }
    chars.push_back(make_one_dim("chi" + std::to_string(k), trivial, std::move(exact)));
    // Advance the mixed-radix character index.
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (++index[i] < comps[i].order) break;
      index[i] = 0;
    }
  }
  return chars;
}

}  // namespace

Character::Character(std::string label, int dimension, bool trivial,
                     std::vector<std::complex<double>> values,
                     std::vector<FrobCharPoly> charpolys,
                     std::vector<RootOfUnity> exact)
    : label_(std::move(label)),
      dimension_(dimension),
      trivial_(trivial),
      values_(std::move(values)),
      charpolys_(std::move(charpolys)),
      exact_(std::move(exact)) {}

CharacterTable CharacterTable::for_model(const ExtensionModel& model) {
  CharacterTable t;
  t.classes_ = model.classes();
  t.group_order_ = model.group_order();

  switch (model.kind()) {
    case ModelKind::kQuadratic: {
      t.chars_.push_back(make_one_dim(
          "chi0", true, {RootOfUnity::make(0, 1), RootOfUnity::make(0, 1)}));
      t.chars_.push_back(make_one_dim(
          "chi1", false, {RootOfUnity::make(0, 1), RootOfUnity::make(1, 2)}));
      break;
    }
    case ModelKind::kCyclotomic: {
      t.chars_ = dirichlet_table_chars(model);
      break;
    }
    case ModelKind::kS3Cubic: {
      t.chars_.push_back(make_one_dim("chi0", true,
                                      {RootOfUnity::make(0, 1), RootOfUnity::make(0, 1),
                                       RootOfUnity::make(0, 1)}));
      t.chars_.push_back(make_one_dim("chi1", false,
                                      {RootOfUnity::make(0, 1), RootOfUnity::make(1, 2),
                                       RootOfUnity::make(0, 1)}));
      // The two-dimensional character: values 2, 0, -1 with Frobenius
      // eigenvalues {1,1}, {1,-1}, {w,wbar}.
      std::vector<std::complex<double>> values{{2, 0}, {0, 0}, {-1, 0}};
      std::vector<FrobCharPoly> polys;
      polys.push_back(charpoly_from_f({{1, 0}, {-2, 0}, {1, 0}}));  // (1-T)^2
      polys.push_back(charpoly_from_f({{1, 0}, {0, 0}, {-1, 0}}));  // 1-T^2
      polys.push_back(charpoly_from_f({{1, 0}, {1, 0}, {1, 0}}));   // 1+T+T^2
      t.chars_.emplace_back("chi2", 2, false, std::move(values), std::move(polys));
      break;
    }
  }

  t.trivial_index_ = -1;
  for (std::size_t i = 0; i < t.chars_.size(); ++i)
    if (t.chars_[i].is_trivial()) t.trivial_index_ = static_cast<int>(i);
  if (t.trivial_index_ < 0) throw Error("table has no trivial character");

  t.class_max_abs_.assign(t.classes_.size(), 0.0);
  for (std::size_t c = 0; c < t.classes_.size(); ++c)
    for (const auto& chi : t.chars_)
      t.class_max_abs_[c] = std::max(t.class_max_abs_[c], std::abs(chi.value(static_cast<int>(c))));
  return t;
}

std::complex<double> orthogonality_sum(const CharacterTable& table, int c,
                                       int p_class) {
  ComplexKahanSum s;
  for (const auto& chi : table.chars())
    s.add(chi.value(p_class) * std::conj(chi.value(c)));
  return s.value();
}

std::complex<double> row_orthogonality_sum(const CharacterTable& table, int i,
                                           int j) {
  ComplexKahanSum s;
  const auto& classes = table.classes();
  for (std::size_t c = 0; c < classes.size(); ++c)
    s.add(static_cast<double>(classes[c].size) *
          table.chars()[i].value(static_cast<int>(c)) *
          std::conj(table.chars()[j].value(static_cast<int>(c))));
  return s.value();
}

double xi_bound(const Character& chi) {
  if (chi.dimension() == 1) return 0.0;
  double sup = 0.0;
  const double step = 1e-4;
  for (int c = 0; c < chi.num_classes(); ++c) {
    const auto& cp = chi.charpoly(c);
    for (double t = 0.0; t <= 0.5 + step / 2; t += step)
      sup = std::max(sup, std::abs(cp.eval_g(std::min(t, 0.5))));
  }
  return sup;
}

}  // namespace chebmert
