#include "dym/cochain.hpp"

#include <numbers>

namespace dym {

namespace {

Su2Vectord uniform_su2(Rng& rng, double amplitude) {
  Su2Vectord v;
  for (int a = 0; a < 3; ++a) v(a) = rng.uniform(-amplitude, amplitude);
  return v;
}

/// Draws one value per interior cell in storage order, then fills the halo.
template <typename Draw>
Cochain fill_interior(const Domain& d, int degree, Copy copy, Draw&& draw) {
  Cochain f(d, degree, copy);
  for (const Address& a : interior_sites(d)) {
    for (DirectionSet p : direction_sets(degree)) f.at(a.chart, a.k, p) = draw();
  }
  fill_halo_clamped(f);
  return f;
}

}  // namespace

Cochain random_form(const Domain& d, int degree, double amplitude, std::uint64_t seed, Copy copy) {
  Rng rng(seed);
  return fill_interior(d, degree, copy, [&] {
    Matrix2d m;
    for (int i = 0; i < 4; ++i) {
      const double re = rng.uniform(-amplitude, amplitude);
      const double im = rng.uniform(-amplitude, amplitude);
      m(i / 2, i % 2) = {re, im};
    }
    return m;
  });
}

Connection random_connection(const Domain& d, double amplitude, std::uint64_t seed) {
  if (amplitude < 0) throw std::invalid_argument("amplitude must be >= 0");
  Rng rng(seed);
  return Connection(fill_interior(d, 1, Copy::Base, [&] { return embed_su2(uniform_su2(rng, amplitude)); }));
}

GaugeField random_gauge(const Domain& d, std::uint64_t seed) {
  Rng rng(seed);
  return GaugeField(fill_interior(d, 0, Copy::Base, [&] { return exp_su2(uniform_su2(rng, std::numbers::pi)); }));
}

namespace {

int sphere_period(const Domain& d) {
  int l = 2 * d.size(1);
  for (int i = 2; i <= kDim; ++i) l = std::gcd(l, std::abs(d.size(i) - d.size(1)));
  return l;
}

}  // namespace

int sum_class(const Domain& d, const Address& a) {
  int s = 0;
  if (!d.is_sphere()) {
    for (int v : a.k) s += v;
    return s;
  }
  const Address r = resolve_address(d, a);
  for (int v : r.k) s += v - 1;
  if (r.chart == Chart::Vhat) s += d.size(1);
  return s % sphere_period(d);
}

int sum_class_count(const Domain& d) {
  if (d.is_sphere()) return sphere_period(d);
  int s = 0;
  for (int i = 1; i <= kDim; ++i) s += d.stored_hi(i);
  return s + 1;
}

GaugeField sum_gauge(const Domain& d, const std::function<Matrix2d(int)>& profile) {
  Cochain h(d, 0);
  for (const Address& a : stored_sites(d)) h.at(a.chart, a.k, DirectionSet{}) = profile(sum_class(d, a));
  return GaugeField(std::move(h));
}

GaugeField sum_gauge(const Domain& d, double amplitude, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Matrix2d> table;
  for (int c = 0; c < sum_class_count(d); ++c) table.push_back(exp_su2(uniform_su2(rng, amplitude)));
  return sum_gauge(d, [&](int c) { return table[static_cast<std::size_t>(c)]; });
}

}  // namespace dym
