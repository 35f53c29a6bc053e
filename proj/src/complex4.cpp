#include "dym/complex4.hpp"

#include <algorithm>
#include <sstream>

namespace dym {

std::string to_string(Topology t) { return t == Topology::Sphere ? "sphere" : "block"; }
std::string to_string(Copy c) { return c == Copy::Tilde ? "tilde" : "base"; }

std::string to_string(DirectionSet p) {
  std::string s = "{";
  for (int a = 1; a <= kDim; ++a) {
    if (p.contains(a)) s += std::to_string(a);
  }
  return s + "}";
}

std::string to_string(const Cell& c) {
  std::ostringstream os;
  os << (c.copy == Copy::Tilde ? "~" : "") << (c.chart == Chart::Vhat ? "^" : "") << "s("
     << c.k[0] << "," << c.k[1] << "," << c.k[2] << "," << c.k[3] << ";" << to_string(c.dirs) << ")";
  return os.str();
}

namespace {

std::array<std::vector<DirectionSet>, kDim + 1> make_direction_tables() {
  std::array<std::vector<DirectionSet>, kDim + 1> t;
  for (unsigned m = 0; m < 16; ++m) {
    DirectionSet p(static_cast<std::uint8_t>(m));
    t[p.degree()].push_back(p);
  }
  return t;
}

const std::array<std::vector<DirectionSet>, kDim + 1>& direction_tables() {
  static const auto tables = make_direction_tables();
  return tables;
}

}  // namespace

const std::vector<DirectionSet>& direction_sets(int degree) {
  if (degree < 0 || degree > kDim) throw std::invalid_argument("degree out of range: " + std::to_string(degree));
  return direction_tables()[degree];
}

int direction_rank(DirectionSet p) {
  static const auto ranks = [] {
    std::array<int, 16> r{};
    for (int deg = 0; deg <= kDim; ++deg) {
      const auto& sets = direction_tables()[deg];
      for (std::size_t i = 0; i < sets.size(); ++i) r[sets[i].mask()] = static_cast<int>(i);
    }
    return r;
  }();
  return ranks[p.mask()];
}

int components_per_site(int degree) { return static_cast<int>(direction_sets(degree).size()); }

MultiIndex shift(MultiIndex k, int axis, int direction) {
  k[axis - 1] += direction;
  return k;
}

MultiIndex shift(MultiIndex k, DirectionSet p) {
  for (int a = 1; a <= kDim; ++a) {
    if (p.contains(a)) ++k[a - 1];
  }
  return k;
}

Domain::Domain(std::array<int, kDim> sizes, Topology topology) : sizes_(sizes), topology_(topology) {
  for (int n : sizes_) {
    if (n < 2) throw std::invalid_argument("domain sizes must be >= 2 on every axis");
  }
}

std::size_t Domain::stored_site_count() const {
  std::size_t n = static_cast<std::size_t>(chart_count());
  for (int a = 1; a <= kDim; ++a) n *= static_cast<std::size_t>(stored_extent(a));
  return n;
}

std::size_t Domain::site_index(Chart chart, const MultiIndex& k) const {
  std::size_t idx = static_cast<std::size_t>(chart);
  for (int a = 1; a <= kDim; ++a) {
    idx = idx * static_cast<std::size_t>(stored_extent(a)) + static_cast<std::size_t>(k[a - 1] - stored_lo());
  }
  return idx;
}

std::optional<Address> try_resolve(const Domain& d, const Address& a) {
  if (!d.is_sphere()) {
    if (a.chart != Chart::V) return std::nullopt;
    for (int i = 1; i <= kDim; ++i) {
      if (a.k[i - 1] < 0 || a.k[i - 1] > d.size(i) + 1) return std::nullopt;
    }
    return a;
  }
  Address r = a;
  for (int i = 1; i <= kDim; ++i) {
    int& ki = r.k[i - 1];
    if (ki == 0) {
      ki = d.size(i);
      r.chart = toggled(r.chart);
    } else if (ki == d.size(i) + 1) {
      ki = 1;
      r.chart = toggled(r.chart);
    } else if (ki < 0 || ki > d.size(i) + 1) {
      return std::nullopt;
    }
  }
  return r;
}

Address resolve_address(const Domain& d, const Address& a) {
  auto r = try_resolve(d, a);
  if (!r) {
    std::ostringstream os;
    os << "address (" << (a.chart == Chart::Vhat ? "Vhat" : "V") << ", " << a.k[0] << "," << a.k[1] << ","
       << a.k[2] << "," << a.k[3] << ") outside the " << to_string(d.topology()) << " domain";
    throw OutOfDomain(os.str());
  }
  return *r;
}

namespace {

template <typename F>
void for_each_index(const Domain& d, int lo, const std::array<int, kDim>& hi, F&& f) {
  for (int c = 0; c < d.chart_count(); ++c) {
    MultiIndex k;
    for (k[0] = lo; k[0] <= hi[0]; ++k[0])
      for (k[1] = lo; k[1] <= hi[1]; ++k[1])
        for (k[2] = lo; k[2] <= hi[2]; ++k[2])
          for (k[3] = lo; k[3] <= hi[3]; ++k[3]) f(Address{static_cast<Chart>(c), k});
  }
}

}  // namespace

std::vector<Address> stored_sites(const Domain& d) {
  std::vector<Address> out;
  out.reserve(d.stored_site_count());
  std::array<int, kDim> hi;
  for (int a = 1; a <= kDim; ++a) hi[a - 1] = d.stored_hi(a);
  for_each_index(d, d.stored_lo(), hi, [&](const Address& a) { out.push_back(a); });
  return out;
}

std::vector<Address> interior_sites(const Domain& d) {
  std::vector<Address> out;
  for_each_index(d, 1, d.sizes(), [&](const Address& a) { out.push_back(a); });
  return out;
}

bool stencil_safe(const Domain& d, const MultiIndex& k, int depth) {
  for (int a = 1; a <= kDim; ++a) {
    if (k[a - 1] < 1 || k[a - 1] > d.size(a)) return false;
    if (!d.is_sphere() && k[a - 1] + depth > d.stored_hi(a)) return false;
  }
  return true;
}

int perm_sign(DirectionSet p) {
  // Inversions of (P ascending, P^c ascending): pairs i in P, j in P^c, j < i.
  return cup_sign(p, p.complement());
}

int cup_sign(DirectionSet p, DirectionSet q) {
  int inversions = 0;
  for (int i = 1; i <= kDim; ++i) {
    if (p.contains(i)) inversions += q.count_below(i);
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::pair<int, Cell> star_cell(const Cell& c) {
  Cell s = c;
  s.dirs = c.dirs.complement();
  s.copy = toggled(c.copy);
  return {perm_sign(c.dirs), s};
}

void Chain::add(const Cell& c, long coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(c, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

void Chain::add(const Chain& other, long factor) {
  for (const auto& [cell, coeff] : other.terms_) add(cell, coeff * factor);
}

long Chain::coefficient(const Cell& c) const {
  auto it = terms_.find(c);
  return it == terms_.end() ? 0 : it->second;
}

Chain boundary_cell(const Domain& d, const Cell& c) {
  Chain out;
  for (int i = 1; i <= kDim; ++i) {
    if (!c.dirs.contains(i)) continue;
    const long sign = c.dirs.count_below(i) % 2 == 0 ? 1 : -1;
    const DirectionSet face = c.dirs.without(i);
    const Address far = resolve_address(d, {c.chart, shift(c.k, i)});
    const Address near = resolve_address(d, {c.chart, c.k});
    out.add(Cell{far.chart, far.k, face, c.copy}, sign);
    out.add(Cell{near.chart, near.k, face, c.copy}, -sign);
  }
  return out;
}

Chain boundary(const Domain& d, const Chain& c) {
  Chain out;
  for (const auto& [cell, coeff] : c.terms()) out.add(boundary_cell(d, cell), coeff);
  return out;
}

std::vector<VpEntry> build_Vp(const Domain& d, int p, Copy copy) {
  std::vector<VpEntry> out;
  for (const Address& a : interior_sites(d)) {
    for (DirectionSet dirs : direction_sets(p)) {
      const Cell cell{a.chart, a.k, dirs, copy};
      auto [sign, dual] = star_cell(cell);
      out.push_back({cell, dual, sign});
    }
  }
  return out;
}

}  // namespace dym
