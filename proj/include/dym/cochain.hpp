#pragma once

// Dense storage of matrix-valued discrete forms (cochains) on the base copy K
// or the tilde copy K~, plus the validated Connection and GaugeField types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dym/algebra2x2.hpp"
#include "dym/complex4.hpp"
#include "dym/random.hpp"

namespace dym {

class ShapeMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when coefficients fail the su(2) / SU(2) predicate of a validated
/// form type. Carries the largest deviation found.
class InvalidCoefficients : public std::invalid_argument {
 public:
  InvalidCoefficients(const std::string& what, double deviation)
      : std::invalid_argument(what), deviation_(deviation) {}
  double deviation() const { return deviation_; }

 private:
  double deviation_;
};

/// A degree-p form: one Matrix2 per stored (chart, k, P) with |P| = p.
///
/// Storage is chart-major, then k lexicographic (k1 slowest), then P in
/// ascending bitmask order. Block forms store the halo 0..N_i+1; sphere forms
/// store 1..N_i on both charts and every read goes through address resolution.
template <typename Scalar>
class BasicCochain {
 public:
  using Coefficient = Matrix2<Scalar>;

  BasicCochain(const Domain& domain, int degree, Copy copy = Copy::Base)
      : domain_(domain),
        degree_(degree),
        copy_(copy),
        values_(domain.stored_site_count() * static_cast<std::size_t>(components_per_site(degree)),
                Coefficient::Zero()) {}

  const Domain& domain() const { return domain_; }
  int degree() const { return degree_; }
  Copy copy() const { return copy_; }
  int components() const { return components_per_site(degree_); }

  std::span<const Coefficient> values() const { return values_; }
  std::span<Coefficient> values() { return values_; }

  /// Storage position of a stored (already resolved) cell.
  std::size_t index(const Address& stored, DirectionSet p) const {
    return domain_.site_index(stored.chart, stored.k) * static_cast<std::size_t>(components()) +
           static_cast<std::size_t>(direction_rank(p));
  }

  /// Component at an arbitrary address, or nullptr when it does not resolve.
  const Coefficient* find(const Address& a, DirectionSet p) const {
    check_degree(p);
    auto r = try_resolve(domain_, a);
    return r ? &values_[index(*r, p)] : nullptr;
  }

  const Coefficient& at(Chart chart, const MultiIndex& k, DirectionSet p) const {
    check_degree(p);
    return values_[index(resolve_address(domain_, {chart, k}), p)];
  }
  Coefficient& at(Chart chart, const MultiIndex& k, DirectionSet p) {
    check_degree(p);
    return values_[index(resolve_address(domain_, {chart, k}), p)];
  }
  const Coefficient& at(const MultiIndex& k, DirectionSet p) const { return at(Chart::V, k, p); }
  Coefficient& at(const MultiIndex& k, DirectionSet p) { return at(Chart::V, k, p); }

  void set(Chart chart, const MultiIndex& k, DirectionSet p, const Coefficient& value) { at(chart, k, p) = value; }

  bool same_shape(const BasicCochain& o) const {
    return domain_ == o.domain_ && degree_ == o.degree_ && copy_ == o.copy_;
  }

  BasicCochain with_copy(Copy c) const {
    BasicCochain out = *this;
    out.copy_ = c;
    return out;
  }

  BasicCochain& operator+=(const BasicCochain& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
  }
  BasicCochain& operator-=(const BasicCochain& o) {
    require_same_shape(*this, o);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
  }
  BasicCochain& operator*=(std::complex<Scalar> s) {
    for (auto& v : values_) v *= s;
    return *this;
  }

  friend BasicCochain operator+(BasicCochain a, const BasicCochain& b) { return a += b; }
  friend BasicCochain operator-(BasicCochain a, const BasicCochain& b) { return a -= b; }
  friend BasicCochain operator-(BasicCochain a) { return a *= std::complex<Scalar>(-1); }
  friend BasicCochain operator*(std::complex<Scalar> s, BasicCochain a) { return a *= s; }
  friend BasicCochain operator*(Scalar s, BasicCochain a) { return a *= std::complex<Scalar>(s); }

  friend bool operator==(const BasicCochain& a, const BasicCochain& b) {
    return a.same_shape(b) && a.values_ == b.values_;
  }

  static void require_same_shape(const BasicCochain& a, const BasicCochain& b) {
    if (!a.same_shape(b)) throw ShapeMismatch("cochains differ in domain, degree or copy");
  }

 private:
  void check_degree(DirectionSet p) const {
    if (p.degree() != degree_) {
      throw std::invalid_argument("direction set " + to_string(p) + " does not match degree " +
                                  std::to_string(degree_));
    }
  }

  Domain domain_;
  int degree_;
  Copy copy_;
  std::vector<Coefficient> values_;
};

using Cochain = BasicCochain<double>;

/// Visits every stored cell as (address, direction set, coefficient).
template <typename Scalar, typename F>
void for_each_stored(BasicCochain<Scalar>& f, F&& fn) {
  std::size_t i = 0;
  for (const Address& a : stored_sites(f.domain())) {
    for (DirectionSet p : direction_sets(f.degree())) fn(a, p, f.values()[i++]);
  }
}

template <typename Scalar, typename F>
void for_each_stored(const BasicCochain<Scalar>& f, F&& fn) {
  std::size_t i = 0;
  for (const Address& a : stored_sites(f.domain())) {
    for (DirectionSet p : direction_sets(f.degree())) fn(a, p, f.values()[i++]);
  }
}

template <typename Scalar>
BasicCochain<Scalar> zeros(const Domain& d, int degree, Copy copy = Copy::Base) {
  return BasicCochain<Scalar>(d, degree, copy);
}

template <typename Scalar>
BasicCochain<Scalar> add(const BasicCochain<Scalar>& f, const BasicCochain<Scalar>& g) {
  return f + g;
}

template <typename Scalar>
BasicCochain<Scalar> scale(const BasicCochain<Scalar>& f, std::complex<Scalar> s) {
  return s * f;
}

template <typename Scalar, typename Fn>
BasicCochain<Scalar> map_coeffs(const BasicCochain<Scalar>& f, Fn&& fn) {
  BasicCochain<Scalar> out = f;
  for (auto& v : out.values()) v = fn(v);
  return out;
}

template <typename Scalar>
BasicCochain<Scalar> conj_transpose_form(const BasicCochain<Scalar>& f) {
  return map_coeffs(f, [](const Matrix2<Scalar>& m) -> Matrix2<Scalar> { return m.adjoint(); });
}

/// Coefficientwise matrix inverse (h^-1 for a 0-form h).
template <typename Scalar>
BasicCochain<Scalar> inverse_form(const BasicCochain<Scalar>& f) {
  return map_coeffs(f, [](const Matrix2<Scalar>& m) -> Matrix2<Scalar> { return m.inverse(); });
}

/// Block halo policy: every halo cell takes the value of the nearest interior
/// cell (index clamped to 1..N_i). No-op on the sphere.
template <typename Scalar>
void fill_halo_clamped(BasicCochain<Scalar>& f) {
  const Domain& d = f.domain();
  if (d.is_sphere()) return;
  for (const Address& a : stored_sites(d)) {
    MultiIndex src = a.k;
    bool halo = false;
    for (int i = 1; i <= kDim; ++i) {
      const int c = std::clamp(a.k[i - 1], 1, d.size(i));
      halo |= c != a.k[i - 1];
      src[i - 1] = c;
    }
    if (!halo) continue;
    for (DirectionSet p : direction_sets(f.degree())) f.at(a.chart, a.k, p) = f.at(a.chart, src, p);
  }
}

/// Largest Frobenius norm of a coefficient difference over interior cells with
/// stencil_safe(k, depth).
template <typename Scalar>
Scalar max_difference(const BasicCochain<Scalar>& f, const BasicCochain<Scalar>& g, int depth = 0) {
  BasicCochain<Scalar>::require_same_shape(f, g);
  Scalar m = 0;
  for (const Address& a : interior_sites(f.domain())) {
    if (!stencil_safe(f.domain(), a.k, depth)) continue;
    for (DirectionSet p : direction_sets(f.degree())) m = std::max(m, (f.at(a.chart, a.k, p) - g.at(a.chart, a.k, p)).norm());
  }
  return m;
}

/// Largest coefficient Frobenius norm over interior cells.
template <typename Scalar>
Scalar max_norm(const BasicCochain<Scalar>& f, int depth = 0) {
  return max_difference(f, zeros<Scalar>(f.domain(), f.degree(), f.copy()), depth);
}

template <typename Scalar>
Scalar max_su2_algebra_deviation(const BasicCochain<Scalar>& f) {
  Scalar m = 0;
  for (const auto& v : f.values()) m = std::max(m, su2_algebra_deviation(v));
  return m;
}

template <typename Scalar>
Scalar max_su2_group_deviation(const BasicCochain<Scalar>& f) {
  Scalar m = 0;
  for (const auto& v : f.values()) m = std::max(m, su2_group_deviation(v));
  return m;
}

/// su(2)-valued 1-form: the discrete connection.
template <typename Scalar>
class BasicConnection {
 public:
  explicit BasicConnection(BasicCochain<Scalar> form) : form_(std::move(form)) {
    if (form_.degree() != 1) throw ShapeMismatch("a connection is a 1-form");
    const Scalar dev = max_su2_algebra_deviation(form_);
    if (!(dev <= Scalar(kAlgebraTolerance))) {
      std::ostringstream os;
      os << "connection coefficients leave su(2): max deviation " << dev;
      throw InvalidCoefficients(os.str(), static_cast<double>(dev));
    }
  }

  static BasicConnection zero(const Domain& d) { return BasicConnection(BasicCochain<Scalar>(d, 1)); }

  const BasicCochain<Scalar>& form() const { return form_; }
  const Domain& domain() const { return form_.domain(); }

 private:
  BasicCochain<Scalar> form_;
};

/// SU(2)-valued 0-form: the discrete gauge transformation h.
template <typename Scalar>
class BasicGaugeField {
 public:
  explicit BasicGaugeField(BasicCochain<Scalar> form) : form_(std::move(form)) {
    if (form_.degree() != 0) throw ShapeMismatch("a gauge field is a 0-form");
    const Scalar dev = max_su2_group_deviation(form_);
    if (!(dev <= Scalar(kAlgebraTolerance))) {
      std::ostringstream os;
      os << "gauge coefficients leave SU(2): max deviation " << dev;
      throw InvalidCoefficients(os.str(), static_cast<double>(dev));
    }
  }

  static BasicGaugeField identity(const Domain& d) {
    BasicCochain<Scalar> f(d, 0);
    for (auto& v : f.values()) v.setIdentity();
    return BasicGaugeField(std::move(f));
  }

  const BasicCochain<Scalar>& form() const { return form_; }
  const Domain& domain() const { return form_.domain(); }
  BasicGaugeField inverse() const { return BasicGaugeField(inverse_form(form_)); }

 private:
  BasicCochain<Scalar> form_;
};

using Connection = BasicConnection<double>;
using GaugeField = BasicGaugeField<double>;

/// Random gl(2,C) form: real and imaginary parts of every entry uniform in
/// [-amplitude, amplitude]. Block halo filled by clamped copy.
Cochain random_form(const Domain& d, int degree, double amplitude, std::uint64_t seed, Copy copy = Copy::Base);

/// Connection with Su2Vector coordinates uniform in [-amplitude, amplitude].
Connection random_connection(const Domain& d, double amplitude, std::uint64_t seed);

/// Gauge field h_k = exp_su2(v_k), v_k uniform in [-pi, pi]^3.
GaugeField random_gauge(const Domain& d, std::uint64_t seed);

/// Class of a stored site under which gauges satisfying
/// h(tau_12 k) = h(tau_34 k), h(tau_13 k) = h(tau_24 k), h(tau_14 k) = h(tau_23 k)
/// may vary. Block: k1+k2+k3+k4. Sphere: (sum(k_i - 1) + chart * N_1) mod L with
/// L = gcd(2 N_1, N_i - N_1), the largest period compatible with the gluing.
int sum_class(const Domain& d, const Address& a);
int sum_class_count(const Domain& d);

/// Gauge field whose coefficient depends only on sum_class.
GaugeField sum_gauge(const Domain& d, const std::function<Matrix2d(int)>& profile);
/// sum_gauge with one exp_su2 draw (coordinates uniform in [-amplitude,
/// amplitude]) per class.
GaugeField sum_gauge(const Domain& d, double amplitude, std::uint64_t seed);

}  // namespace dym
