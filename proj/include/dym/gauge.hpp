#pragma once

// Gauge theory on the double complex: curvature, covariant differential,
// gauge transformations, the Bianchi and Yang-Mills residuals, the
// h(tau_12 k) = h(tau_34 k) gauge group and the self-dual decomposition.

#include <array>
#include <cmath>

#include "dym/calculus.hpp"
#include "dym/cochain.hpp"

namespace dym {

/// Stencil depths (per-axis forward reach from k) of the composite operators
/// below; block residuals are accumulated over stencil_safe(k, depth) cells.
inline constexpr int kBianchiDepth = 1;
inline constexpr int kYangMillsDepth = 2;
inline constexpr int kLemmaDepth = 1;

/// F = dA + A u A. Coefficients are general gl(2,C).
template <typename Scalar>
BasicCochain<Scalar> curvature(const BasicCochain<Scalar>& a) {
  if (a.degree() != 1) throw std::invalid_argument("curvature: connection must be a 1-form");
  return coboundary(a) + cup(a, a);
}

template <typename Scalar>
BasicCochain<Scalar> curvature(const BasicConnection<Scalar>& a) {
  return curvature(a.form());
}

/// d_A W = dW + A u W + (-1)^{r+1} W u A for an r-form W.
template <typename Scalar>
BasicCochain<Scalar> covariant_d(const BasicCochain<Scalar>& a, const BasicCochain<Scalar>& w) {
  BasicCochain<Scalar> out = coboundary(w) + cup(a, w);
  if ((w.degree() + 1) % 2 == 0) {
    out += cup(w, a);
  } else {
    out -= cup(w, a);
  }
  return out;
}

/// A' = h u d(h^-1) + h u A u h^-1 for an invertible 0-form h. On the lattice
/// A' is in general not su(2)-valued; see max_su2_algebra_deviation.
template <typename Scalar>
BasicCochain<Scalar> gauge_transform(const BasicCochain<Scalar>& a, const BasicCochain<Scalar>& h) {
  if (a.degree() != 1 || h.degree() != 0) throw std::invalid_argument("gauge_transform: expects a 1-form and a 0-form");
  const BasicCochain<Scalar> h_inv = inverse_form(h);
  return cup(h, coboundary(h_inv)) + cup(cup(h, a), h_inv);
}

/// Validated variant: throws InvalidCoefficients (with the max deviation) when
/// the transformed form leaves su(2).
template <typename Scalar>
BasicConnection<Scalar> gauge_transform(const BasicConnection<Scalar>& a, const BasicGaugeField<Scalar>& h) {
  return BasicConnection<Scalar>(gauge_transform(a.form(), h.form()));
}

/// h u F u h^-1 for a 0-form h.
template <typename Scalar>
BasicCochain<Scalar> conjugate(const BasicCochain<Scalar>& h, const BasicCochain<Scalar>& f) {
  return cup(cup(h, f), inverse_form(h));
}

/// dF + A u F - F u A, i.e. the covariant differential of F. Vanishes
/// identically for F = curvature(A).
template <typename Scalar>
BasicCochain<Scalar> bianchi_defect(const BasicCochain<Scalar>& a) {
  return covariant_d(a, curvature(a));
}

template <typename Scalar>
Scalar bianchi_residual(const BasicCochain<Scalar>& a) {
  return std::sqrt(interior_norm_sq(bianchi_defect(a), kBianchiDepth));
}

/// d_A (itilde * F) = d(itilde*F) + A u itilde*F - itilde*F u A.
template <typename Scalar>
BasicCochain<Scalar> ym_residual(const BasicCochain<Scalar>& a) {
  return covariant_d(a, dual(curvature(a)));
}

template <typename Scalar>
Scalar ym_residual_norm(const BasicCochain<Scalar>& a) {
  return std::sqrt(interior_norm_sq(ym_residual(a), kYangMillsDepth));
}

/// Largest coefficient mismatch among h(tau_12 k) = h(tau_34 k),
/// h(tau_13 k) = h(tau_24 k), h(tau_14 k) = h(tau_23 k) over every stored k
/// whose shifted addresses resolve.
template <typename Scalar>
Scalar max_417_violation(const BasicCochain<Scalar>& h) {
  if (h.degree() != 0) throw std::invalid_argument("condition check expects a 0-form");
  static constexpr std::array<std::array<DirectionSet, 2>, 3> pairs{{
      {DirectionSet{1, 2}, DirectionSet{3, 4}},
      {DirectionSet{1, 3}, DirectionSet{2, 4}},
      {DirectionSet{1, 4}, DirectionSet{2, 3}},
  }};
  Scalar worst = 0;
  for (const Address& a : stored_sites(h.domain())) {
    for (const auto& [lhs, rhs] : pairs) {
      const auto* x = h.find({a.chart, shift(a.k, lhs)}, DirectionSet{});
      const auto* y = h.find({a.chart, shift(a.k, rhs)}, DirectionSet{});
      if (x == nullptr || y == nullptr) continue;
      worst = std::max(worst, max_abs<Scalar>(*x - *y));
    }
  }
  return worst;
}

template <typename Scalar>
bool check_417(const BasicCochain<Scalar>& h, Scalar tol = Scalar(1e-12)) {
  return max_417_violation(h) <= tol;
}

/// Defect of itilde*(h u f) = h u itilde*f (holds for every 0-form h).
template <typename Scalar>
Scalar lemma44_defect(const BasicCochain<Scalar>& h, const BasicCochain<Scalar>& f) {
  return max_difference(dual(cup(h, f)), cup(h, dual(f)), kLemmaDepth);
}

/// Defect of itilde*(f u h) = itilde*f u h for a 2-form f (holds iff h
/// satisfies the tau-pair conditions of max_417_violation).
template <typename Scalar>
Scalar lemma45_defect(const BasicCochain<Scalar>& h, const BasicCochain<Scalar>& f) {
  if (f.degree() != 2) throw std::invalid_argument("lemma45_defect: f must be a 2-form");
  return max_difference(dual(cup(f, h)), cup(dual(f), h), kLemmaDepth);
}

template <typename Scalar>
BasicCochain<Scalar> self_dual_part(const BasicCochain<Scalar>& f) {
  return Scalar(0.5) * (f + dual(f));
}

template <typename Scalar>
BasicCochain<Scalar> anti_self_dual_part(const BasicCochain<Scalar>& f) {
  return Scalar(0.5) * (f - dual(f));
}

/// ||F - itilde*F||.
template <typename Scalar>
Scalar sd_residual(const BasicCochain<Scalar>& f) {
  return std::sqrt(norm_sq(f - dual(f)));
}

/// ||F + itilde*F||.
template <typename Scalar>
Scalar anti_sd_residual(const BasicCochain<Scalar>& f) {
  return std::sqrt(norm_sq(f + dual(f)));
}

/// Norms of F12 - F34, F13 + F24, F14 - F23 (anti_self_dual: F12 + F34,
/// F13 - F24, F14 + F23) summed over interior sites.
template <typename Scalar>
std::array<Scalar, 3> self_dual_defects(const BasicCochain<Scalar>& f, bool anti_self_dual = false) {
  if (f.degree() != 2) throw std::invalid_argument("self_dual_defects: expects a 2-form");
  const Scalar s = anti_self_dual ? Scalar(-1) : Scalar(1);
  std::array<Scalar, 3> acc{0, 0, 0};
  for (const Address& a : interior_sites(f.domain())) {
    auto c = [&](DirectionSet p) { return f.at(a.chart, a.k, p); };
    acc[0] += (c({1, 2}) - s * c({3, 4})).squaredNorm();
    acc[1] += (c({1, 3}) + s * c({2, 4})).squaredNorm();
    acc[2] += (c({1, 4}) - s * c({2, 3})).squaredNorm();
  }
  for (auto& v : acc) v = std::sqrt(v);
  return acc;
}

}  // namespace dym
