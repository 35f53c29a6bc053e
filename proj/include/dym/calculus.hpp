#pragma once

// Discrete exterior calculus on the double complex: coboundary, cup product,
// star, the copy swap itilde, codifferential, inner product and the boundary
// term of the discrete Green formula.
//
// On the block topology every operator fills an output cell with zero when
// its stencil leaves the stored halo. Such cells only occur where
// stencil_safe(k, depth) is false for the composed depth, and identities are
// asserted on stencil-safe cells only.

#include <complex>
#include <stdexcept>

#include "dym/cochain.hpp"
#include "dym/complex4.hpp"

namespace dym {

/// (d f)^R_k = sum_{i in R} (-1)^{|R n {1..i-1}|} (f^{R\i}_{tau_i k} - f^{R\i}_k).
template <typename Scalar>
BasicCochain<Scalar> coboundary(const BasicCochain<Scalar>& f) {
  using M = Matrix2<Scalar>;
  if (f.degree() >= kDim) throw std::invalid_argument("coboundary: no forms of degree 5 (input degree 4)");
  BasicCochain<Scalar> out(f.domain(), f.degree() + 1, f.copy());
  for_each_stored(out, [&](const Address& a, DirectionSet r, M& v) {
    M acc = M::Zero();
    for (int i = 1; i <= kDim; ++i) {
      if (!r.contains(i)) continue;
      const DirectionSet face = r.without(i);
      const M* far = f.find({a.chart, shift(a.k, i)}, face);
      const M* near = f.find(a, face);
      if (far == nullptr || near == nullptr) {
        acc.setZero();
        break;
      }
      if (r.count_below(i) % 2 == 0) {
        acc += *far - *near;
      } else {
        acc -= *far - *near;
      }
    }
    v = acc;
  });
  return out;
}

/// (f u g)^R_k = sum_{P u Q = R, |P| = p} cup_sign(P, Q) f^P_k g^Q_{tau_P k}.
template <typename Scalar>
BasicCochain<Scalar> cup(const BasicCochain<Scalar>& f, const BasicCochain<Scalar>& g) {
  using M = Matrix2<Scalar>;
  if (!(f.domain() == g.domain())) throw ShapeMismatch("cup: forms on different domains");
  if (f.copy() != g.copy()) throw ShapeMismatch("cup: forms on different copies");
  if (f.degree() + g.degree() > kDim) throw std::invalid_argument("cup: total degree exceeds 4");
  BasicCochain<Scalar> out(f.domain(), f.degree() + g.degree(), f.copy());
  for_each_stored(out, [&](const Address& a, DirectionSet r, M& v) {
    M acc = M::Zero();
    for (DirectionSet p : direction_sets(f.degree())) {
      if ((p.mask() & ~r.mask()) != 0) continue;
      const DirectionSet q(static_cast<std::uint8_t>(r.mask() & ~p.mask()));
      const M* fp = f.find(a, p);
      const M* gq = g.find({a.chart, shift(a.k, p)}, q);
      if (fp == nullptr || gq == nullptr) {
        acc.setZero();
        break;
      }
      if (cup_sign(p, q) > 0) {
        acc.noalias() += (*fp) * (*gq);
      } else {
        acc.noalias() -= (*fp) * (*gq);
      }
    }
    v = acc;
  });
  return out;
}

/// (*f)^{P^c}_k = perm_sign(P) f^P_k, on the other copy.
template <typename Scalar>
BasicCochain<Scalar> star(const BasicCochain<Scalar>& f) {
  using M = Matrix2<Scalar>;
  BasicCochain<Scalar> out(f.domain(), kDim - f.degree(), toggled(f.copy()));
  for_each_stored(f, [&](const Address& a, DirectionSet p, const M& v) {
    out.at(a.chart, a.k, p.complement()) = perm_sign(p) > 0 ? M(v) : M(-v);
  });
  return out;
}

/// Same components on the other copy.
template <typename Scalar>
BasicCochain<Scalar> itilde(const BasicCochain<Scalar>& f) {
  return f.with_copy(toggled(f.copy()));
}

/// itilde(star(f)): degree 4 - p on the same copy as f.
template <typename Scalar>
BasicCochain<Scalar> dual(const BasicCochain<Scalar>& f) {
  return itilde(star(f));
}

/// *^-1 = (-1)^{p(4-p)} * on a p-form.
template <typename Scalar>
BasicCochain<Scalar> inverse_star(const BasicCochain<Scalar>& f) {
  const int p = f.degree();
  BasicCochain<Scalar> s = star(f);
  if ((p * (kDim - p)) % 2 != 0) s *= std::complex<Scalar>(-1);
  return s;
}

/// delta f = (-1)^p *^-1 d * f for a p-form, p >= 1.
template <typename Scalar>
BasicCochain<Scalar> codifferential(const BasicCochain<Scalar>& f) {
  if (f.degree() < 1) throw std::invalid_argument("codifferential: degree must be >= 1");
  BasicCochain<Scalar> out = inverse_star(coboundary(star(f)));
  if (f.degree() % 2 != 0) out *= std::complex<Scalar>(-1);
  return out;
}

/// tr sum_k sum_P f^P_k (g^P_k)^dagger over interior sites (1..N_i, every chart).
template <typename Scalar>
std::complex<Scalar> inner_product(const BasicCochain<Scalar>& f, const BasicCochain<Scalar>& g) {
  BasicCochain<Scalar>::require_same_shape(f, g);
  std::complex<Scalar> acc = 0;
  for (const Address& a : interior_sites(f.domain())) {
    for (DirectionSet p : direction_sets(f.degree())) {
      acc += (f.at(a.chart, a.k, p) * g.at(a.chart, a.k, p).adjoint()).trace();
    }
  }
  return acc;
}

template <typename Scalar>
Scalar norm_sq(const BasicCochain<Scalar>& f) {
  return inner_product(f, f).real();
}

/// norm_sq restricted to interior cells with stencil_safe(k, depth).
template <typename Scalar>
Scalar interior_norm_sq(const BasicCochain<Scalar>& f, int depth) {
  Scalar acc = 0;
  for (const Address& a : interior_sites(f.domain())) {
    if (!stencil_safe(f.domain(), a.k, depth)) continue;
    for (DirectionSet p : direction_sets(f.degree())) acc += f.at(a.chart, a.k, p).squaredNorm();
  }
  return acc;
}

/// <c, f>: sum of coeff * f(cell) over the cells of c that are basis cells of
/// f's copy and degree; other cells pair to zero.
template <typename Scalar>
Matrix2<Scalar> pairing(const Chain& c, const BasicCochain<Scalar>& f) {
  Matrix2<Scalar> acc = Matrix2<Scalar>::Zero();
  for (const auto& [cell, coeff] : c.terms()) {
    if (cell.copy != f.copy() || cell.degree() != f.degree()) continue;
    acc += static_cast<Scalar>(coeff) * f.at(cell.chart, cell.k, cell.dirs);
  }
  return acc;
}

/// tr <d V, phi (x) *omega^dagger> for a (p-1)-form phi and a p-form omega:
///   sum_{s in V_p} <ds, phi><*s, *omega^+> + (-1)^{p-1} sum_{s in V_{p-1}} <s, phi><d*s, *omega^+>.
/// Equals (d phi, omega) - (phi, delta omega).
template <typename Scalar>
std::complex<Scalar> green_boundary_term(const BasicCochain<Scalar>& phi, const BasicCochain<Scalar>& omega) {
  using M = Matrix2<Scalar>;
  const int p = omega.degree();
  if (p < 1 || phi.degree() != p - 1) throw std::invalid_argument("green_boundary_term: degrees must be p-1 and p");
  if (!(phi.domain() == omega.domain()) || phi.copy() != omega.copy()) {
    throw ShapeMismatch("green_boundary_term: forms on different domains or copies");
  }
  const Domain& d = phi.domain();
  const BasicCochain<Scalar> x = star(conj_transpose_form(omega));

  M top = M::Zero();
  for (const VpEntry& e : build_Vp(d, p, phi.copy())) {
    const M lhs = pairing(boundary_cell(d, e.cell), phi);
    top.noalias() += lhs * (static_cast<Scalar>(e.sign) * x.at(e.dual.chart, e.dual.k, e.dual.dirs));
  }
  M low = M::Zero();
  for (const VpEntry& e : build_Vp(d, p - 1, phi.copy())) {
    const M rhs = pairing(boundary_cell(d, e.dual), x);
    low.noalias() += phi.at(e.cell.chart, e.cell.k, e.cell.dirs) * (static_cast<Scalar>(e.sign) * rhs);
  }
  const Scalar sign = (p - 1) % 2 == 0 ? Scalar(1) : Scalar(-1);
  return (top + sign * low).trace();
}

}  // namespace dym
