#include <gtest/gtest.h>

#include "dym/calculus.hpp"
#include "dym/gauge.hpp"
#include "oracle.hpp"

using namespace dym;

namespace {

const Domain kSphere({2, 2, 2, 2}, Topology::Sphere);
const Domain kBlock({3, 3, 3, 3}, Topology::Block);
const Domain kOddSphere({2, 3, 2, 3}, Topology::Sphere);

double max_diff_at(const Cochain& f, const Cochain& g, int depth) { return max_difference(f, g, depth); }

Cochain basis_form(const Domain& d, int degree, Copy copy, const MultiIndex& k, DirectionSet p) {
  Cochain f(d, degree, copy);
  f.at(k, p) = Matrix2d::Identity();
  return f;
}

}  // namespace

TEST(Coboundary, MatchesPairingWithBoundary) {
  for (const Domain& d : {kSphere, kOddSphere}) {
    for (int p = 0; p <= 3; ++p) {
      const Cochain f = random_form(d, p, 1.0, 10 + static_cast<std::uint64_t>(p));
      EXPECT_LE(max_diff_at(coboundary(f), oracle::coboundary(f), 0), 1e-14) << p;
    }
  }
  for (int p = 0; p <= 3; ++p) {
    const Cochain f = random_form(kBlock, p, 1.0, 20 + static_cast<std::uint64_t>(p));
    const Cochain d = coboundary(f);
    for (const Address& a : interior_sites(kBlock))
      for (DirectionSet r : direction_sets(p + 1))
        EXPECT_LE((d.at(a.k, r) - oracle::coboundary_at(f, Chart::V, a.k, r)).norm(), 1e-15);
  }
}

TEST(Coboundary, DegreeZeroIsForwardDifference) {
  const Cochain h = random_form(kSphere, 0, 1.0, 3);
  const Cochain dh = coboundary(h);
  for (const Address& a : interior_sites(kSphere))
    for (int i = 1; i <= 4; ++i)
      EXPECT_EQ(dh.at(a.chart, a.k, {i}), Matrix2d(h.at(a.chart, shift(a.k, i), {}) - h.at(a.chart, a.k, {})));
}

TEST(Coboundary, DegreeOneIsCurl) {
  const Cochain f = random_form(kSphere, 1, 1.0, 4);
  const Cochain df = coboundary(f);
  for (const Address& a : interior_sites(kSphere))
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        const Matrix2d expected = (f.at(a.chart, shift(a.k, i), {j}) - f.at(a.chart, a.k, {j})) -
                                  (f.at(a.chart, shift(a.k, j), {i}) - f.at(a.chart, a.k, {i}));
        EXPECT_LE((df.at(a.chart, a.k, {i, j}) - expected).norm(), 1e-15);
      }
}

TEST(Coboundary, TopDegreeThrows) { EXPECT_THROW(coboundary(Cochain(kSphere, 4)), std::invalid_argument); }

TEST(Coboundary, WorkedExamplePairing) {
  // <d eps_k^24, phi> = phi^4_{k+e2} - phi^4_k - phi^2_{k+e4} + phi^2_k = (d phi)^24_k
  const Cochain phi = random_form(kSphere, 1, 1.0, 5);
  const MultiIndex k{1, 2, 1, 1};
  const Matrix2d lhs = pairing(boundary_cell(kSphere, {Chart::V, k, {2, 4}, Copy::Base}), phi);
  const Matrix2d expanded = phi.at(shift(k, 2), {4}) - phi.at(k, {4}) - phi.at(shift(k, 4), {2}) + phi.at(k, {2});
  EXPECT_LE((lhs - expanded).norm(), 1e-15);
  EXPECT_LE((lhs - coboundary(phi).at(k, {2, 4})).norm(), 1e-15);
}

TEST(Coboundary, SquaresToZero) {
  for (const Domain& d : {kSphere, kOddSphere}) {
    for (int p = 0; p <= 2; ++p) {
      const Cochain f = random_form(d, p, 1.0, 30 + static_cast<std::uint64_t>(p));
      EXPECT_LE(max_norm(coboundary(coboundary(f))), 1e-14);
    }
  }
  const Cochain f = random_form(kBlock, 1, 1.0, 33);
  EXPECT_LE(max_norm(coboundary(coboundary(f)), 2), 1e-14);
}

TEST(Coboundary, BlockEscapeFillsZero) {
  Cochain f(kBlock, 0);
  for (auto& v : f.values()) v = Matrix2d::Identity();
  f.at({4, 1, 1, 1}, {}) *= 3.0;
  const Cochain df = coboundary(f);
  EXPECT_EQ(df.at({3, 1, 1, 1}, {1}), Matrix2d(2.0 * Matrix2d::Identity()));
  EXPECT_EQ(df.at({4, 1, 1, 1}, {1}), Matrix2d::Zero());
}

TEST(Cup, MatchesRecursiveDefinition) {
  for (const Domain& d : {kSphere, kOddSphere}) {
    for (int p = 0; p <= 4; ++p) {
      for (int q = 0; p + q <= 4; ++q) {
        const Cochain f = random_form(d, p, 1.0, 40 + static_cast<std::uint64_t>(p));
        const Cochain g = random_form(d, q, 1.0, 50 + static_cast<std::uint64_t>(q));
        const Cochain fg = cup(f, g);
        double worst = 0;
        for (const Address& a : interior_sites(d))
          for (DirectionSet r : direction_sets(p + q))
            worst = std::max(worst, (fg.at(a.chart, a.k, r) - oracle::cup_at(f, g, a.chart, a.k, r)).norm());
        EXPECT_LE(worst, 1e-14) << p << " " << q;
      }
    }
  }
}

TEST(Cup, BlockInteriorMatchesRecursiveDefinition) {
  const Cochain f = random_form(kBlock, 1, 1.0, 60);
  const Cochain g = random_form(kBlock, 2, 1.0, 61);
  const Cochain fg = cup(f, g);
  for (const Address& a : interior_sites(kBlock))
    for (DirectionSet r : direction_sets(3))
      EXPECT_LE((fg.at(a.k, r) - oracle::cup_at(f, g, Chart::V, a.k, r)).norm(), 1e-14);
}

TEST(Cup, ZeroFormsMultiplyPointwise) {
  const Cochain h = random_form(kSphere, 0, 1.0, 1);
  const Cochain g = random_form(kSphere, 0, 1.0, 2);
  const Cochain hg = cup(h, g);
  for (const Address& a : stored_sites(kSphere))
    EXPECT_EQ(hg.at(a.chart, a.k, {}), Matrix2d(h.at(a.chart, a.k, {}) * g.at(a.chart, a.k, {})));
}

TEST(Cup, OneFormSquared) {
  const Cochain a = random_connection(kSphere, 1.0, 3).form();
  const Cochain aa = cup(a, a);
  for (const Address& s : interior_sites(kSphere))
    for (int i = 1; i <= 4; ++i)
      for (int j = i + 1; j <= 4; ++j) {
        const Matrix2d expected = a.at(s.chart, s.k, {i}) * a.at(s.chart, shift(s.k, i), {j}) -
                                  a.at(s.chart, s.k, {j}) * a.at(s.chart, shift(s.k, j), {i});
        EXPECT_LE((aa.at(s.chart, s.k, {i, j}) - expected).norm(), 1e-15);
      }
}

TEST(Cup, Preconditions) {
  EXPECT_THROW(cup(Cochain(kSphere, 3), Cochain(kSphere, 2)), std::invalid_argument);
  EXPECT_THROW(cup(Cochain(kSphere, 1), Cochain(kSphere, 1, Copy::Tilde)), ShapeMismatch);
  EXPECT_THROW(cup(Cochain(kSphere, 1), Cochain(kBlock, 1)), ShapeMismatch);
}

TEST(Cup, Associative) {
  const Cochain f = random_form(kSphere, 1, 1.0, 70);
  const Cochain g = random_form(kSphere, 1, 1.0, 71);
  const Cochain h = random_form(kSphere, 2, 1.0, 72);
  const double defect = max_difference(cup(cup(f, g), h), cup(f, cup(g, h)));
  RecordProperty("cup_associativity_defect", std::to_string(defect));
  EXPECT_LE(defect, 1e-13);
}

TEST(Leibniz, AllDegreePairsBothTopologies) {
  for (const Domain& d : {kSphere, kBlock}) {
    for (int p = 0; p <= 3; ++p) {
      for (int q = 0; p + q <= 3; ++q) {
        const Cochain f = random_form(d, p, 1.0, 80 + static_cast<std::uint64_t>(p));
        const Cochain g = random_form(d, q, 1.0, 90 + static_cast<std::uint64_t>(q));
        const Cochain rhs = cup(coboundary(f), g) + (p % 2 == 0 ? 1.0 : -1.0) * cup(f, coboundary(g));
        EXPECT_LE(max_difference(coboundary(cup(f, g)), rhs, 2), 1e-13) << p << " " << q;
      }
    }
  }
}

TEST(Star, BasisActionAndCopies) {
  const MultiIndex k{1, 1, 1, 1};
  const Cochain s1 = star(basis_form(kSphere, 1, Copy::Base, k, {1}));
  EXPECT_EQ(s1.copy(), Copy::Tilde);
  EXPECT_EQ(s1.degree(), 3);
  EXPECT_EQ(s1.at(k, {2, 3, 4}), Matrix2d::Identity());
  const Cochain s2 = star(basis_form(kSphere, 1, Copy::Base, k, {2}));
  EXPECT_EQ(s2.at(k, {1, 3, 4}), Matrix2d(-Matrix2d::Identity()));
  const Cochain s124 = star(basis_form(kSphere, 3, Copy::Tilde, k, {1, 2, 4}));
  EXPECT_EQ(s124.copy(), Copy::Base);
  EXPECT_EQ(s124.at(k, {3}), Matrix2d(-Matrix2d::Identity()));
  const Cochain s13 = star(basis_form(kSphere, 2, Copy::Base, k, {1, 3}));
  EXPECT_EQ(s13.at(k, {2, 4}), Matrix2d(-Matrix2d::Identity()));
}

TEST(Star, StarStarSign) {
  for (const Domain& d : {kSphere, kBlock}) {
    for (int r = 0; r <= 4; ++r) {
      for (Copy c : {Copy::Base, Copy::Tilde}) {
        const Cochain f = random_form(d, r, 1.0, 100 + static_cast<std::uint64_t>(r), c);
        const double sign = (r * (4 - r)) % 2 == 0 ? 1.0 : -1.0;
        EXPECT_EQ(star(star(f)), sign * f);
        EXPECT_EQ(inverse_star(star(f)), f);
      }
    }
  }
}

TEST(Star, MatchesInversionCountOracle) {
  for (int r = 0; r <= 4; ++r) {
    const Cochain f = random_form(kSphere, r, 1.0, 110 + static_cast<std::uint64_t>(r));
    EXPECT_EQ(star(f), oracle::star(f));
  }
}

TEST(Itilde, InvolutionAndCommutation) {
  for (int p = 0; p <= 3; ++p) {
    const Cochain f = random_form(kSphere, p, 1.0, 120 + static_cast<std::uint64_t>(p));
    const Cochain g = random_form(kSphere, 3 - p, 1.0, 130 + static_cast<std::uint64_t>(p));
    EXPECT_EQ(itilde(itilde(f)), f);
    EXPECT_EQ(itilde(f).copy(), Copy::Tilde);
    EXPECT_EQ(itilde(star(f)), star(itilde(f)));
    EXPECT_EQ(itilde(coboundary(f)), coboundary(itilde(f)));
    EXPECT_EQ(itilde(cup(f, g)), cup(itilde(f), itilde(g)));
  }
  const Cochain f = random_form(kSphere, 2, 1.0, 140);
  EXPECT_EQ(dual(f), itilde(star(f)));
  EXPECT_EQ(dual(f).copy(), Copy::Base);
}

TEST(Codifferential, ZeroFormRejected) { EXPECT_THROW(codifferential(Cochain(kSphere, 0)), std::invalid_argument); }

TEST(Codifferential, MatchesComponentOracle) {
  for (int p = 1; p <= 4; ++p) {
    const Cochain f = random_form(kSphere, p, 1.0, 150 + static_cast<std::uint64_t>(p));
    EXPECT_LE(max_difference(codifferential(f), oracle::codifferential(f)), 1e-14) << p;
    EXPECT_EQ(codifferential(f).copy(), Copy::Base);
  }
}

TEST(Codifferential, OneFormIsMinusForwardDivergence) {
  const Cochain w = random_form(kSphere, 1, 1.0, 160);
  const Cochain dw = codifferential(w);
  for (const Address& a : interior_sites(kSphere)) {
    Matrix2d div = Matrix2d::Zero();
    for (int i = 1; i <= 4; ++i) div += w.at(a.chart, shift(a.k, i), {i}) - w.at(a.chart, a.k, {i});
    EXPECT_LE((dw.at(a.chart, a.k, {}) + div).norm(), 1e-14);
  }
}

TEST(Codifferential, LaplacianMatchesBruteForce) {
  const Cochain w = random_form(kSphere, 1, 1.0, 170);
  const Cochain lap = codifferential(coboundary(w)) + coboundary(codifferential(w));
  const Cochain expected = oracle::codifferential(oracle::coboundary(w)) + oracle::coboundary(oracle::codifferential(w));
  EXPECT_LE(max_difference(lap, expected), 1e-13);
}

TEST(InnerProduct, IdentityZeroFormOnBlock) {
  const Domain d({2, 2, 2, 2}, Topology::Block);
  Cochain f(d, 0);
  for (auto& v : f.values()) v.setIdentity();
  EXPECT_EQ(inner_product(f, f), std::complex<double>(32, 0));
  EXPECT_EQ(norm_sq(Cochain(d, 3)), 0.0);
}

TEST(InnerProduct, SphereCountsBothCharts) {
  Cochain f(kSphere, 0);
  for (auto& v : f.values()) v.setIdentity();
  EXPECT_EQ(norm_sq(f), 64.0);
}

TEST(InnerProduct, ShapeMismatch) {
  EXPECT_THROW(inner_product(Cochain(kSphere, 1), Cochain(kSphere, 2)), ShapeMismatch);
  EXPECT_THROW(inner_product(Cochain(kSphere, 1), Cochain(kSphere, 1, Copy::Tilde)), ShapeMismatch);
}

TEST(InnerProduct, SelfDualPartsOrthogonal) {
  const Cochain f = curvature(random_connection(kSphere, 1.0, 5).form());
  EXPECT_LE(std::abs(inner_product(self_dual_part(f), anti_self_dual_part(f))), 1e-12 * norm_sq(f));
}

TEST(Green, IdentityHoldsOnBlock) {
  for (int p = 1; p <= 4; ++p) {
    const Cochain phi = random_form(kBlock, p - 1, 1.0, 180 + static_cast<std::uint64_t>(p));
    const Cochain omega = random_form(kBlock, p, 1.0, 190 + static_cast<std::uint64_t>(p));
    const std::complex<double> expected =
        inner_product(coboundary(phi), omega) - inner_product(phi, codifferential(omega));
    EXPECT_LE(std::abs(green_boundary_term(phi, omega) - expected), 1e-10 * (1 + std::abs(expected))) << p;
  }
}

TEST(Green, IdentityHoldsOnSphere) {
  for (int p = 1; p <= 4; ++p) {
    const Cochain phi = random_form(kSphere, p - 1, 1.0, 200 + static_cast<std::uint64_t>(p));
    const Cochain omega = random_form(kSphere, p, 1.0, 210 + static_cast<std::uint64_t>(p));
    const std::complex<double> expected =
        inner_product(coboundary(phi), omega) - inner_product(phi, codifferential(omega));
    EXPECT_LE(std::abs(green_boundary_term(phi, omega) - expected), 1e-10 * (1 + std::abs(expected))) << p;
  }
}

TEST(Green, ClosedSphereTermDoesNotVanish) {
  // d and the codifferential are both forward-difference operators, so they are
  // not mutually adjoint even without a boundary; the term measures the gap.
  const Cochain phi = random_form(kSphere, 0, 1.0, 220);
  const Cochain omega = random_form(kSphere, 1, 1.0, 221);
  const std::complex<double> term = green_boundary_term(phi, omega);
  RecordProperty("sphere_boundary_term", std::to_string(std::abs(term)));
  EXPECT_GT(std::abs(term), 1e-3);
}

TEST(Green, InteriorSupportOnBlockDoesNotVanish) {
  const Domain d({4, 4, 4, 4}, Topology::Block);
  Cochain phi(d, 0);
  Cochain omega(d, 1);
  phi.at({2, 2, 2, 2}, {}) = Matrix2d::Identity();
  omega.at({2, 2, 2, 2}, {1}) = Matrix2d::Identity();
  omega.at({1, 2, 2, 2}, {1}) = Matrix2d::Identity();
  const std::complex<double> term = green_boundary_term(phi, omega);
  const std::complex<double> expected =
      inner_product(coboundary(phi), omega) - inner_product(phi, codifferential(omega));
  EXPECT_LE(std::abs(term - expected), 1e-14);
  RecordProperty("interior_boundary_term", std::to_string(std::abs(term)));
  EXPECT_GT(std::abs(term), 0.5);
}

TEST(Green, Preconditions) {
  EXPECT_THROW(green_boundary_term(Cochain(kSphere, 1), Cochain(kSphere, 1)), std::invalid_argument);
  EXPECT_THROW(green_boundary_term(Cochain(kSphere, 0), Cochain(kSphere, 1, Copy::Tilde)), ShapeMismatch);
}

TEST(Pairing, IgnoresOtherCopyAndDegree) {
  const Cochain f = random_form(kSphere, 1, 1.0, 230);
  Chain c;
  c.add(Cell{Chart::V, {1, 1, 1, 1}, {1}, Copy::Tilde}, 3);
  c.add(Cell{Chart::V, {1, 1, 1, 1}, {1, 2}, Copy::Base}, 3);
  EXPECT_EQ(pairing(c, f), Matrix2d::Zero());
  c.add(Cell{Chart::Vhat, {1, 2, 1, 1}, {3}, Copy::Base}, -2);
  EXPECT_EQ(pairing(c, f), Matrix2d(-2.0 * f.at(Chart::Vhat, {1, 2, 1, 1}, {3})));
}
