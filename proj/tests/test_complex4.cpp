#include <gtest/gtest.h>

#include <set>

#include "dym/complex4.hpp"
#include "oracle.hpp"

using namespace dym;

namespace {

const Domain kSphere({2, 2, 2, 2}, Topology::Sphere);
const Domain kBlock({2, 2, 2, 2}, Topology::Block);

std::vector<DirectionSet> all_sets() {
  std::vector<DirectionSet> out;
  for (int m = 0; m < 16; ++m) out.emplace_back(static_cast<std::uint8_t>(m));
  return out;
}

}  // namespace

TEST(Shift, ForwardBackwardAndComposite) {
  EXPECT_EQ(shift({1, 1, 1, 1}, 1), (MultiIndex{2, 1, 1, 1}));
  EXPECT_EQ(shift({1, 1, 1, 2}, 4, -1), (MultiIndex{1, 1, 1, 1}));
  EXPECT_EQ(shift({1, 1, 1, 1}, DirectionSet{1, 2}), shift(shift({1, 1, 1, 1}, 2), 1));
  EXPECT_EQ(shift({1, 1, 1, 1}, DirectionSet{1, 2}), (MultiIndex{2, 2, 1, 1}));
}

TEST(Domain, RejectsSizesBelowTwo) {
  EXPECT_THROW(Domain({2, 1, 2, 2}, Topology::Block), std::invalid_argument);
  EXPECT_THROW(Domain({2, 2, 2, 0}, Topology::Sphere), std::invalid_argument);
}

TEST(Domain, StoredRanges) {
  EXPECT_EQ(kBlock.stored_site_count(), 256u);
  EXPECT_EQ(kSphere.stored_site_count(), 32u);
  EXPECT_EQ(kBlock.site_index(Chart::V, {0, 0, 0, 1}), 1u);
  EXPECT_EQ(kBlock.site_index(Chart::V, {1, 0, 0, 0}), 64u);
  EXPECT_EQ(kSphere.site_index(Chart::Vhat, {1, 1, 1, 1}), 16u);
}

TEST(Resolve, SphereSingleAxisGluing) {
  EXPECT_EQ(resolve_address(kSphere, {Chart::V, {0, 1, 1, 1}}), (Address{Chart::Vhat, {2, 1, 1, 1}}));
  EXPECT_EQ(resolve_address(kSphere, {Chart::Vhat, {1, 3, 1, 1}}), (Address{Chart::V, {1, 1, 1, 1}}));
  EXPECT_EQ(resolve_address(kSphere, {Chart::Vhat, {0, 1, 1, 1}}), (Address{Chart::V, {2, 1, 1, 1}}));
}

TEST(Resolve, SphereCornerTogglesCancel) {
  EXPECT_EQ(resolve_address(kSphere, {Chart::V, {0, 0, 1, 1}}), (Address{Chart::V, {2, 2, 1, 1}}));
  EXPECT_EQ(resolve_address(kSphere, {Chart::V, {0, 3, 0, 1}}), (Address{Chart::Vhat, {2, 1, 2, 1}}));
}

TEST(Resolve, BlockIdentityAndHalo) {
  EXPECT_EQ(resolve_address(kBlock, {Chart::V, {1, 1, 1, 1}}), (Address{Chart::V, {1, 1, 1, 1}}));
  EXPECT_EQ(resolve_address(kBlock, {Chart::V, {0, 3, 0, 3}}), (Address{Chart::V, {0, 3, 0, 3}}));
  EXPECT_THROW(resolve_address(kBlock, {Chart::V, {4, 1, 1, 1}}), OutOfDomain);
  EXPECT_THROW(resolve_address(kBlock, {Chart::V, {1, -1, 1, 1}}), OutOfDomain);
  EXPECT_THROW(resolve_address(kBlock, {Chart::Vhat, {1, 1, 1, 1}}), OutOfDomain);
  EXPECT_THROW(resolve_address(kSphere, {Chart::V, {4, 1, 1, 1}}), OutOfDomain);
}

TEST(Resolve, IdempotentAndOrderIndependent) {
  const Domain d({2, 3, 2, 4}, Topology::Sphere);
  for (int c = 0; c < 2; ++c) {
    MultiIndex k;
    for (k[0] = 0; k[0] <= 3; ++k[0])
      for (k[1] = 0; k[1] <= 4; ++k[1])
        for (k[2] = 0; k[2] <= 3; ++k[2])
          for (k[3] = 0; k[3] <= 5; ++k[3]) {
            const Address a{static_cast<Chart>(c), k};
            const Address r = resolve_address(d, a);
            EXPECT_EQ(resolve_address(d, r), r);
            // Resolving one axis at a time, in reverse order, agrees.
            Address step = a;
            for (int axis = kDim; axis >= 1; --axis) {
              int& v = step.k[axis - 1];
              if (v == 0) {
                v = d.size(axis);
                step.chart = toggled(step.chart);
              } else if (v == d.size(axis) + 1) {
                v = 1;
                step.chart = toggled(step.chart);
              }
            }
            EXPECT_EQ(step, r);
          }
  }
}

TEST(Resolve, SphereAxisLinesClose) {
  const Domain d({2, 3, 4, 2}, Topology::Sphere);
  for (const Address& start : stored_sites(d)) {
    for (int axis = 1; axis <= kDim; ++axis) {
      Address a = start;
      int steps = 0;
      do {
        a = resolve_address(d, {a.chart, shift(a.k, axis)});
        ++steps;
      } while (a != start && steps < 100);
      EXPECT_EQ(steps, 2 * d.size(axis));
    }
  }
}

TEST(Signs, PermSignExamples) {
  EXPECT_EQ(perm_sign(DirectionSet{1, 3}), -1);
  EXPECT_EQ(perm_sign(DirectionSet{}), 1);
  EXPECT_EQ(perm_sign(DirectionSet{2}), -1);
  EXPECT_EQ(perm_sign(DirectionSet{1}), 1);
}

TEST(Signs, PermSignMatchesInversionCount) {
  for (DirectionSet p : all_sets()) EXPECT_EQ(perm_sign(p), oracle::perm_sign(p)) << to_string(p);
}

TEST(Signs, PermSignProduct) {
  for (DirectionSet p : all_sets()) {
    const int r = p.degree();
    EXPECT_EQ(perm_sign(p) * perm_sign(p.complement()), (r * (4 - r)) % 2 == 0 ? 1 : -1);
  }
}

TEST(Signs, CupSignExamples) {
  EXPECT_EQ(cup_sign(DirectionSet{1}, DirectionSet{2}), 1);
  EXPECT_EQ(cup_sign(DirectionSet{2}, DirectionSet{1}), -1);
  EXPECT_EQ(cup_sign(DirectionSet{2, 4}, DirectionSet{1, 3}), -1);
  for (DirectionSet q : all_sets()) EXPECT_EQ(cup_sign(DirectionSet{}, q), 1);
}

TEST(Signs, CupSignMatchesRecursiveUnrolling) {
  const MultiIndex k{1, 1, 1, 1};
  for (DirectionSet p : all_sets()) {
    for (DirectionSet q : all_sets()) {
      if (!p.disjoint(q)) continue;
      auto prod = oracle::cup_basis(oracle::factors(k, p), oracle::factors(shift(k, p), q));
      ASSERT_TRUE(prod.has_value());
      EXPECT_EQ(cup_sign(p, q), prod->first) << to_string(p) << " " << to_string(q);
    }
  }
}

TEST(Signs, OverlappingBasisCupIsZero) {
  const MultiIndex k{1, 1, 1, 1};
  EXPECT_FALSE(oracle::cup_basis(oracle::factors(k, {1}), oracle::factors(shift(k, 1), {1})).has_value());
}

TEST(Boundary, WorkedExampleEps24) {
  const MultiIndex k{1, 1, 1, 1};
  const Chain b = boundary_cell(kBlock, {Chart::V, k, {2, 4}, Copy::Base});
  Chain expected;
  expected.add(Cell{Chart::V, shift(k, 2), {4}, Copy::Base}, 1);
  expected.add(Cell{Chart::V, k, {4}, Copy::Base}, -1);
  expected.add(Cell{Chart::V, shift(k, 4), {2}, Copy::Base}, -1);
  expected.add(Cell{Chart::V, k, {2}, Copy::Base}, 1);
  EXPECT_EQ(b, expected);
}

TEST(Boundary, VertexHasEmptyBoundary) {
  EXPECT_TRUE(boundary_cell(kSphere, {Chart::V, {1, 1, 1, 1}, {}, Copy::Base}).empty());
}

TEST(Boundary, MatchesTensorRule) {
  const Domain d({3, 3, 3, 3}, Topology::Block);
  for (const Address& a : interior_sites(d)) {
    for (DirectionSet p : all_sets()) {
      const Chain got = boundary_cell(d, {a.chart, a.k, p, Copy::Base});
      const auto expected = oracle::tensor_boundary(a.k, p);
      ASSERT_EQ(got.size(), expected.size());
      for (const auto& [cell, coeff] : expected) {
        EXPECT_EQ(got.coefficient({Chart::V, cell.first, DirectionSet(cell.second), Copy::Base}), coeff);
      }
    }
  }
}

TEST(Boundary, BoundaryOfBoundaryVanishes) {
  for (const Domain& d : {kSphere, kBlock, Domain({3, 2, 4, 2}, Topology::Sphere)}) {
    for (const Address& a : interior_sites(d)) {
      for (DirectionSet p : all_sets()) {
        for (Copy copy : {Copy::Base, Copy::Tilde}) {
          EXPECT_TRUE(boundary(d, boundary_cell(d, {a.chart, a.k, p, copy})).empty());
        }
      }
    }
  }
}

TEST(Boundary, SphereFacesResolveAcrossCharts) {
  const Chain b = boundary_cell(kSphere, {Chart::V, {2, 1, 1, 1}, {1}, Copy::Base});
  EXPECT_EQ(b.coefficient({Chart::Vhat, {1, 1, 1, 1}, {}, Copy::Base}), 1);
  EXPECT_EQ(b.coefficient({Chart::V, {2, 1, 1, 1}, {}, Copy::Base}), -1);
}

TEST(Boundary, BlockEscapeThrows) {
  EXPECT_THROW(boundary_cell(kBlock, {Chart::V, {3, 1, 1, 1}, {1}, Copy::Base}), OutOfDomain);
}

TEST(Chain, NoZeroCoefficients) {
  Chain c;
  const Cell x{Chart::V, {1, 1, 1, 1}, {}, Copy::Base};
  c.add(x, 2);
  c.add(x, -2);
  EXPECT_TRUE(c.empty());
  c.add(x, 0);
  EXPECT_TRUE(c.empty());
}

TEST(Star, CellTables) {
  const MultiIndex k{1, 1, 1, 1};
  auto [s1, c1] = star_cell({Chart::V, k, {1}, Copy::Base});
  EXPECT_EQ(s1, 1);
  EXPECT_EQ(c1.dirs, (DirectionSet{2, 3, 4}));
  EXPECT_EQ(c1.copy, Copy::Tilde);
  auto [s2, c2] = star_cell({Chart::V, k, {2}, Copy::Base});
  EXPECT_EQ(s2, -1);
  EXPECT_EQ(c2.dirs, (DirectionSet{1, 3, 4}));
  auto [s3, c3] = star_cell({Chart::V, k, {1, 2, 4}, Copy::Tilde});
  EXPECT_EQ(s3, -1);
  EXPECT_EQ(c3.dirs, (DirectionSet{3}));
  EXPECT_EQ(c3.copy, Copy::Base);
}

TEST(Vp, FirstDegreeEntries) {
  const auto v1 = build_Vp(kBlock, 1);
  ASSERT_EQ(v1.size(), 4u * 16u);
  EXPECT_EQ(v1[0].cell.dirs, (DirectionSet{1}));
  EXPECT_EQ(v1[0].dual.dirs, (DirectionSet{2, 3, 4}));
  EXPECT_EQ(v1[0].dual.copy, Copy::Tilde);
  EXPECT_EQ(v1[0].sign, 1);
  EXPECT_EQ(v1[1].sign, -1);
  EXPECT_EQ(v1[2].sign, 1);
  EXPECT_EQ(v1[3].sign, -1);
}

TEST(Vp, VertexEntryAndCounts) {
  const auto v0 = build_Vp(kBlock, 0);
  EXPECT_EQ(v0[0].dual.dirs, DirectionSet::full());
  EXPECT_EQ(v0[0].sign, 1);
  EXPECT_EQ(build_Vp(kBlock, 2).size(), 96u);
  EXPECT_EQ(build_Vp(kSphere, 2).size(), 192u);
}

TEST(DirectionSets, OrderAndRank) {
  std::set<std::uint8_t> seen;
  for (int p = 0; p <= 4; ++p) {
    const auto& sets = direction_sets(p);
    EXPECT_EQ(static_cast<int>(sets.size()), components_per_site(p));
    for (std::size_t i = 0; i < sets.size(); ++i) {
      EXPECT_EQ(direction_rank(sets[i]), static_cast<int>(i));
      if (i > 0) EXPECT_LT(sets[i - 1].mask(), sets[i].mask());
      seen.insert(sets[i].mask());
    }
  }
  EXPECT_EQ(seen.size(), 16u);
}
