#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "slemst/disorder.hpp"
#include "slemst/rng.hpp"

using namespace slemst;

namespace {

std::shared_ptr<const PlanarLattice> lattice(LatticeKind kind, int a, int b) {
  return std::make_shared<const PlanarLattice>(build_lattice(kind, a, b));
}

}  // namespace

TEST(Rng, SampleSeedDependsOnAllInputs) {
  EXPECT_EQ(sample_seed(1, 2, 3), sample_seed(1, 2, 3));
  EXPECT_NE(sample_seed(1, 2, 3), sample_seed(2, 2, 3));
  EXPECT_NE(sample_seed(1, 2, 3), sample_seed(1, 3, 3));
  EXPECT_NE(sample_seed(1, 2, 3), sample_seed(1, 2, 4));
}

TEST(Rng, UniformRange) {
  const CounterStream s(7, 11);
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const double u = s.uniform(i);
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Disorder, SameSeedSameInstance) {
  const auto L = lattice(LatticeKind::Honeycomb, 8, 8);
  for (auto bc : {BoundaryCondition::Free, BoundaryCondition::SleLike, BoundaryCondition::SleFree,
                  BoundaryCondition::Repulsive}) {
    const auto a = sample_instance(L, bc, 0.5, 42);
    const auto b = sample_instance(L, bc, 0.5, 42);
    const auto c = sample_instance(L, bc, 0.5, 43);
    EXPECT_EQ(a.omega, b.omega);
    EXPECT_NE(a.omega, c.omega);
  }
}

TEST(Disorder, SleLikeArcConstraints) {
  for (auto kind : {LatticeKind::Square, LatticeKind::Honeycomb}) {
    const auto L = lattice(kind, 8, 6);
    const auto arcs = boundary_arcs(*L);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto left = sample_instance(L, BoundaryCondition::SleLike, 0.5, seed, ArcOrientation::LeftHigh);
      for (int f : arcs.arc_b) EXPECT_GT(left.omega[f], 0.5);
      for (int f : arcs.arc_a) EXPECT_LT(left.omega[f], 0.5);
      const auto right = sample_instance(L, BoundaryCondition::SleLike, 0.5, seed, ArcOrientation::RightHigh);
      for (int f : arcs.arc_b) EXPECT_LT(right.omega[f], 0.5);
      for (int f : arcs.arc_a) EXPECT_GT(right.omega[f], 0.5);
    }
  }
}

TEST(Disorder, ConstraintsHoldForExtremeThresholds) {
  const auto L = lattice(LatticeKind::Square, 4, 4);
  for (double theta : {1e-12, 0.999999999}) {
    const auto inst = sample_instance(L, BoundaryCondition::Repulsive, theta, 3);
    for (int f : L->boundary_faces()) EXPECT_GT(inst.omega[f], theta);
    const auto sle = sample_instance(L, BoundaryCondition::SleLike, theta, 3);
    for (int f : boundary_arcs(*L).arc_a) {
      EXPECT_LT(sle.omega[f], theta);
      EXPECT_GE(sle.omega[f], 0.0);
    }
  }
}

TEST(Disorder, SleFreeAndRepulsive) {
  const auto L = lattice(LatticeKind::Honeycomb, 8, 8);
  const auto sf = sample_instance(L, BoundaryCondition::SleFree, 0.5, 9);
  const auto rp = sample_instance(L, BoundaryCondition::Repulsive, 0.5, 9);
  int free_ghosts = 0;
  for (int f : L->boundary_faces()) {
    const Side side = L->face(f).side;
    if (side == Side::Right) EXPECT_GT(sf.omega[f], 0.5);
    if (side == Side::Left) EXPECT_LT(sf.omega[f], 0.5);
    if (side == Side::Bottom || side == Side::Top) ++free_ghosts;
    EXPECT_GT(rp.omega[f], 0.5);
  }
  EXPECT_GT(free_ghosts, 0);
}

TEST(Disorder, InteriorMeanWithinThreeSigma) {
  const auto L = lattice(LatticeKind::Square, 100, 100);
  const auto inst = sample_instance(L, BoundaryCondition::Free, thresholds::kSquareCritical, 2024);
  double sum = 0.0;
  const std::size_t n = L->interior_face_count();
  ASSERT_EQ(n, 10000u);
  for (std::size_t f = 0; f < n; ++f) sum += inst.omega[f];
  EXPECT_NEAR(sum / n, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Disorder, InducedWeightArithmetic) {
  const auto L = lattice(LatticeKind::Square, 2, 2);
  DisorderInstance inst = sample_instance(L, BoundaryCondition::Free, 0.5, 1);
  const auto& ef = L->edge_faces(0);
  inst.omega[ef.left] = 0.8;
  inst.omega[ef.right] = 0.3;
  EXPECT_NEAR(induce_edge_weights(inst).w_edge[0], -0.06, 1e-15);
  inst.omega[ef.left] = inst.omega[ef.right] = 0.5;
  EXPECT_EQ(induce_edge_weights(inst).w_edge[0], 0.0);
}

TEST(Disorder, NegativeExactlyOnInterfaces) {
  const auto L = lattice(LatticeKind::Honeycomb, 16, 16);
  const auto inst = sample_instance(L, BoundaryCondition::SleLike, 0.5, 5);
  const auto g = induce_edge_weights(inst);
  for (std::size_t e = 0; e < L->edge_count(); ++e) {
    const auto& ef = L->edge_faces(e);
    const bool differ = (inst.omega[ef.left] > 0.5) != (inst.omega[ef.right] > 0.5);
    EXPECT_EQ(g.w_edge[e] < 0.0, differ);
  }
}

TEST(Disorder, RandomEdgeWeights) {
  const auto L = lattice(LatticeKind::Square, 72, 72);
  const auto a = sample_random_edge_weights(L, 77);
  const auto b = sample_random_edge_weights(L, 77);
  EXPECT_EQ(a.w_edge, b.w_edge);
  ASSERT_GE(a.w_edge.size(), 10000u);
  double sum = 0.0;
  for (double w : a.w_edge) sum += w;
  const double n = static_cast<double>(a.w_edge.size());
  EXPECT_NEAR(sum / n, 0.5, 3.0 * std::sqrt(1.0 / 12.0 / n));
}

TEST(Disorder, RejectsThresholdOutsideUnitInterval) {
  const auto L = lattice(LatticeKind::Square, 2, 2);
  EXPECT_THROW(sample_instance(L, BoundaryCondition::Free, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(sample_instance(L, BoundaryCondition::Free, 1.0, 1), std::invalid_argument);
}

TEST(Disorder, CriticalThresholds) {
  EXPECT_EQ(critical_threshold(LatticeKind::Square), 0.5927463);
  EXPECT_EQ(critical_threshold(LatticeKind::Honeycomb), 0.5);
}
