#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <set>

#include "slemst/disorder.hpp"
#include "slemst/observables.hpp"
#include "slemst/percolation.hpp"
#include "slemst/rng.hpp"

using namespace slemst;

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;

// 1/2 + C int_0^t cos(s)^(8/kappa - 2) ds by composite Simpson.
double schramm_quadrature(double t, double kappa) {
  const double c = std::exp(std::lgamma(4.0 / kappa) - std::lgamma((8.0 - kappa) / (2.0 * kappa))) / std::sqrt(kPi);
  const int n = 20000;
  const double h = t / n;
  auto f = [&](double s) { return std::pow(std::cos(s), 8.0 / kappa - 2.0); };
  double sum = f(0) + f(t);
  for (int i = 1; i < n; ++i) sum += f(i * h) * (i % 2 ? 4.0 : 2.0);
  return 0.5 + c * sum * h / 3.0;
}

std::shared_ptr<const PlanarLattice> lattice(LatticeKind kind, int n) {
  return std::make_shared<const PlanarLattice>(build_lattice(kind, n, n));
}

// Field whose pass-left frequencies are binomial draws around `prob(t)`.
template <class F>
LeftPassageField synthetic_field(const LeftPassageField& proto, std::uint64_t trials, std::uint64_t seed, F prob) {
  LeftPassageField f = proto;
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < f.size(); ++i) {
    std::binomial_distribution<std::uint64_t> bin(trials, prob(i));
    const std::uint64_t pass_left = bin(rng);
    f.counts_total[i] = trials;
    f.counts_left[i] = trials - pass_left;
  }
  f.samples = trials;
  return f;
}

LatticePath path_through(const PlanarLattice& L, const std::vector<int>& vertices) {
  LatticePath p;
  p.vertices = vertices;
  for (std::size_t k = 0; k + 1 < vertices.size(); ++k)
    for (int e : L.incident_edges(vertices[k]))
      if (L.other_endpoint(e, vertices[k]) == vertices[k + 1]) p.edges.push_back(e);
  return p;
}

int vertex_at(const PlanarLattice& L, int gx, int gy) {
  for (std::size_t v = 0; v < L.vertex_count(); ++v)
    if (L.grid(static_cast<int>(v)) == GridPoint{gx, gy}) return static_cast<int>(v);
  return -1;
}

}  // namespace

TEST(Schramm, HypergeometricIdentities) {
  EXPECT_EQ(gauss_2f1_negz(0.7, 0.0), 1.0);
  for (double u = 0.001; u < 1e3; u *= 1.3) {
    EXPECT_NEAR(gauss_2f1_negz(1.0, u * u), std::atan(u) / u, 1e-12) << u;
    EXPECT_NEAR(gauss_2f1_negz(0.5, u * u), std::asinh(u) / u, 1e-12) << u;
  }
}

TEST(Schramm, HalfAtZeroAndSymmetry) {
  for (double kappa : {0.5, 2.0, 8.0 / 3.0, 4.0, 6.0, 7.9}) {
    EXPECT_NEAR(schramm_lpp(0.0, kappa), 0.5, 1e-12);
    for (double t = -1.55; t <= 1.55; t += 0.05)
      EXPECT_NEAR(schramm_lpp(t, kappa) + schramm_lpp(-t, kappa), 1.0, 1e-12);
  }
}

TEST(Schramm, KappaFourClosedForm) {
  for (int i = 0; i < 100; ++i) {
    const double t = -kPi / 2 + kPi * (i + 0.5) / 100;
    EXPECT_NEAR(schramm_lpp(t, 4.0), 0.5 + t / kPi, 1e-10);
  }
}

TEST(Schramm, Limits) {
  EXPECT_EQ(schramm_lpp(kPi / 2, 6.0), 1.0);
  EXPECT_EQ(schramm_lpp(-kPi / 2, 6.0), 0.0);
  EXPECT_GT(schramm_lpp(kPi / 2 - 1e-9, 6.0), 0.99);
  EXPECT_LT(schramm_lpp(-kPi / 2 + 1e-9, 6.0), 0.01);
  EXPECT_THROW(schramm_lpp(0.0, 8.0), std::domain_error);
  EXPECT_THROW(schramm_lpp(2.0, 6.0), std::domain_error);
}

TEST(Schramm, MatchesQuadrature) {
  for (double kappa : {1.0, 2.0, 8.0 / 3.0, 3.0, 5.0, 6.0, 7.0})
    for (double t : {-1.3, -0.7, 0.2, 0.9, 1.3}) EXPECT_NEAR(schramm_lpp(t, kappa), schramm_quadrature(t, kappa), 1e-9);
}

TEST(Schramm, StrictlyMonotone) {
  for (double kappa : {1.0, 4.0, 6.0, 7.5}) {
    double prev = schramm_lpp(-1.55, kappa);
    for (double t = -1.54; t <= 1.55; t += 0.01) {
      const double p = schramm_lpp(t, kappa);
      EXPECT_GT(p, prev);
      prev = p;
    }
  }
}

TEST(LeftPassage, RightHuggingPathLeavesAllProbesLeft) {
  const auto L = lattice(LatticeKind::Honeycomb, 8);
  auto inst = sample_instance(L, BoundaryCondition::SleLike, 0.5, 1);
  for (std::size_t f = 0; f < L->interior_face_count(); ++f) inst.omega[f] = 0.9;
  const auto hug_right = exploration_path(color_faces(inst), *L);
  for (std::size_t f = 0; f < L->interior_face_count(); ++f) inst.omega[f] = 0.1;
  const auto hug_left = exploration_path(color_faces(inst), *L);

  auto field = make_left_passage_field(*L, PathSelector::StoT);
  accumulate_left_passage(hug_right, *L, field);
  for (std::size_t i = 0; i < field.size(); ++i) EXPECT_EQ(field.counts_left[i], 1u);
  accumulate_left_passage(hug_left, *L, field);
  for (std::size_t i = 0; i < field.size(); ++i) {
    EXPECT_EQ(field.counts_left[i], 1u);
    EXPECT_EQ(field.counts_total[i], 2u);
  }
  EXPECT_EQ(field.on_path, 0u);
}

TEST(LeftPassage, ReversedPathSwapsSides) {
  const auto L = lattice(LatticeKind::Honeycomb, 16);
  const auto tree = kruskal(induce_edge_weights(sample_instance(L, BoundaryCondition::SleLike, 0.5, 3)));
  auto p = tree_path(tree, L->s_marker().vertex, L->t_marker().vertex);
  auto f1 = make_left_passage_field(*L, PathSelector::StoT);
  auto f2 = f1;
  accumulate_left_passage(p, *L, f1);
  std::reverse(p.vertices.begin(), p.vertices.end());
  std::reverse(p.edges.begin(), p.edges.end());
  accumulate_left_passage(p, *L, f2);
  // reversing the orientation swaps left and right
  for (std::size_t i = 0; i < f1.size(); ++i) EXPECT_EQ(f1.counts_left[i] + f2.counts_left[i], 1u);
}

TEST(LeftPassage, MirrorReflectedPathGivesComplementaryTallies) {
  const int n = 8;
  const auto L = lattice(LatticeKind::Square, n);
  const auto g = sample_random_edge_weights(L, 11);
  const auto p = optimal_crossing_path(kruskal(g), L->bottom_vertices(), L->top_vertices());
  std::vector<int> mirrored;
  for (int v : p.vertices) mirrored.push_back(vertex_at(*L, 2 * n - L->grid(v).x, L->grid(v).y));
  auto f1 = make_left_passage_field(*L, PathSelector::OptimalCrossing);
  auto f2 = f1;
  accumulate_left_passage(p, *L, f1);
  accumulate_left_passage(path_through(*L, mirrored), *L, f2);
  std::map<std::pair<int, int>, std::size_t> index;
  for (std::size_t i = 0; i < f1.size(); ++i) {
    const auto& c = L->face(f1.faces[i]).grid_centroid;
    index[{c.x, c.y}] = i;
  }
  for (std::size_t i = 0; i < f1.size(); ++i) {
    const auto& c = L->face(f1.faces[i]).grid_centroid;
    const std::size_t j = index.at({2 * n - c.x, c.y});
    EXPECT_EQ(f1.counts_left[i] + f2.counts_left[j], 1u);
  }
}

TEST(LeftPassage, PathNotJoiningBottomAndTopRejected) {
  const auto L = lattice(LatticeKind::Square, 4);
  auto field = make_left_passage_field(*L, PathSelector::OptimalCrossing);
  const auto p = path_through(*L, {vertex_at(*L, 0, 2), vertex_at(*L, 2, 2)});
  EXPECT_THROW(accumulate_left_passage(p, *L, field), std::invalid_argument);
}

TEST(LeftPassage, MergeAddsTallies) {
  const auto L = lattice(LatticeKind::Honeycomb, 4);
  auto a = make_left_passage_field(*L, PathSelector::StoT);
  auto b = a;
  a.counts_left[0] = 2;
  a.counts_total[0] = 3;
  b.counts_left[0] = 1;
  b.counts_total[0] = 4;
  a.merge(b);
  EXPECT_EQ(a.counts_left[0], 3u);
  EXPECT_EQ(a.counts_total[0], 7u);
  const auto other = make_left_passage_field(*lattice(LatticeKind::Honeycomb, 6), PathSelector::StoT);
  EXPECT_THROW(a.merge(other), std::invalid_argument);
}

// Per-sample signed fraction of left probes averages to zero on SleLike
// samples, as required by left/right mirror symmetry.
TEST(LeftPassage, SleLikeFieldSymmetricAboutMidline) {
  const auto L = lattice(LatticeKind::Honeycomb, 32);
  const auto proto = make_left_passage_field(*L, PathSelector::StoT);
  double sum = 0.0, sum2 = 0.0;
  const int samples = 1000;
  for (int i = 0; i < samples; ++i) {
    const auto tree = kruskal(induce_edge_weights(sample_instance(L, BoundaryCondition::SleLike, 0.5, sample_seed(9, 0, i))));
    auto f = proto;
    accumulate_left_passage(tree_path(tree, L->s_marker().vertex, L->t_marker().vertex), *L, f);
    double left = 0.0;
    for (auto c : f.counts_left) left += static_cast<double>(c);
    const double s = 2.0 * left / static_cast<double>(f.size()) - 1.0;
    sum += s;
    sum2 += s * s;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum2 / samples - mean * mean) / (samples - 1));
  EXPECT_LT(std::abs(mean), 3.0 * se);
}

TEST(KappaFit, RecoversPlantedKappa) {
  const auto L = lattice(LatticeKind::Honeycomb, 32);
  const auto proto = make_left_passage_field(*L, PathSelector::StoT);
  for (double kappa : {6.0, 8.0 / 3.0}) {
    const auto f = synthetic_field(proto, 10000, 5, [&](std::size_t i) { return schramm_lpp(proto.angles[i], kappa); });
    const auto fit = fit_kappa(f);
    EXPECT_NEAR(fit.kappa_hat, kappa, 0.1);
    EXPECT_EQ(fit.verdict, FitVerdict::Fit);
    EXPECT_GT(fit.std_error, 0.0);
    EXPECT_GT(fit.probes, 100u);
  }
}

TEST(KappaFit, StandardErrorCoverage) {
  const auto L = lattice(LatticeKind::Honeycomb, 16);
  const auto proto = make_left_passage_field(*L, PathSelector::StoT);
  int within1 = 0, within2 = 0;
  const int reps = 200;
  for (int r = 0; r < reps; ++r) {
    const auto f = synthetic_field(proto, 400, 100 + r, [&](std::size_t i) { return schramm_lpp(proto.angles[i], 6.0); });
    const auto fit = fit_kappa(f);
    within1 += std::abs(fit.kappa_hat - 6.0) <= fit.std_error;
    within2 += std::abs(fit.kappa_hat - 6.0) <= 2.0 * fit.std_error;
  }
  EXPECT_GE(within2, 0.9 * reps);
  EXPECT_GE(within1, 0.55 * reps);
  EXPECT_LE(within1, 0.8 * reps);
}

TEST(KappaFit, LinearProfileIsNoFit) {
  const auto L = lattice(LatticeKind::Honeycomb, 32);
  const auto proto = make_left_passage_field(*L, PathSelector::StoT);
  const double w = L->width();
  const auto f = synthetic_field(proto, 100000, 7, [&](std::size_t i) { return 0.1 + 0.8 * proto.points[i].x / w; });
  EXPECT_EQ(fit_kappa(f).verdict, FitVerdict::NoFit);
}

TEST(KappaFit, InsufficientStatistics) {
  const auto L = lattice(LatticeKind::Honeycomb, 8);
  const auto proto = make_left_passage_field(*L, PathSelector::StoT);
  const auto f = synthetic_field(proto, 10, 1, [](std::size_t) { return 0.5; });
  EXPECT_THROW(fit_kappa(f), InsufficientStatistics);
}

TEST(Scaling, FractalDimensionPlantedLaws) {
  std::vector<SizeLength> line, area;
  for (double s : {32.0, 64.0, 128.0, 256.0}) {
    line.push_back({s, 3.0 * s});
    area.push_back({s, 0.5 * s * s});
  }
  EXPECT_NEAR(fractal_dimension(line).slope, 1.0, 1e-12);
  EXPECT_NEAR(fractal_dimension(area).slope, 2.0, 1e-12);
  const std::vector<SizeLength> two{{32, 10}, {64, 20}};
  EXPECT_THROW(fractal_dimension(two), std::invalid_argument);
  const std::vector<SizeLength> uneven{{32, 10}, {64, 20}, {100, 30}};
  EXPECT_THROW(fractal_dimension(uneven), std::invalid_argument);
}

TEST(Scaling, KappaFromDimension) {
  EXPECT_DOUBLE_EQ(kappa_from_dimension(1.75), 6.0);
  EXPECT_DOUBLE_EQ(kappa_from_dimension(1.0), 0.0);
  EXPECT_DOUBLE_EQ(kappa_from_dimension(2.0), 8.0);
  EXPECT_THROW(kappa_from_dimension(2.1), std::domain_error);
}

TEST(Displacement, StraightAndCornerPaths) {
  const int n = 4;
  const auto L = lattice(LatticeKind::Square, n);
  std::vector<int> vertical, diagonal;
  for (int y = 0; y <= 2 * n; y += 2) vertical.push_back(vertex_at(*L, 4, y));
  for (int k = 0; k <= n; ++k) {
    diagonal.push_back(vertex_at(*L, 2 * k, 2 * k));
    if (k < n) diagonal.push_back(vertex_at(*L, 2 * k + 2, 2 * k));
  }
  EXPECT_DOUBLE_EQ(horizontal_displacement(path_through(*L, vertical), *L), 0.0);
  EXPECT_DOUBLE_EQ(horizontal_displacement(path_through(*L, diagonal), *L), 1.0);
  std::reverse(diagonal.begin(), diagonal.end());
  EXPECT_THROW(horizontal_displacement(path_through(*L, diagonal), *L), std::invalid_argument);
}

TEST(Displacement, PlantedQuadraticLaw) {
  std::vector<DisplacementRecord> recs;
  for (double r : {1.0 / 32, 1.0 / 16, 1.0 / 8, 1.0 / 4}) recs.push_back({r, 0.7 * r * r});
  for (double v : {0.1, 0.11, 0.09}) recs.push_back({4.0, v});
  const auto fit = displacement_scaling(recs);
  EXPECT_NEAR(fit.exponent, 2.0, 1e-12);
  EXPECT_NEAR(fit.plateau, 0.1, 1e-12);
  EXPECT_GT(fit.plateau_stderr, 0.0);
}

TEST(Displacement, InsufficientCoverage) {
  const std::vector<DisplacementRecord> recs{{0.25, 0.01}, {0.125, 0.003}, {4.0, 0.1}, {4.0, 0.1}};
  EXPECT_THROW(displacement_scaling(recs), std::invalid_argument);
}

TEST(TriplePoint, StarAndPath) {
  EdgeListGraph star{4, {{0, 1}, {0, 2}, {0, 3}}, {0.1, 0.2, 0.3}};
  EXPECT_EQ(triple_point(kruskal(star), 1, 2, 3), 0);
  EdgeListGraph path{5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}, {0.1, 0.2, 0.3, 0.4}};
  EXPECT_EQ(triple_point(kruskal(path), 0, 2, 4), 2);
}

TEST(TriplePoint, MatchesPairwiseIntersectionAndIsSymmetric) {
  const auto L = lattice(LatticeKind::Square, 4);
  const int n = static_cast<int>(L->vertex_count());
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto tree = kruskal(sample_random_edge_weights(L, seed));
    SplitMix64 rng(seed);
    for (int k = 0; k < 20; ++k) {
      const int a = static_cast<int>(rng() % n), b = static_cast<int>(rng() % n), c = static_cast<int>(rng() % n);
      if (a == b || b == c || a == c) continue;
      auto set_of = [&](int i, int j) {
        const auto p = tree_path(tree, i, j);
        return std::set<int>(p.vertices.begin(), p.vertices.end());
      };
      const auto ab = set_of(a, b), bc = set_of(b, c), ac = set_of(a, c);
      std::vector<int> common;
      for (int v : ab)
        if (bc.count(v) && ac.count(v)) common.push_back(v);
      ASSERT_EQ(common.size(), 1u);
      const int m = triple_point(tree, a, b, c);
      EXPECT_EQ(m, common[0]);
      EXPECT_EQ(triple_point(tree, c, a, b), m);
      EXPECT_EQ(triple_point(tree, b, c, a), m);
      EXPECT_EQ(triple_point(tree, b, a, c), m);
    }
  }
}

TEST(TriplePoint, HistogramRotationMatchesGeometry) {
  const TriplePointHistogram h;
  SplitMix64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const cplx rot = std::polar(1.0, 2 * kPi / 3);
  for (int k = 0; k < 1000; ++k) {
    const cplx z = std::polar(std::sqrt(u(rng)) * 0.999, 2 * kPi * u(rng));
    EXPECT_EQ(h.bin(z * rot), h.rotate(h.bin(z)));
  }
}

TEST(TriplePoint, SymmetricHistogramHasZeroStatistic) {
  TriplePointHistogram h;
  for (int b = 0; b < h.sectors / 3 * h.rings; ++b) {
    const int base = (b / (h.sectors / 3)) * h.sectors + b % (h.sectors / 3);
    for (int s = 0; s < 3; ++s) h.counts[h.rotate(base, s)] = 7 + b;
  }
  const auto t = rotation_symmetry_statistic(h, 99);
  EXPECT_NEAR(t.statistic, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(t.p_value, 1.0);
}

TEST(TriplePoint, ConcentratedHistogram) {
  TriplePointHistogram h;
  h.counts[5] = 5000;
  const auto t = rotation_symmetry_statistic(h, 199);
  EXPECT_NEAR(t.statistic, 2.0 / 3.0, 1e-12);
  EXPECT_LT(t.p_value, 0.01);
  TriplePointHistogram small;
  small.counts[0] = 999;
  EXPECT_THROW(rotation_symmetry_statistic(small), InsufficientStatistics);
}

// Uniform disk samples: p-values are roughly uniform.
TEST(TriplePoint, PValueCalibration) {
  SplitMix64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int reps = 100;
  int below_05 = 0, below_50 = 0;
  for (int r = 0; r < reps; ++r) {
    TriplePointHistogram h;
    for (int k = 0; k < 10000; ++k) h.add(std::polar(std::sqrt(u(rng)), 2 * kPi * u(rng)));
    const auto t = rotation_symmetry_statistic(h, 199, r + 1);
    below_05 += t.p_value < 0.05;
    below_50 += t.p_value < 0.5;
  }
  EXPECT_LE(below_05, 13);
  EXPECT_GE(below_50, 35);
  EXPECT_LE(below_50, 65);
}
