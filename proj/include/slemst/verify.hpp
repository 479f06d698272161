#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "slemst/disorder.hpp"
#include "slemst/harness.hpp"
#include "slemst/lattice.hpp"
#include "slemst/observables.hpp"
#include "slemst/percolation.hpp"
#include "slemst/rng.hpp"
#include "slemst/spanning.hpp"

// Oracle and property suites over seeded random instances.
namespace slemst::verify {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;
};

inline constexpr Ensemble kAllEnsembles[] = {Ensemble::Free, Ensemble::SleLike, Ensemble::SleFree, Ensemble::Repulsive,
                                            Ensemble::Random};

inline WeightedEdgeGraph random_weights(const std::shared_ptr<const PlanarLattice>& lattice, Ensemble e,
                                        std::uint64_t seed) {
  if (e == Ensemble::Random) return sample_random_edge_weights(lattice, seed);
  return induce_edge_weights(
      sample_instance(lattice, boundary_condition(e), critical_threshold(lattice->kind()), seed));
}

inline bool same_path(const LatticePath& a, const LatticePath& b) {
  return a.vertices == b.vertices && a.edges == b.edges;
}

// tree_path agrees with exhaustive search for every vertex pair.
inline CheckResult optimality_equivalence(std::size_t instances = 200, std::uint64_t seed = 1) {
  CheckResult r{"optimality_equivalence"};
  const std::shared_ptr<const PlanarLattice> lattices[] = {
      std::make_shared<const PlanarLattice>(build_lattice(LatticeKind::Square, 3, 3, Parity::AllowOdd)),
      std::make_shared<const PlanarLattice>(build_lattice(LatticeKind::Honeycomb, 2, 2))};
  for (std::size_t k = 0; k < instances; ++k) {
    const auto& L = lattices[k % 2];
    const Ensemble e = kAllEnsembles[(k / 2) % 5];
    const auto g = random_weights(L, e, sample_seed(seed, 1, k));
    const auto tree = kruskal(g);
    const int n = static_cast<int>(L->vertex_count());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        LatticePath tp = tree_path(tree, i, j);
        attach_weights(tp, g);
        const LatticePath bf = brute_force_optimal_path(g, i, j);
        ++r.cases;
        if (compare_paths(tp, bf) != 0 || !same_path(tp, bf)) {
          if (r.passed) {
            std::ostringstream os;
            os << "instance " << k << " pair (" << i << "," << j << ") differs";
            r.detail = os.str();
          }
          r.passed = false;
        }
      }
    }
  }
  return r;
}

// Kruskal and Prim produce identical edge sets.
inline CheckResult kruskal_prim(std::size_t instances = 1000, std::uint64_t seed = 2) {
  CheckResult r{"kruskal_prim"};
  const std::shared_ptr<const PlanarLattice> lattices[] = {
      std::make_shared<const PlanarLattice>(build_lattice(LatticeKind::Square, 8, 8)),
      std::make_shared<const PlanarLattice>(build_lattice(LatticeKind::Honeycomb, 8, 8))};
  for (std::size_t k = 0; k < instances; ++k) {
    const auto& L = lattices[k % 2];
    const auto g = random_weights(L, kAllEnsembles[(k / 2) % 5], sample_seed(seed, 2, k));
    const auto root = static_cast<int>(mix64(k) % L->vertex_count());
    ++r.cases;
    if (kruskal(g).edge_set != prim(g, root).edge_set) {
      if (r.passed) r.detail = "instance " + std::to_string(k) + " differs";
      r.passed = false;
    }
  }
  return r;
}

// The s-t tree path is the percolation exploration interface and is all-negative.
inline CheckResult percolation_equivalence(std::size_t instances = 100, int size = 32, std::uint64_t seed = 3) {
  CheckResult r{"percolation_equivalence"};
  const auto L = std::make_shared<const PlanarLattice>(build_lattice(LatticeKind::Honeycomb, size, size));
  for (std::size_t k = 0; k < instances; ++k) {
    const auto inst = sample_instance(L, BoundaryCondition::SleLike, thresholds::kHoneycombCritical, sample_seed(seed, 3, k));
    const auto g = induce_edge_weights(inst);
    const auto tree = kruskal(g);
    LatticePath tp = tree_path(tree, L->s_marker().vertex, L->t_marker().vertex);
    attach_weights(tp, g);
    const LatticePath ex = exploration_path(color_faces(inst), *L);
    ++r.cases;
    if (!same_path(tp, ex) || !(path_cost(tp) < 0.0)) {
      if (r.passed) r.detail = "instance " + std::to_string(k) + " differs";
      r.passed = false;
    }
  }
  return r;
}

// Cut and restriction properties on random vertex subsets: Bernoulli(1/2)
// samples, regions grown along lattice edges and regions grown along tree
// edges (whose restricted tree is always connected).
inline CheckResult cut_and_restriction(std::size_t instances = 50, std::size_t subsets = 200, std::uint64_t seed = 4) {
  CheckResult r{"cut_and_restriction"};
  const std::shared_ptr<const PlanarLattice> lattices[] = {
      std::make_shared<const PlanarLattice>(build_lattice(LatticeKind::Square, 8, 8)),
      std::make_shared<const PlanarLattice>(build_lattice(LatticeKind::Honeycomb, 8, 8))};
  std::size_t restricted = 0;
  for (std::size_t k = 0; k < instances; ++k) {
    const auto& L = lattices[k % 2];
    const auto g = random_weights(L, kAllEnsembles[(k / 2) % 5], sample_seed(seed, 4, k));
    const auto tree = kruskal(g);
    const std::size_t n = L->vertex_count();
    SplitMix64 rng(sample_seed(seed, 5, k));
    std::vector<std::vector<int>> tree_adj(n);
    for (std::size_t v = 0; v < n; ++v) {
      if (tree.parent[v] < 0) continue;
      tree_adj[v].push_back(tree.parent[v]);
      tree_adj[tree.parent[v]].push_back(static_cast<int>(v));
    }
    for (std::size_t s = 0; s < subsets; ++s) {
      std::vector<int> subset;
      std::vector<char> in(n, 0);
      if (s % 2 == 0) {
        for (std::size_t v = 0; v < n; ++v)
          if (rng() & 1) subset.push_back(static_cast<int>(v));
      } else {
        const std::size_t target = 2 + rng() % (n - 3);
        subset.push_back(static_cast<int>(rng() % n));
        in[subset[0]] = 1;
        while (subset.size() < target) {
          const int u = subset[rng() % subset.size()];
          int v;
          if (s % 4 == 1) {
            const auto inc = L->incident_edges(u);
            v = L->other_endpoint(inc[rng() % inc.size()], u);
          } else {
            v = tree_adj[u][rng() % tree_adj[u].size()];
          }
          if (!in[v]) {
            in[v] = 1;
            subset.push_back(v);
          }
        }
      }
      if (subset.empty() || subset.size() == n) continue;
      ++r.cases;
      const bool cut = cut_property_check(g, tree, subset);
      const auto res = restriction_property_check(g, tree, subset);
      if (res) ++restricted;
      if (!cut || (res && !*res)) {
        if (r.passed)
          r.detail = "instance " + std::to_string(k) + " subset " + std::to_string(s) + (cut ? " restriction" : " cut");
        r.passed = false;
      }
    }
  }
  if (r.passed) r.detail = std::to_string(restricted) + " connected restrictions";
  return r;
}

// Left-passage kernel against closed forms.
inline CheckResult schramm_kernel() {
  CheckResult r{"schramm_kernel"};
  double worst_half = 0.0, worst_sym = 0.0, worst_k4 = 0.0, worst_atan = 0.0, worst_asinh = 0.0;
  for (double kappa = 0.5; kappa <= 7.95; kappa += 0.25) {
    worst_half = std::max(worst_half, std::abs(schramm_lpp(0.0, kappa) - 0.5));
    for (int i = 1; i < 100; ++i) {
      const double t = -std::numbers::pi / 2 + std::numbers::pi * i / 100.0;
      worst_sym = std::max(worst_sym, std::abs(schramm_lpp(t, kappa) + schramm_lpp(-t, kappa) - 1.0));
      r.cases += 2;
    }
  }
  for (int i = 0; i < 100; ++i) {
    const double t = -std::numbers::pi / 2 + std::numbers::pi * (i + 0.5) / 100.0;
    worst_k4 = std::max(worst_k4, std::abs(schramm_lpp(t, 4.0) - (0.5 + t / std::numbers::pi)));
    ++r.cases;
  }
  // 2F1(1/2,1;3/2;-x^2) = atan(x)/x and 2F1(1/2,1/2;3/2;-x^2) = asinh(x)/x
  for (double x = 0.01; x < 20.0; x *= 1.1) {
    worst_atan = std::max(worst_atan, std::abs(gauss_2f1_negz(1.0, x * x) - std::atan(x) / x));
    worst_asinh = std::max(worst_asinh, std::abs(gauss_2f1_negz(0.5, x * x) - std::asinh(x) / x));
    r.cases += 2;
  }
  r.passed = worst_half <= 1e-12 && worst_sym <= 1e-12 && worst_k4 <= 1e-10 && worst_atan <= 1e-12 && worst_asinh <= 1e-12;
  std::ostringstream os;
  os.precision(2);
  os << "P(0)-1/2 " << worst_half << ", symmetry " << worst_sym << ", kappa=4 " << worst_k4 << ", atan " << worst_atan
     << ", asinh " << worst_asinh;
  r.detail = os.str();
  return r;
}

inline std::vector<CheckResult> run_all(std::uint64_t seed = 1) {
  return {optimality_equivalence(200, seed), kruskal_prim(1000, seed + 1), percolation_equivalence(100, 32, seed + 2),
          cut_and_restriction(50, 200, seed + 3), schramm_kernel()};
}

}  // namespace slemst::verify
