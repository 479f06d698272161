#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "slemst/lattice.hpp"
#include "slemst/rng.hpp"

namespace slemst {

enum class BoundaryCondition { Free, SleLike, SleFree, Repulsive };

// Which s-t arc is held above the threshold under SleLike. LeftHigh puts the
// left-hand arc (clockwise from s to t) above theta.
enum class ArcOrientation { LeftHigh, RightHigh };

namespace thresholds {
inline constexpr double kHoneycombCritical = 0.5;
inline constexpr double kSquareCritical = 0.5927463;
inline constexpr double kSquareControl = 0.5;
}  // namespace thresholds

inline double critical_threshold(LatticeKind kind) {
  return kind == LatticeKind::Square ? thresholds::kSquareCritical : thresholds::kHoneycombCritical;
}

struct DisorderInstance {
  std::shared_ptr<const PlanarLattice> lattice;
  std::vector<double> omega;  // per face, ghosts included
  double theta = 0.5;
  BoundaryCondition bc = BoundaryCondition::Free;
  ArcOrientation orientation = ArcOrientation::LeftHigh;
  std::uint64_t seed = 0;
};

enum class WeightProvenance { Induced, RandomModel };

// Lattice edges carrying weights. Satisfies the WeightedGraph concept.
struct WeightedEdgeGraph {
  std::shared_ptr<const PlanarLattice> lattice;
  std::vector<double> w_edge;
  WeightProvenance provenance = WeightProvenance::Induced;

  std::size_t vertex_count() const { return lattice->vertex_count(); }
  std::size_t edge_count() const { return lattice->edge_count(); }
  std::pair<int, int> endpoints(std::size_t e) const { return lattice->endpoints(e); }
  double weight(std::size_t e) const { return w_edge[e]; }
};

namespace detail {

inline constexpr std::uint64_t kFaceStream = 0x6661636573ULL;  // "faces"
inline constexpr std::uint64_t kEdgeStream = 0x6564676573ULL;  // "edges"

// Uniform on (theta, 1).
inline double above(double theta, double u) {
  const double w = theta + (1.0 - theta) * (u + 0x1.0p-54);
  return w > theta ? w : std::nextafter(theta, 1.0);
}

// Uniform on [0, theta).
inline double below(double theta, double u) {
  const double w = theta * u;
  return w < theta ? w : std::nextafter(theta, 0.0);
}

}  // namespace detail

// Draws plaquette weights: interior faces i.i.d. uniform on [0,1); ghost
// faces from the bulk law or constrained to one side of theta depending on the
// boundary condition. A pure function of its arguments.
inline DisorderInstance sample_instance(std::shared_ptr<const PlanarLattice> lattice, BoundaryCondition bc,
                                        double theta, std::uint64_t seed,
                                        ArcOrientation orientation = ArcOrientation::LeftHigh) {
  if (!(theta > 0.0 && theta < 1.0))
    throw std::invalid_argument("sample_instance: theta must lie in (0,1), got " + std::to_string(theta));
  if (!lattice) throw std::invalid_argument("sample_instance: null lattice");

  DisorderInstance inst;
  inst.theta = theta;
  inst.bc = bc;
  inst.orientation = orientation;
  inst.seed = seed;
  const CounterStream rng(seed, detail::kFaceStream);
  const auto& L = *lattice;
  inst.omega.resize(L.face_count());
  for (std::size_t f = 0; f < L.face_count(); ++f) inst.omega[f] = rng.uniform(f);

  auto constrain = [&](int f, bool high) {
    const double u = rng.uniform(f);
    inst.omega[f] = high ? detail::above(theta, u) : detail::below(theta, u);
  };
  switch (bc) {
    case BoundaryCondition::Free:
      break;
    case BoundaryCondition::SleLike: {
      const auto arcs = boundary_arcs(L);
      const bool left_high = orientation == ArcOrientation::LeftHigh;
      for (int f : arcs.arc_a) constrain(f, !left_high);
      for (int f : arcs.arc_b) constrain(f, left_high);
      break;
    }
    case BoundaryCondition::SleFree:
      for (int f : L.boundary_faces()) {
        const Side side = L.face(f).side;
        if (side == Side::Right) constrain(f, true);
        if (side == Side::Left) constrain(f, false);
      }
      break;
    case BoundaryCondition::Repulsive:
      for (int f : L.boundary_faces()) constrain(f, true);
      break;
  }
  inst.lattice = std::move(lattice);
  return inst;
}

// W_e = (omega(f1) - theta) * (omega(f2) - theta) over the two faces of e.
inline WeightedEdgeGraph induce_edge_weights(const DisorderInstance& instance) {
  const auto& L = *instance.lattice;
  WeightedEdgeGraph g{instance.lattice, std::vector<double>(L.edge_count()), WeightProvenance::Induced};
  for (std::size_t e = 0; e < L.edge_count(); ++e) {
    const auto& ef = L.edge_faces(e);
    g.w_edge[e] = (instance.omega[ef.left] - instance.theta) * (instance.omega[ef.right] - instance.theta);
  }
  return g;
}

// Random MST model: i.i.d. uniform edge weights.
inline WeightedEdgeGraph sample_random_edge_weights(std::shared_ptr<const PlanarLattice> lattice, std::uint64_t seed) {
  if (!lattice) throw std::invalid_argument("sample_random_edge_weights: null lattice");
  const CounterStream rng(seed, detail::kEdgeStream);
  std::vector<double> w(lattice->edge_count());
  for (std::size_t e = 0; e < w.size(); ++e) w[e] = rng.uniform(e);
  return {std::move(lattice), std::move(w), WeightProvenance::RandomModel};
}

inline std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Free: return "free";
    case BoundaryCondition::SleLike: return "sle_like";
    case BoundaryCondition::SleFree: return "sle_free";
    case BoundaryCondition::Repulsive: return "repulsive";
  }
  return "?";
}

}  // namespace slemst
