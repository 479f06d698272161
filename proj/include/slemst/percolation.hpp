#pragma once

#include <stdexcept>
#include <vector>

#include "slemst/disorder.hpp"
#include "slemst/lattice.hpp"
#include "slemst/spanning.hpp"

namespace slemst {

// Site-percolation occupation of the plaquettes: true iff omega(f) > theta.
struct FaceColoring {
  std::vector<char> color;  // per face, ghosts included

  bool operator[](int f) const { return color[f] != 0; }
  std::size_t size() const { return color.size(); }
};

inline FaceColoring color_faces(const DisorderInstance& instance) {
  FaceColoring c;
  c.color.reserve(instance.omega.size());
  for (double w : instance.omega) c.color.push_back(w > instance.theta ? 1 : 0);
  return c;
}

// Interface walk of critical site percolation on the honeycomb from s to t.
// Each step follows the unique edge whose two faces differ in color; the face
// color seen on the left of the walk is fixed by the first step and checked
// along the way. Weights are not consulted, so the returned path carries no
// sorted keys (use attach_weights).
inline LatticePath exploration_path(const FaceColoring& coloring, const PlanarLattice& lattice) {
  if (lattice.kind() != LatticeKind::Honeycomb)
    throw std::invalid_argument("exploration_path: only defined on the honeycomb lattice");
  if (coloring.size() != lattice.face_count())
    throw std::invalid_argument("exploration_path: coloring does not match the lattice");

  auto interface = [&](int e) {
    const auto& ef = lattice.edge_faces(e);
    return coloring[ef.left] != coloring[ef.right];
  };
  // Face on the left of edge e when walked from `from`.
  auto left_face = [&](int e, int from) {
    const auto& ef = lattice.edge_faces(e);
    return lattice.edge(e).u == from ? ef.left : ef.right;
  };

  const int s = lattice.s_marker().vertex;
  const int t = lattice.t_marker().vertex;
  int first = -1;
  for (int e : lattice.incident_edges(s)) {
    if (!interface(e)) continue;
    if (first >= 0) throw std::runtime_error("exploration_path: ambiguous start at s");
    first = e;
  }
  if (first < 0) throw std::runtime_error("exploration_path: boundary coloring has no interface at s");

  LatticePath path;
  path.vertices.push_back(s);
  const bool left_color = coloring[left_face(first, s)];
  int v = s, e = first;
  const std::size_t max_steps = lattice.edge_count();
  while (true) {
    if (coloring[left_face(e, v)] != left_color)
      throw std::runtime_error("exploration_path: interface changes side");
    path.edges.push_back(e);
    v = lattice.other_endpoint(e, v);
    path.vertices.push_back(v);
    if (v == t) break;
    if (path.edges.size() > max_steps) throw std::runtime_error("exploration_path: walk does not terminate");
    int next = -1;
    for (int c : lattice.incident_edges(v)) {
      if (c == e || !interface(c)) continue;
      if (next >= 0) throw std::runtime_error("exploration_path: branching interface");
      next = c;
    }
    if (next < 0) throw std::runtime_error("exploration_path: dead end before t");
    e = next;
  }
  return path;
}

}  // namespace slemst
