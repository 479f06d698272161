#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slemst {

enum class LatticeKind { Square, Honeycomb };

// Side of the bounding rectangle a perimeter edge (and its ghost face) lies on.
enum class Side { Bottom, Right, Top, Left };

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Exact integer coordinates. Square: doubled lattice units. Honeycomb: doubled
// x, and y in units of half the hexagon side.
struct GridPoint {
  int x = 0;
  int y = 0;
  friend bool operator==(const GridPoint&, const GridPoint&) = default;
  friend bool operator<(const GridPoint& a, const GridPoint& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
};

// Canonical edge u < v.
struct Edge {
  int u = 0;
  int v = 0;
};

// Faces to the left and right of an edge traversed u -> v.
struct EdgeFaces {
  int left = -1;
  int right = -1;
};

struct Face {
  std::vector<int> vertices;  // counterclockwise; two vertices for a ghost
  Point centroid;
  GridPoint grid_centroid;  // exact for interior faces only
  bool ghost = false;
  int perimeter_edge = -1;  // ghost faces: the perimeter edge they sit on
  Side side = Side::Bottom;  // ghost faces: side of the rectangle
};

// A marked boundary point. `vertex` is the perimeter vertex where a path
// starts or ends; `split` is the index into boundary_faces() of the first
// ghost face that follows the marker when walking the perimeter
// counterclockwise.
struct BoundaryMarker {
  int vertex = -1;
  std::size_t split = 0;
};

enum class Parity { RequireEven, AllowOdd };

class PlanarLattice {
 public:
  LatticeKind kind() const { return kind_; }
  int a_cells() const { return a_cells_; }
  int b_cells() const { return b_cells_; }
  double width() const { return width_; }
  double height() const { return height_; }

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t face_count() const { return faces_.size(); }
  std::size_t interior_face_count() const { return interior_faces_; }

  const Point& position(int v) const { return vertices_[v]; }
  const GridPoint& grid(int v) const { return grid_[v]; }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  std::pair<int, int> endpoints(std::size_t e) const { return {edges_[e].u, edges_[e].v}; }
  const Face& face(int f) const { return faces_[f]; }
  const EdgeFaces& edge_faces(std::size_t e) const { return edge_faces_[e]; }
  bool is_perimeter(std::size_t e) const { return faces_[edge_faces_[e].right].ghost || faces_[edge_faces_[e].left].ghost; }

  std::span<const int> incident_edges(int v) const {
    return {incident_.data() + incident_offset_[v], incident_.data() + incident_offset_[v + 1]};
  }
  int other_endpoint(std::size_t e, int v) const { return edges_[e].u == v ? edges_[e].v : edges_[e].u; }

  // Ghost faces in counterclockwise order, starting right after s_marker.
  const std::vector<int>& boundary_faces() const { return boundary_faces_; }
  const BoundaryMarker& s_marker() const { return s_marker_; }
  const BoundaryMarker& t_marker() const { return t_marker_; }

  // Vertices on the bottom and top sides (start/end sets of crossing paths).
  const std::vector<int>& bottom_vertices() const { return bottom_; }
  const std::vector<int>& top_vertices() const { return top_; }

  // Vertex nearest to a point of the rectangle; ties go to the lower index.
  int nearest_vertex(Point p) const {
    int best = 0;
    double best_d = INFINITY;
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
      const double dx = vertices_[v].x - p.x;
      const double dy = vertices_[v].y - p.y;
      const double d = dx * dx + dy * dy;
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(v);
      }
    }
    return best;
  }

  // Grid -> continuous coordinates.
  Point to_point(GridPoint g) const {
    if (kind_ == LatticeKind::Square) return {0.5 * g.x, 0.5 * g.y};
    return {0.5 * g.x, g.y / (2.0 * std::sqrt(3.0))};
  }

  friend bool operator==(const PlanarLattice& a, const PlanarLattice& b) {
    if (a.kind_ != b.kind_ || a.a_cells_ != b.a_cells_ || a.b_cells_ != b.b_cells_) return false;
    if (a.vertices_.size() != b.vertices_.size() || a.edges_.size() != b.edges_.size() ||
        a.faces_.size() != b.faces_.size())
      return false;
    for (std::size_t i = 0; i < a.grid_.size(); ++i)
      if (!(a.grid_[i] == b.grid_[i])) return false;
    for (std::size_t e = 0; e < a.edges_.size(); ++e) {
      if (a.edges_[e].u != b.edges_[e].u || a.edges_[e].v != b.edges_[e].v) return false;
      if (a.edge_faces_[e].left != b.edge_faces_[e].left || a.edge_faces_[e].right != b.edge_faces_[e].right)
        return false;
    }
    for (std::size_t f = 0; f < a.faces_.size(); ++f)
      if (a.faces_[f].vertices != b.faces_[f].vertices) return false;
    return a.boundary_faces_ == b.boundary_faces_ && a.s_marker_.vertex == b.s_marker_.vertex &&
           a.t_marker_.vertex == b.t_marker_.vertex && a.t_marker_.split == b.t_marker_.split;
  }

 private:
  friend PlanarLattice build_lattice(LatticeKind, int, int, Parity);

  LatticeKind kind_ = LatticeKind::Square;
  int a_cells_ = 0;
  int b_cells_ = 0;
  double width_ = 0.0;
  double height_ = 0.0;
  std::vector<Point> vertices_;
  std::vector<GridPoint> grid_;
  std::vector<Edge> edges_;
  std::vector<EdgeFaces> edge_faces_;
  std::vector<Face> faces_;
  std::size_t interior_faces_ = 0;
  std::vector<int> incident_offset_;
  std::vector<int> incident_;
  std::vector<int> boundary_faces_;
  BoundaryMarker s_marker_;
  BoundaryMarker t_marker_;
  std::vector<int> bottom_;
  std::vector<int> top_;
};

namespace detail {

// Interior plaquettes as counterclockwise grid-coordinate polygons.
inline std::vector<std::vector<GridPoint>> plaquettes(LatticeKind kind, int a, int b) {
  std::vector<std::vector<GridPoint>> out;
  out.reserve(static_cast<std::size_t>(a) * b);
  for (int r = 0; r < b; ++r) {
    for (int i = 0; i < a; ++i) {
      if (kind == LatticeKind::Square) {
        const int x = 2 * i, y = 2 * r;
        out.push_back({{x, y}, {x + 2, y}, {x + 2, y + 2}, {x, y + 2}});
      } else {
        // pointy-top hexagons, odd rows shifted right by half a cell
        const int cx = 1 + 2 * i + (r % 2);
        const int cy = 2 + 3 * r;
        out.push_back({{cx, cy - 2}, {cx + 1, cy - 1}, {cx + 1, cy + 1}, {cx, cy + 2}, {cx - 1, cy + 1}, {cx - 1, cy - 1}});
      }
    }
  }
  return out;
}

inline bool on_bottom(LatticeKind kind, const GridPoint& g) {
  return kind == LatticeKind::Square ? g.y == 0 : g.y <= 1;
}

inline bool on_top(LatticeKind kind, const GridPoint& g, int b) {
  return kind == LatticeKind::Square ? g.y == 2 * b : g.y >= 3 * b;
}

// Cross product sign of (b - a) x (c - a) in grid units.
inline long long orient(const GridPoint& a, const GridPoint& b, const GridPoint& c) {
  return static_cast<long long>(b.x - a.x) * (c.y - a.y) - static_cast<long long>(b.y - a.y) * (c.x - a.x);
}

}  // namespace detail

// Builds a square or honeycomb tiling of an a_cells x b_cells rectangle with
// one ghost face per perimeter edge. Throws std::invalid_argument on sizes
// below 2 or (with Parity::RequireEven) odd widths.
inline PlanarLattice build_lattice(LatticeKind kind, int a_cells, int b_cells, Parity parity = Parity::RequireEven) {
  if (a_cells < 2 || b_cells < 2)
    throw std::invalid_argument("build_lattice: size too small (" + std::to_string(a_cells) + "x" +
                                std::to_string(b_cells) + "), both dimensions must be >= 2");
  if (parity == Parity::RequireEven && a_cells % 2 != 0)
    throw std::invalid_argument("build_lattice: odd width " + std::to_string(a_cells) +
                                " rejected, the bottom/top midpoint markers need an even number of cells");

  PlanarLattice L;
  L.kind_ = kind;
  L.a_cells_ = a_cells;
  L.b_cells_ = b_cells;
  if (kind == LatticeKind::Square) {
    L.width_ = a_cells;
    L.height_ = b_cells;
  } else {
    L.width_ = a_cells + 0.5;
    L.height_ = (3.0 * b_cells + 1.0) / (2.0 * std::sqrt(3.0));
  }

  const auto polys = detail::plaquettes(kind, a_cells, b_cells);

  // vertices, row-major in grid order
  std::vector<GridPoint> pts;
  for (const auto& p : polys) pts.insert(pts.end(), p.begin(), p.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  L.grid_ = pts;
  L.vertices_.reserve(pts.size());
  for (const auto& g : pts) L.vertices_.push_back(L.to_point(g));
  auto vid = [&](const GridPoint& g) {
    return static_cast<int>(std::lower_bound(pts.begin(), pts.end(), g) - pts.begin());
  };

  // interior faces and edges
  std::map<std::pair<int, int>, int> edge_index;
  std::vector<std::pair<int, int>> directed;  // (face, u->v) per face side
  std::vector<std::vector<int>> face_verts;
  for (const auto& p : polys) {
    std::vector<int> ids;
    for (const auto& g : p) ids.push_back(vid(g));
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const int u = ids[k], v = ids[(k + 1) % ids.size()];
      edge_index.emplace(std::minmax(u, v), 0);
    }
    face_verts.push_back(std::move(ids));
  }
  for (auto& [uv, idx] : edge_index) {
    idx = static_cast<int>(L.edges_.size());
    L.edges_.push_back({uv.first, uv.second});
  }
  L.edge_faces_.assign(L.edges_.size(), {});
  for (std::size_t f = 0; f < face_verts.size(); ++f) {
    Face face;
    face.vertices = face_verts[f];
    double sx = 0.0, sy = 0.0;
    long long gx = 0, gy = 0;
    for (int v : face.vertices) {
      sx += L.vertices_[v].x;
      sy += L.vertices_[v].y;
      gx += pts[v].x;
      gy += pts[v].y;
    }
    const auto n = static_cast<long long>(face.vertices.size());
    face.centroid = {sx / n, sy / n};
    face.grid_centroid = {static_cast<int>(gx / n), static_cast<int>(gy / n)};
    const auto& ids = face.vertices;
    for (std::size_t k = 0; k < ids.size(); ++k) {
      const int u = ids[k], v = ids[(k + 1) % ids.size()];
      const int e = edge_index.at(std::minmax(u, v));
      // counterclockwise traversal: the face lies to the left of u -> v
      if (L.edges_[e].u == u)
        L.edge_faces_[e].left = static_cast<int>(f);
      else
        L.edge_faces_[e].right = static_cast<int>(f);
    }
    L.faces_.push_back(std::move(face));
  }
  L.interior_faces_ = L.faces_.size();

  // ghost faces, one per perimeter edge
  const double mid_x = L.width_ / 2.0;
  for (std::size_t e = 0; e < L.edges_.size(); ++e) {
    auto& ef = L.edge_faces_[e];
    if (ef.left >= 0 && ef.right >= 0) continue;
    const int interior = ef.left >= 0 ? ef.left : ef.right;
    Face g;
    g.ghost = true;
    g.perimeter_edge = static_cast<int>(e);
    g.vertices = {L.edges_[e].u, L.edges_[e].v};
    const Point pu = L.vertices_[L.edges_[e].u], pv = L.vertices_[L.edges_[e].v];
    const Point c = L.faces_[interior].centroid;
    g.centroid = {pu.x + pv.x - c.x, pu.y + pv.y - c.y};
    const auto& gu = pts[L.edges_[e].u];
    const auto& gv = pts[L.edges_[e].v];
    if (detail::on_bottom(kind, gu) && detail::on_bottom(kind, gv))
      g.side = Side::Bottom;
    else if (detail::on_top(kind, gu, b_cells) && detail::on_top(kind, gv, b_cells))
      g.side = Side::Top;
    else
      g.side = 0.5 * (pu.x + pv.x) < mid_x ? Side::Left : Side::Right;
    const int gid = static_cast<int>(L.faces_.size());
    (ef.left >= 0 ? ef.right : ef.left) = gid;
    L.faces_.push_back(std::move(g));
  }

  // incidence (CSR)
  const std::size_t nv = L.vertices_.size();
  L.incident_offset_.assign(nv + 1, 0);
  for (const auto& e : L.edges_) {
    ++L.incident_offset_[e.u + 1];
    ++L.incident_offset_[e.v + 1];
  }
  for (std::size_t v = 0; v < nv; ++v) L.incident_offset_[v + 1] += L.incident_offset_[v];
  L.incident_.assign(L.incident_offset_.back(), 0);
  {
    auto fill = L.incident_offset_;
    for (std::size_t e = 0; e < L.edges_.size(); ++e) {
      L.incident_[fill[L.edges_[e].u]++] = static_cast<int>(e);
      L.incident_[fill[L.edges_[e].v]++] = static_cast<int>(e);
    }
  }

  // bottom/top vertex sets and markers
  for (std::size_t v = 0; v < nv; ++v) {
    if (detail::on_bottom(kind, pts[v])) L.bottom_.push_back(static_cast<int>(v));
    if (detail::on_top(kind, pts[v], b_cells)) L.top_.push_back(static_cast<int>(v));
  }
  // Marker candidates: honeycomb uses the degree-2 tips so that exactly one
  // edge at the marker separates differently colored ghost faces.
  auto pick_marker = [&](const std::vector<int>& side, bool top) {
    int best = -1;
    double best_d = INFINITY;
    for (int v : side) {
      if (kind == LatticeKind::Honeycomb) {
        const int extreme = top ? 3 * b_cells + 1 : 0;
        if (pts[v].y != extreme) continue;
      }
      const double d = std::abs(L.vertices_[v].x - mid_x);
      if (d < best_d - 1e-12) {
        best_d = d;
        best = v;
      }
    }
    return best;
  };
  const int s_vertex = pick_marker(L.bottom_, false);
  const int t_vertex = pick_marker(L.top_, true);

  // perimeter cycle, counterclockwise (interior face on the left)
  std::vector<int> out_edge(nv, -1);
  std::size_t perimeter = 0;
  for (std::size_t e = 0; e < L.edges_.size(); ++e) {
    const auto& ef = L.edge_faces_[e];
    if (!L.faces_[ef.left].ghost && !L.faces_[ef.right].ghost) continue;
    ++perimeter;
    const int from = L.faces_[ef.left].ghost ? L.edges_[e].v : L.edges_[e].u;
    if (out_edge[from] != -1) throw std::logic_error("build_lattice: perimeter is not a simple cycle");
    out_edge[from] = static_cast<int>(e);
  }
  int v = s_vertex;
  L.s_marker_ = {s_vertex, 0};
  do {
    if (v == t_vertex) L.t_marker_ = {t_vertex, L.boundary_faces_.size()};
    const int e = out_edge[v];
    const auto& ef = L.edge_faces_[e];
    L.boundary_faces_.push_back(L.faces_[ef.left].ghost ? ef.left : ef.right);
    v = L.other_endpoint(e, v);
  } while (v != s_vertex && L.boundary_faces_.size() <= perimeter);
  if (L.boundary_faces_.size() != perimeter)
    throw std::logic_error("build_lattice: perimeter splits into several cycles");
  return L;
}

// The two arcs of ghost faces delimited by s and t: arc_a runs
// counterclockwise from s to t (the right-hand side of the rectangle), arc_b
// is the complement.
struct BoundaryArcs {
  std::vector<int> arc_a;
  std::vector<int> arc_b;
};

inline BoundaryArcs boundary_arcs(const PlanarLattice& lattice) {
  const auto& cycle = lattice.boundary_faces();
  const std::size_t s = lattice.s_marker().split;
  const std::size_t t = lattice.t_marker().split;
  if (lattice.s_marker().vertex == lattice.t_marker().vertex || s == t)
    throw std::invalid_argument("boundary_arcs: s and t markers coincide");
  BoundaryArcs arcs;
  const std::size_t n = cycle.size();
  for (std::size_t k = s; k != t; k = (k + 1) % n) arcs.arc_a.push_back(cycle[k]);
  for (std::size_t k = t; k != s; k = (k + 1) % n) arcs.arc_b.push_back(cycle[k]);
  return arcs;
}

inline std::string to_string(LatticeKind kind) {
  return kind == LatticeKind::Square ? "square" : "honeycomb";
}

}  // namespace slemst
