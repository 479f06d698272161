#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slemst {

template <class G>
concept WeightedGraph = requires(const G& g, std::size_t e) {
  { g.vertex_count() } -> std::convertible_to<std::size_t>;
  { g.edge_count() } -> std::convertible_to<std::size_t>;
  { g.endpoints(e) } -> std::convertible_to<std::pair<int, int>>;
  { g.weight(e) } -> std::convertible_to<double>;
};

// Plain edge list with weights; used for hand-built graphs.
struct EdgeListGraph {
  std::size_t vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> weights;

  std::size_t vertex_count() const { return vertices; }
  std::size_t edge_count() const { return edges.size(); }
  std::pair<int, int> endpoints(std::size_t e) const { return edges[e]; }
  double weight(std::size_t e) const { return weights[e]; }
};

// Total order on edges: weight first, edge index as tie-break.
struct EdgeKey {
  double weight = 0.0;
  int edge = -1;

  friend bool operator==(const EdgeKey&, const EdgeKey&) = default;
  friend bool operator<(const EdgeKey& a, const EdgeKey& b) {
    return a.weight != b.weight ? a.weight < b.weight : a.edge < b.edge;
  }
  friend bool operator>(const EdgeKey& a, const EdgeKey& b) { return b < a; }
};

template <WeightedGraph G>
EdgeKey key_of(const G& g, std::size_t e) {
  return {g.weight(e), static_cast<int>(e)};
}

class DisconnectedGraph : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns the new root, or -1 if already joined.
  int unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return -1;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return a;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

struct SpanningTree {
  int root = 0;
  std::vector<int> edge_set;  // ascending edge index
  std::vector<int> parent;    // -1 at the root
  std::vector<int> parent_edge;
  std::vector<double> parent_weight;
  std::vector<int> depth;
  double total_weight = 0.0;
  std::vector<int> growth_order;  // Prim addition order, empty for Kruskal

  std::size_t vertex_count() const { return parent.size(); }
  EdgeKey parent_key(int v) const { return {parent_weight[v], parent_edge[v]}; }
};

// An ordered vertex/edge sequence plus its weights sorted in decreasing order.
struct LatticePath {
  std::vector<int> vertices;
  std::vector<int> edges;
  std::vector<EdgeKey> sorted;  // non-increasing under the edge order

  std::size_t length() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  int front() const { return vertices.front(); }
  int back() const { return vertices.back(); }

  std::vector<double> sorted_weights() const {
    std::vector<double> w;
    w.reserve(sorted.size());
    for (const auto& k : sorted) w.push_back(k.weight);
    return w;
  }

  // A weight-only path; edge ids are left as -1 so identical weight lists
  // compare Equal.
  static LatticePath from_weights(std::vector<double> weights) {
    LatticePath p;
    for (double w : weights) p.sorted.push_back({w, -1});
    std::sort(p.sorted.begin(), p.sorted.end(), std::greater<>());
    p.edges.assign(weights.size(), -1);
    return p;
  }
};

// Fills the sorted key vector of a path from the graph's weights.
template <WeightedGraph G>
void attach_weights(LatticePath& path, const G& g) {
  path.sorted.clear();
  path.sorted.reserve(path.edges.size());
  for (int e : path.edges) path.sorted.push_back(key_of(g, e));
  std::sort(path.sorted.begin(), path.sorted.end(), std::greater<>());
}

// Lexicographic comparison of decreasing weight vectors; on a common prefix
// the shorter path is smaller.
inline std::strong_ordering compare_paths(const LatticePath& g1, const LatticePath& g2) {
  const std::size_t n = std::min(g1.sorted.size(), g2.sorted.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (g1.sorted[k] < g2.sorted[k]) return std::strong_ordering::less;
    if (g2.sorted[k] < g1.sorted[k]) return std::strong_ordering::greater;
  }
  return g1.sorted.size() <=> g2.sorted.size();
}

// Largest edge weight on the path.
inline double path_cost(const LatticePath& g) {
  if (g.sorted.empty()) throw std::domain_error("path_cost: empty path");
  return g.sorted.front().weight;
}

namespace detail {

template <WeightedGraph G>
std::vector<std::vector<std::pair<int, int>>> adjacency(const G& g) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.vertex_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.endpoints(e);
    adj[u].push_back({v, static_cast<int>(e)});
    adj[v].push_back({u, static_cast<int>(e)});
  }
  return adj;
}

// Orients a tree edge set from `root`.
template <WeightedGraph G>
void root_tree(SpanningTree& t, const G& g, int root) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int e : t.edge_set) {
    const auto [u, v] = g.endpoints(e);
    adj[u].push_back({v, e});
    adj[v].push_back({u, e});
  }
  t.root = root;
  t.parent.assign(n, -1);
  t.parent_edge.assign(n, -1);
  t.parent_weight.assign(n, -std::numeric_limits<double>::infinity());
  t.depth.assign(n, -1);
  std::vector<int> stack{root};
  t.depth[root] = 0;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (auto [v, e] : adj[u]) {
      if (t.depth[v] >= 0) continue;
      t.depth[v] = t.depth[u] + 1;
      t.parent[v] = u;
      t.parent_edge[v] = e;
      t.parent_weight[v] = g.weight(e);
      stack.push_back(v);
    }
  }
}

}  // namespace detail

// Kruskal's algorithm under the (weight, index) order. The resulting tree is
// rooted at vertex 0.
template <WeightedGraph G>
SpanningTree kruskal(const G& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) throw std::invalid_argument("kruskal: empty graph");
  std::vector<int> order(g.edge_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return key_of(g, a) < key_of(g, b); });
  UnionFind uf(n);
  SpanningTree t;
  t.edge_set.reserve(n - 1);
  for (int e : order) {
    const auto [u, v] = g.endpoints(e);
    if (uf.unite(u, v) < 0) continue;
    t.edge_set.push_back(e);
    t.total_weight += g.weight(e);
    if (t.edge_set.size() + 1 == n) break;
  }
  if (t.edge_set.size() + 1 != n) throw DisconnectedGraph("kruskal: graph is disconnected");
  std::sort(t.edge_set.begin(), t.edge_set.end());
  detail::root_tree(t, g, 0);
  return t;
}

// Prim's algorithm from `root`; growth_order lists edges in addition order.
template <WeightedGraph G>
SpanningTree prim(const G& g, int root) {
  const std::size_t n = g.vertex_count();
  if (root < 0 || static_cast<std::size_t>(root) >= n)
    throw std::invalid_argument("prim: invalid root " + std::to_string(root));
  const auto adj = detail::adjacency(g);
  struct Item {
    EdgeKey key;
    int to;
    bool operator>(const Item& o) const { return key > o.key; }
  };
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  std::vector<char> in_tree(n, 0);
  SpanningTree t;
  auto absorb = [&](int v) {
    in_tree[v] = 1;
    for (auto [w, e] : adj[v])
      if (!in_tree[w]) frontier.push({key_of(g, e), w});
  };
  absorb(root);
  while (!frontier.empty() && t.growth_order.size() + 1 < n) {
    const Item it = frontier.top();
    frontier.pop();
    if (in_tree[it.to]) continue;
    t.growth_order.push_back(it.key.edge);
    t.total_weight += it.key.weight;
    absorb(it.to);
  }
  if (t.growth_order.size() + 1 != n) throw DisconnectedGraph("prim: graph is disconnected");
  t.edge_set = t.growth_order;
  std::sort(t.edge_set.begin(), t.edge_set.end());
  detail::root_tree(t, g, root);
  return t;
}

// Unique simple path between i and j on the tree, walking parent pointers.
inline LatticePath tree_path(const SpanningTree& tree, int i, int j) {
  const auto n = static_cast<int>(tree.vertex_count());
  if (i < 0 || j < 0 || i >= n || j >= n) throw std::out_of_range("tree_path: vertex out of range");
  std::vector<int> up_i{i}, up_j{j};
  std::vector<int> e_i, e_j;
  int a = i, b = j;
  while (tree.depth[a] > tree.depth[b]) {
    e_i.push_back(tree.parent_edge[a]);
    a = tree.parent[a];
    up_i.push_back(a);
  }
  while (tree.depth[b] > tree.depth[a]) {
    e_j.push_back(tree.parent_edge[b]);
    b = tree.parent[b];
    up_j.push_back(b);
  }
  while (a != b) {
    e_i.push_back(tree.parent_edge[a]);
    a = tree.parent[a];
    up_i.push_back(a);
    e_j.push_back(tree.parent_edge[b]);
    b = tree.parent[b];
    up_j.push_back(b);
  }
  LatticePath p;
  p.vertices = std::move(up_i);
  p.vertices.insert(p.vertices.end(), up_j.rbegin() + 1, up_j.rend());
  p.edges = std::move(e_i);
  p.edges.insert(p.edges.end(), e_j.rbegin(), e_j.rend());
  p.sorted.reserve(p.edges.size());
  for (std::size_t k = 0; k + 1 < p.vertices.size(); ++k) {
    const int u = p.vertices[k], v = p.vertices[k + 1];
    const int child = tree.parent[u] == v ? u : v;
    p.sorted.push_back(tree.parent_key(child));
  }
  std::sort(p.sorted.begin(), p.sorted.end(), std::greater<>());
  return p;
}

// Lowest common ancestor by depth equalization.
inline int tree_lca(const SpanningTree& tree, int a, int b) {
  while (tree.depth[a] > tree.depth[b]) a = tree.parent[a];
  while (tree.depth[b] > tree.depth[a]) b = tree.parent[b];
  while (a != b) {
    a = tree.parent[a];
    b = tree.parent[b];
  }
  return a;
}

inline constexpr std::size_t kBruteForceVertexLimit = 20;

// Minimum over all simple i-j paths under compare_paths, by exhaustive
// depth-first enumeration. Guarded to small graphs.
template <WeightedGraph G>
LatticePath brute_force_optimal_path(const G& g, int i, int j) {
  const std::size_t n = g.vertex_count();
  if (n > kBruteForceVertexLimit)
    throw std::length_error("brute_force_optimal_path: instance too large (" + std::to_string(n) + " vertices)");
  if (i == j) return LatticePath{{i}, {}, {}};
  const auto adj = detail::adjacency(g);
  std::vector<char> on(n, 0);
  LatticePath cur, best;
  bool found = false;
  cur.vertices.push_back(i);
  on[i] = 1;
  std::function<void(int)> dfs = [&](int u) {
    for (auto [v, e] : adj[u]) {
      if (on[v]) continue;
      cur.vertices.push_back(v);
      cur.edges.push_back(e);
      if (v == j) {
        attach_weights(cur, g);
        if (!found || compare_paths(cur, best) < 0) {
          best = cur;
          found = true;
        }
      } else {
        on[v] = 1;
        dfs(v);
        on[v] = 0;
      }
      cur.vertices.pop_back();
      cur.edges.pop_back();
    }
  };
  dfs(i);
  if (!found) throw DisconnectedGraph("brute_force_optimal_path: no path between the vertices");
  return best;
}

// Clusters of the subgraph of strictly negative edges.
class NegativeClusters {
 public:
  template <WeightedGraph G>
  explicit NegativeClusters(const G& g) : uf_(g.vertex_count()) {
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (g.weight(e) < 0.0) {
        const auto [u, v] = g.endpoints(e);
        uf_.unite(u, v);
      }
    }
  }
  bool same(int i, int j) { return uf_.find(i) == uf_.find(j); }

 private:
  UnionFind uf_;
};

// i and j are connected when their optimal path has negative cost. Evaluated
// both on the tree and through negative-edge clusters; the two must agree.
// An empty path (i == j) counts as connected.
template <WeightedGraph G>
bool connected(const SpanningTree& tree, const G& g, int i, int j) {
  const bool by_tree = i == j || path_cost(tree_path(tree, i, j)) < 0.0;
  NegativeClusters clusters(g);
  const bool by_clusters = clusters.same(i, j);
  if (by_tree != by_clusters) throw std::logic_error("connected: tree and cluster characterizations disagree");
  return by_tree;
}

namespace detail {

// From `source`, the best tree path to any vertex flagged in `target`, using
// only tree edges strictly below `cap`. Among disjoint branches the one with
// the smaller maximum wins; reaching a target directly beats any extension.
inline std::vector<int> best_branch(const SpanningTree& tree, const std::vector<std::vector<int>>& children, int source,
                                    const std::vector<char>& target, const EdgeKey& cap) {
  const EdgeKey minus_inf{-std::numeric_limits<double>::infinity(), -1};
  const EdgeKey plus_inf{std::numeric_limits<double>::infinity(), std::numeric_limits<int>::max()};
  auto edge_key = [&](int u, int v) { return tree.parent[u] == v ? tree.parent_key(u) : tree.parent_key(v); };

  // iterative DFS over the capped forest rooted at source
  std::vector<int> order, from(tree.vertex_count(), -2);
  std::vector<int> stack{source};
  from[source] = -1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    order.push_back(u);
    auto visit = [&](int v) {
      if (from[v] != -2 || !(edge_key(u, v) < cap)) return;
      from[v] = u;
      stack.push_back(v);
    };
    if (tree.parent[u] >= 0) visit(tree.parent[u]);
    for (int c : children[u]) visit(c);
  }
  std::vector<EdgeKey> best(tree.vertex_count(), plus_inf);
  std::vector<int> next(tree.vertex_count(), -1);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int u = *it;
    if (target[u]) {
      best[u] = minus_inf;
      continue;
    }
    auto consider = [&](int v) {
      if (from[v] != u || best[v] == plus_inf) return;
      const EdgeKey k = std::max(edge_key(u, v), best[v], [](const EdgeKey& a, const EdgeKey& b) { return a < b; });
      if (k < best[u]) {
        best[u] = k;
        next[u] = v;
      }
    };
    if (tree.parent[u] >= 0) consider(tree.parent[u]);
    for (int c : children[u]) consider(c);
  }
  std::vector<int> walk{source};
  while (!target[walk.back()]) walk.push_back(next[walk.back()]);
  return walk;
}

}  // namespace detail

// Optimal path among all tree paths from a vertex of `bottom` to one of `top`,
// oriented bottom -> top. The maximum edge is the first tree edge (in
// increasing order) that joins a bottom and a top vertex; both halves are then
// minimized independently.
inline LatticePath optimal_crossing_path(const SpanningTree& tree, std::span<const int> bottom, std::span<const int> top) {
  if (bottom.empty() || top.empty()) throw std::invalid_argument("optimal_crossing_path: empty vertex set");
  const std::size_t n = tree.vertex_count();
  std::vector<char> is_bottom(n, 0), is_top(n, 0);
  for (int v : bottom) is_bottom[v] = 1;
  for (int v : top) {
    if (is_bottom[v]) throw std::invalid_argument("optimal_crossing_path: bottom and top sets overlap");
    is_top[v] = 1;
  }
  std::vector<int> nonroot;
  nonroot.reserve(n);
  std::vector<std::vector<int>> children(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (tree.parent[v] < 0) continue;
    nonroot.push_back(static_cast<int>(v));
    children[tree.parent[v]].push_back(static_cast<int>(v));
  }
  std::sort(nonroot.begin(), nonroot.end(), [&](int a, int b) { return tree.parent_key(a) < tree.parent_key(b); });

  UnionFind uf(n);
  std::vector<char> has_bottom(is_bottom), has_top(is_top);
  int cu = -1, cv = -1;
  for (int c : nonroot) {
    const int p = tree.parent[c];
    const int rc = uf.find(c), rp = uf.find(p);
    const bool hb = has_bottom[rc] || has_bottom[rp];
    const bool ht = has_top[rc] || has_top[rp];
    if (hb && ht) {
      // the side holding bottom vertices becomes the source half
      if (has_bottom[rc]) {
        cu = c;
        cv = p;
      } else {
        cu = p;
        cv = c;
      }
      break;
    }
    const int r = uf.unite(rc, rp);
    has_bottom[r] = hb;
    has_top[r] = ht;
  }
  if (cu < 0) throw DisconnectedGraph("optimal_crossing_path: tree does not join the sets");
  const int child = tree.parent[cu] == cv ? cu : cv;
  const EdgeKey cap = tree.parent_key(child);

  auto down = detail::best_branch(tree, children, cu, is_bottom, cap);
  auto up = detail::best_branch(tree, children, cv, is_top, cap);
  LatticePath p;
  p.vertices.assign(down.rbegin(), down.rend());
  p.vertices.insert(p.vertices.end(), up.begin(), up.end());
  p.edges.reserve(p.vertices.size() - 1);
  p.sorted.reserve(p.vertices.size() - 1);
  for (std::size_t k = 0; k + 1 < p.vertices.size(); ++k) {
    const int a = p.vertices[k], b = p.vertices[k + 1];
    const int c = tree.parent[a] == b ? a : b;
    p.edges.push_back(tree.parent_edge[c]);
    p.sorted.push_back(tree.parent_key(c));
  }
  std::sort(p.sorted.begin(), p.sorted.end(), std::greater<>());
  return p;
}

// For g1 < g2, checks that f_beta(g) = sum_e exp(beta * W_e) orders the two
// paths the same way for large beta. Scans the grid beta_max / 2^k downwards
// and reports whether a non-empty run of grid points ending at beta_max
// satisfies f_beta(g1) < f_beta(g2). Edges common to both paths cancel
// exactly before summing.
inline bool f_beta_order_check(const LatticePath& g1, const LatticePath& g2, double beta_max) {
  if (compare_paths(g1, g2) >= 0) throw std::invalid_argument("f_beta_order_check: requires g1 < g2");
  if (!(beta_max > 0.0)) throw std::invalid_argument("f_beta_order_check: beta_max must be positive");
  std::vector<double> only1, only2;
  {
    std::size_t a = 0, b = 0;
    const auto& s1 = g1.sorted;
    const auto& s2 = g2.sorted;
    while (a < s1.size() || b < s2.size()) {
      if (b == s2.size() || (a < s1.size() && s2[b] < s1[a])) {
        only1.push_back(s1[a++].weight);
      } else if (a == s1.size() || s1[a] < s2[b]) {
        only2.push_back(s2[b++].weight);
      } else {
        ++a;
        ++b;
      }
    }
  }
  auto log_f = [](const std::vector<double>& w, double beta) {
    if (w.empty()) return -std::numeric_limits<double>::infinity();
    double m = -std::numeric_limits<double>::infinity();
    for (double x : w) m = std::max(m, beta * x);
    double s = 0.0;
    for (double x : w) s += std::exp(beta * x - m);
    return m + std::log(s);
  };
  auto holds = [&](double beta) { return log_f(only1, beta) < log_f(only2, beta); };
  int run = 0;
  for (double beta = beta_max; beta > beta_max * 0x1.0p-60 && holds(beta); beta *= 0.5) ++run;
  return run > 0;
}

// Cut property: the lightest edge crossing (subset, complement) is a tree edge.
template <WeightedGraph G>
bool cut_property_check(const G& g, const SpanningTree& tree, std::span<const int> subset) {
  const std::size_t n = g.vertex_count();
  std::vector<char> in(n, 0);
  std::size_t count = 0;
  for (int v : subset) {
    if (!in[v]) ++count;
    in[v] = 1;
  }
  if (count == 0 || count == n) throw std::invalid_argument("cut_property_check: subset must be proper and non-empty");
  std::optional<EdgeKey> lightest;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.endpoints(e);
    if (in[u] == in[v]) continue;
    const EdgeKey k = key_of(g, e);
    if (!lightest || k < *lightest) lightest = k;
  }
  if (!lightest) return false;
  return std::binary_search(tree.edge_set.begin(), tree.edge_set.end(), lightest->edge);
}

// Restriction property. Returns nullopt when the tree restricted to `subset`
// is not connected; otherwise whether it equals the MST of the induced
// subgraph.
template <WeightedGraph G>
std::optional<bool> restriction_property_check(const G& g, const SpanningTree& tree, std::span<const int> subset) {
  const std::size_t n = g.vertex_count();
  std::vector<int> local(n, -1);
  int m = 0;
  for (int v : subset)
    if (local[v] < 0) local[v] = m++;
  if (m == 0) throw std::invalid_argument("restriction_property_check: empty subset");

  std::vector<int> restricted;
  for (int e : tree.edge_set) {
    const auto [u, v] = g.endpoints(e);
    if (local[u] >= 0 && local[v] >= 0) restricted.push_back(e);
  }
  if (static_cast<int>(restricted.size()) + 1 != m) return std::nullopt;

  EdgeListGraph induced;
  induced.vertices = static_cast<std::size_t>(m);
  std::vector<int> global_edge;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.endpoints(e);
    if (local[u] < 0 || local[v] < 0) continue;
    induced.edges.push_back({local[u], local[v]});
    induced.weights.push_back(g.weight(e));
    global_edge.push_back(static_cast<int>(e));
  }
  // Induced edges keep the global edge order, so tie-breaks agree.
  const SpanningTree sub = kruskal(induced);
  std::vector<int> mapped;
  for (int e : sub.edge_set) mapped.push_back(global_edge[e]);
  std::sort(mapped.begin(), mapped.end());
  return mapped == restricted;
}

}  // namespace slemst
