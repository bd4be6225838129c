#include "pcf/cut.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <string>
#include <unordered_set>

#include "pcf/error.hpp"

namespace pcf {

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Smaller root wins so that class representatives are deterministic.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent[a] = b;
  }
};

int require_edge(const SurfaceMesh& mesh, int a, int b) {
  auto e = mesh.find_edge(a, b);
  if (!e) {
    throw InputError("cut path step (" + std::to_string(a) + ", " + std::to_string(b) +
                     ") is not a mesh edge");
  }
  if (mesh.edge_multiplicity(a, b) > 1) {
    throw InputError("cut path step (" + std::to_string(a) + ", " + std::to_string(b) +
                     ") is ambiguous between parallel edges; give edge ids");
  }
  return *e;
}

std::size_t path_steps(const CutPath& path) {
  return path.closed() ? path.vertices.size() : path.vertices.size() - 1;
}

// Edge ids of a path, from its explicit list or from its vertex pairs.
std::vector<int> path_edges(const SurfaceMesh& mesh, const CutPath& path) {
  const auto& v = path.vertices;
  const std::size_t steps = path_steps(path);
  std::vector<int> edges;
  if (!path.edges.empty()) {
    if (path.edges.size() != steps) throw InputError("cut path edge list has the wrong length");
    for (std::size_t i = 0; i < steps; ++i) {
      const int e = path.edges[i];
      if (e < 0 || e >= mesh.num_edges()) throw InputError("cut path edge id out of range");
      const auto [a, b] = mesh.edge_vertices(e);
      const int p = v[i], q = v[(i + 1) % v.size()];
      if (!((a == p && b == q) || (a == q && b == p))) {
        throw InputError("cut path edge " + std::to_string(e) + " does not join its vertices");
      }
    }
    return path.edges;
  }
  for (std::size_t i = 0; i < steps; ++i) edges.push_back(require_edge(mesh, v[i], v[(i + 1) % v.size()]));
  return edges;
}

// Marks the edges of a path; throws if an edge is used twice.
void mark_path_edges(const SurfaceMesh& mesh, const CutPath& path, std::vector<bool>& cut) {
  for (int e : path_edges(mesh, path)) {
    if (cut[e]) throw InputError("cut paths are not edge-simple");
    cut[e] = true;
  }
}

void check_vertex_simple(const SurfaceMesh& mesh, const CutPath& path) {
  const std::size_t min_size = path.closed() && path.edges.empty() ? 3 : 2;
  if (path.vertices.size() < min_size) throw InputError("cut path is too short");
  std::vector<int> sorted = path.vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw InputError("cut path intersects itself");
  }
  for (int v : path.vertices) {
    if (v < 0 || v >= mesh.num_vertices()) throw InputError("cut path vertex out of range");
  }
}

// Positions in `loop` whose origin equals `target`.
std::vector<int> positions_of(const std::vector<int>& loop, const std::vector<int>& origin,
                              int target) {
  std::vector<int> at;
  for (int i = 0; i < static_cast<int>(loop.size()); ++i) {
    if (origin[loop[i]] == target) at.push_back(i);
  }
  return at;
}

// Vertices of loop from position `from` to position `to` inclusive, walking forward.
std::vector<int> loop_segment(const std::vector<int>& loop, int from, int to) {
  std::vector<int> seg;
  const int n = static_cast<int>(loop.size());
  for (int i = from;; i = (i + 1) % n) {
    seg.push_back(loop[i]);
    if (i == to) break;
  }
  return seg;
}

void assign_shift(CutMesh& cut, const std::vector<int>& seg, std::array<int, 2> s) {
  for (int c : seg) cut.shift[c] = s;
}

void finish_seams(CutMesh& cut) {
  for (const SeamRecord& seam : cut.seams) {
    if (seam.plus.size() != seam.minus.size()) {
      throw InputError("seam sides have different lengths");
    }
    for (std::size_t i = 0; i < seam.plus.size(); ++i) {
      if (cut.origin[seam.plus[i]] != cut.origin[seam.minus[i]]) {
        throw InputError("seam sides do not glue vertex to vertex");
      }
    }
  }
  const int n = cut.num_original_vertices();
  std::fill(cut.representative.begin(), cut.representative.end(), -1);
  for (int c = 0; c < cut.mesh.num_vertices(); ++c) {
    if (cut.shift[c] != std::array<int, 2>{0, 0}) continue;
    int& rep = cut.representative[cut.origin[c]];
    if (rep >= 0) throw InputError("two unshifted copies of one vertex; cut is inconsistent");
    rep = c;
  }
  std::vector<bool> on_boundary(n, false);
  const auto& part = cut.partition;
  for (const auto* group : {&part.beta_plus, &part.alpha_plus, &part.outer, &part.inner,
                            &part.cross_plus, &part.corners}) {
    for (int v : *group) on_boundary[v] = true;
  }
  for (int v = 0; v < n; ++v) {
    if (cut.representative[v] < 0) throw InputError("vertex lost by the cut");
    if (!on_boundary[v]) cut.partition.interior.push_back(v);
  }
}

void label_genus_one(CutMesh& cut, const CutPath& alpha) {
  const auto loops = boundary_loops(cut.mesh);
  const auto topo = cut.mesh.num_vertices() - cut.mesh.num_edges() + cut.mesh.num_faces();
  if (loops.size() != 1 || topo != 1) {
    throw TopologyError("cutting along alpha and beta did not produce a disk");
  }
  const auto& loop = loops.front().vertices;
  const int a0 = alpha.vertices.front();
  const auto corner_at = positions_of(loop, cut.origin, a0);
  if (corner_at.size() != 4) {
    throw TopologyError("alpha and beta do not cross transversally at their base point");
  }
  std::vector<bool> in_alpha(cut.num_original_vertices(), false);
  for (int v : alpha.vertices) in_alpha[v] = true;

  // Segment i runs from corner i to corner i+1 in counterclockwise order.
  std::array<std::vector<int>, 4> seg;
  std::array<bool, 4> is_alpha{};
  for (int i = 0; i < 4; ++i) {
    seg[i] = loop_segment(loop, corner_at[i], corner_at[(i + 1) % 4]);
    is_alpha[i] = in_alpha[cut.origin[seg[i][1]]] && cut.origin[seg[i][1]] != a0;
  }
  int start = -1;
  for (int i = 0; i < 4; ++i) {
    if (!is_alpha[i]) {
      start = i;
      break;
    }
  }
  if (start < 0 || is_alpha[(start + 2) % 4] || !is_alpha[(start + 1) % 4] ||
      !is_alpha[(start + 3) % 4]) {
    throw TopologyError("cut boundary is not of the form alpha beta alpha^-1 beta^-1");
  }
  const auto& beta_plus = seg[start];                // O -> O_t
  const auto& alpha_minus = seg[(start + 1) % 4];    // O_t -> O_ht
  const auto& beta_minus_rev = seg[(start + 2) % 4]; // O_ht -> O_h
  const auto& alpha_plus_rev = seg[(start + 3) % 4]; // O_h -> O

  // Shifts as coefficients of (h, t).
  assign_shift(cut, beta_plus, {0, 0});
  assign_shift(cut, alpha_minus, {0, 1});
  assign_shift(cut, beta_minus_rev, {1, 0});
  assign_shift(cut, alpha_plus_rev, {0, 0});
  const int o = beta_plus.front();
  const int o_t = alpha_minus.front();
  const int o_ht = beta_minus_rev.front();
  const int o_h = alpha_plus_rev.front();
  cut.shift[o] = {0, 0};
  cut.shift[o_t] = {0, 1};
  cut.shift[o_ht] = {1, 1};
  cut.shift[o_h] = {1, 0};
  cut.corners = {o, o_h, o_t, o_ht};

  auto& part = cut.partition;
  for (std::size_t i = 1; i + 1 < beta_plus.size(); ++i) part.beta_plus.push_back(cut.origin[beta_plus[i]]);
  for (std::size_t i = alpha_plus_rev.size() - 2; i >= 1; --i) {
    part.alpha_plus.push_back(cut.origin[alpha_plus_rev[i]]);
  }
  part.corners = {a0};

  SeamRecord a{SeamKind::alpha, {alpha_plus_rev.rbegin(), alpha_plus_rev.rend()}, alpha_minus, {0, 1}};
  SeamRecord b{SeamKind::beta, beta_plus, {beta_minus_rev.rbegin(), beta_minus_rev.rend()}, {1, 0}};
  cut.seams = {std::move(a), std::move(b)};
}

void label_cross(CutMesh& cut, const CutPath& path) {
  const auto loops = boundary_loops(cut.mesh);
  const auto topo = cut.mesh.num_vertices() - cut.mesh.num_edges() + cut.mesh.num_faces();
  if (loops.size() != 1 || topo != 1) {
    throw TopologyError("cutting along the cross path did not produce a disk");
  }
  const auto& loop = loops.front().vertices;
  const int p_outer = path.vertices.front();
  const int p_inner = path.vertices.back();
  auto outer_at = positions_of(loop, cut.origin, p_outer);
  auto inner_at = positions_of(loop, cut.origin, p_inner);
  if (outer_at.size() != 2 || inner_at.size() != 2) {
    throw TopologyError("cross path endpoints were not split into two copies each");
  }
  const int n = static_cast<int>(loop.size());
  // The outer segment starts at O1: the copy of p_outer whose successor is
  // not on the cut path.
  std::unordered_set<int> on_path(path.vertices.begin(), path.vertices.end());
  int o1_at = -1;
  for (int at : outer_at) {
    const int succ = loop[(at + 1) % n];
    if (!on_path.count(cut.origin[succ])) o1_at = at;
  }
  if (o1_at < 0) throw TopologyError("cannot locate the outer boundary on the cut mesh");
  const int o1t_at = outer_at[0] == o1_at ? outer_at[1] : outer_at[0];
  // Walking on from O1t along alpha- reaches O2t, then the inner boundary, then O2.
  const int o2t_at = (o1t_at + static_cast<int>(path.vertices.size()) - 1) % n;
  const int o2_at = inner_at[0] == o2t_at ? inner_at[1] : inner_at[0];
  if (loop[o2t_at] != loop[inner_at[0]] && loop[o2t_at] != loop[inner_at[1]]) {
    throw TopologyError("cut boundary does not follow outer, alpha-, inner, alpha+");
  }

  const auto outer_seg = loop_segment(loop, o1_at, o1t_at);
  const auto alpha_minus = loop_segment(loop, o1t_at, o2t_at);
  const auto inner_seg = loop_segment(loop, o2t_at, o2_at);
  const auto alpha_plus_rev = loop_segment(loop, o2_at, o1_at);
  if (alpha_minus.size() != path.vertices.size() || alpha_plus_rev.size() != path.vertices.size()) {
    throw TopologyError("cut boundary does not follow outer, alpha-, inner, alpha+");
  }
  assign_shift(cut, outer_seg, {0, 0});
  assign_shift(cut, inner_seg, {0, 0});
  assign_shift(cut, alpha_plus_rev, {0, 0});
  assign_shift(cut, alpha_minus, {0, 1});
  cut.corners = {loop[o1_at], loop[o1t_at], loop[o2_at], loop[o2t_at]};
  auto& part = cut.partition;
  for (std::size_t i = 1; i + 1 < outer_seg.size(); ++i) part.outer.push_back(cut.origin[outer_seg[i]]);
  for (std::size_t i = 1; i + 1 < inner_seg.size(); ++i) part.inner.push_back(cut.origin[inner_seg[i]]);
  part.cross_plus.assign(path.vertices.begin() + 1, path.vertices.end() - 1);
  part.corners = {p_outer, p_inner};
  SeamRecord seam{SeamKind::cross, {alpha_plus_rev.rbegin(), alpha_plus_rev.rend()}, alpha_minus,
                  {0, 1}};
  cut.seams = {std::move(seam)};
}

struct EdgePath {
  std::vector<int> vertices;
  std::vector<int> edges;
};

// Dijkstra over active edge lengths; `passable` decides which vertices may be
// expanded. Ties are broken by the lower vertex index.
EdgePath shortest_path(const SurfaceMesh& mesh, const std::vector<int>& sources,
                       const std::function<bool(int)>& passable,
                       const std::function<bool(int)>& is_target) {
  const int n = mesh.num_vertices();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> pred(n, -1), pred_edge(n, -1);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (int s : sources) {
    dist[s] = 0.0;
    heap.emplace(0.0, s);
  }
  std::vector<bool> done(n, false);
  while (!heap.empty()) {
    const auto [d, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = true;
    if (is_target(v) && pred[v] >= 0) {
      EdgePath path;
      for (int x = v; x >= 0; x = pred[x]) {
        path.vertices.push_back(x);
        if (pred[x] >= 0) path.edges.push_back(pred_edge[x]);
      }
      std::reverse(path.vertices.begin(), path.vertices.end());
      std::reverse(path.edges.begin(), path.edges.end());
      return path;
    }
    if (pred[v] >= 0 && !passable(v)) continue;
    for (int e : mesh.incident_edges(v)) {
      const int w = mesh.other_vertex(e, v);
      if (done[w]) continue;
      if (!passable(w) && !is_target(w)) continue;
      const double nd = d + mesh.edge_length(e);
      if (nd < dist[w]) {
        dist[w] = nd;
        pred[w] = v;
        pred_edge[w] = e;
        heap.emplace(nd, w);
      }
    }
  }
  return {};
}

std::vector<int> tree_path_to_root(int v, const std::vector<int>& parent) {
  std::vector<int> up;
  for (int x = v; x >= 0; x = parent[x]) up.push_back(x);
  return up;
}

}  // namespace

bool CutMesh::on_seam(int c) const {
  const int v = origin[c];
  for (const CutPath& p : paths) {
    if (std::find(p.vertices.begin(), p.vertices.end(), v) != p.vertices.end()) return true;
  }
  return false;
}

SplitMesh split_along(const SurfaceMesh& mesh, const std::vector<bool>& cut_edge) {
  const int nf = mesh.num_faces();
  DisjointSets wedges(3 * nf);
  for (int h = 0; h < mesh.num_halfedges(); ++h) {
    const int g = mesh.twin(h);
    if (g < h || cut_edge[mesh.edge(h)]) continue;
    // h runs a->b in face h/3; g runs b->a. Corner ids equal halfedge ids of
    // the outgoing halfedge at that corner.
    wedges.unite(h, mesh.next(g));
    wedges.unite(mesh.next(h), g);
  }

  const int n = mesh.num_vertices();
  std::vector<int> cut_vertex(3 * nf, -1);
  std::vector<std::vector<int>> roots_of(n);
  for (int c = 0; c < 3 * nf; ++c) {
    const int r = wedges.find(c);
    if (r == c) roots_of[mesh.tail(c)].push_back(c);
  }
  SplitMesh out;
  out.origin.resize(n);
  std::iota(out.origin.begin(), out.origin.end(), 0);
  std::vector<Vec3> positions = mesh.positions();
  std::vector<int> root_index(3 * nf, -1);
  for (int v = 0; v < n; ++v) {
    for (std::size_t i = 0; i < roots_of[v].size(); ++i) {
      if (i == 0) {
        root_index[roots_of[v][i]] = v;
      } else {
        root_index[roots_of[v][i]] = static_cast<int>(out.origin.size());
        out.origin.push_back(v);
        positions.push_back(mesh.position(v));
      }
    }
  }
  std::vector<Face> faces(nf);
  for (int f = 0; f < nf; ++f) {
    for (int k = 0; k < 3; ++k) faces[f][k] = root_index[wedges.find(3 * f + k)];
  }
  std::vector<int> twins = mesh.twins();
  for (int h = 0; h < mesh.num_halfedges(); ++h) {
    if (cut_edge[mesh.edge(h)]) twins[h] = -1;
  }
  out.mesh = SurfaceMesh(std::move(positions), std::move(faces), std::move(twins), mesh.halfedge_lengths());
  return out;
}

std::pair<CutPath, CutPath> find_cut_system_genus1(const SurfaceMesh& mesh, int root) {
  const Topology topo = topology(mesh);
  if (topo.boundary_count != 0 || topo.genus != 1) {
    throw TopologyError("expected a closed genus-one surface, got genus " +
                        std::to_string(topo.genus) + " with " +
                        std::to_string(topo.boundary_count) + " boundaries");
  }
  const int n = mesh.num_vertices();
  if (root < 0 || root >= n) throw InputError("tree root out of range");

  // Primal BFS tree.
  std::vector<int> parent(n, -1), parent_edge(n, -1);
  std::vector<bool> in_tree(mesh.num_edges(), false);
  std::vector<bool> seen(n, false);
  std::queue<int> queue;
  queue.push(root);
  seen[root] = true;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop();
    for (int e : mesh.incident_edges(v)) {
      const int w = mesh.other_vertex(e, v);
      if (seen[w]) continue;
      seen[w] = true;
      parent[w] = v;
      parent_edge[w] = e;
      in_tree[e] = true;
      queue.push(w);
    }
  }

  // Dual BFS tree over the remaining edges.
  std::vector<bool> in_cotree(mesh.num_edges(), false);
  std::vector<bool> face_seen(mesh.num_faces(), false);
  std::queue<int> fqueue;
  fqueue.push(0);
  face_seen[0] = true;
  while (!fqueue.empty()) {
    const int f = fqueue.front();
    fqueue.pop();
    for (int k = 0; k < 3; ++k) {
      const int h = 3 * f + k;
      const int e = mesh.edge(h);
      const int g = mesh.twin(h);
      if (in_tree[e] || g < 0 || face_seen[g / 3]) continue;
      face_seen[g / 3] = true;
      in_cotree[e] = true;
      fqueue.push(g / 3);
    }
  }

  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (in_tree[e] || in_cotree[e]) continue;
    const auto [u, v] = mesh.edge_vertices(e);
    auto up_u = tree_path_to_root(u, parent);
    auto up_v = tree_path_to_root(v, parent);
    // Strip the common ancestry above the lowest common ancestor.
    while (up_u.size() > 1 && up_v.size() > 1 && up_u[up_u.size() - 2] == up_v[up_v.size() - 2]) {
      up_u.pop_back();
      up_v.pop_back();
    }
    CutPath alpha{PathKind::handle, {}, {}};
    alpha.vertices.assign(up_u.rbegin(), up_u.rend());              // lca .. u
    alpha.vertices.insert(alpha.vertices.end(), up_v.begin(), up_v.end() - 1);  // v .. below lca
    for (std::size_t k = up_u.size() - 1; k-- > 0;) alpha.edges.push_back(parent_edge[up_u[k]]);
    alpha.edges.push_back(e);
    for (std::size_t k = 0; k + 1 < up_v.size(); ++k) alpha.edges.push_back(parent_edge[up_v[k]]);

    std::vector<bool> cut(mesh.num_edges(), false);
    mark_path_edges(mesh, alpha, cut);
    const SplitMesh annulus = split_along(mesh, cut);
    if (boundary_loops(annulus.mesh).size() != 2) continue;

    std::vector<std::vector<int>> copies(n);
    for (int c = 0; c < annulus.mesh.num_vertices(); ++c) copies[annulus.origin[c]].push_back(c);

    for (std::size_t i = 0; i < alpha.vertices.size(); ++i) {
      const int a0 = alpha.vertices[i];
      if (copies[a0].size() != 2) continue;
      const int from = copies[a0][0];
      const int to = copies[a0][1];
      const auto path = shortest_path(
          annulus.mesh, {from}, [&](int c) { return !annulus.mesh.is_boundary_vertex(c); },
          [&](int c) { return c == to; });
      if (path.vertices.size() < 3) continue;
      CutPath beta{PathKind::tunnel, {}, {}};
      for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
        beta.vertices.push_back(annulus.origin[path.vertices[k]]);
      }
      // The split keeps halfedge ids, so annulus edges map back through them.
      for (int ea : path.edges) beta.edges.push_back(mesh.edge(annulus.mesh.edge_halfedge(ea)));
      std::rotate(alpha.vertices.begin(), alpha.vertices.begin() + i, alpha.vertices.end());
      std::rotate(alpha.edges.begin(), alpha.edges.begin() + i, alpha.edges.end());
      return {std::move(alpha), std::move(beta)};
    }
  }
  throw TopologyError("no cut system found: every candidate base point failed");
}

CutPath find_cross_path(const SurfaceMesh& mesh, const BoundaryLoop& outer,
                        const BoundaryLoop& inner, std::optional<int> source) {
  const int n = mesh.num_vertices();
  std::vector<int> loop_id(n, -1);
  for (int v : outer.vertices) {
    if (v < 0 || v >= n || !mesh.is_boundary_vertex(v)) throw InputError("outer is not a boundary loop");
    loop_id[v] = 0;
  }
  for (int v : inner.vertices) {
    if (v < 0 || v >= n || !mesh.is_boundary_vertex(v)) throw InputError("inner is not a boundary loop");
    if (loop_id[v] == 0) throw InputError("outer and inner are the same loop");
    loop_id[v] = 1;
  }
  std::vector<int> sources;
  if (source) {
    if (*source < 0 || *source >= n || loop_id[*source] != 0) {
      throw InputError("cross path source is not on the outer loop");
    }
    sources.push_back(*source);
  } else {
    sources = outer.vertices;
    std::sort(sources.begin(), sources.end());
  }
  auto path = shortest_path(
      mesh, sources, [&](int v) { return !mesh.is_boundary_vertex(v); },
      [&](int v) { return loop_id[v] == 1; });
  if (path.vertices.empty()) {
    throw TopologyError("outer and inner boundaries are not connected through the interior");
  }
  return CutPath{PathKind::cross, std::move(path.vertices), std::move(path.edges)};
}

CutPath find_cross_path(const SurfaceMesh& mesh) {
  const auto loops = boundary_loops(mesh);
  if (loops.size() != 2) {
    throw TopologyError("expected a doubly connected surface, got " +
                        std::to_string(loops.size()) + " boundaries");
  }
  return find_cross_path(mesh, loops[1], loops[0]);
}

CutMesh cut_along(const SurfaceMesh& mesh, std::span<const CutPath> paths) {
  std::vector<bool> cut_edge(mesh.num_edges(), false);
  CutMesh cut;
  if (paths.size() == 2) {
    const CutPath& alpha = paths[0];
    const CutPath& beta = paths[1];
    if (!alpha.closed() || !beta.closed()) throw InputError("genus-one cut needs two closed loops");
    check_vertex_simple(mesh, alpha);
    check_vertex_simple(mesh, beta);
    if (alpha.vertices.front() != beta.vertices.front()) {
      throw InputError("alpha and beta must start at their shared base point");
    }
    std::unordered_set<int> in_alpha(alpha.vertices.begin(), alpha.vertices.end());
    for (std::size_t i = 1; i < beta.vertices.size(); ++i) {
      if (in_alpha.count(beta.vertices[i])) {
        throw InputError("alpha and beta intersect away from the base point");
      }
    }
    mark_path_edges(mesh, alpha, cut_edge);
    mark_path_edges(mesh, beta, cut_edge);
    cut.kind = CutKind::genus_one;
  } else if (paths.size() == 1) {
    const CutPath& path = paths[0];
    if (path.closed()) throw InputError("cross cut needs an open path");
    check_vertex_simple(mesh, path);
    const auto& v = path.vertices;
    if (!mesh.is_boundary_vertex(v.front()) || !mesh.is_boundary_vertex(v.back())) {
      throw InputError("cross path must start and end on a boundary");
    }
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
      if (mesh.is_boundary_vertex(v[i])) throw InputError("cross path touches a boundary inside");
    }
    mark_path_edges(mesh, path, cut_edge);
    for (int e : path_edges(mesh, path)) {
      if (mesh.is_boundary_edge(e)) throw InputError("cross path runs along a boundary edge");
    }
    cut.kind = CutKind::cross;
  } else {
    throw InputError("cut_along expects two loops or one cross path");
  }

  SplitMesh split = split_along(mesh, cut_edge);
  cut.mesh = std::move(split.mesh);
  cut.origin = std::move(split.origin);
  cut.shift.assign(cut.mesh.num_vertices(), {0, 0});
  cut.representative.assign(mesh.num_vertices(), -1);
  cut.paths.assign(paths.begin(), paths.end());
  if (cut.kind == CutKind::genus_one) {
    label_genus_one(cut, paths[0]);
  } else {
    label_cross(cut, paths[0]);
  }
  finish_seams(cut);
  return cut;
}

std::array<int, 2> homology_class(const SurfaceMesh& mesh, const CutMesh& cut, const CutPath& loop) {
  if (!loop.closed()) throw InputError("homology class needs a closed loop");
  if (cut.mesh.num_faces() != mesh.num_faces()) throw InputError("cut mesh does not match the mesh");
  const std::vector<int> edges = path_edges(mesh, loop);
  const auto& v = loop.vertices;
  std::array<int, 2> total{0, 0};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    int h = mesh.edge_halfedge(edges[i]);
    if (mesh.tail(h) != v[i]) h = mesh.twin(h);
    // Corner order is shared with the cut mesh.
    const Face& f = cut.mesh.face(h / 3);
    const int a = f[h % 3], b = f[(h + 1) % 3];
    total[0] += cut.shift[b][0] - cut.shift[a][0];
    total[1] += cut.shift[b][1] - cut.shift[a][1];
  }
  return total;
}

std::optional<std::pair<CutPath, CutPath>> find_homologous_cut_system(const SurfaceMesh& mesh,
                                                                      const CutMesh& reference,
                                                                      int attempts) {
  if (reference.kind != CutKind::genus_one || reference.paths.size() != 2) {
    throw InputError("reference must be a genus-one cut");
  }
  const std::array<int, 2> target = homology_class(mesh, reference, reference.paths[1]);
  const int n = mesh.num_vertices();
  for (int k = 1; k <= attempts; ++k) {
    const int root = static_cast<int>((static_cast<long long>(n) * k) / (attempts + 1));
    auto candidate = find_cut_system_genus1(mesh, root);
    if (candidate.first.vertices == reference.paths[0].vertices &&
        candidate.second.vertices == reference.paths[1].vertices) {
      continue;
    }
    const std::array<int, 2> c = homology_class(mesh, reference, candidate.second);
    if (c == target || (c[0] == -target[0] && c[1] == -target[1])) return candidate;
  }
  return std::nullopt;
}

FilledMesh fill_holes(const SurfaceMesh& mesh, const BoundaryLoop& keep) {
  const auto loops = boundary_loops(mesh);
  if (loops.size() < 2) throw TopologyError("fill_holes needs at least two boundaries");
  auto same_loop = [&](const BoundaryLoop& l) {
    return l.vertices.size() == keep.vertices.size() && !keep.vertices.empty() &&
           std::find(l.vertices.begin(), l.vertices.end(), keep.vertices.front()) != l.vertices.end();
  };
  if (same_loop(loops.back())) throw InputError("the kept loop must be an inner boundary");
  const auto kept = std::find_if(loops.begin(), loops.end() - 1, same_loop);
  if (kept == loops.end() - 1) throw InputError("kept loop is not a boundary of the mesh");

  // Outgoing boundary halfedge of every boundary vertex.
  std::vector<int> boundary_out(mesh.num_vertices(), -1);
  for (int h = 0; h < mesh.num_halfedges(); ++h) {
    if (mesh.twin(h) < 0) boundary_out[mesh.tail(h)] = h;
  }

  FilledMesh out;
  out.original_vertices = mesh.num_vertices();
  out.original_faces = mesh.num_faces();
  std::vector<Vec3> positions = mesh.positions();
  std::vector<Face> faces = mesh.faces();
  std::vector<int> twins = mesh.twins();
  std::vector<double> lengths = mesh.halfedge_lengths();
  auto glue = [&](int h, int g) {
    twins[h] = g;
    twins[g] = h;
  };
  for (auto it = loops.begin(); it != loops.end() - 1; ++it) {
    if (it == kept) continue;
    const auto& ring = it->vertices;
    Vec3 center = Vec3::Zero();
    for (int v : ring) center += positions[v];
    center /= static_cast<double>(ring.size());
    const int c = static_cast<int>(positions.size());
    positions.push_back(center);
    const int first = static_cast<int>(faces.size());
    const int m = static_cast<int>(ring.size());
    for (int i = 0; i < m; ++i) {
      const int a = ring[i];
      const int b = ring[(i + 1) % m];
      // Halfedges of (b, a, c): b->a, a->c, c->b.
      const int f = static_cast<int>(faces.size());
      faces.push_back({b, a, c});
      twins.insert(twins.end(), {-1, -1, -1});
      lengths.insert(lengths.end(), {mesh.edge_length(mesh.edge(boundary_out[a])),
                                     (positions[a] - center).norm(), (positions[b] - center).norm()});
      glue(3 * f, boundary_out[a]);
    }
    for (int i = 0; i < m; ++i) {
      const int f = first + i;
      const int g = first + (i + 1) % m;
      glue(3 * f + 2, 3 * g + 1);
    }
  }
  out.fill_face.assign(faces.size(), false);
  std::fill(out.fill_face.begin() + out.original_faces, out.fill_face.end(), true);
  if (!mesh.intrinsic()) lengths.clear();
  out.mesh = SurfaceMesh(std::move(positions), std::move(faces), std::move(twins), std::move(lengths));
  return out;
}

SurfaceMesh remove_fill(const FilledMesh& filled, const std::vector<Vec3>& positions) {
  if (static_cast<int>(positions.size()) < filled.original_vertices) {
    throw InputError("not enough positions to restore the unfilled mesh");
  }
  std::vector<Vec3> kept(positions.begin(), positions.begin() + filled.original_vertices);
  std::vector<Face> faces(filled.mesh.faces().begin(),
                          filled.mesh.faces().begin() + filled.original_faces);
  std::vector<int> twins(filled.mesh.twins().begin(),
                         filled.mesh.twins().begin() + 3 * filled.original_faces);
  for (int& t : twins) {
    if (t >= 3 * filled.original_faces) t = -1;
  }
  return SurfaceMesh(std::move(kept), std::move(faces), std::move(twins), {});
}

}  // namespace pcf
