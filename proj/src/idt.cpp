#include "pcf/idt.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include "pcf/error.hpp"

namespace pcf {

namespace {

bool strict_triangle(double a, double b, double c) {
  const double longest = std::max({a, b, c});
  return a + b > c && b + c > a && c + a > b && triangle_area(a, b, c) > 1e-14 * longest * longest;
}

int next(int h) { return 3 * (h / 3) + (h + 1) % 3; }
int prev(int h) { return 3 * (h / 3) + (h + 2) % 3; }

class FlipMesh {
 public:
  explicit FlipMesh(const SurfaceMesh& mesh)
      : faces(mesh.faces()), twin(mesh.twins()), length(mesh.halfedge_lengths()),
        edge_of(mesh.num_halfedges()), edge_half(mesh.num_edges()) {
    for (int h = 0; h < mesh.num_halfedges(); ++h) edge_of[h] = mesh.edge(h);
    for (int e = 0; e < mesh.num_edges(); ++e) edge_half[e] = mesh.edge_halfedge(e);
  }

  int tail(int h) const { return faces[h / 3][h % 3]; }
  int head(int h) const { return faces[h / 3][(h + 1) % 3]; }
  int opposite(int h) const { return faces[h / 3][(h + 2) % 3]; }
  bool interior(int e) const { return twin[edge_half[e]] >= 0; }

  bool delaunay(int e) const {
    const int h = edge_half[e];
    const int g = twin[h];
    return is_delaunay_edge(length[h], length[prev(h)], length[next(h)], length[next(g)],
                            length[prev(g)]);
  }

  // Length of c-d after unfolding (a,b,c) and (b,a,d) across a-b.
  double diagonal(int h) const {
    const int g = twin[h];
    const double ab = length[h];
    const double ac = length[prev(h)], bc = length[next(h)];
    const double ad = length[next(g)], bd = length[prev(g)];
    const double cx = (ac * ac - bc * bc + ab * ab) / (2.0 * ab);
    const double cy = std::sqrt(std::max(0.0, ac * ac - cx * cx));
    const double dx = (ad * ad - bd * bd + ab * ab) / (2.0 * ab);
    const double dy = -std::sqrt(std::max(0.0, ad * ad - dx * dx));
    return std::hypot(cx - dx, cy - dy);
  }

  // Replaces (a,b,c), (b,a,d) by (c,a,d), (d,b,c).
  void flip(int h, double cd) {
    const int g = twin[h];
    const int f1 = h / 3, f2 = g / 3;
    const int a = tail(h), b = head(h), c = opposite(h), d = opposite(g);
    const int e = edge_of[h];
    // Outer halfedges in their new slots: c->a, a->d, d->b, b->c.
    const int old[4] = {prev(h), next(g), prev(g), next(h)};
    const int slot[4] = {3 * f1, 3 * f1 + 1, 3 * f2, 3 * f2 + 1};
    int t[4], id[4];
    double l[4];
    for (int k = 0; k < 4; ++k) {
      t[k] = twin[old[k]];
      id[k] = edge_of[old[k]];
      l[k] = length[old[k]];
    }
    faces[f1] = {c, a, d};
    faces[f2] = {d, b, c};
    for (int k = 0; k < 4; ++k) {
      twin[slot[k]] = t[k];
      if (t[k] >= 0) twin[t[k]] = slot[k];
      edge_of[slot[k]] = id[k];
      length[slot[k]] = l[k];
      if (t[k] < 0 || edge_half[id[k]] == old[k]) edge_half[id[k]] = slot[k];
    }
    twin[3 * f1 + 2] = 3 * f2 + 2;
    twin[3 * f2 + 2] = 3 * f1 + 2;
    edge_of[3 * f1 + 2] = edge_of[3 * f2 + 2] = e;
    length[3 * f1 + 2] = length[3 * f2 + 2] = cd;
    edge_half[e] = 3 * f1 + 2;
  }

  std::vector<Face> faces;
  std::vector<int> twin;
  std::vector<double> length;
  std::vector<int> edge_of;
  std::vector<int> edge_half;
};

}  // namespace

bool is_delaunay_edge(double shared, double a1, double b1, double a2, double b2) {
  if (!strict_triangle(shared, a1, b1) || !strict_triangle(shared, a2, b2)) {
    throw GeometryError("degenerate triangle in Delaunay test");
  }
  const double theta1 = triangle_angles(shared, a1, b1)[0];
  const double theta2 = triangle_angles(shared, a2, b2)[0];
  return theta1 + theta2 <= std::numbers::pi + 1e-12;
}

IntrinsicMesh make_intrinsic_delaunay(const SurfaceMesh& mesh) {
  FlipMesh work(mesh);
  IntrinsicMesh out;
  out.positions = mesh.positions();

  std::deque<int> queue;
  std::vector<bool> queued(mesh.num_edges(), false);
  auto push = [&](int e) {
    if (!work.interior(e) || queued[e]) return;
    queued[e] = true;
    queue.push_back(e);
  };
  for (int e = 0; e < mesh.num_edges(); ++e) push(e);

  const long long cap = 50LL * std::max(1, mesh.num_edges());
  long long iterations = 0;
  while (!queue.empty()) {
    if (++iterations > cap) throw NumericalError("intrinsic Delaunay flipping did not terminate");
    const int e = queue.front();
    queue.pop_front();
    queued[e] = false;
    const int h = work.edge_half[e];
    const int g = work.twin[h];
    if (h / 3 == g / 3 || work.delaunay(e)) continue;
    const int c = work.opposite(h), d = work.opposite(g);
    if (c == d) continue;
    const double cd = work.diagonal(h);
    if (!strict_triangle(cd, work.length[next(g)], work.length[prev(h)]) ||
        !strict_triangle(cd, work.length[next(h)], work.length[prev(g)])) {
      continue;
    }
    const int a = work.tail(h), b = work.head(h);
    const int outer[4] = {work.edge_of[prev(h)], work.edge_of[next(g)], work.edge_of[prev(g)],
                          work.edge_of[next(h)]};
    work.flip(h, cd);
    out.flips.push_back({e, a, b, c, d, cd});
    for (int o : outer) push(o);
  }
  for (int e = 0; e < mesh.num_edges(); ++e) {
    if (!work.interior(e)) continue;
    const int h = work.edge_half[e];
    if (h / 3 == work.twin[h] / 3 || !work.delaunay(e)) out.blocked.push_back(e);
  }
  out.faces = std::move(work.faces);
  out.twins = std::move(work.twin);
  out.halfedge_lengths = std::move(work.length);
  return out;
}

}  // namespace pcf
