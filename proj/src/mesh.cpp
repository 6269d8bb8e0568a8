#include "plb/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "plb/errors.hpp"
#include "plb/summation.hpp"

namespace plb {

namespace {

// Triangles bigger than this circumradius (in units of h) are split; a
// circumradius bound of 0.75 h keeps every edge below 1.5 h.
constexpr double kSizeFactor = 0.75;

std::string region(Vec2 p) {
  std::ostringstream s;
  s.precision(6);
  s << "near (" << p.x << ", " << p.y << ")";
  return s.str();
}

double incircle(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const long double adx = a.x - d.x, ady = a.y - d.y;
  const long double bdx = b.x - d.x, bdy = b.y - d.y;
  const long double cdx = c.x - d.x, cdy = c.y - d.y;
  const long double ad = adx * adx + ady * ady;
  const long double bd = bdx * bdx + bdy * bdy;
  const long double cd = cdx * cdx + cdy * cdy;
  return static_cast<double>(adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) +
                             ad * (bdx * cdy - bdy * cdx));
}

Vec2 circumcenter(Vec2 a, Vec2 b, Vec2 c) {
  const double bx = b.x - a.x, by = b.y - a.y;
  const double cx = c.x - a.x, cy = c.y - a.y;
  const double d = 2.0 * (bx * cy - by * cx);
  const double b2 = bx * bx + by * by;
  const double c2 = cx * cx + cy * cy;
  return {a.x + (cy * b2 - by * c2) / d, a.y + (bx * c2 - cx * b2) / d};
}

bool point_in_polygon(std::span<const Vec2> poly, Vec2 p) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) {
      inside = !inside;
    }
  }
  return inside;
}

struct Tri {
  std::array<int, 3> v;
  // n[i]: neighbour across the edge opposite v[i]; -1 on the outer hull.
  std::array<int, 3> n;
  bool alive = true;
  int8_t inside = -1;
};

struct Segment {
  int a;
  int b;
  bool alive = true;
};

class Refiner {
 public:
  Refiner(const PolygonalCurve& curve, double h) : poly_(curve.vertices()), h_(h) {}

  Mesh run();

 private:
  std::span<const Vec2> poly_;
  double h_;
  std::vector<Vec2> pts_;
  std::vector<Tri> tris_;
  std::vector<int> vtri_;
  std::vector<Segment> segs_;
  std::vector<std::vector<int>> vsegs_;
  std::vector<bool> on_boundary_;
  int last_ = 0;
  std::size_t budget_ = 0;
  std::vector<int> touched_;

  Vec2 centroid(int t) const {
    const auto& v = tris_[static_cast<std::size_t>(t)].v;
    return (1.0 / 3.0) * (pts_[v[0]] + pts_[v[1]] + pts_[v[2]]);
  }

  int locate(Vec2 p);
  int insert(Vec2 p);
  std::optional<std::pair<int, int>> edge_triangles(int a, int b) const;
  bool encroached(const Segment& s);
  int split_segment(int s);
  void split_encroached(std::vector<int> queue);
  bool inside(int t);
};

int Refiner::locate(Vec2 p) {
  int t = last_;
  if (!tris_[static_cast<std::size_t>(t)].alive) {
    t = static_cast<int>(tris_.size()) - 1;
    while (!tris_[static_cast<std::size_t>(t)].alive) --t;
  }
  const std::size_t limit = 4 * tris_.size() + 100;
  unsigned rot = 0;
  for (std::size_t step = 0; step < limit; ++step) {
    const Tri& tr = tris_[static_cast<std::size_t>(t)];
    bool moved = false;
    for (int k = 0; k < 3; ++k) {
      const int i = static_cast<int>((k + rot) % 3);
      const Vec2 a = pts_[tr.v[(i + 1) % 3]];
      const Vec2 b = pts_[tr.v[(i + 2) % 3]];
      if (orient(a, b, p) < 0.0) {
        if (tr.n[i] < 0) throw MeshingError("point outside the enclosing triangle " + region(p));
        t = tr.n[i];
        moved = true;
        break;
      }
    }
    if (!moved) return t;
    rot = rot * 1103515245u + 12345u;
    rot >>= 3;
  }
  for (std::size_t i = 0; i < tris_.size(); ++i) {
    const Tri& tr = tris_[i];
    if (!tr.alive) continue;
    if (orient(pts_[tr.v[0]], pts_[tr.v[1]], p) >= 0.0 && orient(pts_[tr.v[1]], pts_[tr.v[2]], p) >= 0.0 &&
        orient(pts_[tr.v[2]], pts_[tr.v[0]], p) >= 0.0) {
      return static_cast<int>(i);
    }
  }
  throw MeshingError("point location failed " + region(p));
}

// Bowyer-Watson insertion. Returns the new vertex index.
int Refiner::insert(Vec2 p) {
  if (budget_ == 0) throw MeshingError("refinement did not terminate " + region(p));
  --budget_;
  const int t0 = locate(p);
  for (int i = 0; i < 3; ++i) {
    if (distance(pts_[tris_[static_cast<std::size_t>(t0)].v[i]], p) < 1e-12 * h_) {
      throw MeshingError("duplicate vertex " + region(p));
    }
  }
  std::vector<int> cavity{t0};
  std::vector<char> in_cavity(tris_.size(), 0);
  in_cavity[static_cast<std::size_t>(t0)] = 1;
  for (std::size_t k = 0; k < cavity.size(); ++k) {
    const Tri& tr = tris_[static_cast<std::size_t>(cavity[k])];
    for (int nb : tr.n) {
      if (nb < 0 || in_cavity[static_cast<std::size_t>(nb)]) continue;
      const Tri& o = tris_[static_cast<std::size_t>(nb)];
      if (incircle(pts_[o.v[0]], pts_[o.v[1]], pts_[o.v[2]], p) > 0.0) {
        in_cavity[static_cast<std::size_t>(nb)] = 1;
        cavity.push_back(nb);
      }
    }
  }

  struct Edge {
    int a, b, outside, from;
  };
  std::vector<Edge> boundary;
  for (bool changed = true; changed;) {
    changed = false;
    boundary.clear();
    for (int t : cavity) {
      if (!in_cavity[static_cast<std::size_t>(t)]) continue;
      const Tri& tr = tris_[static_cast<std::size_t>(t)];
      for (int i = 0; i < 3; ++i) {
        const int nb = tr.n[i];
        if (nb >= 0 && in_cavity[static_cast<std::size_t>(nb)]) continue;
        const int a = tr.v[(i + 1) % 3];
        const int b = tr.v[(i + 2) % 3];
        if (orient(pts_[a], pts_[b], p) <= 0.0 && t != t0) {
          in_cavity[static_cast<std::size_t>(t)] = 0;
          changed = true;
          break;
        }
        boundary.push_back({a, b, nb, t});
      }
      if (changed) break;
    }
  }

  const int pv = static_cast<int>(pts_.size());
  pts_.push_back(p);
  vtri_.push_back(-1);
  vsegs_.emplace_back();
  on_boundary_.push_back(false);

  for (int t : cavity) {
    if (in_cavity[static_cast<std::size_t>(t)]) tris_[static_cast<std::size_t>(t)].alive = false;
  }
  const int first = static_cast<int>(tris_.size());
  for (const Edge& e : boundary) {
    Tri tr;
    tr.v = {e.a, e.b, pv};
    tr.n = {-1, -1, e.outside};
    const int id = static_cast<int>(tris_.size());
    tris_.push_back(tr);
    if (e.outside >= 0) {
      Tri& o = tris_[static_cast<std::size_t>(e.outside)];
      for (int& nb : o.n) {
        if (nb == e.from) nb = id;
      }
    }
  }
  const int last = static_cast<int>(tris_.size());
  for (int i = first; i < last; ++i) {
    Tri& ti = tris_[static_cast<std::size_t>(i)];
    for (int j = first; j < last; ++j) {
      if (i == j) continue;
      const Tri& tj = tris_[static_cast<std::size_t>(j)];
      if (tj.v[0] == ti.v[1]) ti.n[0] = j;  // shared edge (b, p)
      if (tj.v[1] == ti.v[0]) ti.n[1] = j;  // shared edge (p, a)
    }
    for (int v : ti.v) vtri_[static_cast<std::size_t>(v)] = i;
  }
  touched_.clear();
  for (const Edge& e : boundary) {
    touched_.push_back(e.a);
    touched_.push_back(e.b);
  }
  last_ = first;
  return pv;
}

std::optional<std::pair<int, int>> Refiner::edge_triangles(int a, int b) const {
  const int start = vtri_[static_cast<std::size_t>(a)];
  int t = start;
  for (int guard = 0; guard < 4096; ++guard) {
    const Tri& tr = tris_[static_cast<std::size_t>(t)];
    int i = 0;
    while (tr.v[i] != a) ++i;
    if (tr.v[(i + 1) % 3] == b) return std::make_pair(t, tr.n[(i + 2) % 3]);
    const int next = tr.n[(i + 2) % 3];
    if (next < 0 || next == start) return std::nullopt;
    t = next;
  }
  return std::nullopt;
}

bool Refiner::encroached(const Segment& s) {
  const auto tt = edge_triangles(s.a, s.b);
  if (!tt) return true;
  const Vec2 a = pts_[s.a];
  const Vec2 b = pts_[s.b];
  for (int t : {tt->first, tt->second}) {
    if (t < 0 || !inside(t)) continue;
    for (int v : tris_[static_cast<std::size_t>(t)].v) {
      if (v == s.a || v == s.b) continue;
      if (dot(a - pts_[v], b - pts_[v]) < 0.0) return true;
    }
  }
  return false;
}

int Refiner::split_segment(int s) {
  Segment seg = segs_[static_cast<std::size_t>(s)];
  segs_[static_cast<std::size_t>(s)].alive = false;
  const int m = insert(0.5 * (pts_[seg.a] + pts_[seg.b]));
  on_boundary_[static_cast<std::size_t>(m)] = true;
  auto replace = [&](int v) {
    auto& list = vsegs_[static_cast<std::size_t>(v)];
    list.erase(std::remove(list.begin(), list.end(), s), list.end());
  };
  replace(seg.a);
  replace(seg.b);
  for (auto [x, y] : {std::pair{seg.a, m}, std::pair{m, seg.b}}) {
    const int id = static_cast<int>(segs_.size());
    segs_.push_back({x, y, true});
    vsegs_[static_cast<std::size_t>(x)].push_back(id);
    vsegs_[static_cast<std::size_t>(y)].push_back(id);
  }
  return m;
}

void Refiner::split_encroached(std::vector<int> queue) {
  while (!queue.empty()) {
    const int s = queue.back();
    queue.pop_back();
    if (!segs_[static_cast<std::size_t>(s)].alive || !encroached(segs_[static_cast<std::size_t>(s)])) continue;
    split_segment(s);
    std::vector<int> around = touched_;
    for (int v : around) {
      for (int id : vsegs_[static_cast<std::size_t>(v)]) queue.push_back(id);
    }
  }
}

bool Refiner::inside(int t) {
  Tri& tr = tris_[static_cast<std::size_t>(t)];
  if (tr.inside < 0) {
    const bool super = tr.v[0] < 3 || tr.v[1] < 3 || tr.v[2] < 3;
    tr.inside = !super && point_in_polygon(poly_, centroid(t)) ? 1 : 0;
  }
  return tr.inside == 1;
}

Mesh Refiner::run() {
  double xmin = poly_[0].x, xmax = xmin, ymin = poly_[0].y, ymax = ymin;
  for (Vec2 v : poly_) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  const Vec2 c{0.5 * (xmin + xmax), 0.5 * (ymin + ymax)};
  const double r = 20.0 * std::max(xmax - xmin, ymax - ymin);
  pts_ = {c + Vec2{-r, -r}, c + Vec2{r, -r}, c + Vec2{0.0, r}};
  vtri_ = {0, 0, 0};
  vsegs_.assign(3, {});
  on_boundary_.assign(3, false);
  tris_.push_back(Tri{{0, 1, 2}, {-1, -1, -1}});

  std::vector<Vec2> boundary;
  for (std::size_t i = 0; i < poly_.size(); ++i) {
    const Vec2 a = poly_[i];
    const Vec2 b = poly_[(i + 1) % poly_.size()];
    const int pieces = std::max(1, static_cast<int>(std::ceil(distance(a, b) / h_ - 1e-9)));
    for (int k = 0; k < pieces; ++k) boundary.push_back(a + (static_cast<double>(k) / pieces) * (b - a));
  }
  CompensatedSum twice_area;
  for (std::size_t i = 0; i < poly_.size(); ++i) twice_area += cross(poly_[i], poly_[(i + 1) % poly_.size()]);
  const double region_area = 0.5 * std::abs(twice_area.value());
  budget_ = 64 * boundary.size() + static_cast<std::size_t>(200.0 * region_area / (h_ * h_)) + 10000;

  std::vector<int> ids;
  for (Vec2 p : boundary) {
    const int v = insert(p);
    on_boundary_[static_cast<std::size_t>(v)] = true;
    ids.push_back(v);
  }
  std::vector<int> queue;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const int a = ids[i];
    const int b = ids[(i + 1) % ids.size()];
    const int id = static_cast<int>(segs_.size());
    segs_.push_back({a, b, true});
    vsegs_[static_cast<std::size_t>(a)].push_back(id);
    vsegs_[static_cast<std::size_t>(b)].push_back(id);
    queue.push_back(id);
  }
  split_encroached(queue);

  const double sin_min = std::sin(kMinAngleDegrees * std::numbers::pi / 180.0);
  const double max_radius = kSizeFactor * h_;
  for (bool dirty = true; dirty;) {
    dirty = false;
    for (std::size_t t = 0; t < tris_.size(); ++t) {
      if (!tris_[t].alive || !inside(static_cast<int>(t))) continue;
      const auto v = tris_[t].v;
      const Vec2 a = pts_[v[0]], b = pts_[v[1]], cc = pts_[v[2]];
      const Vec2 centre = circumcenter(a, b, cc);
      const double radius = distance(centre, a);
      const double shortest = std::min({distance(a, b), distance(b, cc), distance(cc, a)});
      if (shortest >= 2.0 * radius * sin_min && radius <= max_radius) continue;
      dirty = true;
      std::vector<int> hit;
      for (std::size_t s = 0; s < segs_.size(); ++s) {
        const Segment& seg = segs_[s];
        if (!seg.alive) continue;
        const Vec2 pa = pts_[seg.a], pb = pts_[seg.b];
        if (dot(pa - centre, pb - centre) < 0.0) hit.push_back(static_cast<int>(s));
      }
      if (!hit.empty()) {
        split_encroached(hit);
        continue;
      }
      if (!point_in_polygon(poly_, centre)) {
        throw MeshingError("circumcenter escaped the region " + region(centroid(static_cast<int>(t))));
      }
      insert(centre);
      std::vector<int> around;
      for (int w : touched_) {
        for (int id : vsegs_[static_cast<std::size_t>(w)]) around.push_back(id);
      }
      split_encroached(around);
    }
  }

  Mesh mesh;
  std::vector<int> remap(pts_.size(), -1);
  for (std::size_t t = 0; t < tris_.size(); ++t) {
    if (!tris_[t].alive || !inside(static_cast<int>(t))) continue;
    std::array<int, 3> tri{};
    for (int i = 0; i < 3; ++i) {
      const int v = tris_[t].v[i];
      if (remap[static_cast<std::size_t>(v)] < 0) {
        remap[static_cast<std::size_t>(v)] = static_cast<int>(mesh.points.size());
        mesh.points.push_back(pts_[static_cast<std::size_t>(v)]);
        mesh.boundary_flags.push_back(on_boundary_[static_cast<std::size_t>(v)]);
      }
      tri[static_cast<std::size_t>(i)] = remap[static_cast<std::size_t>(v)];
    }
    mesh.triangles.push_back(tri);
  }
  return mesh;
}

}  // namespace

Mesh triangulate(const PolygonalCurve& curve, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("triangulate: h must be positive");
  if (!curve.is_simple()) throw ParameterError("triangulate: curve is not simple");
  Mesh mesh = Refiner(curve, h).run();
  validate_mesh(mesh);
  return mesh;
}

double triangle_area(const Mesh& mesh, std::size_t t) {
  const auto& v = mesh.triangles[t];
  return 0.5 * orient(mesh.points[v[0]], mesh.points[v[1]], mesh.points[v[2]]);
}

double mesh_area(const Mesh& mesh) {
  CompensatedSum s;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) s += triangle_area(mesh, t);
  return s.value();
}

double min_angle_degrees(const Mesh& mesh) {
  double best = 180.0;
  for (const auto& v : mesh.triangles) {
    for (int i = 0; i < 3; ++i) {
      const Vec2 o = mesh.points[v[i]];
      const Vec2 a = mesh.points[v[(i + 1) % 3]] - o;
      const Vec2 b = mesh.points[v[(i + 2) % 3]] - o;
      best = std::min(best, std::atan2(std::abs(cross(a, b)), dot(a, b)) * 180.0 / std::numbers::pi);
    }
  }
  return best;
}

double max_edge_length(const Mesh& mesh) {
  double best = 0.0;
  for (const auto& v : mesh.triangles) {
    for (int i = 0; i < 3; ++i) best = std::max(best, distance(mesh.points[v[i]], mesh.points[v[(i + 1) % 3]]));
  }
  return best;
}

void validate_mesh(const Mesh& mesh) {
  if (mesh.boundary_flags.size() != mesh.points.size()) throw MeshingError("boundary flag count mismatch");
  std::vector<char> used(mesh.points.size(), 0);
  std::map<std::pair<int, int>, int> edges;
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const auto& v = mesh.triangles[t];
    for (int x : v) {
      if (x < 0 || static_cast<std::size_t>(x) >= mesh.points.size()) throw MeshingError("vertex index out of range");
      used[static_cast<std::size_t>(x)] = 1;
    }
    if (!(triangle_area(mesh, t) > 0.0)) {
      throw MeshingError("non-positive triangle area " + region(mesh.points[v[0]]));
    }
    for (int i = 0; i < 3; ++i) {
      const int a = v[i];
      const int b = v[(i + 1) % 3];
      if (edges.count({a, b})) throw MeshingError("edge repeated with the same orientation " + region(mesh.points[a]));
      edges[{a, b}] = 1;
    }
  }
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) throw MeshingError("hanging vertex " + region(mesh.points[i]));
  }
  for (const auto& [e, _] : edges) {
    if (!edges.count({e.second, e.first}) && !(mesh.boundary_flags[e.first] && mesh.boundary_flags[e.second])) {
      throw MeshingError("interior edge with one triangle " + region(mesh.points[e.first]));
    }
  }
}

}  // namespace plb
