#include "rfold/link.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rfold {

namespace {

const std::array<Vec3, 6>& prism_vertices() {
  static const std::array<Vec3, 6> v = {
      Vec3{Rat(0), Rat(0), Rat(0)}, Vec3{Rat(1), Rat(0), Rat(0)},
      Vec3{Rat(0), Rat(1), Rat(0)}, Vec3{Rat(0), Rat(0), Rat(1)},
      Vec3{Rat(1), Rat(0), Rat(1)}, Vec3{Rat(0), Rat(1), Rat(1)}};
  return v;
}

const std::vector<int>& prism_face_vertex_ids(int face) {
  static const std::map<int, std::vector<int>> f = {
      {1, {0, 1, 2}}, {2, {3, 4, 5}}, {4, {0, 1, 4, 3}}, {5, {1, 2, 5, 4}}, {6, {0, 2, 5, 3}}};
  return f.at(face);
}

// Base-prism edges with the dihedral angle (as a multiple of pi) between the
// two incident prism faces.
struct PrismEdge {
  int va, vb;
  Rat angle;
};
const std::vector<PrismEdge>& prism_edges() {
  static const std::vector<PrismEdge> e = {
      {0, 3, Rat(1, 2)}, {1, 4, Rat(1, 4)}, {2, 5, Rat(1, 4)},
      {0, 1, Rat(1, 2)}, {0, 2, Rat(1, 2)}, {1, 2, Rat(1, 2)},
      {3, 4, Rat(1, 2)}, {3, 5, Rat(1, 2)}, {4, 5, Rat(1, 2)}};
  return e;
}

std::string vec_key(const Vec3& v) {
  return rat_str(v[0]) + "," + rat_str(v[1]) + "," + rat_str(v[2]);
}

std::string polygon_key(std::vector<Vec3> poly) {
  std::sort(poly.begin(), poly.end());
  std::string k;
  for (const Vec3& v : poly) k += vec_key(v) + "|";
  return k;
}

}  // namespace

const std::vector<Vec3>& prism_face_polygon(int face) {
  static std::map<int, std::vector<Vec3>> cache;
  auto it = cache.find(face);
  if (it == cache.end()) {
    std::vector<Vec3> poly;
    for (int id : prism_face_vertex_ids(face)) poly.push_back(prism_vertices()[size_t(id)]);
    it = cache.emplace(face, std::move(poly)).first;
  }
  return it->second;
}

const Vec3& prism_face_inward_normal(int face) {
  static const std::map<int, Vec3> n = {{1, Vec3{Rat(0), Rat(0), Rat(1)}},
                                        {2, Vec3{Rat(0), Rat(0), Rat(-1)}},
                                        {4, Vec3{Rat(0), Rat(1), Rat(0)}},
                                        {5, Vec3{Rat(-1), Rat(-1), Rat(0)}},
                                        {6, Vec3{Rat(1), Rat(0), Rat(0)}}};
  return n.at(face);
}

Plane prism_face_plane(int face) {
  const auto& poly = prism_face_polygon(face);
  return Plane::through(poly[0], poly[1], poly[2]);
}

const LinkFacet* LinkTess::find_facet(const FacetLabel& l) const {
  for (const LinkFacet& f : facets)
    if (f.label == l) return &f;
  return nullptr;
}

Plane LinkTess::reflection_plane(const FacetLabel& l) const {
  auto it = plane_registry.find(l);
  if (it == plane_registry.end())
    throw std::runtime_error("unknown facet name " + l.str());
  return it->second;
}

int LinkTess::rank_of(const FacetLabel& l) const {
  auto it = label_rank.find(l);
  if (it == label_rank.end()) throw std::runtime_error("unranked facet name " + l.str());
  return it->second;
}

bool LinkTess::word_less(const Word& a, const Word& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i) {
    int ra = rank_of(a[i]), rb = rank_of(b[i]);
    if (ra != rb) return ra < rb;
  }
  return false;
}

std::vector<Vec3> LinkTess::tile_face_polygon(int tile, int face) const {
  std::vector<Vec3> out;
  for (const Vec3& v : prism_face_polygon(face))
    out.push_back(tiles[size_t(tile)].placement.apply(v));
  return out;
}

std::vector<std::pair<Plane, Vec3>> LinkTess::region_planes() const {
  std::vector<std::pair<Plane, Vec3>> out;
  if (!is_box) {
    for (int f : prism_face_ids())
      out.emplace_back(prism_face_plane(f), prism_face_inward_normal(f));
    return out;
  }
  for (int ax = 0; ax < 3; ++ax) {
    Vec3 n;
    n[ax] = 1;
    out.emplace_back(Plane(n, lo[size_t(ax)]), n);
    out.emplace_back(Plane(n, hi[size_t(ax)]), -n);
  }
  return out;
}

bool LinkTess::on_region_boundary(const Vec3& p) const {
  for (auto& [pl, inw] : region_planes())
    if (pl.contains(p)) return true;
  return false;
}

LinkTess base_link() {
  LinkTess l;
  l.is_box = false;
  l.tiles.push_back(PrismTile{{}, Isometry::identity()});
  int rank = 0;
  for (int f : prism_face_ids()) {
    FacetLabel lab(f);
    l.facets.push_back(LinkFacet{lab, prism_face_plane(f)});
    l.plane_registry[lab] = prism_face_plane(f);
    l.label_rank[lab] = rank++;
  }
  return l;
}

LinkTess reflect_double(const LinkTess& link, const FacetLabel& f) {
  const LinkFacet* fac = link.find_facet(f);
  if (!fac) throw std::runtime_error("not a facet of this link: " + f.str());

  int axis = -1;
  bool at_hi = false;
  if (link.is_box) {
    for (int ax = 0; ax < 3; ++ax) {
      Vec3 n;
      n[ax] = 1;
      if (fac->plane == Plane(n, link.lo[size_t(ax)])) axis = ax, at_hi = false;
      if (fac->plane == Plane(n, link.hi[size_t(ax)])) axis = ax, at_hi = true;
    }
    if (axis < 0)
      throw std::runtime_error("mirror plane of " + f.str() + " is not a full box face");
  } else {
    if (!(fac->plane == prism_face_plane(5)))
      throw std::runtime_error("only the diagonal facet can be doubled at step 0");
  }

  Isometry refl = fac->plane.reflection();
  LinkTess out;
  out.plane_registry = link.plane_registry;
  out.label_rank = link.label_rank;
  out.history = link.history;
  out.history.push_back(f);

  out.is_box = true;
  if (link.is_box) {
    out.lo = link.lo;
    out.hi = link.hi;
    Rat len = link.hi[size_t(axis)] - link.lo[size_t(axis)];
    if (at_hi)
      out.hi[size_t(axis)] += len;
    else
      out.lo[size_t(axis)] -= len;
  } else {
    out.lo = {Rat(0), Rat(0), Rat(0)};
    out.hi = {Rat(1), Rat(1), Rat(1)};
  }

  out.tiles = link.tiles;
  for (const PrismTile& t : link.tiles) {
    PrismTile m;
    m.word.reserve(t.word.size() + 1);
    m.word.push_back(f);
    m.word.insert(m.word.end(), t.word.begin(), t.word.end());
    m.placement = refl * t.placement;
    out.tiles.push_back(std::move(m));
  }

  int next_rank = 0;
  for (auto& [lab, r] : link.label_rank) next_rank = std::max(next_rank, r + 1);

  std::vector<LinkFacet> mirrored;
  for (const LinkFacet& g : link.facets) {
    if (g.label == f) continue;
    bool orthogonal = dot(g.plane.n, fac->plane.n) == 0;
    out.facets.push_back(g);
    if (!orthogonal) {
      LinkFacet m;
      m.label = g.label.prepended(f);
      m.plane = transform_plane(refl, g.plane);
      mirrored.push_back(m);
    }
  }
  for (LinkFacet& m : mirrored) {
    if (out.plane_registry.count(m.label))
      throw std::runtime_error("facet name collision: " + m.label.str());
    out.plane_registry[m.label] = m.plane;
    out.label_rank[m.label] = next_rank++;
    out.facets.push_back(std::move(m));
  }
  return out;
}

std::vector<Wall> enumerate_walls(const LinkTess& link) {
  struct Entry {
    int tile, face;
  };
  std::map<std::string, std::vector<Entry>> by_poly;
  for (int i = 0; i < int(link.tiles.size()); ++i)
    for (int f : prism_face_ids())
      by_poly[polygon_key(link.tile_face_polygon(i, f))].push_back(Entry{i, f});

  std::vector<Wall> walls;
  for (auto& [key, entries] : by_poly) {
    if (entries.size() > 2)
      throw std::runtime_error("tessellation not face-to-face (face shared " +
                               std::to_string(entries.size()) + " times)");
    Wall w;
    w.tile_a = entries[0].tile;
    w.face_a = entries[0].face;
    if (entries.size() == 2) {
      if (entries[0].face != entries[1].face)
        throw std::runtime_error("interior wall with mismatched face types");
      w.tile_b = entries[1].tile;
      w.face_b = entries[1].face;
      w.type = entries[0].face;
    } else {
      w.type = entries[0].face;
      Plane p = transform_plane(link.tiles[size_t(w.tile_a)].placement,
                                prism_face_plane(w.face_a));
      for (int fi = 0; fi < int(link.facets.size()); ++fi)
        if (link.facets[size_t(fi)].plane == p) w.facet_idx = fi;
      if (w.facet_idx < 0)
        throw std::runtime_error("boundary tile face lies on no facet plane");
    }
    walls.push_back(w);
  }
  // Deterministic order: by tile/face of the first member.
  std::sort(walls.begin(), walls.end(), [](const Wall& a, const Wall& b) {
    return std::tie(a.tile_a, a.face_a) < std::tie(b.tile_a, b.face_a);
  });
  return walls;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) {
    for (size_t i = 0; i < n; ++i) parent[i] = int(i);
  }
  int find(int v) {
    while (parent[size_t(v)] != v) {
      parent[size_t(v)] = parent[size_t(parent[size_t(v)])];
      v = parent[size_t(v)];
    }
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[size_t(std::max(a, b))] = std::min(a, b);
  }
};

int seed_label_k(const CoxeterMatrix& seed, int a, int b) {
  const AngleLabel& l = seed.at(a, b);
  if (!l.is_submultiple())
    throw std::runtime_error("expected a submultiple angle between walls " +
                             std::to_string(a) + "," + std::to_string(b));
  return l.k;
}

void build_classes(const LinkTess& link, const CoxeterMatrix& seed, int t,
                   const std::vector<Wall>& walls, std::vector<int>& cls,
                   std::vector<FacetLabel>& names, std::vector<FacetLabel>& order) {
  UnionFind uf(link.tiles.size());
  for (const Wall& w : walls)
    if (w.tile_b >= 0 && seed_label_k(seed, t, w.type) == 2) uf.unite(w.tile_a, w.tile_b);

  std::map<int, Word> best;
  for (int i = 0; i < int(link.tiles.size()); ++i) {
    int r = uf.find(i);
    const Word& w = link.tiles[size_t(i)].word;
    auto it = best.find(r);
    if (it == best.end() || link.word_less(w, it->second)) best[r] = w;
  }
  std::map<int, int> index;
  names.clear();
  order.clear();
  cls.assign(link.tiles.size(), -1);
  for (int i = 0; i < int(link.tiles.size()); ++i) {
    int r = uf.find(i);
    auto it = index.find(r);
    if (it == index.end()) {
      it = index.emplace(r, int(names.size())).first;
      names.push_back(FacetLabel(t, best[r]));
      order.push_back(names.back());
    }
    cls[size_t(i)] = it->second;
  }
}

}  // namespace

CompactClasses compact_facet_classes(const LinkTess& link, const CoxeterMatrix& seed) {
  CompactClasses c;
  auto walls = enumerate_walls(link);
  build_classes(link, seed, 3, walls, c.cls3, c.names3, c.list3);
  build_classes(link, seed, 7, walls, c.cls7, c.names7, c.list7);
  return c;
}

OracleGraph compact_adjacency(const LinkTess& link, const CoxeterMatrix& seed, int t) {
  if (t != 3 && t != 7) throw std::invalid_argument("compact type must be 3 or 7");
  CompactClasses cc = compact_facet_classes(link, seed);
  const std::vector<int>& cls = (t == 3) ? cc.cls3 : cc.cls7;
  const std::vector<FacetLabel>& names = (t == 3) ? cc.names3 : cc.names7;

  OracleGraph g;
  g.verts = names;
  for (const Wall& w : enumerate_walls(link)) {
    if (w.tile_b < 0) continue;
    int m = seed_label_k(seed, t, w.type);
    if (m == 2) continue;
    if (m % 2 != 0)
      throw std::runtime_error("odd wall angle in doubling fan");
    int a = cls[size_t(w.tile_a)], b = cls[size_t(w.tile_b)];
    if (a == b)
      throw std::runtime_error("compact facet fan closes onto one class (corrupt tessellation)");
    auto key = std::minmax(a, b);
    int k = m / 2;  // two fan tiles, each contributing pi/m
    auto it = g.label.find(key);
    if (it == g.label.end()) {
      g.label[key] = k;
      g.multiplicity[key] = 1;
    } else {
      if (it->second != k)
        throw std::runtime_error("parallel adjacency edges with distinct labels between " +
                                 names[size_t(key.first)].str() + " and " +
                                 names[size_t(key.second)].str());
      ++g.multiplicity[key];
    }
  }
  return g;
}

namespace {

std::set<std::string> region_vertex_keys(const LinkTess& link) {
  std::set<std::string> keys;
  if (link.is_box) {
    for (int m = 0; m < 8; ++m) {
      Vec3 v{(m & 1) ? link.hi[0] : link.lo[0], (m & 2) ? link.hi[1] : link.lo[1],
             (m & 4) ? link.hi[2] : link.lo[2]};
      keys.insert(vec_key(v));
    }
  } else {
    for (const Vec3& v : prism_vertices()) keys.insert(vec_key(v));
  }
  return keys;
}

}  // namespace

bool is_tessellation_symmetry(const LinkTess& link, const Isometry& g, SymmetryMode mode) {
  if (!g.linear.is_orthogonal()) return false;

  std::set<std::string> placements;
  for (const PrismTile& t : link.tiles) placements.insert(t.placement.key());

  if (mode == SymmetryMode::box) {
    // Region preserved: image of every region vertex is a region vertex.
    std::set<std::string> verts = region_vertex_keys(link);
    std::vector<Vec3> corners;
    if (link.is_box) {
      for (int m = 0; m < 8; ++m)
        corners.push_back(Vec3{(m & 1) ? link.hi[0] : link.lo[0],
                               (m & 2) ? link.hi[1] : link.lo[1],
                               (m & 4) ? link.hi[2] : link.lo[2]});
    } else {
      corners.assign(prism_vertices().begin(), prism_vertices().end());
    }
    for (const Vec3& v : corners)
      if (!verts.count(vec_key(g.apply(v)))) return false;
    for (const PrismTile& t : link.tiles)
      if (!placements.count((g * t.placement).key())) return false;
    return true;
  }

  // Ambient mode: fold by reflections in the box's face planes.
  if (!link.is_box)
    throw std::runtime_error("ambient symmetry check requires a box region");
  static const Vec3 bary{Rat(1, 3), Rat(1, 3), Rat(1, 2)};  // base prism barycenter
  for (const PrismTile& t : link.tiles) {
    Isometry img = g * t.placement;
    Vec3 c = img.apply(bary);
    // Fold each coordinate into [lo, hi] by the infinite dihedral group
    // generated by reflections at the two endpoints.
    Isometry fold = Isometry::identity();
    for (int ax = 0; ax < 3; ++ax) {
      Rat len = link.hi[size_t(ax)] - link.lo[size_t(ax)];
      Rat x = c[ax];
      Rat tshift = (x - link.lo[size_t(ax)]) / (2 * len);
      Int k = rat_floor(tshift);
      Rat rem = x - Rat(2) * Rat(k) * len;  // in [lo, lo + 2 len)
      bool reflect = rem > link.hi[size_t(ax)];
      // fold_ax(x) = x - 2k len, then optionally reflect at hi.
      Mat3 lin = Mat3::identity();
      Vec3 tr;
      if (!reflect) {
        tr[ax] = -Rat(2) * Rat(k) * len;
      } else {
        lin.at(ax, ax) = -1;
        tr[ax] = Rat(2) * link.hi[size_t(ax)] + Rat(2) * Rat(k) * len;
      }
      Isometry step{lin, tr};
      fold = step * fold;
      c = step.apply(c);
      if (!(c[ax] >= link.lo[size_t(ax)] && c[ax] <= link.hi[size_t(ax)]))
        throw std::runtime_error("fold failed");
    }
    if (!placements.count((fold * img).key())) return false;
  }
  return true;
}

Vec2 plane_chart(const Plane& p, const Vec3& v) {
  int nz = 0, ax = -1;
  for (int i = 0; i < 3; ++i)
    if (p.n[i] != 0) {
      ++nz;
      ax = i;
    }
  if (nz == 1) {
    Vec2 out;
    int k = 0;
    for (int i = 0; i < 3; ++i)
      if (i != ax) out[size_t(k++)] = v[i];
    return out;
  }
  if (p.n == Vec3{Rat(1), Rat(1), Rat(0)}) return Vec2{v[0] - v[1], v[2]};
  throw std::runtime_error("no chart for plane " + p.key());
}

namespace {

// Deterministic polygon normalization in 2D: counterclockwise, starting at
// the lexicographically smallest vertex.
std::vector<Vec2> normalize_poly(std::vector<Vec2> poly) {
  Rat area2 = 0;
  for (size_t i = 0; i < poly.size(); ++i) {
    const Vec2& a = poly[i];
    const Vec2& b = poly[(i + 1) % poly.size()];
    area2 += a[0] * b[1] - b[0] * a[1];
  }
  if (area2 < 0) std::reverse(poly.begin(), poly.end());
  size_t start = 0;
  for (size_t i = 1; i < poly.size(); ++i)
    if (poly[i] < poly[start]) start = i;
  std::rotate(poly.begin(), poly.begin() + ptrdiff_t(start), poly.end());
  return poly;
}

}  // namespace

FacePicture face_picture(const LinkTess& link, const CoxeterMatrix& seed, const FacetLabel& f) {
  const LinkFacet* fac = link.find_facet(f);
  if (!fac) throw std::runtime_error("unknown facet " + f.str());

  FacePicture pic;
  pic.facet = f;
  pic.plane = fac->plane;

  CompactClasses cc = compact_facet_classes(link, seed);

  // Outline.
  if (link.is_box) {
    int ax = -1;
    for (int i = 0; i < 3; ++i)
      if (fac->plane.n[i] != 0) ax = i;
    int u = -1, v = -1;
    for (int i = 0; i < 3; ++i)
      if (i != ax) (u < 0 ? u : v) = i;
    Rat cu[2] = {link.lo[size_t(u)], link.hi[size_t(u)]};
    Rat cv[2] = {link.lo[size_t(v)], link.hi[size_t(v)]};
    pic.outline = normalize_poly(
        {Vec2{cu[0], cv[0]}, Vec2{cu[1], cv[0]}, Vec2{cu[1], cv[1]}, Vec2{cu[0], cv[1]}});
  } else {
    int base = f.base;
    std::vector<Vec2> poly;
    for (const Vec3& p : prism_face_polygon(base)) poly.push_back(plane_chart(fac->plane, p));
    pic.outline = normalize_poly(poly);
  }

  // Other boundary planes, for edge labels.
  std::vector<std::pair<Plane, FacetLabel>> others;
  for (const LinkFacet& g : link.facets)
    if (!(g.plane == fac->plane)) others.emplace_back(g.plane, g.label);

  for (const Wall& w : enumerate_walls(link)) {
    if (w.tile_b >= 0 || w.facet_idx < 0) continue;
    if (!(link.facets[size_t(w.facet_idx)].label == f)) continue;
    auto poly3 = link.tile_face_polygon(w.tile_a, w.face_a);
    PictureTile pt;
    pt.tile = w.tile_a;
    for (const Vec3& p : poly3) pt.poly.push_back(plane_chart(fac->plane, p));
    pt.poly = normalize_poly(pt.poly);
    pt.label3 = cc.of(3, w.tile_a);
    pt.label7 = cc.of(7, w.tile_a);
    pic.tiles.push_back(pt);

    for (size_t i = 0; i < poly3.size(); ++i) {
      const Vec3& a = poly3[i];
      const Vec3& b = poly3[(i + 1) % poly3.size()];
      for (auto& [pl, lab] : others) {
        if (pl.contains(a) && pl.contains(b)) {
          PictureEdge e;
          e.a = plane_chart(fac->plane, a);
          e.b = plane_chart(fac->plane, b);
          if (!(e.a < e.b)) std::swap(e.a, e.b);
          e.facet = lab;
          pic.edges.push_back(e);
        }
      }
    }
  }

  std::sort(pic.tiles.begin(), pic.tiles.end(),
            [](const PictureTile& a, const PictureTile& b) { return a.poly < b.poly; });
  std::sort(pic.edges.begin(), pic.edges.end(), [](const PictureEdge& a, const PictureEdge& b) {
    return std::tie(a.a, a.b, a.facet) < std::tie(b.a, b.b, b.facet);
  });
  pic.edges.erase(std::unique(pic.edges.begin(), pic.edges.end(),
                              [](const PictureEdge& a, const PictureEdge& b) {
                                return a.a == b.a && a.b == b.b && a.facet == b.facet;
                              }),
                  pic.edges.end());
  return pic;
}

std::vector<std::string> link_integrity_issues(const LinkTess& link) {
  std::vector<std::string> issues;
  auto add = [&](const std::string& s) { issues.push_back(s); };

  size_t expect = size_t(1) << link.history.size();
  if (link.tiles.size() != expect)
    add("tile count " + std::to_string(link.tiles.size()) + " != 2^history");

  for (size_t i = 0; i < link.tiles.size(); ++i) {
    const PrismTile& t = link.tiles[i];
    if (!t.placement.linear.is_orthogonal()) add("tile " + std::to_string(i) + " not orthogonal");
    Isometry prod = Isometry::identity();
    for (auto it = t.word.rbegin(); it != t.word.rend(); ++it)
      prod = link.reflection_plane(*it).reflection() * prod;
    if (!(prod == t.placement))
      add("tile " + std::to_string(i) + " placement differs from its word product");
    for (const Vec3& v : prism_vertices()) {
      Vec3 p = t.placement.apply(v);
      for (int c = 0; c < 3; ++c)
        if (rat_den(p[c]) > 2) add("vertex denominator exceeds 2 in tile " + std::to_string(i));
    }
  }

  try {
    enumerate_walls(link);
  } catch (const std::exception& e) {
    add(std::string("wall enumeration: ") + e.what());
    return issues;
  }

  // Dihedral-angle sums around every 1-dimensional tessellation edge.
  std::map<std::string, std::pair<Rat, std::pair<Vec3, Vec3>>> edge_sum;
  for (const PrismTile& t : link.tiles)
    for (const PrismEdge& e : prism_edges()) {
      Vec3 a = t.placement.apply(prism_vertices()[size_t(e.va)]);
      Vec3 b = t.placement.apply(prism_vertices()[size_t(e.vb)]);
      std::string key = std::min(vec_key(a), vec_key(b)) + "#" + std::max(vec_key(a), vec_key(b));
      edge_sum[key].first += e.angle;
      edge_sum[key].second = {a, b};
    }
  auto planes = link.region_planes();
  for (auto& [key, val] : edge_sum) {
    const auto& [a, b] = val.second;
    int on = 0;
    Rat expected;
    std::vector<Vec3> inward;
    for (auto& [pl, inw] : planes)
      if (pl.contains(a) && pl.contains(b)) {
        ++on;
        inward.push_back(inw);
      }
    if (on == 0)
      expected = Rat(2);
    else if (on == 1)
      expected = Rat(1);
    else if (on == 2)
      expected = dihedral_from_inward_normals(inward[0], inward[1]);
    else {
      add("edge on more than two region faces");
      continue;
    }
    if (val.first != expected)
      add("angle sum " + rat_str(val.first) + " != " + rat_str(expected) +
          " around edge " + key);
  }

  std::set<std::string> plane_keys;
  for (const LinkFacet& f : link.facets)
    if (!plane_keys.insert(f.plane.key()).second)
      add("two facets share the plane " + f.plane.key());
  return issues;
}

std::string link_to_json(const LinkTess& link) {
  std::ostringstream o;
  auto rat = [](const Rat& q) { return "\"" + rat_str(q) + "\""; };
  o << "{\"box\":";
  if (link.is_box) {
    o << "[[" << rat(link.lo[0]) << "," << rat(link.hi[0]) << "],[" << rat(link.lo[1]) << ","
      << rat(link.hi[1]) << "],[" << rat(link.lo[2]) << "," << rat(link.hi[2]) << "]]";
  } else {
    o << "\"base-prism\"";
  }
  o << ",\"tiles\":[";
  for (size_t i = 0; i < link.tiles.size(); ++i) {
    const PrismTile& t = link.tiles[i];
    if (i) o << ",";
    o << "{\"word\":[";
    for (size_t j = 0; j < t.word.size(); ++j)
      o << (j ? "," : "") << "\"" << t.word[j].str() << "\"";
    o << "],\"matrix\":[";
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        o << ((r || c) ? "," : "") << rat(t.placement.linear.at(r, c));
    o << "],\"translation\":[";
    for (int c = 0; c < 3; ++c) o << (c ? "," : "") << rat(t.placement.translation[c]);
    o << "]}";
  }
  o << "],\"facets\":[";
  for (size_t i = 0; i < link.facets.size(); ++i) {
    const LinkFacet& f = link.facets[size_t(i)];
    if (i) o << ",";
    o << "{\"label\":\"" << f.label.str() << "\",\"plane\":\"" << f.plane.key() << "\"}";
  }
  o << "]}";
  return o.str();
}

}  // namespace rfold
