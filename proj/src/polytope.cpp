#include "rfold/polytope.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rfold {

int LabeledGraph::index_of(const FacetLabel& l) const {
  for (size_t i = 0; i < verts.size(); ++i)
    if (verts[i] == l) return int(i);
  return -1;
}

void LabeledGraph::add_edge(const FacetLabel& a, const FacetLabel& b, int k) {
  int i = index_of(a), j = index_of(b);
  if (i < 0 || j < 0) throw std::runtime_error("edge endpoint not a vertex");
  if (i == j) throw std::runtime_error("self loop in adjacency graph");
  auto key = std::minmax(i, j);
  auto it = edges.find(key);
  if (it != edges.end() && it->second != k)
    throw std::runtime_error("conflicting edge labels between " + a.str() + " and " + b.str());
  edges[key] = k;
}

const int* LabeledGraph::edge_label(const FacetLabel& a, const FacetLabel& b) const {
  int i = index_of(a), j = index_of(b);
  if (i < 0 || j < 0) return nullptr;
  auto it = edges.find(std::minmax(i, j));
  return it == edges.end() ? nullptr : &it->second;
}

const FacetInfo* PolytopeState::find_facet(const FacetLabel& l) const {
  for (const FacetInfo& f : i1)
    if (f.label == l) return &f;
  return nullptr;
}

std::string PolytopeState::name() const { return "P" + std::to_string(history.size()); }

PolytopeState initial_state(const CoxeterMatrix& seed) {
  SeedReport rep = check_seed_conditions(seed);
  if (!rep.passes())
    throw std::runtime_error("seed diagram fails conditions (a)/(b):\n" + rep.to_text());
  if (!(seed == builtin_seed()))
    throw std::runtime_error(
        "seed admitted, but the doubling engine models only the built-in seed's link");

  PolytopeState s{seed, {}, {}, {}, base_link(), {}};
  std::vector<bool> compact = derive_compact_facets(seed);
  for (int i = 1; i <= seed.n; ++i)
    s.i1.push_back(FacetInfo{FacetLabel(i), i, compact[size_t(i)]});
  s.g3.verts.push_back(FacetLabel(3));
  s.g7.verts.push_back(FacetLabel(7));
  return s;
}

namespace {

std::string edge_key(const Vec3& a, const Vec3& b) {
  auto k = [](const Vec3& v) {
    return rat_str(v[0]) + "," + rat_str(v[1]) + "," + rat_str(v[2]);
  };
  return std::min(k(a), k(b)) + "#" + std::max(k(a), k(b));
}

// Per-facet boundary data recovered from the link in one pass.
struct BoundaryMap {
  std::vector<std::vector<int>> tiles_on_facet;             // facet idx -> tiles
  std::map<std::string, std::set<int>> facets_at_edge;      // edge key -> facet idxs
  CompactClasses classes;

  bool adjacent(int fa, int fb) const {
    for (auto& [k, s] : facets_at_edge)
      if (s.count(fa) && s.count(fb)) return true;
    return false;
  }
};

BoundaryMap boundary_map(const LinkTess& link, const CoxeterMatrix& seed) {
  BoundaryMap b;
  b.tiles_on_facet.assign(link.facets.size(), {});
  b.classes = compact_facet_classes(link, seed);
  for (const Wall& w : enumerate_walls(link)) {
    if (w.tile_b >= 0) continue;
    b.tiles_on_facet[size_t(w.facet_idx)].push_back(w.tile_a);
    auto poly = link.tile_face_polygon(w.tile_a, w.face_a);
    for (size_t i = 0; i < poly.size(); ++i)
      b.facets_at_edge[edge_key(poly[i], poly[(i + 1) % poly.size()])].insert(w.facet_idx);
  }
  return b;
}

Vec3 facet_inward_normal(const LinkTess& link, const Plane& p) {
  for (auto& [pl, inw] : link.region_planes())
    if (pl == p) return inw;
  throw std::runtime_error("facet plane is not a region boundary plane");
}

int facet_index(const LinkTess& link, const FacetLabel& l) {
  for (size_t i = 0; i < link.facets.size(); ++i)
    if (link.facets[i].label == l) return int(i);
  return -1;
}

// Compact class labels (given type) present in the picture of facet idx.
std::set<FacetLabel> picture_classes(const BoundaryMap& b, int idx, int t) {
  std::set<FacetLabel> out;
  for (int tile : b.tiles_on_facet[size_t(idx)]) out.insert(b.classes.of(t, tile));
  return out;
}

}  // namespace

IncidenceList incidence_list(const PolytopeState& s, const FacetLabel& a) {
  const FacetInfo* fa = s.find_facet(a);
  if (!fa) throw std::runtime_error("unknown facet " + a.str());
  BoundaryMap b = boundary_map(s.i3, s.seed);

  IncidenceList out;
  auto angle_between_types = [&](int ta, int tb) {
    return s.seed.at(ta, tb);
  };

  if (!fa->compact) {
    int ia = facet_index(s.i3, a);
    for (const FacetInfo& g : s.i1) {
      if (g.label == a) continue;
      if (!g.compact) {
        int ig = facet_index(s.i3, g.label);
        if (!b.adjacent(ia, ig)) continue;
        Vec3 na = facet_inward_normal(s.i3, s.i3.facets[size_t(ia)].plane);
        Vec3 ng = facet_inward_normal(s.i3, s.i3.facets[size_t(ig)].plane);
        Rat q = dihedral_from_inward_normals(na, ng);
        if (s.i3.is_box && q != Rat(1, 2))
          throw std::runtime_error("non-orthogonal box facets");
        out.emplace_back(g.label, AngleLabel::from_angle(q));
      } else {
        auto pc = picture_classes(b, ia, g.type);
        if (pc.count(g.label))
          out.emplace_back(g.label, angle_between_types(g.type, fa->type));
      }
    }
    return out;
  }

  // Compact facet: non-compact neighbors via pictures, compact same-type via
  // the adjacency graph, compact cross-type via shared tiles.
  const LabeledGraph& own = fa->type == 3 ? s.g3 : s.g7;
  int other_t = fa->type == 3 ? 7 : 3;
  std::set<FacetLabel> other_mates;
  for (size_t tile = 0; tile < s.i3.tiles.size(); ++tile)
    if (b.classes.of(fa->type, int(tile)) == a)
      other_mates.insert(b.classes.of(other_t, int(tile)));

  for (const FacetInfo& g : s.i1) {
    if (g.label == a) continue;
    if (!g.compact) {
      int ig = facet_index(s.i3, g.label);
      if (picture_classes(b, ig, fa->type).count(a))
        out.emplace_back(g.label, angle_between_types(fa->type, g.type));
    } else if (g.type == fa->type) {
      if (const int* k = own.edge_label(a, g.label))
        out.emplace_back(g.label, AngleLabel::submultiple(*k));
    } else {
      if (other_mates.count(g.label))
        out.emplace_back(g.label, angle_between_types(fa->type, g.type));
    }
  }
  return out;
}

PolytopeState double_along(const PolytopeState& s, const FacetLabel& f) {
  const FacetInfo* ff = s.find_facet(f);
  if (!ff) throw std::runtime_error("not a facet: " + f.str());
  if (ff->compact) throw std::runtime_error("cannot double along compact facet " + f.str());
  for (auto& [g, angle] : incidence_list(s, f))
    if (!(angle.is_submultiple() && angle.k % 2 == 0))
      throw std::runtime_error("facet " + f.str() + " is not admissible");

  PolytopeState out;
  out.seed = s.seed;
  out.i3 = reflect_double(s.i3, f);
  out.history = s.history;
  out.history.push_back(f);

  BoundaryMap b = boundary_map(s.i3, s.seed);
  int idx_f = facet_index(s.i3, f);
  std::set<FacetLabel> pic3 = picture_classes(b, idx_f, 3);
  std::set<FacetLabel> pic7 = picture_classes(b, idx_f, 7);

  auto kept = [&](const FacetInfo& g) {
    if (g.compact) {
      const auto& pic = g.type == 3 ? pic3 : pic7;
      if (!pic.count(g.label)) return false;
      const AngleLabel& l = s.seed.at(g.type, ff->type);
      return l.is_submultiple() && l.k == 2;
    }
    int ig = facet_index(s.i3, g.label);
    if (!b.adjacent(idx_f, ig)) return false;
    if (g.type == ff->type) return true;
    const AngleLabel& l = s.seed.at(g.type, ff->type);
    return l.is_submultiple() && l.k == 2;
  };

  std::vector<FacetInfo> mirrors;
  std::set<FacetLabel> duplicated;
  for (const FacetInfo& g : s.i1) {
    if (g.label == f) continue;
    out.i1.push_back(g);
    if (!kept(g)) {
      duplicated.insert(g.label);
      mirrors.push_back(FacetInfo{g.label.prepended(f), g.type, g.compact});
    }
  }
  out.i1.insert(out.i1.end(), mirrors.begin(), mirrors.end());

  // The incremental non-compact bookkeeping must agree with the geometric one.
  {
    std::vector<FacetLabel> inc, geo;
    for (const FacetInfo& g : out.i1)
      if (!g.compact) inc.push_back(g.label);
    for (const LinkFacet& g : out.i3.facets) geo.push_back(g.label);
    if (inc != geo)
      throw std::runtime_error("incremental facet list diverges from link facets after doubling " +
                               f.str());
  }

  for (const FacetInfo& g : out.i1) {
    if (!g.compact) continue;
    (g.type == 3 ? out.g3 : out.g7).verts.push_back(g.label);
  }

  for (int t : {3, 7}) {
    const LabeledGraph& old = t == 3 ? s.g3 : s.g7;
    LabeledGraph& now = t == 3 ? out.g3 : out.g7;
    for (auto& [ij, k] : old.edges) {
      const FacetLabel& A = old.verts[size_t(ij.first)];
      const FacetLabel& B = old.verts[size_t(ij.second)];
      bool da = duplicated.count(A), db = duplicated.count(B);
      now.add_edge(A, B, k);
      if (da && db)
        now.add_edge(A.prepended(f), B.prepended(f), k);
      else if (da)
        now.add_edge(A.prepended(f), B, k);
      else if (db)
        now.add_edge(A, B.prepended(f), k);
    }
    const auto& pic = t == 3 ? pic3 : pic7;
    const AngleLabel& l = s.seed.at(t, ff->type);
    for (const FacetLabel& A : old.verts) {
      if (!duplicated.count(A) || !pic.count(A)) continue;
      if (!(l.is_submultiple() && l.k % 2 == 0 && l.k > 2))
        throw std::runtime_error("doubling fan with non-even wall label");
      now.add_edge(A, A.prepended(f), l.k / 2);
    }
  }
  return out;
}

std::vector<FacetLabel> canonical_doubling_labels() {
  std::vector<FacetLabel> seq;
  for (const char* s : {"5", "2", "4_5", "4", "1", "6", "6_5", "1_2"})
    seq.push_back(parse_facet_label(s));
  return seq;
}

std::vector<PolytopeState> canonical_sequence(const CoxeterMatrix& seed) {
  std::vector<PolytopeState> states;
  states.push_back(initial_state(seed));
  for (const FacetLabel& f : canonical_doubling_labels())
    states.push_back(double_along(states.back(), f));
  return states;
}

LabeledMatrix adjacency_matrix(const PolytopeState& s, int t) {
  if (t != 3 && t != 7) throw std::invalid_argument("type must be 3 or 7");
  const LabeledGraph& g = t == 3 ? s.g3 : s.g7;
  LabeledMatrix m;
  m.labels = g.verts;
  size_t n = g.verts.size();
  m.cells.assign(n, std::vector<int>(n, 0));
  for (size_t i = 0; i < n; ++i) m.cells[i][i] = 1;
  for (auto& [ij, k] : g.edges) {
    m.cells[size_t(ij.first)][size_t(ij.second)] = k;
    m.cells[size_t(ij.second)][size_t(ij.first)] = k;
  }
  return m;
}

std::string LabeledMatrix::to_csv() const {
  std::ostringstream o;
  for (const FacetLabel& l : labels) o << "," << l.str();
  o << "\n";
  for (size_t i = 0; i < labels.size(); ++i) {
    o << labels[i].str();
    for (size_t j = 0; j < labels.size(); ++j) o << "," << cells[i][j];
    o << "\n";
  }
  return o.str();
}

std::string LabeledMatrix::to_text() const {
  size_t w = 1;
  for (const FacetLabel& l : labels) w = std::max(w, l.str().size());
  std::ostringstream o;
  for (size_t i = 0; i < labels.size(); ++i) {
    std::string name = labels[i].str();
    o << name << std::string(w - name.size() + 1, ' ');
    for (size_t j = 0; j < labels.size(); ++j) {
      if (j) o << ' ';
      o << (cells[i][j] == 0 ? "." : std::to_string(cells[i][j]));
    }
    o << "\n";
  }
  return o.str();
}

std::vector<std::string> diff_matrices(const LabeledMatrix& got, const LabeledMatrix& want) {
  std::vector<std::string> diffs;
  std::map<std::string, int> gi, wi;
  for (size_t i = 0; i < got.labels.size(); ++i) gi[got.labels[i].str()] = int(i);
  for (size_t i = 0; i < want.labels.size(); ++i) wi[want.labels[i].str()] = int(i);
  for (auto& [l, i] : gi)
    if (!wi.count(l)) diffs.push_back("unexpected row " + l);
  for (auto& [l, i] : wi)
    if (!gi.count(l)) diffs.push_back("missing row " + l);
  if (!diffs.empty()) return diffs;
  for (auto& [la, ia] : wi)
    for (auto& [lb, ib] : wi) {
      int w = want.cells[size_t(ia)][size_t(ib)];
      int g = got.cells[size_t(gi[la])][size_t(gi[lb])];
      if (w != g && la <= lb)
        diffs.push_back("cell (" + la + "," + lb + "): computed " + std::to_string(g) +
                        ", expected " + std::to_string(w));
    }
  return diffs;
}

OracleReport verify_against_oracle(const PolytopeState& s) {
  OracleReport rep;
  auto note = [&](const std::string& m) {
    rep.ok = false;
    rep.divergences.push_back(m);
  };

  CompactClasses cc = compact_facet_classes(s.i3, s.seed);
  for (int t : {3, 7}) {
    const LabeledGraph& g = t == 3 ? s.g3 : s.g7;
    const auto& names = t == 3 ? cc.list3 : cc.list7;
    std::set<std::string> inc, orc;
    for (const FacetLabel& l : g.verts) inc.insert(l.str());
    for (const FacetLabel& l : names) orc.insert(l.str());
    if (inc != orc) {
      for (const auto& l : inc)
        if (!orc.count(l)) note("type-" + std::to_string(t) + " facet " + l + " missing in oracle");
      for (const auto& l : orc)
        if (!inc.count(l)) note("oracle has extra type-" + std::to_string(t) + " facet " + l);
      continue;
    }
    OracleGraph og = compact_adjacency(s.i3, s.seed, t);
    std::map<std::pair<std::string, std::string>, int> oedges, iedges;
    for (auto& [ij, k] : og.label) {
      auto a = og.verts[size_t(ij.first)].str(), b = og.verts[size_t(ij.second)].str();
      oedges[std::minmax(a, b)] = k;
    }
    for (auto& [ij, k] : g.edges) {
      auto a = g.verts[size_t(ij.first)].str(), b = g.verts[size_t(ij.second)].str();
      iedges[std::minmax(a, b)] = k;
    }
    for (auto& [e, k] : iedges) {
      auto it = oedges.find(e);
      if (it == oedges.end())
        note("incremental edge (" + e.first + "," + e.second + ") absent from oracle");
      else if (it->second != k)
        note("edge (" + e.first + "," + e.second + "): incremental " + std::to_string(k) +
             " vs oracle " + std::to_string(it->second));
    }
    for (auto& [e, k] : oedges)
      if (!iedges.count(e))
        note("oracle edge (" + e.first + "," + e.second + ") absent from incremental state");
  }

  std::set<std::string> inc_nc, geo_nc;
  for (const FacetInfo& f : s.i1)
    if (!f.compact) inc_nc.insert(f.label.str());
  for (const LinkFacet& f : s.i3.facets) geo_nc.insert(f.label.str());
  if (inc_nc != geo_nc) note("non-compact facet lists disagree");

  return rep;
}

}  // namespace rfold
