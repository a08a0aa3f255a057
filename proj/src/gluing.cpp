#include "rfold/gluing.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace rfold {

namespace {

using nlohmann::json;

std::string part_str(RegionPart p) {
  switch (p) {
    case RegionPart::full: return "full";
    case RegionPart::upper: return "upper";
    case RegionPart::lower: return "lower";
  }
  return "?";
}

RegionPart part_parse(const std::string& s) {
  if (s == "full") return RegionPart::full;
  if (s == "upper") return RegionPart::upper;
  if (s == "lower") return RegionPart::lower;
  throw std::runtime_error("bad region kind '" + s + "'");
}

}  // namespace

std::string FaceRegion::str() const {
  std::string s = facet.str();
  if (part == RegionPart::upper) s += "^U";
  if (part == RegionPart::lower) s += "^D";
  return s;
}

std::string WordItem::str() const {
  if (kind == Kind::translation)
    return "t(" + rat_str(shift[0]) + "," + rat_str(shift[1]) + "," + rat_str(shift[2]) + ")";
  std::string body;
  for (size_t i = 0; i < refs.size(); ++i) body += (i ? " " : "") + ("r" + refs[i].str());
  if (refs.size() == 1 && power == 1) return body;
  return "(" + body + ")^" + std::to_string(power);
}

std::string Pairing::str() const {
  std::string w;
  for (size_t i = 0; i < word.size(); ++i) w += (i ? " " : "") + word[i].str();
  return source.str() + " -> " + target.str() + " via " + w;
}

namespace {

WordItem parse_word_item(const std::string& raw) {
  WordItem item;
  std::string s = raw;
  auto strip = [](std::string& t) {
    while (!t.empty() && t.front() == ' ') t.erase(t.begin());
    while (!t.empty() && t.back() == ' ') t.pop_back();
  };
  strip(s);
  if (s.empty()) throw std::runtime_error("empty word item");

  if (s[0] == 't') {
    auto open = s.find('('), close = s.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw std::runtime_error("bad translation item '" + raw + "'");
    std::string body = s.substr(open + 1, close - open - 1);
    std::vector<std::string> parts;
    std::string cur;
    for (char c : body) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    parts.push_back(cur);
    if (parts.size() != 3) throw std::runtime_error("translation needs 3 components");
    item.kind = WordItem::Kind::translation;
    for (int i = 0; i < 3; ++i) {
      strip(parts[size_t(i)]);
      item.shift[i] = rat_parse(parts[size_t(i)]);
    }
    return item;
  }

  item.kind = WordItem::Kind::reflection;
  std::string body = s;
  item.power = 1;
  if (s[0] == '(') {
    auto close = s.rfind(')');
    if (close == std::string::npos) throw std::runtime_error("unbalanced '(' in '" + raw + "'");
    body = s.substr(1, close - 1);
    std::string tail = s.substr(close + 1);
    strip(tail);
    if (!tail.empty()) {
      if (tail[0] != '^') throw std::runtime_error("expected ^power in '" + raw + "'");
      item.power = std::stoi(tail.substr(1));
      if (item.power < 1) throw std::runtime_error("power must be positive");
    }
  }
  std::istringstream in(body);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || tok[0] != 'r')
      throw std::runtime_error("expected reflection 'r<facet>' in '" + raw + "'");
    item.refs.push_back(parse_facet_label(tok.substr(1)));
  }
  if (item.refs.empty()) throw std::runtime_error("empty reflection group in '" + raw + "'");
  return item;
}

Pairing make_pairing(const std::string& src, RegionPart sp, const std::string& dst, RegionPart dp,
                     std::initializer_list<const char*> word) {
  Pairing p;
  p.source = FaceRegion{parse_facet_label(src), sp};
  p.target = FaceRegion{parse_facet_label(dst), dp};
  for (const char* w : word) p.word.push_back(parse_word_item(w));
  return p;
}

}  // namespace

std::vector<GluingScheme> builtin_gluings() {
  std::vector<GluingScheme> out;
  const RegionPart F = RegionPart::full, U = RegionPart::upper, D = RegionPart::lower;

  GluingScheme rt{"R_T", 7, {}};
  rt.pairings.push_back(make_pairing("6_{4_5}", F, "6_{6,4_5}", F, {"r6"}));
  rt.pairings.push_back(make_pairing("6_{4,5}", F, "6_{6_5,4,5}", F, {"r6_5"}));
  rt.pairings.push_back(make_pairing("1_2", F, "1_{1,2}", F, {"r1"}));
  out.push_back(rt);

  GluingScheme rh{"R_half", 7, {}};
  rh.pairings = rt.pairings;
  rh.pairings[2] = make_pairing("1_2", F, "1_{1,2}", F, {"r1", "r6", "r6_5"});
  out.push_back(rh);

  GluingScheme rq{"R_quarter", 7, {}};
  rq.pairings = rt.pairings;
  rq.pairings[2] = make_pairing("1_2", F, "1_{1,2}", F, {"r1", "r6", "r5"});
  out.push_back(rq);

  GluingScheme hw{"R_HW", 8, {}};
  hw.pairings.push_back(make_pairing("1_{1,2}", F, "1_{1_2,1,2}", F, {"r1_2"}));
  hw.pairings.push_back(make_pairing("6_{4_5}", F, "6_{6,4_5}", F, {"r1_2", "r6_5", "r6"}));
  hw.pairings.push_back(make_pairing("6_{4,5}", U, "6_{4,5}", D, {"r6", "(r1 r2)^2"}));
  hw.pairings.push_back(make_pairing("6_{6_5,4,5}", U, "6_{6_5,4,5}", D, {"r6", "(r1 r2)^2"}));
  out.push_back(hw);
  return out;
}

const GluingScheme& builtin_gluing(const std::string& name) {
  static const std::vector<GluingScheme> all = builtin_gluings();
  for (const GluingScheme& g : all)
    if (g.name == name) return g;
  throw std::runtime_error("no builtin gluing named '" + name + "'");
}

GluingScheme parse_scheme_json(const std::string& text) {
  json j = json::parse(text);
  GluingScheme g;
  g.name = j.value("name", "scheme");
  std::string base = j.at("base").get<std::string>();
  if (base.size() < 2 || base[0] != 'P') throw std::runtime_error("base must be P0..P8");
  g.base = std::stoi(base.substr(1));
  if (g.base < 0 || g.base > 8) throw std::runtime_error("base must be P0..P8");
  for (const json& pj : j.at("pairings")) {
    Pairing p;
    p.source.facet = parse_facet_label(pj.at("source").at("facet").get<std::string>());
    p.source.part = part_parse(pj.at("source").value("region", "full"));
    p.target.facet = parse_facet_label(pj.at("target").at("facet").get<std::string>());
    p.target.part = part_parse(pj.at("target").value("region", "full"));
    for (const json& w : pj.at("word")) p.word.push_back(parse_word_item(w.get<std::string>()));
    g.pairings.push_back(std::move(p));
  }
  return g;
}

std::string scheme_to_json(const GluingScheme& g) {
  json j;
  j["name"] = g.name;
  j["base"] = "P" + std::to_string(g.base);
  j["pairings"] = json::array();
  for (const Pairing& p : g.pairings) {
    json pj;
    pj["source"] = {{"facet", p.source.facet.str()}, {"region", part_str(p.source.part)}};
    pj["target"] = {{"facet", p.target.facet.str()}, {"region", part_str(p.target.part)}};
    pj["word"] = json::array();
    for (const WordItem& w : p.word) pj["word"].push_back(w.str());
    j["pairings"].push_back(pj);
  }
  return j.dump(2) + "\n";
}

Isometry pairing_isometry(const PolytopeState& s, const Pairing& p) {
  Isometry total = Isometry::identity();
  for (const WordItem& item : p.word) {
    Isometry part = Isometry::identity();
    if (item.kind == WordItem::Kind::translation) {
      part = Isometry::from_translation(item.shift);
    } else {
      Isometry group = Isometry::identity();
      for (const FacetLabel& f : item.refs)
        group = group * s.i3.reflection_plane(f).reflection();
      for (int i = 0; i < item.power; ++i) part = part * group;
    }
    total = total * part;
  }
  return total;
}

namespace {

// 3D point from the intrinsic chart of a facet plane.
Vec3 unchart(const Plane& p, const Vec2& uv) {
  int nz = 0, ax = -1;
  for (int i = 0; i < 3; ++i)
    if (p.n[i] != 0) {
      ++nz;
      ax = i;
    }
  if (nz == 1) {
    Vec3 out;
    out[ax] = p.d / p.n[ax];
    int k = 0;
    for (int i = 0; i < 3; ++i)
      if (i != ax) out[i] = uv[size_t(k++)];
    return out;
  }
  if (p.n == Vec3{Rat(1), Rat(1), Rat(0)})
    return Vec3{(p.d + uv[0]) / 2, (p.d - uv[0]) / 2, uv[1]};
  throw std::runtime_error("no chart for plane " + p.key());
}

}  // namespace

RegionRect region_rect(const PolytopeState& s, const FaceRegion& r) {
  const LinkTess& link = s.i3;
  if (!link.is_box) throw std::runtime_error("face regions need a box link");
  const LinkFacet* fac = link.find_facet(r.facet);
  if (!fac) throw std::runtime_error("unknown facet " + r.facet.str());
  int ax = -1;
  for (int i = 0; i < 3; ++i)
    if (fac->plane.n[i] != 0) ax = i;
  int u = -1, v = -1;
  for (int i = 0; i < 3; ++i)
    if (i != ax) (u < 0 ? u : v) = i;
  RegionRect rect{{link.lo[size_t(u)], link.lo[size_t(v)]},
                  {link.hi[size_t(u)], link.hi[size_t(v)]}};
  Rat mid = (rect.lo[1] + rect.hi[1]) / 2;
  if (r.part == RegionPart::upper) rect.lo[1] = mid;
  if (r.part == RegionPart::lower) rect.hi[1] = mid;
  return rect;
}

namespace {

std::array<Vec3, 4> region_corners(const PolytopeState& s, const FaceRegion& r) {
  RegionRect rect = region_rect(s, r);
  const Plane& pl = s.i3.find_facet(r.facet)->plane;
  return {unchart(pl, {rect.lo[0], rect.lo[1]}), unchart(pl, {rect.hi[0], rect.lo[1]}),
          unchart(pl, {rect.hi[0], rect.hi[1]}), unchart(pl, {rect.lo[0], rect.hi[1]})};
}

bool in_rect(const RegionRect& r, const Vec2& p) {
  return p[0] >= r.lo[0] && p[0] <= r.hi[0] && p[1] >= r.lo[1] && p[1] <= r.hi[1];
}

std::string point_key(const Vec3& v) {
  return rat_str(v[0]) + "," + rat_str(v[1]) + "," + rat_str(v[2]);
}

std::string poly_key(std::vector<Vec3> poly) {
  std::sort(poly.begin(), poly.end());
  std::string k;
  for (const Vec3& v : poly) k += point_key(v) + "|";
  return k;
}

struct FaceOnFacet {
  int tile, face;
  std::vector<Vec3> poly;
};

std::vector<FaceOnFacet> faces_on_facet(const PolytopeState& s, const FacetLabel& f) {
  std::vector<FaceOnFacet> out;
  for (const Wall& w : enumerate_walls(s.i3)) {
    if (w.tile_b >= 0 || w.facet_idx < 0) continue;
    if (!(s.i3.facets[size_t(w.facet_idx)].label == f)) continue;
    out.push_back(FaceOnFacet{w.tile_a, w.face_a, s.i3.tile_face_polygon(w.tile_a, w.face_a)});
  }
  return out;
}

}  // namespace

bool ValidationReport::valid() const {
  if (!coverage_ok) return false;
  for (const PairingCheck& p : pairings)
    if (!p.region_ok || !p.symmetry_ok || !p.tile_pairing_ok) return false;
  return true;
}

std::string ValidationReport::to_text() const {
  std::ostringstream o;
  for (size_t i = 0; i < pairings.size(); ++i) {
    const PairingCheck& c = pairings[i];
    o << "pairing " << i + 1 << ": region " << (c.region_ok ? "ok" : "MISMATCH") << ", symmetry "
      << (c.symmetry_ok ? "ok" : "FAIL") << ", tile pairing "
      << (c.tile_pairing_ok ? "ok" : "FAIL") << "\n";
    for (const std::string& n : c.notes) o << "    " << n << "\n";
  }
  o << "coverage: " << (coverage_ok ? "ok" : "FAIL") << "\n";
  for (const std::string& n : notes) o << "  " << n << "\n";
  o << "scheme " << (valid() ? "valid" : "NOT valid") << "\n";
  return o.str();
}

ValidationReport validate_gluing(const PolytopeState& s, const GluingScheme& g) {
  ValidationReport rep;
  if (int(s.history.size()) != g.base)
    rep.notes.push_back("scheme base P" + std::to_string(g.base) + " does not match state " +
                        s.name());

  SymmetryMode mode = g.base >= 8 ? SymmetryMode::ambient : SymmetryMode::box;

  for (const Pairing& p : g.pairings) {
    PairingCheck chk;
    try {
      Isometry iso = pairing_isometry(s, p);

      auto src = region_corners(s, p.source);
      auto dst = region_corners(s, p.target);
      std::set<std::string> want, got;
      for (const Vec3& v : dst) want.insert(point_key(v));
      for (const Vec3& v : src) got.insert(point_key(iso.apply(v)));
      chk.region_ok = want == got;
      if (!chk.region_ok)
        chk.notes.push_back("isometry does not map " + p.source.str() + " onto " + p.target.str());

      chk.symmetry_ok = is_tessellation_symmetry(s.i3, iso, mode);
      if (!chk.symmetry_ok)
        chk.notes.push_back("word is not a tessellation symmetry (" +
                            std::string(mode == SymmetryMode::box ? "box" : "ambient") + " mode)");

      // Tile faces inside the source region must map to tile faces of the
      // same base type on the target facet.
      RegionRect srect = region_rect(s, p.source);
      const Plane& spl = s.i3.find_facet(p.source.facet)->plane;
      std::map<std::string, int> target_types;
      for (const FaceOnFacet& fof : faces_on_facet(s, p.target.facet))
        target_types[poly_key(fof.poly)] = fof.face;
      chk.tile_pairing_ok = true;
      for (const FaceOnFacet& fof : faces_on_facet(s, p.source.facet)) {
        bool inside = true;
        for (const Vec3& v : fof.poly)
          if (!in_rect(srect, plane_chart(spl, v))) inside = false;
        if (!inside) continue;
        std::vector<Vec3> img;
        for (const Vec3& v : fof.poly) img.push_back(iso.apply(v));
        auto it = target_types.find(poly_key(img));
        if (it == target_types.end()) {
          chk.tile_pairing_ok = false;
          chk.notes.push_back("image of a source tile face is not a target tile face");
        } else if (it->second != fof.face) {
          chk.tile_pairing_ok = false;
          chk.notes.push_back("tile face of type " + std::to_string(fof.face) +
                              " maps to a face of type " + std::to_string(it->second));
        }
      }
    } catch (const std::exception& e) {
      chk.notes.push_back(e.what());
    }
    rep.pairings.push_back(std::move(chk));
  }

  // Coverage: every non-compact facet glued exactly once.
  std::map<std::string, std::multiset<int>> cover;
  for (const Pairing& p : g.pairings) {
    cover[p.source.facet.str()].insert(int(p.source.part));
    cover[p.target.facet.str()].insert(int(p.target.part));
  }
  rep.coverage_ok = true;
  for (const FacetInfo& f : s.i1) {
    if (f.compact) continue;
    auto it = cover.find(f.label.str());
    bool ok = false;
    if (it != cover.end()) {
      const auto& parts = it->second;
      ok = (parts.size() == 1 && *parts.begin() == int(RegionPart::full)) ||
           (parts.size() == 2 && parts.count(int(RegionPart::upper)) == 1 &&
            parts.count(int(RegionPart::lower)) == 1);
    }
    if (!ok) {
      rep.coverage_ok = false;
      rep.notes.push_back("facet " + f.label.str() + " is not glued exactly once");
    }
  }
  for (auto& [name, parts] : cover)
    if (!s.find_facet(parse_facet_label(name)))
      rep.notes.push_back("scheme mentions unknown facet " + name);
  return rep;
}

int CornerGraph::index_of(const FacetLabel& l) const {
  for (size_t i = 0; i < verts.size(); ++i)
    if (verts[i] == l) return int(i);
  return -1;
}

bool CornerGraph::has_loop() const {
  for (auto& [ij, angles] : edges)
    if (ij.first == ij.second) return true;
  return false;
}

bool CornerGraph::labels_consistent() const {
  for (auto& [ij, angles] : edges)
    if (angles.size() > 1) return false;
  return true;
}

ReflectofoldState facet_classes(const PolytopeState& s, const GluingScheme& g) {
  ReflectofoldState rs{g, g.base, {}, {}, {}, {}, {}, {}, {}, {}};

  std::map<std::string, FacetLabel> all3, all7;
  std::map<std::string, std::string> parent;
  for (const FacetInfo& f : s.i1) {
    if (!f.compact) continue;
    (f.type == 3 ? all3 : all7)[f.label.str()] = f.label;
    parent[f.label.str()] = f.label.str();
  }
  std::function<std::string(std::string)> find = [&](std::string v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  auto unite = [&](const std::string& a, const std::string& b) {
    std::string ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  };

  CompactClasses cc = compact_facet_classes(s.i3, s.seed);

  struct RawCorner {
    int type;
    std::string a, b;
    Rat angle;
  };
  std::vector<RawCorner> raw;

  for (const Pairing& p : g.pairings) {
    Isometry iso;
    RegionRect srect;
    try {
      iso = pairing_isometry(s, p);
      srect = region_rect(s, p.source);
    } catch (const std::exception& e) {
      rs.violations.push_back(Violation{"pairing " + p.str() + ": " + e.what()});
      continue;
    }
    const Plane& spl = s.i3.find_facet(p.source.facet)->plane;
    std::map<std::string, std::pair<int, int>> target_faces;
    for (const FaceOnFacet& fof : faces_on_facet(s, p.target.facet))
      target_faces[poly_key(fof.poly)] = {fof.tile, fof.face};

    for (const FaceOnFacet& fof : faces_on_facet(s, p.source.facet)) {
      bool inside = true;
      for (const Vec3& v : fof.poly)
        if (!in_rect(srect, plane_chart(spl, v))) inside = false;
      if (!inside) continue;
      std::vector<Vec3> img;
      for (const Vec3& v : fof.poly) img.push_back(iso.apply(v));
      auto it = target_faces.find(poly_key(img));
      if (it == target_faces.end()) {
        rs.violations.push_back(
            Violation{"pairing " + p.str() + ": unmatched tile face (skipped in corner scan)"});
        continue;
      }
      auto [tile2, face2] = it->second;
      for (int t : {3, 7}) {
        const AngleLabel& la = s.seed.at(t, fof.face);
        const AngleLabel& lb = s.seed.at(t, face2);
        if (!la.is_submultiple() || !lb.is_submultiple())
          throw std::runtime_error("compact facet tangent to a wall type");
        Rat sum = Rat(1, la.k) + Rat(1, lb.k);
        std::string A = cc.of(t, fof.tile).str(), B = cc.of(t, tile2).str();
        if (sum == 1) {
          if (t == 7 && A != B)
            rs.violations.push_back(Violation{"type-7 facets " + A + " and " + B + " merged"});
          unite(A, B);
        } else {
          raw.push_back(RawCorner{t, std::min(A, B), std::max(A, B), sum});
          if (rat_num(sum) != 1)
            rs.violations.push_back(Violation{"corner of " + A + " and " + B + " has angle " +
                                              rat_str(sum) +
                                              "*pi, not an integral submultiple"});
        }
      }
    }
  }

  std::map<std::string, std::vector<FacetLabel>> members;
  for (auto& [str, lab] : all3) members[find(str)].push_back(lab);

  auto canonical_name = [&](const std::vector<FacetLabel>& mem) {
    const FacetLabel* best = &mem[0];
    for (const FacetLabel& m : mem)
      if (s.i3.word_less(m.subs, best->subs)) best = &m;
    return *best;
  };

  // Classes ordered by the first occurrence of a member in i2_3 order.
  std::set<std::string> emitted;
  for (const FacetLabel& v : s.g3.verts) {
    std::string r = find(v.str());
    if (!emitted.insert(r).second) continue;
    std::vector<FacetLabel> mem = members[r];
    std::sort(mem.begin(), mem.end(), [&](const FacetLabel& a, const FacetLabel& b) {
      return s.i3.word_less(a.subs, b.subs);
    });
    rs.classes3.push_back(mem);
  }
  for (size_t ci = 0; ci < rs.classes3.size(); ++ci) {
    rs.class_names3.push_back(canonical_name(rs.classes3[ci]));
    for (const FacetLabel& m : rs.classes3[ci]) rs.class_of3[m.str()] = int(ci);
  }

  std::map<std::tuple<int, std::string, std::string, Rat>, int> agg;
  for (const RawCorner& r : raw) {
    std::string A = r.a, B = r.b;
    if (r.type == 3) {
      A = rs.class_names3[size_t(rs.class_of3[find(r.a)])].str();
      B = rs.class_names3[size_t(rs.class_of3[find(r.b)])].str();
    }
    if (B < A) std::swap(A, B);
    ++agg[{r.type, A, B, r.angle}];
  }
  for (auto& [key, count] : agg) {
    auto& [t, A, B, q] = key;
    rs.corners.push_back(CornerRecord{t, parse_facet_label(A), parse_facet_label(B), q, count});
  }

  corner_graphs(s, rs);
  check_developability(rs);
  return rs;
}

void corner_graphs(const PolytopeState& s, ReflectofoldState& rs) {
  rs.g3t = CornerGraph{};
  rs.g7t = CornerGraph{};
  rs.g3t.verts = rs.class_names3;
  rs.g7t.verts = s.g7.verts;

  auto add = [](CornerGraph& g, int i, int j, const Rat& q) {
    auto key = std::minmax(i, j);
    ++g.edges[key][q];
  };

  for (auto& [ij, k] : s.g3.edges) {
    int a = rs.class_of3.at(s.g3.verts[size_t(ij.first)].str());
    int b = rs.class_of3.at(s.g3.verts[size_t(ij.second)].str());
    add(rs.g3t, a, b, Rat(1, k));
  }
  for (auto& [ij, k] : s.g7.edges) add(rs.g7t, ij.first, ij.second, Rat(1, k));

  for (const CornerRecord& c : rs.corners) {
    CornerGraph& g = c.type == 3 ? rs.g3t : rs.g7t;
    int i = g.index_of(c.a), j = g.index_of(c.b);
    if (i < 0 || j < 0) throw std::runtime_error("corner endpoint missing from graph");
    for (int rep = 0; rep < c.multiplicity; ++rep) add(g, i, j, c.angle);
  }
}

void check_developability(ReflectofoldState& rs) {
  rs.dev.problems.clear();
  auto scan = [&](const CornerGraph& g, const std::string& name) {
    for (auto& [ij, angles] : g.edges) {
      if (ij.first == ij.second)
        rs.dev.problems.push_back("EF violation: loop at " + g.verts[size_t(ij.first)].str() +
                                  " in " + name);
      if (angles.size() > 1) {
        std::string msg = "AC violation: corners of " + g.verts[size_t(ij.first)].str() +
                          " and " + g.verts[size_t(ij.second)].str() + " carry angles";
        for (auto& [q, cnt] : angles) msg += " " + rat_str(q) + "*pi";
        rs.dev.problems.push_back(msg);
      }
      for (auto& [q, cnt] : angles)
        if (rat_num(q) != 1)
          rs.dev.problems.push_back("corner of " + g.verts[size_t(ij.first)].str() + " and " +
                                    g.verts[size_t(ij.second)].str() + " has angle " +
                                    rat_str(q) + "*pi in " + name);
    }
  };
  scan(rs.g3t, "G~_3");
  scan(rs.g7t, "G~_7");
  for (const Violation& v : rs.violations) rs.dev.problems.push_back(v.what);
  rs.dev.developable = rs.dev.problems.empty();
}

std::string MatrixCell::str() const {
  switch (kind) {
    case Kind::zero: return "0";
    case Kind::diagonal: return "1";
    case Kind::submultiple: return std::to_string(k);
    case Kind::general: return "~" + rat_str(q);
  }
  return "?";
}

ReflectofoldMatrix adjacency_matrix_R(const PolytopeState& s, const ReflectofoldState& rs, int t) {
  (void)s;
  if (t != 3 && t != 7) throw std::invalid_argument("type must be 3 or 7");
  const CornerGraph& g = t == 3 ? rs.g3t : rs.g7t;
  ReflectofoldMatrix m;
  m.labels = g.verts;
  size_t n = g.verts.size();
  m.cells.assign(n, std::vector<MatrixCell>(n));
  for (size_t i = 0; i < n; ++i) m.cells[i][i] = MatrixCell{MatrixCell::Kind::diagonal, 0, Rat(0)};
  for (auto& [ij, angles] : g.edges) {
    if (ij.first == ij.second) continue;  // loops live in the violation report
    Rat q = angles.begin()->first;
    MatrixCell cell;
    if (rat_num(q) == 1)
      cell = MatrixCell{MatrixCell::Kind::submultiple, int(rat_den(q)), Rat(0)};
    else
      cell = MatrixCell{MatrixCell::Kind::general, 0, q};
    m.cells[size_t(ij.first)][size_t(ij.second)] = cell;
    m.cells[size_t(ij.second)][size_t(ij.first)] = cell;
  }
  return m;
}

std::string ReflectofoldMatrix::to_csv() const {
  std::ostringstream o;
  for (const FacetLabel& l : labels) o << "," << l.str();
  o << "\n";
  for (size_t i = 0; i < labels.size(); ++i) {
    o << labels[i].str();
    for (size_t j = 0; j < labels.size(); ++j) o << "," << cells[i][j].str();
    o << "\n";
  }
  return o.str();
}

std::string ReflectofoldMatrix::to_text() const {
  size_t w = 1;
  for (const FacetLabel& l : labels) w = std::max(w, l.str().size());
  std::ostringstream o;
  for (size_t i = 0; i < labels.size(); ++i) {
    std::string name = labels[i].str();
    o << name << std::string(w - name.size() + 1, ' ');
    for (size_t j = 0; j < labels.size(); ++j) {
      if (j) o << ' ';
      std::string c = cells[i][j].str();
      o << (c == "0" ? "." : c);
    }
    o << "\n";
  }
  return o.str();
}

bool ReflectofoldMatrix::has_general_cells() const {
  for (const auto& row : cells)
    for (const MatrixCell& c : row)
      if (c.kind == MatrixCell::Kind::general) return true;
  return false;
}

LabeledMatrix ReflectofoldMatrix::as_plain() const {
  LabeledMatrix m;
  m.labels = labels;
  m.cells.assign(labels.size(), std::vector<int>(labels.size(), 0));
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = 0; j < labels.size(); ++j) {
      const MatrixCell& c = cells[i][j];
      switch (c.kind) {
        case MatrixCell::Kind::zero: m.cells[i][j] = 0; break;
        case MatrixCell::Kind::diagonal: m.cells[i][j] = 1; break;
        case MatrixCell::Kind::submultiple: m.cells[i][j] = c.k; break;
        case MatrixCell::Kind::general:
          throw std::runtime_error("matrix has a non-submultiple entry");
      }
    }
  return m;
}

CoxeterPresentation coxeter_presentation(const PolytopeState& s, const ReflectofoldState& rs) {
  if (!rs.dev.developable)
    throw std::runtime_error("presentation requires a developable reflectofold");
  CoxeterPresentation pres;
  for (const FacetLabel& l : rs.g3t.verts) pres.generators.push_back(l.str());
  for (const FacetLabel& l : rs.g7t.verts) pres.generators.push_back(l.str());

  auto add_edges = [&](const CornerGraph& g) {
    for (auto& [ij, angles] : g.edges) {
      Rat q = angles.begin()->first;
      pres.pair_relators.emplace_back(g.verts[size_t(ij.first)].str(),
                                      g.verts[size_t(ij.second)].str(), int(rat_den(q)));
    }
  };
  add_edges(rs.g3t);
  add_edges(rs.g7t);

  // One order-2 relator per intersecting cross-type pair.
  CompactClasses cc = compact_facet_classes(s.i3, s.seed);
  std::set<std::pair<std::string, std::string>> pairs;
  for (size_t tile = 0; tile < s.i3.tiles.size(); ++tile) {
    std::string c3 = rs.class_names3[size_t(rs.class_of3.at(cc.of(3, int(tile)).str()))].str();
    std::string c7 = cc.of(7, int(tile)).str();
    pairs.insert({c3, c7});
  }
  const AngleLabel& l37 = s.seed.at(3, 7);
  if (!(l37.is_submultiple() && l37.k == 2))
    throw std::runtime_error("cross-type corner is not a right angle");
  for (auto& [a, b] : pairs) pres.pair_relators.emplace_back(a, b, 2);
  std::sort(pres.pair_relators.begin(), pres.pair_relators.end());
  return pres;
}

std::string CoxeterPresentation::to_text() const {
  std::ostringstream o;
  o << "generators (" << generators.size() << "):";
  for (const std::string& g : generators) o << " " << g;
  o << "\nrelators: x^2 for every generator, and\n";
  for (auto& [a, b, k] : pair_relators) o << "  (" << a << " * " << b << ")^" << k << "\n";
  return o.str();
}

}  // namespace rfold
