#pragma once

#include "rfold/coxeter.hpp"
#include "rfold/facet_label.hpp"
#include "rfold/geometry.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rfold {

// A copy of the base prism inside the link, placed by an exact isometry.
// `placement` equals the composition of the reflections named in `word`
// (leftmost applied last); the base tile has the empty word.
struct PrismTile {
  Word word;
  Isometry placement;
};

struct LinkFacet {
  FacetLabel label;
  Plane plane;
};

// Base-prism face ids (same names as the seed diagram's walls).
inline const std::array<int, 5>& prism_face_ids() {
  static const std::array<int, 5> ids{1, 2, 4, 5, 6};
  return ids;
}
const std::vector<Vec3>& prism_face_polygon(int face);
const Vec3& prism_face_inward_normal(int face);
Plane prism_face_plane(int face);

// The horospherical link of the ideal vertex: the base prism at step 0, a
// right parallelepiped afterwards, tessellated by prism tiles.
struct LinkTess {
  bool is_box = false;
  std::array<Rat, 3> lo{}, hi{};  // valid when is_box

  std::vector<PrismTile> tiles;
  std::vector<LinkFacet> facets;
  std::vector<FacetLabel> history;

  // Every facet name ever created along this construction, with its
  // supporting plane and creation rank (used for reflection words and for
  // canonical class naming).
  std::map<FacetLabel, Plane> plane_registry;
  std::map<FacetLabel, int> label_rank;

  const LinkFacet* find_facet(const FacetLabel& l) const;
  Plane reflection_plane(const FacetLabel& l) const;  // throws if unknown
  int rank_of(const FacetLabel& l) const;

  // (len, then elementwise creation rank); total order on tile words.
  bool word_less(const Word& a, const Word& b) const;

  std::vector<Vec3> tile_face_polygon(int tile, int face) const;

  // Boundary planes of the region with inward normals.
  std::vector<std::pair<Plane, Vec3>> region_planes() const;
  bool on_region_boundary(const Vec3& p) const;
};

LinkTess base_link();

// Double across the named facet's plane; mirrored tiles prepend f to their
// words, facets orthogonal to the mirror merge, others duplicate with a
// prepended name.  The mirror plane must be a full box face (or the prism
// diagonal at step 0).
LinkTess reflect_double(const LinkTess& link, const FacetLabel& f);

// Interior wall between two tiles, or a boundary tile-face on a facet.
struct Wall {
  int tile_a = -1, tile_b = -1;  // tile_b < 0 for boundary faces
  int face_a = -1, face_b = -1;
  int type = 0;        // base face id
  int facet_idx = -1;  // for boundary faces: index into link.facets
};

// All tile faces grouped into interior walls and boundary faces; validates
// the face-to-face property.
std::vector<Wall> enumerate_walls(const LinkTess& link);

// Partition of (tile, t) for t = 3, 7 by the union-find closure across walls
// whose type is orthogonal to t in the seed diagram.
struct CompactClasses {
  std::vector<int> cls3, cls7;             // tile -> class index
  std::vector<FacetLabel> names3, names7;  // class index -> canonical name
  std::vector<FacetLabel> list3, list7;    // class names, insertion order

  const FacetLabel& of(int t, int tile) const {
    return t == 3 ? names3[size_t(cls3[size_t(tile)])] : names7[size_t(cls7[size_t(tile)])];
  }
};

CompactClasses compact_facet_classes(const LinkTess& link, const CoxeterMatrix& seed);

// Adjacency graph on compact classes of type t recovered purely from the
// tessellation: one edge per interior-wall fan, labelled with the total
// dihedral angle.  Equal parallel edges collapse; conflicting labels throw.
struct OracleGraph {
  std::vector<FacetLabel> verts;
  std::map<std::pair<int, int>, int> label;         // (i<j) -> k
  std::map<std::pair<int, int>, int> multiplicity;  // fan count
};

OracleGraph compact_adjacency(const LinkTess& link, const CoxeterMatrix& seed, int t);

enum class SymmetryMode { box, ambient };

// mode box: g maps the region to itself and tiles to tiles type-preservingly.
// mode ambient: same after folding each image tile back into the box by the
// box's face-reflection group (box regions only).
bool is_tessellation_symmetry(const LinkTess& link, const Isometry& g, SymmetryMode mode);

// 2D picture of one link facet in intrinsic plane coordinates.
using Vec2 = std::array<Rat, 2>;

struct PictureTile {
  std::vector<Vec2> poly;
  FacetLabel label3, label7;
  int tile = -1;
};
struct PictureEdge {
  Vec2 a, b;
  FacetLabel facet;
};
struct FacePicture {
  FacetLabel facet;
  Plane plane;
  std::vector<Vec2> outline;
  std::vector<PictureTile> tiles;
  std::vector<PictureEdge> edges;
};

// Intrinsic 2D chart of a facet plane (axis planes and x+y = c diagonals).
Vec2 plane_chart(const Plane& p, const Vec3& v);

FacePicture face_picture(const LinkTess& link, const CoxeterMatrix& seed, const FacetLabel& f);

// Consistency audit: placements orthogonal and equal to their word products,
// wall bookkeeping sound, dihedral-angle sums around every tessellation edge
// match the region, vertex denominators bounded.  Empty result = healthy.
std::vector<std::string> link_integrity_issues(const LinkTess& link);

std::string link_to_json(const LinkTess& link);

}  // namespace rfold
