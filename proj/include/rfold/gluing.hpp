#pragma once

#include "rfold/polytope.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rfold {

enum class RegionPart { full, upper, lower };

// A whole facet of the base polytope, or its upper/lower half along the
// second intrinsic plane coordinate.
struct FaceRegion {
  FacetLabel facet;
  RegionPart part = RegionPart::full;

  std::string str() const;
};

// One step of the word defining a pairing isometry: a reflection through a
// named facet plane (possibly grouped and powered) or a literal translation.
struct WordItem {
  enum class Kind { reflection, translation };
  Kind kind = Kind::reflection;
  std::vector<FacetLabel> refs;  // reflections, applied right-to-left
  int power = 1;
  Vec3 shift;  // translation case

  std::string str() const;
};

struct Pairing {
  FaceRegion source, target;
  std::vector<WordItem> word;

  std::string str() const;
};

struct GluingScheme {
  std::string name;   // "R_T", "R_half", "R_quarter", "R_HW", or file-derived
  int base = 7;       // index into the canonical sequence
  std::vector<Pairing> pairings;
};

// The four schemes of the construction.
std::vector<GluingScheme> builtin_gluings();
const GluingScheme& builtin_gluing(const std::string& name);

GluingScheme parse_scheme_json(const std::string& text);
std::string scheme_to_json(const GluingScheme& g);

Isometry pairing_isometry(const PolytopeState& s, const Pairing& p);

// Rectangle of a face region in the facet plane's intrinsic chart.
struct RegionRect {
  Vec2 lo, hi;
};
RegionRect region_rect(const PolytopeState& s, const FaceRegion& r);

struct PairingCheck {
  bool region_ok = false;        // isometry maps source region onto target region
  bool symmetry_ok = false;      // tessellation symmetry (box for P<=7, ambient for P8)
  bool tile_pairing_ok = false;  // tile faces map to tile faces, type-preserving
  std::vector<std::string> notes;
};

struct ValidationReport {
  std::vector<PairingCheck> pairings;
  bool coverage_ok = false;  // every non-compact facet glued exactly once
  std::vector<std::string> notes;

  bool valid() const;
  std::string to_text() const;
};

ValidationReport validate_gluing(const PolytopeState& s, const GluingScheme& g);

// A corner produced by a gluing: two compact facet classes meeting across a
// glued wall with the summed dihedral angle.
struct CornerRecord {
  int type = 0;  // 3 or 7
  FacetLabel a, b;
  Rat angle;  // multiple of pi
  int multiplicity = 0;
};

struct Violation {
  std::string what;
};

// Multigraph for the corner graphs: parallel edges kept with counts.
struct CornerGraph {
  std::vector<FacetLabel> verts;
  std::map<std::pair<int, int>, std::map<Rat, int>> edges;  // (i<=j) -> angle -> count

  int index_of(const FacetLabel& l) const;
  bool has_loop() const;
  bool labels_consistent() const;  // parallel edges carry one angle
};

struct ReflectofoldState {
  const GluingScheme scheme;
  int base = 7;

  // Type-3 classes: partition of the base type-3 facets; type-7 facets map
  // to themselves.
  std::vector<std::vector<FacetLabel>> classes3;  // members, canonically named
  std::map<std::string, int> class_of3;           // facet label string -> class
  std::vector<FacetLabel> class_names3;

  std::vector<CornerRecord> corners;  // the glued-wall corners, both types
  std::vector<Violation> violations;  // non-submultiple angles etc.

  CornerGraph g3t, g7t;

  struct Dev {
    bool developable = false;
    std::vector<std::string> problems;
  } dev;
};

// Union-find over type-3 facets by the angle-sum rule, plus corner records.
ReflectofoldState facet_classes(const PolytopeState& s, const GluingScheme& g);

// Fills g3t (quotient of i2_3 by the partition, multi-edges retained) and
// g7t (i2_7 plus the recorded (7,7) corners).
void corner_graphs(const PolytopeState& s, ReflectofoldState& rs);

// (EF) no loops; (AC) parallel edges agree and all cross-type corners are
// right angles.  Never throws; verdict and problems land in rs.dev.
void check_developability(ReflectofoldState& rs);

struct MatrixCell {
  enum class Kind { zero, diagonal, submultiple, general } kind = Kind::zero;
  int k = 0;
  Rat q;

  std::string str() const;
};

struct ReflectofoldMatrix {
  std::vector<FacetLabel> labels;
  std::vector<std::vector<MatrixCell>> cells;

  std::string to_csv() const;
  std::string to_text() const;
  bool has_general_cells() const;
  LabeledMatrix as_plain() const;  // throws on general cells
};

ReflectofoldMatrix adjacency_matrix_R(const PolytopeState& s, const ReflectofoldState& rs, int t);

struct CoxeterPresentation {
  std::vector<std::string> generators;
  // (a, b, k): relator (ab)^k; squares are implicit, one per generator.
  std::vector<std::tuple<std::string, std::string, int>> pair_relators;

  std::string to_text() const;
};

// Requires a developable state.
CoxeterPresentation coxeter_presentation(const PolytopeState& s, const ReflectofoldState& rs);

}  // namespace rfold
