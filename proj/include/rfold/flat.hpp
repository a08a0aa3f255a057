#pragma once

#include "rfold/gluing.hpp"

#include <string>
#include <vector>

namespace rfold {

// Side-pairing map of the fundamental box: pushes the box interior across
// the glued face.
struct DeckTransformation {
  Isometry map;
  int pairing = -1;  // index into the scheme
  bool corrected = false;  // true when the target-plane reflection was applied
};

std::vector<DeckTransformation> deck_transformations(const PolytopeState& s,
                                                     const GluingScheme& g);

struct CrystallographicGroup {
  std::vector<Mat3> point_group;       // closed under product and inverse, I first
  std::vector<Vec3> rep_translation;   // one representative per point-group element
  std::vector<Vec3> lattice;           // basis of the translation subgroup
  int lattice_rank = 0;

  int order() const { return int(point_group.size()); }
  std::string to_json() const;
};

// Closes the linear parts to a finite point group (guarded at 48 elements),
// extracts the full translation subgroup via Schreier generators, and keeps
// one representative translation per point-group element.
CrystallographicGroup generate_group(const std::vector<DeckTransformation>& decks);

// Bieberbach fixed-point criterion: some A != I admits a fixed point iff the
// projection of its representative translation onto ker(A - I) lies in the
// projected lattice.
bool is_torsion_free(const CrystallographicGroup& g);

bool is_orientation_preserving(const CrystallographicGroup& g);

enum class FlatClass { E1, E2, E3, E4, E5, E6, not_a_manifold, unrecognized };

std::string flat_class_str(FlatClass c);

// Holonomy classification of the six closed orientable flat 3-manifolds:
// {I} -> E1, C2 -> E2, C3 -> E3, C4 -> E4, C6 -> E5, C2xC2 -> E6.
FlatClass classify(const CrystallographicGroup& g);

// Exact integer-span membership: is v in the Z-span of gens?
bool in_z_span(const std::vector<Vec3>& gens, const Vec3& v);

// Orthogonal projection onto ker(A - I), exact.
Vec3 project_to_fixed_space(const Mat3& a, const Vec3& v);

}  // namespace rfold
