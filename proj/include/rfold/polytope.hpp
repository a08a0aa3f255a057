#pragma once

#include "rfold/coxeter.hpp"
#include "rfold/facet_label.hpp"
#include "rfold/link.hpp"

#include <map>
#include <string>
#include <vector>

namespace rfold {

struct FacetInfo {
  FacetLabel label;
  int type = 0;  // base wall index in the seed diagram
  bool compact = false;
};

// Simple labelled graph on compact facets; vertices in insertion order.
struct LabeledGraph {
  std::vector<FacetLabel> verts;
  std::map<std::pair<int, int>, int> edges;  // (i<j) -> k, angle pi/k

  int index_of(const FacetLabel& l) const;
  bool has_vertex(const FacetLabel& l) const { return index_of(l) >= 0; }
  void add_edge(const FacetLabel& a, const FacetLabel& b, int k);
  const int* edge_label(const FacetLabel& a, const FacetLabel& b) const;
};

// The bookkeeping triple for one polytope of the doubling sequence:
// facet list, type-3/type-7 adjacency graphs, and the link tessellation.
struct PolytopeState {
  CoxeterMatrix seed;
  std::vector<FacetInfo> i1;
  LabeledGraph g3, g7;
  LinkTess i3;
  std::vector<FacetLabel> history;

  const FacetInfo* find_facet(const FacetLabel& l) const;
  std::string name() const;  // "P0", "P1", ...
};

PolytopeState initial_state(const CoxeterMatrix& seed);

// Facets meeting `a`, each with its dihedral angle.
using IncidenceList = std::vector<std::pair<FacetLabel, AngleLabel>>;
IncidenceList incidence_list(const PolytopeState& s, const FacetLabel& a);

// The incremental doubling step: updates I1 and I2 by the survival rules and
// I3 by reflect_double.  `f` must be non-compact and admissible.
PolytopeState double_along(const PolytopeState& s, const FacetLabel& f);

// P_0..P_8 via doublings along 5, 2, 4_5, 4, 1, 6, 6_5, 1_2.
std::vector<PolytopeState> canonical_sequence(const CoxeterMatrix& seed);
std::vector<FacetLabel> canonical_doubling_labels();

struct LabeledMatrix {
  std::vector<FacetLabel> labels;
  std::vector<std::vector<int>> cells;  // 1 diagonal, 0 disjoint, k otherwise

  std::string to_csv() const;
  std::string to_text() const;
};

LabeledMatrix adjacency_matrix(const PolytopeState& s, int t);

// Label-aligned cell comparison; reports all differing cells.
std::vector<std::string> diff_matrices(const LabeledMatrix& got, const LabeledMatrix& want);

struct OracleReport {
  bool ok = true;
  std::vector<std::string> divergences;
};

// Recomputes I1 and I2 from the link tessellation alone (class union-find +
// wall fans) and compares with the incremental state.
OracleReport verify_against_oracle(const PolytopeState& s);

}  // namespace rfold
