#pragma once

#include "rfold/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace rfold {

// Dihedral-angle label of a hyperplane pair.  submultiple(k) = angle pi/k,
// parallel = tangent at infinity (diagram label oo), ultraparallel = dashed
// edge, general(q) = angle q*pi for q not of the form 1/k.
struct AngleLabel {
  enum class Kind { submultiple, parallel, ultraparallel, general };
  Kind kind = Kind::submultiple;
  int k = 2;
  Rat q;  // only for general

  static AngleLabel submultiple(int k);
  static AngleLabel parallel() { return {Kind::parallel, 0, Rat(0)}; }
  static AngleLabel ultraparallel() { return {Kind::ultraparallel, 0, Rat(0)}; }
  static AngleLabel general(const Rat& q);
  // Classifies an angle q*pi into submultiple/general.
  static AngleLabel from_angle(const Rat& q);

  bool is_submultiple() const { return kind == Kind::submultiple; }
  bool intersecting() const {
    return kind == Kind::submultiple || kind == Kind::general;
  }

  friend bool operator==(const AngleLabel& a, const AngleLabel& b) {
    return a.kind == b.kind && a.k == b.k && a.q == b.q;
  }

  std::string str() const;

 private:
  AngleLabel(Kind kk, int kv, Rat qv) : kind(kk), k(kv), q(std::move(qv)) {}
  AngleLabel() = default;
  friend struct CoxeterMatrix;
};

// Symmetric label matrix of a Coxeter diagram; nodes are 1-based.
struct CoxeterMatrix {
  int n = 0;
  std::vector<std::vector<AngleLabel>> labels;  // [i-1][j-1], diagonal unused

  CoxeterMatrix() = default;
  explicit CoxeterMatrix(int nodes);

  const AngleLabel& at(int i, int j) const;
  void set(int i, int j, const AngleLabel& l);

  friend bool operator==(const CoxeterMatrix& a, const CoxeterMatrix& b) {
    return a.n == b.n && a.labels == b.labels;
  }
};

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("line " + std::to_string(l) + ", col " +
                           std::to_string(c) + ": " + msg),
        line(l),
        col(c) {}
};

// One directive per line: `nodes: N` (first), `edge i j m|inf`, `div i j`,
// `#` comments.  Unlisted pairs default to label 2 (angle pi/2).
CoxeterMatrix parse_diagram(const std::string& text);

enum class DiagKind { spherical, affine, other };

struct DiagramClass {
  DiagKind value = DiagKind::other;
  // Catalog name per connected component (e.g. "A_3", "I_2(6)", "~C_2"),
  // in order of smallest node; empty for "other".
  std::vector<std::string> components;

  std::string str() const;
};

// Catalog classification of the induced subdiagram on `nodes` (1-based).
// Throws if the subdiagram contains an ultraparallel edge.
DiagramClass classify_subdiagram(const CoxeterMatrix& m, const std::vector<int>& nodes);

// All node subsets whose induced diagram is affine, maximal under inclusion;
// each subset sorted, list sorted lexicographically.
std::vector<std::vector<int>> maximal_affine_subdiagrams(const CoxeterMatrix& m);

// Node i is non-compact iff it belongs to the unique maximal affine
// subdiagram; requires exactly one such subdiagram.
std::vector<bool> derive_compact_facets(const CoxeterMatrix& m);

struct SeedReport {
  bool condition_a = false;
  bool condition_b = false;
  std::vector<std::vector<int>> affine_subdiagrams;
  std::vector<std::string> affine_components;  // of the unique one, if any
  std::vector<int> compact_nodes;
  std::vector<std::pair<int, int>> violations;  // (compact, non-compact) bad pairs

  bool passes() const { return condition_a && condition_b; }
  std::string to_text() const;
};

// (a) exactly one maximal affine subdiagram; (b) every intersecting
// (compact, non-compact) pair has an even submultiple label.
SeedReport check_seed_conditions(const CoxeterMatrix& m);

// True iff every intersecting neighbor label of node f is submultiple(2k).
bool is_admissible(const CoxeterMatrix& m, int f);

// The built-in 7-node seed diagram (source of truth for golden tests).
const CoxeterMatrix& builtin_seed();
// Same diagram, as DSL text.
std::string builtin_seed_dsl();

}  // namespace rfold
