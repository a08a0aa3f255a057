#pragma once

#include <string>
#include <vector>

namespace rfold {

// Hierarchical facet name: a base hyperplane index with a (possibly nested)
// subscript list, e.g. 3_{6_5,4,4_5,2}.  Subscripts are ordered
// reverse-chronologically: each doubling prepends the mirror facet's name.
struct FacetLabel {
  int base = 0;
  std::vector<FacetLabel> subs;

  FacetLabel() = default;
  explicit FacetLabel(int b) : base(b) {}
  FacetLabel(int b, std::vector<FacetLabel> s) : base(b), subs(std::move(s)) {}

  bool atomic() const { return subs.empty(); }

  FacetLabel prepended(const FacetLabel& f) const {
    FacetLabel r(base);
    r.subs.reserve(subs.size() + 1);
    r.subs.push_back(f);
    r.subs.insert(r.subs.end(), subs.begin(), subs.end());
    return r;
  }

  friend bool operator==(const FacetLabel& a, const FacetLabel& b) {
    return a.base == b.base && a.subs == b.subs;
  }
  friend bool operator!=(const FacetLabel& a, const FacetLabel& b) { return !(a == b); }
  friend bool operator<(const FacetLabel& a, const FacetLabel& b) {
    if (a.base != b.base) return a.base < b.base;
    return a.subs < b.subs;
  }

  std::string str() const {
    std::string s = std::to_string(base);
    if (subs.empty()) return s;
    if (subs.size() == 1 && subs[0].atomic()) return s + "_" + subs[0].str();
    s += "_{";
    for (size_t i = 0; i < subs.size(); ++i) {
      if (i) s += ",";
      s += subs[i].str();
    }
    s += "}";
    return s;
  }
};

// Grammar: label := INT subs?;  subs := "_{" label ("," label)* "}" | "_" INT
FacetLabel parse_facet_label(const std::string& text);

using Word = std::vector<FacetLabel>;

inline std::string word_str(const Word& w) {
  std::string s = "(";
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += w[i].str();
  }
  return s + ")";
}

}  // namespace rfold
