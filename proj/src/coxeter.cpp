#include "rfold/coxeter.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace rfold {

AngleLabel AngleLabel::submultiple(int k) {
  if (k < 2) throw std::invalid_argument("submultiple label must be >= 2");
  return {Kind::submultiple, k, Rat(0)};
}

AngleLabel AngleLabel::general(const Rat& q) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("general angle must be in (0,1)");
  if (rat_num(q) == 1) throw std::invalid_argument("general angle must not be a submultiple");
  return {Kind::general, 0, q};
}

AngleLabel AngleLabel::from_angle(const Rat& q) {
  if (!(q > 0 && q < 1)) throw std::invalid_argument("angle out of range");
  if (rat_num(q) == 1) return submultiple(int(rat_den(q)));
  return general(q);
}

std::string AngleLabel::str() const {
  switch (kind) {
    case Kind::submultiple: return std::to_string(k);
    case Kind::parallel: return "inf";
    case Kind::ultraparallel: return "div";
    case Kind::general: return "~" + rat_str(q);
  }
  return "?";
}

CoxeterMatrix::CoxeterMatrix(int nodes) : n(nodes) {
  if (nodes < 1) throw std::invalid_argument("node count must be positive");
  labels.assign(size_t(n), std::vector<AngleLabel>(size_t(n), AngleLabel::submultiple(2)));
}

const AngleLabel& CoxeterMatrix::at(int i, int j) const {
  if (i < 1 || j < 1 || i > n || j > n || i == j)
    throw std::out_of_range("bad node pair");
  return labels[size_t(i - 1)][size_t(j - 1)];
}

void CoxeterMatrix::set(int i, int j, const AngleLabel& l) {
  if (i < 1 || j < 1 || i > n || j > n || i == j)
    throw std::out_of_range("bad node pair");
  labels[size_t(i - 1)][size_t(j - 1)] = l;
  labels[size_t(j - 1)][size_t(i - 1)] = l;
}

CoxeterMatrix parse_diagram(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_nodes = false;
  int n = 0;
  std::set<std::pair<int, int>> seen;
  CoxeterMatrix m(1);

  auto fail = [&](int col, const std::string& msg) -> void {
    throw ParseError(lineno, col, msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;

    if (tok == "nodes:") {
      if (have_nodes) fail(1, "duplicate nodes directive");
      if (!(ls >> n) || n < 1) fail(1, "nodes: expects a positive integer");
      m = CoxeterMatrix(n);
      have_nodes = true;
    } else if (tok == "edge" || tok == "div") {
      if (!have_nodes) fail(1, "nodes: directive must come first");
      int i, j;
      if (!(ls >> i >> j)) fail(1, "expected two node indices");
      if (i < 1 || i > n || j < 1 || j > n) fail(1, "node index out of range");
      if (i == j) fail(1, "self edge");
      auto key = std::minmax(i, j);
      if (!seen.insert(key).second) fail(1, "duplicate edge for pair " +
                                              std::to_string(i) + " " + std::to_string(j));
      if (tok == "div") {
        m.set(i, j, AngleLabel::ultraparallel());
      } else {
        std::string lab;
        if (!(ls >> lab)) fail(1, "expected edge label");
        if (lab == "inf") {
          m.set(i, j, AngleLabel::parallel());
        } else {
          int v = 0;
          try {
            size_t pos = 0;
            v = std::stoi(lab, &pos);
            if (pos != lab.size()) throw std::invalid_argument("");
          } catch (...) {
            fail(1, "bad edge label '" + lab + "'");
          }
          if (v < 2) fail(1, "edge label must be >= 2");
          m.set(i, j, AngleLabel::submultiple(v));  // v == 2 normalizes to the default
        }
      }
      std::string rest;
      if (ls >> rest) fail(1, "trailing tokens");
    } else {
      fail(1, "unknown directive '" + tok + "'");
    }
  }
  if (!have_nodes) throw ParseError(1, 1, "missing nodes: directive");
  return m;
}

namespace {

// Structural matcher for one connected component.  Nodes are positions into
// `nodes`; edges carry the finite label m >= 3 or 0 for the infinity label.
struct Component {
  std::vector<int> nodes;                       // original 1-based ids
  std::map<std::pair<int, int>, int> edges;     // local index pair -> label (0 = inf)
  std::vector<std::vector<int>> adj;

  int degree(int v) const { return int(adj[size_t(v)].size()); }
  int label(int a, int b) const { return edges.at(std::minmax(a, b)); }
};

struct Match {
  DiagKind kind;
  std::string name;
};

Match other() { return {DiagKind::other, ""}; }

// Edge labels read along a path of local node indices.
std::vector<int> path_labels(const Component& c, const std::vector<int>& path) {
  std::vector<int> r;
  for (size_t i = 0; i + 1 < path.size(); ++i) r.push_back(c.label(path[i], path[i + 1]));
  return r;
}

Match classify_path(const Component& c, std::vector<int> path) {
  size_t n = path.size();
  std::vector<int> lab = path_labels(c, path);
  {
    std::vector<int> rev(lab.rbegin(), lab.rend());
    if (rev < lab) lab = rev;
  }
  if (n == 1) return {DiagKind::spherical, "A_1"};
  if (std::count(lab.begin(), lab.end(), 0) > 0) {
    if (n == 2) return {DiagKind::affine, "~A_1"};
    return other();
  }
  bool all3 = std::all_of(lab.begin(), lab.end(), [](int v) { return v == 3; });
  if (all3) return {DiagKind::spherical, "A_" + std::to_string(n)};
  if (n == 2) {
    int m = lab[0];
    if (m == 4) return {DiagKind::spherical, "B_2"};
    return {DiagKind::spherical, "I_2(" + std::to_string(m) + ")"};
  }
  int big = 0;
  for (int v : lab)
    if (v > 3) ++big;
  if (big == 1 && lab.front() == 4 &&
      std::all_of(lab.begin() + 1, lab.end(), [](int v) { return v == 3; }))
    return {DiagKind::spherical, "B_" + std::to_string(n)};
  if (big == 1 && lab.front() == 5 &&
      std::all_of(lab.begin() + 1, lab.end(), [](int v) { return v == 3; })) {
    if (n == 3) return {DiagKind::spherical, "H_3"};
    if (n == 4) return {DiagKind::spherical, "H_4"};
    return other();
  }
  if (n == 4 && lab == std::vector<int>{3, 4, 3}) return {DiagKind::spherical, "F_4"};
  if (n == 3 && lab == std::vector<int>{4, 4}) return {DiagKind::affine, "~C_2"};
  if (n == 3 && lab == std::vector<int>{3, 6}) return {DiagKind::affine, "~G_2"};
  if (n >= 4 && big == 2 && lab.front() == 4 && lab.back() == 4 &&
      std::all_of(lab.begin() + 1, lab.end() - 1, [](int v) { return v == 3; }))
    return {DiagKind::affine, "~C_" + std::to_string(n - 1)};
  if (n == 5 && big == 1 && (lab[1] == 4 || lab[2] == 4))
    return {DiagKind::affine, "~F_4"};
  return other();
}

// Arms of a branch node: lists of local indices walking outward.
std::vector<std::vector<int>> arms_of(const Component& c, int center) {
  std::vector<std::vector<int>> arms;
  for (int next : c.adj[size_t(center)]) {
    std::vector<int> arm{center, next};
    int prev = center, cur = next;
    while (c.degree(cur) == 2) {
      int nxt = c.adj[size_t(cur)][0] == prev ? c.adj[size_t(cur)][1] : c.adj[size_t(cur)][0];
      arm.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
    arms.push_back(arm);
  }
  return arms;
}

Match classify_component(const Component& c) {
  size_t n = c.nodes.size();
  size_t ne = c.edges.size();
  bool has_inf = false;
  for (auto& [k, v] : c.edges)
    if (v == 0) has_inf = true;

  if (ne == n) {
    // Connected with #edges == #nodes: a single cycle (if all degrees 2).
    for (size_t v = 0; v < n; ++v)
      if (c.degree(int(v)) != 2) return other();
    if (has_inf || n < 3) return other();
    for (auto& [k, v] : c.edges)
      if (v != 3) return other();
    return {DiagKind::affine, "~A_" + std::to_string(n - 1)};
  }
  if (ne != n - 1) return other();  // neither tree nor cycle

  // Tree.  Handle by branch-node structure.
  std::vector<int> branch;
  int deg4 = -1;
  for (size_t v = 0; v < n; ++v) {
    if (c.degree(int(v)) >= 4) {
      if (c.degree(int(v)) > 4 || deg4 >= 0) return other();
      deg4 = int(v);
    } else if (c.degree(int(v)) == 3) {
      branch.push_back(int(v));
    }
  }

  if (deg4 >= 0) {
    if (!branch.empty() || n != 5) return other();
    for (auto& [k, v] : c.edges)
      if (v != 3) return other();
    return {DiagKind::affine, "~D_4"};  // the 4-star
  }

  if (branch.empty()) {
    // Plain path: walk from an endpoint.
    int start = -1;
    for (size_t v = 0; v < n; ++v)
      if (c.degree(int(v)) <= 1) {
        start = int(v);
        break;
      }
    std::vector<int> path{start};
    int prev = -1, cur = start;
    while (path.size() < n) {
      int nxt = -1;
      for (int w : c.adj[size_t(cur)])
        if (w != prev) nxt = w;
      path.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
    return classify_path(c, path);
  }

  if (has_inf) return other();

  if (branch.size() == 1) {
    auto arms = arms_of(c, branch[0]);
    if (arms.size() != 3) return other();
    std::sort(arms.begin(), arms.end(),
              [](const auto& a, const auto& b) { return a.size() < b.size(); });
    std::vector<size_t> len{arms[0].size() - 1, arms[1].size() - 1, arms[2].size() - 1};
    int big = 0, big_at_far_end_of_long = 0;
    for (auto& [k, v] : c.edges) {
      if (v == 3) continue;
      if (v != 4) return other();
      ++big;
    }
    if (big == 0) {
      if (len[0] == 1 && len[1] == 1) return {DiagKind::spherical, "D_" + std::to_string(n)};
      if (len[0] == 1 && len[1] == 2 && len[2] == 2) return {DiagKind::spherical, "E_6"};
      if (len[0] == 1 && len[1] == 2 && len[2] == 3) return {DiagKind::spherical, "E_7"};
      if (len[0] == 1 && len[1] == 2 && len[2] == 4) return {DiagKind::spherical, "E_8"};
      if (len[0] == 2 && len[1] == 2 && len[2] == 2) return {DiagKind::affine, "~E_6"};
      if (len[0] == 1 && len[1] == 3 && len[2] == 3) return {DiagKind::affine, "~E_7"};
      if (len[0] == 1 && len[1] == 2 && len[2] == 5) return {DiagKind::affine, "~E_8"};
      return other();
    }
    if (big == 1 && len[0] == 1 && len[1] == 1) {
      // ~B_n: the single 4 sits on the outermost edge of the long arm.
      for (auto& arm : arms) {
        if (arm.size() - 1 != len[2]) continue;
        if (c.label(arm[arm.size() - 2], arm[arm.size() - 1]) == 4)
          big_at_far_end_of_long = 1;
      }
      if (big_at_far_end_of_long) return {DiagKind::affine, "~B_" + std::to_string(n - 1)};
    }
    return other();
  }

  if (branch.size() == 2) {
    // ~D_n: two forks with side arms of length 1, all labels 3.
    for (auto& [k, v] : c.edges)
      if (v != 3) return other();
    for (int b : branch) {
      auto arms = arms_of(c, b);
      std::sort(arms.begin(), arms.end(),
                [](const auto& a, const auto& b2) { return a.size() < b2.size(); });
      if (arms[0].size() != 2 || arms[1].size() != 2) return other();
    }
    return {DiagKind::affine, "~D_" + std::to_string(n - 1)};
  }
  return other();
}

std::vector<Component> split_components(const CoxeterMatrix& m, const std::vector<int>& nodes) {
  std::map<int, int> local;  // node id -> local index within the subset
  for (size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = int(i);
  std::vector<int> comp(nodes.size(), -1);
  int ncomp = 0;
  for (size_t s = 0; s < nodes.size(); ++s) {
    if (comp[s] >= 0) continue;
    std::vector<size_t> stack{s};
    comp[s] = ncomp;
    while (!stack.empty()) {
      size_t v = stack.back();
      stack.pop_back();
      for (size_t w = 0; w < nodes.size(); ++w) {
        if (comp[w] >= 0 || w == v) continue;
        const AngleLabel& l = m.at(nodes[v], nodes[w]);
        bool joined = (l.kind == AngleLabel::Kind::parallel) ||
                      (l.is_submultiple() && l.k >= 3);
        if (joined) {
          comp[w] = ncomp;
          stack.push_back(w);
        }
      }
    }
    ++ncomp;
  }
  std::vector<Component> comps;
  comps.resize(size_t(ncomp));
  for (size_t i = 0; i < nodes.size(); ++i) comps[size_t(comp[i])].nodes.push_back(nodes[i]);
  for (auto& c : comps) {
    std::sort(c.nodes.begin(), c.nodes.end());
    c.adj.assign(c.nodes.size(), {});
    for (size_t a = 0; a < c.nodes.size(); ++a)
      for (size_t b = a + 1; b < c.nodes.size(); ++b) {
        const AngleLabel& l = m.at(c.nodes[a], c.nodes[b]);
        int lab = -1;
        if (l.kind == AngleLabel::Kind::parallel) lab = 0;
        if (l.is_submultiple() && l.k >= 3) lab = l.k;
        if (lab >= 0) {
          c.edges[{int(a), int(b)}] = lab;
          c.adj[a].push_back(int(b));
          c.adj[b].push_back(int(a));
        }
      }
  }
  return comps;
}

}  // namespace

std::string DiagramClass::str() const {
  std::string s;
  switch (value) {
    case DiagKind::spherical: s = "spherical"; break;
    case DiagKind::affine: s = "affine"; break;
    case DiagKind::other: return "other";
  }
  s += ":";
  for (size_t i = 0; i < components.size(); ++i) s += (i ? " + " : " ") + components[i];
  return s;
}

DiagramClass classify_subdiagram(const CoxeterMatrix& m, const std::vector<int>& nodes) {
  if (nodes.empty()) throw std::invalid_argument("empty node subset");
  std::set<int> uniq(nodes.begin(), nodes.end());
  if (uniq.size() != nodes.size()) throw std::invalid_argument("repeated node in subset");
  std::vector<int> ns(uniq.begin(), uniq.end());
  for (size_t a = 0; a < ns.size(); ++a)
    for (size_t b = a + 1; b < ns.size(); ++b)
      if (m.at(ns[a], ns[b]).kind == AngleLabel::Kind::ultraparallel)
        throw std::invalid_argument("ultraparallel edge inside subset");

  DiagramClass out;
  bool all_sph = true, all_aff = true;
  for (const Component& c : split_components(m, ns)) {
    Match mt = classify_component(c);
    if (mt.kind == DiagKind::other) return DiagramClass{DiagKind::other, {}};
    all_sph = all_sph && mt.kind == DiagKind::spherical;
    all_aff = all_aff && mt.kind == DiagKind::affine;
    out.components.push_back(mt.name);
  }
  if (all_sph)
    out.value = DiagKind::spherical;
  else if (all_aff)
    out.value = DiagKind::affine;
  else
    out.value = DiagKind::other;  // mixed affine/spherical union
  if (out.value == DiagKind::other) out.components.clear();
  return out;
}

std::vector<std::vector<int>> maximal_affine_subdiagrams(const CoxeterMatrix& m) {
  if (m.n > 20) throw std::invalid_argument("diagram too large for subset enumeration");
  std::vector<std::vector<int>> affine;
  for (unsigned mask = 1; mask < (1u << m.n); ++mask) {
    std::vector<int> s;
    bool ultra = false;
    for (int i = 0; i < m.n; ++i)
      if (mask & (1u << i)) s.push_back(i + 1);
    for (size_t a = 0; a < s.size() && !ultra; ++a)
      for (size_t b = a + 1; b < s.size() && !ultra; ++b)
        if (m.at(s[a], s[b]).kind == AngleLabel::Kind::ultraparallel) ultra = true;
    if (ultra) continue;
    if (classify_subdiagram(m, s).value == DiagKind::affine) affine.push_back(s);
  }
  std::vector<std::vector<int>> maximal;
  for (const auto& a : affine) {
    bool dominated = false;
    for (const auto& b : affine) {
      if (a.size() >= b.size() || a == b) continue;
      if (std::includes(b.begin(), b.end(), a.begin(), a.end())) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(a);
  }
  std::sort(maximal.begin(), maximal.end());
  return maximal;
}

std::vector<bool> derive_compact_facets(const CoxeterMatrix& m) {
  auto mx = maximal_affine_subdiagrams(m);
  if (mx.size() != 1)
    throw std::runtime_error("expected exactly one maximal affine subdiagram, found " +
                             std::to_string(mx.size()));
  std::vector<bool> compact(size_t(m.n) + 1, true);
  compact[0] = false;
  for (int v : mx[0]) compact[size_t(v)] = false;
  return compact;
}

SeedReport check_seed_conditions(const CoxeterMatrix& m) {
  SeedReport r;
  r.affine_subdiagrams = maximal_affine_subdiagrams(m);
  r.condition_a = r.affine_subdiagrams.size() == 1;
  if (r.condition_a)
    r.affine_components = classify_subdiagram(m, r.affine_subdiagrams[0]).components;

  std::set<int> noncompact;
  for (const auto& s : r.affine_subdiagrams) noncompact.insert(s.begin(), s.end());
  for (int i = 1; i <= m.n; ++i)
    if (!noncompact.count(i)) r.compact_nodes.push_back(i);

  r.condition_b = true;
  for (int c : r.compact_nodes)
    for (int u : noncompact) {
      const AngleLabel& l = m.at(c, u);
      if (!l.intersecting()) continue;
      if (!(l.is_submultiple() && l.k % 2 == 0)) {
        r.condition_b = false;
        r.violations.emplace_back(c, u);
      }
    }
  std::sort(r.violations.begin(), r.violations.end());
  return r;
}

std::string SeedReport::to_text() const {
  std::ostringstream o;
  o << "maximal affine subdiagrams:";
  for (const auto& s : affine_subdiagrams) {
    o << " {";
    for (size_t i = 0; i < s.size(); ++i) o << (i ? "," : "") << s[i];
    o << "}";
  }
  if (affine_subdiagrams.empty()) o << " none";
  o << "\n";
  if (!affine_components.empty()) {
    o << "components:";
    for (const auto& c : affine_components) o << " " << c;
    o << "\n";
  }
  o << "compact nodes:";
  for (int c : compact_nodes) o << " " << c;
  o << "\ncondition (a): " << (condition_a ? "pass" : "FAIL");
  o << "\ncondition (b): " << (condition_b ? "pass" : "FAIL");
  for (auto& [c, u] : violations) o << "\n  violating pair (" << c << "," << u << ")";
  o << "\n";
  return o.str();
}

bool is_admissible(const CoxeterMatrix& m, int f) {
  for (int j = 1; j <= m.n; ++j) {
    if (j == f) continue;
    const AngleLabel& l = m.at(f, j);
    if (!l.intersecting()) continue;
    if (!(l.is_submultiple() && l.k % 2 == 0)) return false;
  }
  return true;
}

const CoxeterMatrix& builtin_seed() {
  static const CoxeterMatrix m = [] {
    CoxeterMatrix d(7);
    d.set(6, 5, AngleLabel::submultiple(4));
    d.set(5, 4, AngleLabel::submultiple(4));
    d.set(4, 3, AngleLabel::submultiple(6));
    d.set(3, 2, AngleLabel::submultiple(4));
    d.set(2, 1, AngleLabel::parallel());
    d.set(1, 7, AngleLabel::submultiple(4));
    d.set(7, 6, AngleLabel::submultiple(6));
    return d;
  }();
  return m;
}

std::string builtin_seed_dsl() {
  return "# 7-wall seed diagram: a labelled cycle, all other pairs orthogonal\n"
         "nodes: 7\n"
         "edge 6 5 4\n"
         "edge 5 4 4\n"
         "edge 4 3 6\n"
         "edge 3 2 4\n"
         "edge 2 1 inf\n"
         "edge 1 7 4\n"
         "edge 7 6 6\n";
}

}  // namespace rfold
