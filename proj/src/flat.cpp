#include "rfold/flat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace rfold {

namespace {

std::string mat_key(const Mat3& m) {
  std::string s;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += rat_str(m.at(i, j)) + ",";
  return s;
}

// Signs of the plane evaluation over the box corners: {contains 0} plus at
// most one strict side for a convex solid touching the plane.
int strict_side(const Plane& h, const std::vector<Vec3>& pts) {
  int side = 0;
  for (const Vec3& p : pts) {
    Rat e = h.eval(p);
    if (e == 0) continue;
    int s = e > 0 ? 1 : -1;
    if (side == 0) side = s;
    if (side != s) return 0;  // straddles
  }
  return side;
}

std::vector<Vec3> box_corners(const LinkTess& link) {
  std::vector<Vec3> out;
  for (int m = 0; m < 8; ++m)
    out.push_back(Vec3{(m & 1) ? link.hi[0] : link.lo[0], (m & 2) ? link.hi[1] : link.lo[1],
                       (m & 4) ? link.hi[2] : link.lo[2]});
  return out;
}

}  // namespace

std::vector<DeckTransformation> deck_transformations(const PolytopeState& s,
                                                     const GluingScheme& g) {
  if (!s.i3.is_box) throw std::runtime_error("deck extraction needs a box link");
  std::vector<DeckTransformation> out;
  std::vector<Vec3> corners = box_corners(s.i3);

  for (size_t pi = 0; pi < g.pairings.size(); ++pi) {
    const Pairing& p = g.pairings[pi];
    Isometry phi = pairing_isometry(s, p);
    Plane h = s.i3.find_facet(p.target.facet)->plane;

    int box_side = strict_side(h, corners);
    if (box_side == 0) throw std::runtime_error("target plane cuts the box");

    auto crossed = [&](const Isometry& cand) {
      std::vector<Vec3> img;
      for (const Vec3& c : corners) img.push_back(cand.apply(c));
      return strict_side(h, img) == -box_side;
    };

    DeckTransformation deck;
    deck.pairing = int(pi);
    if (crossed(phi)) {
      deck.map = phi;
    } else {
      Isometry fixed = h.reflection() * phi;
      if (!crossed(fixed))
        throw std::runtime_error("pairing " + p.str() + " admits no deck transformation");
      deck.map = fixed;
      deck.corrected = true;
    }
    out.push_back(deck);
  }
  return out;
}

namespace {

// Column-echelon basis of the Z-span of integer vectors.
std::vector<std::array<Int, 3>> z_echelon(std::vector<std::array<Int, 3>> cols) {
  std::vector<std::array<Int, 3>> basis;
  size_t begin = 0;
  for (int r = 0; r < 3; ++r) {
    while (true) {
      size_t pivot = size_t(-1);
      int nonzero = 0;
      for (size_t c = begin; c < cols.size(); ++c) {
        if (cols[c][size_t(r)] == 0) continue;
        ++nonzero;
        if (pivot == size_t(-1) ||
            boost::multiprecision::abs(cols[c][size_t(r)]) <
                boost::multiprecision::abs(cols[pivot][size_t(r)]))
          pivot = c;
      }
      if (nonzero == 0) break;
      if (nonzero == 1) {
        std::swap(cols[begin], cols[pivot]);
        basis.push_back(cols[begin]);
        ++begin;
        break;
      }
      for (size_t c = begin; c < cols.size(); ++c) {
        if (c == pivot || cols[c][size_t(r)] == 0) continue;
        Int q = cols[c][size_t(r)] / cols[pivot][size_t(r)];
        for (int i = 0; i < 3; ++i) cols[c][size_t(i)] -= q * cols[pivot][size_t(i)];
      }
    }
  }
  return basis;
}

std::pair<std::vector<std::array<Int, 3>>, Int> integerize(const std::vector<Vec3>& vs) {
  Int l = 1;
  for (const Vec3& v : vs)
    for (int i = 0; i < 3; ++i) l = boost::multiprecision::lcm(l, rat_den(v[i]));
  std::vector<std::array<Int, 3>> out;
  for (const Vec3& v : vs) {
    std::array<Int, 3> w;
    for (int i = 0; i < 3; ++i) w[size_t(i)] = Int(v[i] * Rat(l));
    out.push_back(w);
  }
  return {out, l};
}

}  // namespace

bool in_z_span(const std::vector<Vec3>& gens, const Vec3& v) {
  std::vector<Vec3> all = gens;
  all.push_back(v);
  auto [ints, scale] = integerize(all);
  std::array<Int, 3> target = ints.back();
  ints.pop_back();
  auto basis = z_echelon(std::move(ints));
  for (const auto& e : basis) {
    int p = -1;
    for (int r = 0; r < 3 && p < 0; ++r)
      if (e[size_t(r)] != 0) p = r;
    if (p < 0) continue;
    if (target[size_t(p)] % e[size_t(p)] != 0) return false;
    Int c = target[size_t(p)] / e[size_t(p)];
    for (int i = 0; i < 3; ++i) target[size_t(i)] -= c * e[size_t(i)];
  }
  return target[0] == 0 && target[1] == 0 && target[2] == 0;
}

CrystallographicGroup generate_group(const std::vector<DeckTransformation>& decks) {
  if (decks.empty()) throw std::invalid_argument("no deck transformations");
  for (const DeckTransformation& d : decks)
    if (!d.map.linear.is_orthogonal())
      throw std::runtime_error("deck transformation with non-orthogonal linear part");

  std::vector<Isometry> gens;
  for (const DeckTransformation& d : decks) {
    gens.push_back(d.map);
    gens.push_back(d.map.inverse());
  }

  // BFS transversal over the point group; Schreier generators give the full
  // translation subgroup.
  CrystallographicGroup g;
  std::map<std::string, size_t> index;
  std::vector<Isometry> transversal;
  transversal.push_back(Isometry::identity());
  index[mat_key(Mat3::identity())] = 0;
  std::vector<Vec3> schreier;

  for (size_t head = 0; head < transversal.size(); ++head) {
    Isometry u = transversal[head];
    for (const Isometry& gen : gens) {
      Isometry e = gen * u;
      auto it = index.find(mat_key(e.linear));
      if (it == index.end()) {
        if (transversal.size() >= 48)
          throw std::runtime_error("point-group closure exceeds 48 elements");
        index[mat_key(e.linear)] = transversal.size();
        transversal.push_back(e);
      } else {
        Isometry t = transversal[it->second].inverse() * e;
        if (!t.linear.is_orthogonal() || !(t.linear == Mat3::identity()))
          throw std::runtime_error("Schreier element is not a translation");
        schreier.push_back(t.translation);
      }
    }
  }

  for (const Isometry& u : transversal) {
    g.point_group.push_back(u.linear);
    g.rep_translation.push_back(u.translation);
  }

  auto [ints, scale] = integerize(schreier);
  auto basis = z_echelon(std::move(ints));
  for (const auto& e : basis) {
    Vec3 v;
    bool zero = true;
    for (int i = 0; i < 3; ++i) {
      v[i] = Rat(e[size_t(i)], scale);
      if (e[size_t(i)] != 0) zero = false;
    }
    if (!zero) g.lattice.push_back(v);
  }
  g.lattice_rank = int(g.lattice.size());
  return g;
}

Vec3 project_to_fixed_space(const Mat3& a, const Vec3& v) {
  // Kernel of (A - I) by Gaussian elimination.
  Mat3 m = a;
  for (int i = 0; i < 3; ++i) m.at(i, i) -= 1;
  std::array<std::array<Rat, 3>, 3> rows = m.m;
  std::vector<int> pivot_cols;
  int rank = 0;
  for (int col = 0; col < 3 && rank < 3; ++col) {
    int piv = -1;
    for (int r = rank; r < 3; ++r)
      if (rows[size_t(r)][size_t(col)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[size_t(rank)], rows[size_t(piv)]);
    Rat d = rows[size_t(rank)][size_t(col)];
    for (int c = 0; c < 3; ++c) rows[size_t(rank)][size_t(c)] /= d;
    for (int r = 0; r < 3; ++r) {
      if (r == rank) continue;
      Rat f = rows[size_t(r)][size_t(col)];
      for (int c = 0; c < 3; ++c) rows[size_t(r)][size_t(c)] -= f * rows[size_t(rank)][size_t(c)];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  std::vector<Vec3> kernel;
  for (int col = 0; col < 3; ++col) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), col) != pivot_cols.end()) continue;
    Vec3 k;
    k[col] = 1;
    for (int r = 0; r < rank; ++r) k[pivot_cols[size_t(r)]] = -rows[size_t(r)][size_t(col)];
    kernel.push_back(k);
  }
  // Orthogonal projection onto span(kernel): Gram-matrix solve.
  size_t d = kernel.size();
  if (d == 0) return Vec3{};
  std::vector<std::vector<Rat>> gram(d, std::vector<Rat>(d + 1));
  for (size_t i = 0; i < d; ++i) {
    for (size_t j = 0; j < d; ++j) gram[i][j] = dot(kernel[i], kernel[j]);
    gram[i][d] = dot(kernel[i], v);
  }
  // Solve the (d x d) system.
  for (size_t col = 0; col < d; ++col) {
    size_t piv = col;
    while (gram[piv][col] == 0) ++piv;  // Gram matrix is positive definite
    std::swap(gram[col], gram[piv]);
    Rat dd = gram[col][col];
    for (size_t c = 0; c <= d; ++c) gram[col][c] /= dd;
    for (size_t r = 0; r < d; ++r) {
      if (r == col) continue;
      Rat f = gram[r][col];
      for (size_t c = 0; c <= d; ++c) gram[r][c] -= f * gram[col][c];
    }
  }
  Vec3 out;
  for (size_t i = 0; i < d; ++i) out = out + gram[i][d] * kernel[i];
  return out;
}

bool is_torsion_free(const CrystallographicGroup& g) {
  for (size_t i = 0; i < g.point_group.size(); ++i) {
    const Mat3& a = g.point_group[i];
    if (a == Mat3::identity()) continue;
    Vec3 pt = project_to_fixed_space(a, g.rep_translation[i]);
    std::vector<Vec3> plat;
    for (const Vec3& b : g.lattice) plat.push_back(project_to_fixed_space(a, b));
    if (in_z_span(plat, pt)) return false;  // some coset element fixes a point
  }
  return true;
}

bool is_orientation_preserving(const CrystallographicGroup& g) {
  for (const Mat3& a : g.point_group)
    if (a.det() != 1) return false;
  return true;
}

std::string flat_class_str(FlatClass c) {
  switch (c) {
    case FlatClass::E1: return "E1";
    case FlatClass::E2: return "E2";
    case FlatClass::E3: return "E3";
    case FlatClass::E4: return "E4";
    case FlatClass::E5: return "E5";
    case FlatClass::E6: return "E6";
    case FlatClass::not_a_manifold: return "not_a_manifold";
    case FlatClass::unrecognized: return "unrecognized";
  }
  return "?";
}

namespace {

int element_order(const Mat3& a) {
  Mat3 p = a;
  for (int k = 1; k <= 48; ++k) {
    if (p == Mat3::identity()) return k;
    p = p * a;
  }
  return 0;
}

}  // namespace

FlatClass classify(const CrystallographicGroup& g) {
  if (g.lattice_rank < 3) return FlatClass::unrecognized;
  if (!is_torsion_free(g)) return FlatClass::not_a_manifold;
  if (!is_orientation_preserving(g)) return FlatClass::unrecognized;
  int n = g.order();
  int max_ord = 1;
  for (const Mat3& a : g.point_group) max_ord = std::max(max_ord, element_order(a));
  if (n == 1) return FlatClass::E1;
  if (n == 2) return FlatClass::E2;
  if (n == 3) return FlatClass::E3;
  if (n == 4 && max_ord == 4) return FlatClass::E4;
  if (n == 4 && max_ord == 2) return FlatClass::E6;
  if (n == 6 && max_ord == 6) return FlatClass::E5;
  return FlatClass::unrecognized;
}

std::string CrystallographicGroup::to_json() const {
  std::ostringstream o;
  auto rat = [](const Rat& q) { return "\"" + rat_str(q) + "\""; };
  o << "{\"point_group\":[";
  for (size_t i = 0; i < point_group.size(); ++i) {
    if (i) o << ",";
    o << "[";
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        o << ((r || c) ? "," : "") << rat(point_group[i].at(r, c));
    o << "]";
  }
  o << "],\"rep_translations\":[";
  for (size_t i = 0; i < rep_translation.size(); ++i) {
    if (i) o << ",";
    o << "[" << rat(rep_translation[i][0]) << "," << rat(rep_translation[i][1]) << ","
      << rat(rep_translation[i][2]) << "]";
  }
  o << "],\"lattice\":[";
  for (size_t i = 0; i < lattice.size(); ++i) {
    if (i) o << ",";
    o << "[" << rat(lattice[i][0]) << "," << rat(lattice[i][1]) << "," << rat(lattice[i][2])
      << "]";
  }
  o << "],\"torsion_free\":" << (is_torsion_free(*this) ? "true" : "false")
    << ",\"orientable\":" << (is_orientation_preserving(*this) ? "true" : "false")
    << ",\"class\":\"" << flat_class_str(classify(*this)) << "\"}";
  return o.str();
}

}  // namespace rfold
