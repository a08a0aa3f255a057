#pragma once

#include "rfold/rational.hpp"

#include <array>
#include <compare>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace rfold {

struct Vec3 {
  std::array<Rat, 3> c{};

  Vec3() = default;
  Vec3(Rat x, Rat y, Rat z) : c{std::move(x), std::move(y), std::move(z)} {}

  const Rat& operator[](int i) const { return c[size_t(i)]; }
  Rat& operator[](int i) { return c[size_t(i)]; }

  friend Vec3 operator+(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
  }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
  }
  friend Vec3 operator*(const Rat& s, const Vec3& a) {
    return {s * a[0], s * a[1], s * a[2]};
  }
  friend Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }
  friend bool operator==(const Vec3& a, const Vec3& b) { return a.c == b.c; }
  friend bool operator<(const Vec3& a, const Vec3& b) { return a.c < b.c; }

  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
};

inline Rat dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

struct Mat3 {
  // Row-major.
  std::array<std::array<Rat, 3>, 3> m{};

  static Mat3 identity() {
    Mat3 r;
    for (int i = 0; i < 3; ++i) r.m[size_t(i)][size_t(i)] = 1;
    return r;
  }
  static Mat3 diagonal(const Rat& a, const Rat& b, const Rat& c) {
    Mat3 r;
    r.m[0][0] = a;
    r.m[1][1] = b;
    r.m[2][2] = c;
    return r;
  }

  const Rat& at(int i, int j) const { return m[size_t(i)][size_t(j)]; }
  Rat& at(int i, int j) { return m[size_t(i)][size_t(j)]; }

  friend Mat3 operator*(const Mat3& a, const Mat3& b) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Rat s = 0;
        for (int k = 0; k < 3; ++k) s += a.at(i, k) * b.at(k, j);
        r.at(i, j) = s;
      }
    return r;
  }
  friend Vec3 operator*(const Mat3& a, const Vec3& v) {
    Vec3 r;
    for (int i = 0; i < 3; ++i) {
      Rat s = 0;
      for (int k = 0; k < 3; ++k) s += a.at(i, k) * v[k];
      r[i] = s;
    }
    return r;
  }
  friend bool operator==(const Mat3& a, const Mat3& b) { return a.m == b.m; }
  friend bool operator<(const Mat3& a, const Mat3& b) { return a.m < b.m; }

  Mat3 transposed() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Rat det() const {
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
  }

  bool is_orthogonal() const { return transposed() * *this == identity(); }
};

// Affine map x -> linear*x + translation, with exactly orthogonal linear part.
struct Isometry {
  Mat3 linear = Mat3::identity();
  Vec3 translation;

  static Isometry identity() { return {}; }
  static Isometry from_translation(Vec3 t) { return {Mat3::identity(), std::move(t)}; }

  Vec3 apply(const Vec3& p) const { return linear * p + translation; }

  // (a ∘ b): apply b first.
  friend Isometry operator*(const Isometry& a, const Isometry& b) {
    return {a.linear * b.linear, a.linear * b.translation + a.translation};
  }
  friend bool operator==(const Isometry& a, const Isometry& b) {
    return a.linear == b.linear && a.translation == b.translation;
  }
  friend bool operator<(const Isometry& a, const Isometry& b) {
    if (a.linear < b.linear) return true;
    if (b.linear < a.linear) return false;
    return a.translation < b.translation;
  }

  Isometry inverse() const {
    Mat3 li = linear.transposed();  // orthogonal
    return {li, -(li * translation)};
  }

  bool is_identity() const { return *this == Isometry{}; }

  std::string key() const {
    std::string s;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) s += rat_str(linear.at(i, j)) + ",";
    for (int i = 0; i < 3; ++i) s += rat_str(translation[i]) + ",";
    return s;
  }
};

// Oriented plane {x : n·x = d}; n is a primitive integer vector.  The
// orientation (sign of n) is normalized away by canonicalize(), so planes
// compare equal regardless of which side they were built from.
struct Plane {
  Vec3 n;
  Rat d = 0;

  Plane() = default;
  Plane(Vec3 normal, Rat offset) : n(std::move(normal)), d(std::move(offset)) {
    canonicalize();
  }

  static Plane through(const Vec3& p0, const Vec3& p1, const Vec3& p2) {
    Vec3 nn = cross(p1 - p0, p2 - p0);
    if (nn.is_zero()) throw std::runtime_error("degenerate plane");
    return Plane(nn, dot(nn, p0));
  }

  void canonicalize() {
    // Scale so components are coprime integers with positive leading entry.
    Int l = 1;
    for (int i = 0; i < 3; ++i) l = boost::multiprecision::lcm(l, rat_den(n[i]));
    Int g = 0;
    for (int i = 0; i < 3; ++i) g = boost::multiprecision::gcd(g, Int(rat_num(n[i]) * (l / rat_den(n[i]))));
    if (g == 0) throw std::runtime_error("zero normal");
    Rat scale = Rat(l, g);
    for (int i = 0; i < 3; ++i) n[i] *= scale;
    d *= scale;
    for (int i = 0; i < 3; ++i) {
      if (n[i] == 0) continue;
      if (n[i] < 0) {
        n = -n;
        d = -d;
      }
      break;
    }
  }

  // Signed evaluation n·p - d (sign meaningful only per canonical n).
  Rat eval(const Vec3& p) const { return dot(n, p) - d; }
  bool contains(const Vec3& p) const { return eval(p) == 0; }

  Isometry reflection() const {
    // x -> x - 2 (n·x - d)/(n·n) n
    Rat nn = dot(n, n);
    Mat3 lin = Mat3::identity();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) lin.at(i, j) -= Rat(2) * n[i] * n[j] / nn;
    Vec3 t = (Rat(2) * d / nn) * n;
    return {lin, t};
  }

  friend bool operator==(const Plane& a, const Plane& b) {
    return a.n == b.n && a.d == b.d;
  }
  friend bool operator<(const Plane& a, const Plane& b) {
    if (a.n < b.n) return true;
    if (b.n < a.n) return false;
    return a.d < b.d;
  }

  std::string key() const {
    return rat_str(n[0]) + "," + rat_str(n[1]) + "," + rat_str(n[2]) + ";" + rat_str(d);
  }
};

inline Plane transform_plane(const Isometry& g, const Plane& p) {
  // Image plane: {g x : n·x = d} = {y : (L n)·y = d + n·L^T t} for orthogonal L.
  Vec3 n2 = g.linear * p.n;
  Rat d2 = p.d + dot(n2, g.translation);
  return Plane(n2, d2);
}

// Dihedral angle between two half-space boundary planes along a shared edge,
// given inward normals.  Returns the angle as a rational multiple q of pi,
// for the values that occur in this code base (q = 1/2 or 1/4); throws on
// anything else.
inline Rat dihedral_from_inward_normals(const Vec3& a, const Vec3& b) {
  Rat num = -dot(a, b);                     // |a||b| cos(theta)
  Rat den2 = dot(a, a) * dot(b, b);         // (|a||b|)^2
  Rat c2 = num * num / den2;                // cos^2(theta)
  if (num == 0) return Rat(1, 2);
  if (c2 == Rat(1, 2) && num > 0) return Rat(1, 4);
  if (c2 == Rat(1, 2) && num < 0) return Rat(3, 4);
  throw std::runtime_error("unexpected dihedral angle between planes");
}

}  // namespace rfold
