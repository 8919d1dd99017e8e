#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <string>

#include "biconserv/error.hpp"

namespace biconserv {

/// Metric signature of the flat five-dimensional ambient space. `index` is
/// the number of negative directions (always the leading coordinates) and
/// `c` the curvature sign of the space form cut out by <x,x> = c.
/// The two admissible combinations are (index 0, c +1) for the sphere inside
/// Euclidean space and (index 1, c -1) for hyperbolic space inside Minkowski
/// space.
struct Ambient {
  int index = 0;  // 0 or 1
  int c = +1;     // +1 or -1

  static constexpr Ambient sphere() { return Ambient{0, +1}; }
  static constexpr Ambient hyperbolic() { return Ambient{1, -1}; }

  static Ambient from_curvature(int c) {
    if (c == +1) return sphere();
    if (c == -1) return hyperbolic();
    fail(errc::constraint_violation, "space form sign must be +1 or -1");
  }

  bool valid() const {
    return (c == +1 && index == 0) || (c == -1 && index == 1);
  }
};

// ---------------------------------------------------------------------------
// Small fixed-size containers, generic over the scalar so that truncated
// Taylor jets can flow through the same formulas as plain doubles.
// ---------------------------------------------------------------------------

template <class T>
struct Vec5 {
  std::array<T, 5> v{};

  T& operator[](std::size_t i) { return v[i]; }
  const T& operator[](std::size_t i) const { return v[i]; }
};

template <class T>
struct Vec3 {
  std::array<T, 3> v{};

  T& operator[](std::size_t i) { return v[i]; }
  const T& operator[](std::size_t i) const { return v[i]; }
};

using Vec5d = Vec5<double>;
using Vec3d = Vec3<double>;

template <class T>
Vec5<T> operator+(const Vec5<T>& a, const Vec5<T>& b) {
  Vec5<T> r;
  for (int i = 0; i < 5; ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
Vec5<T> operator-(const Vec5<T>& a, const Vec5<T>& b) {
  Vec5<T> r;
  for (int i = 0; i < 5; ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T, class S>
Vec5<T> operator*(const Vec5<T>& a, const S& s) {
  Vec5<T> r;
  for (int i = 0; i < 5; ++i) r[i] = a[i] * s;
  return r;
}

template <class T>
Vec3<T> operator+(const Vec3<T>& a, const Vec3<T>& b) {
  Vec3<T> r;
  for (int i = 0; i < 3; ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
Vec3<T> operator-(const Vec3<T>& a, const Vec3<T>& b) {
  Vec3<T> r;
  for (int i = 0; i < 3; ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T, class S>
Vec3<T> operator*(const Vec3<T>& a, const S& s) {
  Vec3<T> r;
  for (int i = 0; i < 3; ++i) r[i] = a[i] * s;
  return r;
}

/// Signature inner product on the five-dimensional ambient space: the first
/// `amb.index` coordinates contribute with a minus sign.
template <class T>
T inner(const Vec5<T>& a, const Vec5<T>& b, const Ambient& amb) {
  T s = a[0] * b[0];
  if (amb.index == 1) s = s * (-1.0);
  for (int i = 1; i < 5; ++i) s = s + a[i] * b[i];
  return s;
}

inline double euclidean_norm(const Vec5d& a) {
  double s = 0;
  for (int i = 0; i < 5; ++i) s += a[i] * a[i];
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// 3x3 matrices (general and symmetric) over a generic scalar.
// ---------------------------------------------------------------------------

template <class T>
struct Mat3 {
  // row-major
  std::array<T, 9> m{};

  T& operator()(int i, int j) { return m[static_cast<std::size_t>(3 * i + j)]; }
  const T& operator()(int i, int j) const { return m[static_cast<std::size_t>(3 * i + j)]; }

  static Mat3<T> zero() { return Mat3<T>{}; }
};

using Mat3d = Mat3<double>;

/// Symmetric 3x3 stored as the upper triangle (a00,a01,a02,a11,a12,a22).
template <class T>
struct SymMat3 {
  std::array<T, 6> a{};

  static constexpr int kIndex[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};

  T& operator()(int i, int j) { return a[static_cast<std::size_t>(kIndex[i][j])]; }
  const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(kIndex[i][j])]; }

  Mat3<T> full() const {
    Mat3<T> r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(i, j);
    return r;
  }

  static SymMat3<T> diag(const T& x, const T& y, const T& z) {
    SymMat3<T> r;
    r(0, 0) = x;
    r(1, 1) = y;
    r(2, 2) = z;
    return r;
  }
};

using SymMat3d = SymMat3<double>;

template <class T>
T det(const SymMat3<T>& s) {
  return s(0, 0) * (s(1, 1) * s(2, 2) - s(1, 2) * s(1, 2)) -
         s(0, 1) * (s(0, 1) * s(2, 2) - s(1, 2) * s(0, 2)) +
         s(0, 2) * (s(0, 1) * s(1, 2) - s(1, 1) * s(0, 2));
}

template <class T>
T det(const Mat3<T>& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

/// Inverse of a symmetric 3x3 via the adjugate. `Div` must be a callable
/// implementing division in T (jets have no operator/ against themselves in
/// all contexts where a raw `/` would be ambiguous, so it is injected).
template <class T, class Div>
SymMat3<T> sym_inverse(const SymMat3<T>& s, Div divide) {
  T d = det(s);
  SymMat3<T> r;
  r(0, 0) = divide(s(1, 1) * s(2, 2) - s(1, 2) * s(1, 2), d);
  r(0, 1) = divide(s(0, 2) * s(1, 2) - s(0, 1) * s(2, 2), d);
  r(0, 2) = divide(s(0, 1) * s(1, 2) - s(0, 2) * s(1, 1), d);
  r(1, 1) = divide(s(0, 0) * s(2, 2) - s(0, 2) * s(0, 2), d);
  r(1, 2) = divide(s(0, 2) * s(0, 1) - s(0, 0) * s(1, 2), d);
  r(2, 2) = divide(s(0, 0) * s(1, 1) - s(0, 1) * s(0, 1), d);
  return r;
}

inline SymMat3d sym_inverse(const SymMat3d& s) {
  return sym_inverse(s, [](double a, double b) { return a / b; });
}

inline Mat3d operator*(const Mat3d& a, const Mat3d& b) {
  Mat3d r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

inline Vec3d operator*(const Mat3d& a, const Vec3d& x) {
  Vec3d r;
  for (int i = 0; i < 3; ++i) {
    double s = 0;
    for (int k = 0; k < 3; ++k) s += a(i, k) * x[k];
    r[i] = s;
  }
  return r;
}

inline double dot(const Vec3d& a, const Vec3d& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3d cross(const Vec3d& a, const Vec3d& b) {
  return Vec3d{{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0]}};
}

inline double frobenius(const Mat3d& m) {
  double s = 0;
  for (double x : m.m) s += x * x;
  return std::sqrt(s);
}

inline double frobenius(const SymMat3d& m) { return frobenius(m.full()); }

// ---------------------------------------------------------------------------
// Generalized cross product of four ambient vectors.
// ---------------------------------------------------------------------------

template <class T>
T det4(const std::array<std::array<T, 4>, 4>& m) {
  // Laplace expansion along the first row with cached 2x2 minors of rows 2,3.
  auto m2 = [&](int c0, int c1) {
    return m[2][static_cast<std::size_t>(c0)] * m[3][static_cast<std::size_t>(c1)] -
           m[2][static_cast<std::size_t>(c1)] * m[3][static_cast<std::size_t>(c0)];
  };
  T d01 = m2(0, 1), d02 = m2(0, 2), d03 = m2(0, 3);
  T d12 = m2(1, 2), d13 = m2(1, 3), d23 = m2(2, 3);
  T c0 = m[1][1] * d23 - m[1][2] * d13 + m[1][3] * d12;
  T c1 = m[1][0] * d23 - m[1][2] * d03 + m[1][3] * d02;
  T c2 = m[1][0] * d13 - m[1][1] * d03 + m[1][3] * d01;
  T c3 = m[1][0] * d12 - m[1][1] * d02 + m[1][2] * d01;
  return m[0][0] * c0 - m[0][1] * c1 + m[0][2] * c2 - m[0][3] * c3;
}

/// Generalized cross product: the unique w with <w,u> = det[u; v1; v2; v3; v4]
/// for every u. Covariant components are signed 4x4 minors of the stacked
/// rows v1..v4; the index is then raised with the signature metric, which
/// negates the first component when amb.index == 1. Linearly dependent input
/// yields the zero vector.
template <class T>
Vec5<T> cross4(const Vec5<T>& v1, const Vec5<T>& v2, const Vec5<T>& v3,
               const Vec5<T>& v4, const Ambient& amb) {
  const Vec5<T>* rows[4] = {&v1, &v2, &v3, &v4};
  Vec5<T> w;
  for (int i = 0; i < 5; ++i) {
    std::array<std::array<T, 4>, 4> m;
    for (int r = 0; r < 4; ++r) {
      int cc = 0;
      for (int c = 0; c < 5; ++c) {
        if (c == i) continue;
        m[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc++)] = (*rows[r])[c];
      }
    }
    T minor = det4(m);
    // cofactor sign for first-row expansion of det[u; v1..v4]
    double sign = (i % 2 == 0) ? 1.0 : -1.0;
    if (amb.index == 1 && i == 0) sign = -sign;  // raise the index
    w[i] = minor * sign;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Generalized symmetric eigenproblem b v = k g v for 3x3 pencils.
// ---------------------------------------------------------------------------

struct Eig3 {
  std::array<double, 3> k{};     // descending
  std::array<Vec3d, 3> vec{};    // g-orthonormal, vec[i] belongs to k[i]
};

namespace detail {

/// Cholesky factor L (lower) of a symmetric positive definite 3x3.
inline Mat3d cholesky3(const SymMat3d& g) {
  Mat3d L = Mat3d::zero();
  double scale = frobenius(g);
  double d0 = g(0, 0);
  if (!(d0 > 1e-14 * scale)) fail(errc::non_positive_definite_metric, "pivot 1");
  L(0, 0) = std::sqrt(d0);
  L(1, 0) = g(0, 1) / L(0, 0);
  L(2, 0) = g(0, 2) / L(0, 0);
  double d1 = g(1, 1) - L(1, 0) * L(1, 0);
  if (!(d1 > 1e-14 * scale)) fail(errc::non_positive_definite_metric, "pivot 2");
  L(1, 1) = std::sqrt(d1);
  L(2, 1) = (g(1, 2) - L(2, 0) * L(1, 0)) / L(1, 1);
  double d2 = g(2, 2) - L(2, 0) * L(2, 0) - L(2, 1) * L(2, 1);
  if (!(d2 > 1e-14 * scale)) fail(errc::non_positive_definite_metric, "pivot 3");
  L(2, 2) = std::sqrt(d2);
  return L;
}

inline Vec3d solve_lower(const Mat3d& L, const Vec3d& b) {
  Vec3d x;
  x[0] = b[0] / L(0, 0);
  x[1] = (b[1] - L(1, 0) * x[0]) / L(1, 1);
  x[2] = (b[2] - L(2, 0) * x[0] - L(2, 1) * x[1]) / L(2, 2);
  return x;
}

inline Vec3d solve_upper_t(const Mat3d& L, const Vec3d& b) {
  // solves L^T x = b
  Vec3d x;
  x[2] = b[2] / L(2, 2);
  x[1] = (b[1] - L(2, 1) * x[2]) / L(1, 1);
  x[0] = (b[0] - L(1, 0) * x[1] - L(2, 0) * x[2]) / L(0, 0);
  return x;
}

/// Eigenvalues of a symmetric 3x3 by the trigonometric closed form, each
/// polished with one Newton step on the characteristic polynomial.
inline std::array<double, 3> sym_eigenvalues3(const SymMat3d& c) {
  double p1 = c(0, 1) * c(0, 1) + c(0, 2) * c(0, 2) + c(1, 2) * c(1, 2);
  double scale = frobenius(c);
  std::array<double, 3> ev;
  if (p1 <= 1e-30 * scale * scale + 1e-300) {
    ev = {c(0, 0), c(1, 1), c(2, 2)};
  } else {
    double q = (c(0, 0) + c(1, 1) + c(2, 2)) / 3.0;
    double p2 = (c(0, 0) - q) * (c(0, 0) - q) + (c(1, 1) - q) * (c(1, 1) - q) +
                (c(2, 2) - q) * (c(2, 2) - q) + 2.0 * p1;
    double p = std::sqrt(p2 / 6.0);
    SymMat3d b;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) b(i, j) = (c(i, j) - (i == j ? q : 0.0)) / p;
    double r = det(b) / 2.0;
    r = std::min(1.0, std::max(-1.0, r));
    double phi = std::acos(r) / 3.0;
    double e0 = q + 2.0 * p * std::cos(phi);
    double e2 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    double e1 = 3.0 * q - e0 - e2;
    ev = {e0, e1, e2};
  }
  // characteristic polynomial f(l) = -l^3 + tr l^2 - m l + det
  double tr = c(0, 0) + c(1, 1) + c(2, 2);
  double m = c(0, 0) * c(1, 1) + c(0, 0) * c(2, 2) + c(1, 1) * c(2, 2) -
             c(0, 1) * c(0, 1) - c(0, 2) * c(0, 2) - c(1, 2) * c(1, 2);
  double dt = det(c);
  for (double& l : ev) {
    double f = ((-l + tr) * l - m) * l + dt;
    double fp = -3.0 * l * l + 2.0 * tr * l - m;
    if (std::abs(fp) > 1e-12 * (scale * scale + 1e-300)) {
      double step = f / fp;
      if (std::abs(step) < 1e-3 * (1.0 + std::abs(l))) l -= step;
    }
  }
  std::sort(ev.begin(), ev.end(), std::greater<double>());
  return ev;
}

inline Vec3d normalized(const Vec3d& v) {
  double n = std::sqrt(dot(v, v));
  return Vec3d{{v[0] / n, v[1] / n, v[2] / n}};
}

inline Vec3d any_orthogonal(const Vec3d& w) {
  int axis = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(w[i]) < std::abs(w[axis])) axis = i;
  Vec3d e{};
  e[axis] = 1.0;
  Vec3d v = e - w * dot(e, w);
  return normalized(v);
}

/// Eigenvector of a symmetric 3x3 for a known simple eigenvalue: pick the
/// largest cross product of rows of (c - l I).
inline bool sym_eigenvector3(const SymMat3d& c, double l, double scale, Vec3d* out) {
  Mat3d m = c.full();
  for (int i = 0; i < 3; ++i) m(i, i) -= l;
  Vec3d r0{{m(0, 0), m(0, 1), m(0, 2)}};
  Vec3d r1{{m(1, 0), m(1, 1), m(1, 2)}};
  Vec3d r2{{m(2, 0), m(2, 1), m(2, 2)}};
  Vec3d c01 = cross(r0, r1), c02 = cross(r0, r2), c12 = cross(r1, r2);
  double n01 = dot(c01, c01), n02 = dot(c02, c02), n12 = dot(c12, c12);
  Vec3d best = c01;
  double nb = n01;
  if (n02 > nb) { best = c02; nb = n02; }
  if (n12 > nb) { best = c12; nb = n12; }
  if (nb <= 1e-24 * std::pow(scale + std::abs(l), 4) + 1e-300) return false;
  *out = normalized(best);
  return true;
}

}  // namespace detail

/// Solves the symmetric-definite pencil b v = k g v. The induced metric g
/// must be positive definite; eigenvalues are returned in descending order
/// with g-orthonormal eigenvectors. Nearly repeated eigenvalues get an
/// orthonormal basis of the joint eigenspace.
inline Eig3 generalized_eig3(const SymMat3d& g, const SymMat3d& b) {
  Mat3d L = detail::cholesky3(g);
  // C = L^{-1} b L^{-T}, symmetric standard problem
  Mat3d bf = b.full();
  Mat3d y;  // columns: L^{-1} b columns
  for (int j = 0; j < 3; ++j) {
    Vec3d col{{bf(0, j), bf(1, j), bf(2, j)}};
    Vec3d s = detail::solve_lower(L, col);
    for (int i = 0; i < 3; ++i) y(i, j) = s[i];
  }
  SymMat3d c;
  for (int i = 0; i < 3; ++i) {
    Vec3d row{{y(i, 0), y(i, 1), y(i, 2)}};
    Vec3d s = detail::solve_lower(L, row);  // symmetric: same op on the right
    for (int j = i; j < 3; ++j) c(i, j) = s[j];
  }
  auto ev = detail::sym_eigenvalues3(c);
  double scale = frobenius(c);
  double gap_tol = 1e-7 * (scale + 1.0);

  std::array<Vec3d, 3> u;
  bool got[3] = {false, false, false};
  for (int i = 0; i < 3; ++i) {
    bool simple = true;
    for (int j = 0; j < 3; ++j)
      if (j != i && std::abs(ev[i] - ev[j]) < gap_tol) simple = false;
    if (simple) got[i] = detail::sym_eigenvector3(c, ev[i], scale, &u[i]);
  }
  // complete repeated eigenspaces orthogonally to whatever was found
  int found = (got[0] ? 1 : 0) + (got[1] ? 1 : 0) + (got[2] ? 1 : 0);
  if (found == 0) {
    u[0] = Vec3d{{1, 0, 0}};
    u[1] = Vec3d{{0, 1, 0}};
    u[2] = Vec3d{{0, 0, 1}};
  } else if (found == 1) {
    int i0 = got[0] ? 0 : (got[1] ? 1 : 2);
    Vec3d w = u[i0];
    Vec3d p = detail::any_orthogonal(w);
    Vec3d q = cross(w, p);
    int slot = 0;
    for (int i = 0; i < 3; ++i)
      if (i != i0) u[i] = (slot++ == 0) ? p : q;
  } else if (found == 2) {
    int miss = !got[0] ? 0 : (!got[1] ? 1 : 2);
    int a = (miss + 1) % 3, bidx = (miss + 2) % 3;
    u[miss] = detail::normalized(cross(u[a], u[bidx]));
  }
  // re-orthonormalize (Gram-Schmidt) to clean up near-degenerate cases
  u[0] = detail::normalized(u[0]);
  u[1] = detail::normalized(u[1] - u[0] * dot(u[1], u[0]));
  u[2] = detail::normalized(u[2] - u[0] * dot(u[2], u[0]) - u[1] * dot(u[2], u[1]));

  Eig3 out;
  for (int i = 0; i < 3; ++i) {
    Vec3d v = detail::solve_upper_t(L, u[i]);
    // Rayleigh polish in the original pencil: k = v^T b v / v^T g v
    Vec3d bv = b.full() * v;
    Vec3d gv = g.full() * v;
    out.k[i] = dot(v, bv) / dot(v, gv);
    out.vec[i] = v;
  }
  // keep descending order after polish
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (out.k[j] > out.k[i]) {
        std::swap(out.k[i], out.k[j]);
        std::swap(out.vec[i], out.vec[j]);
      }
  return out;
}

}  // namespace biconserv
