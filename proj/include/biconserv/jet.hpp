#pragma once

#include <array>
#include <cmath>
#include <cstdint>

#include "biconserv/error.hpp"

namespace biconserv {

namespace jet_detail {

// Monomial table for up to 3 variables and total degree up to 3, graded-lex.
struct Mono {
  std::uint8_t e0, e1, e2, deg;
};

inline constexpr int kNumMonos = 20;

inline constexpr std::array<Mono, kNumMonos> kMonos = {{
    {0, 0, 0, 0},
    {1, 0, 0, 1}, {0, 1, 0, 1}, {0, 0, 1, 1},
    {2, 0, 0, 2}, {1, 1, 0, 2}, {1, 0, 1, 2}, {0, 2, 0, 2}, {0, 1, 1, 2}, {0, 0, 2, 2},
    {3, 0, 0, 3}, {2, 1, 0, 3}, {2, 0, 1, 3}, {1, 2, 0, 3}, {1, 1, 1, 3},
    {1, 0, 2, 3}, {0, 3, 0, 3}, {0, 2, 1, 3}, {0, 1, 2, 3}, {0, 0, 3, 3},
}};

constexpr auto build_index_table() {
  std::array<std::array<std::array<std::int8_t, 4>, 4>, 4> t{};
  for (auto& a : t)
    for (auto& b : a) b = {-1, -1, -1, -1};
  for (int i = 0; i < kNumMonos; ++i)
    t[kMonos[static_cast<std::size_t>(i)].e0][kMonos[static_cast<std::size_t>(i)].e1]
     [kMonos[static_cast<std::size_t>(i)].e2] = static_cast<std::int8_t>(i);
  return t;
}

inline constexpr auto kIndexOf = build_index_table();

inline constexpr int index_of(int e0, int e1, int e2) {
  return kIndexOf[static_cast<std::size_t>(e0)][static_cast<std::size_t>(e1)]
                 [static_cast<std::size_t>(e2)];
}

inline constexpr double kFactorial[4] = {1.0, 1.0, 2.0, 6.0};

}  // namespace jet_detail

/// Truncated multivariate Taylor expansion in up to 3 variables, total order
/// up to 3. Coefficients are stored as Taylor coefficients (partial
/// derivative divided by the multi-index factorial) over a dense symmetric
/// monomial basis. Arithmetic requires matching (nvars, order).
class Jet {
 public:
  Jet() = default;

  Jet(int nvars, int order) : nvars_(nvars), order_(order) {
    if (nvars < 1 || nvars > 3 || order < 0 || order > 3)
      fail(errc::shape_mismatch, "jet shape out of range");
  }

  static Jet constant(int nvars, int order, double value) {
    Jet j(nvars, order);
    j.c_[0] = value;
    return j;
  }

  static Jet variable(int nvars, int order, int var, double value) {
    Jet j(nvars, order);
    if (var < 0 || var >= nvars) fail(errc::shape_mismatch, "variable index out of range");
    j.c_[0] = value;
    if (order >= 1) j.c_[static_cast<std::size_t>(1 + var)] = 1.0;
    return j;
  }

  /// Univariate jet in `var` from raw derivative values f, f', f'', f'''.
  static Jet from_derivatives(int nvars, int order, int var,
                              const std::array<double, 4>& d) {
    Jet j(nvars, order);
    int e[3] = {0, 0, 0};
    for (int k = 0; k <= order; ++k) {
      e[0] = e[1] = e[2] = 0;
      e[var] = k;
      j.c_[static_cast<std::size_t>(jet_detail::index_of(e[0], e[1], e[2]))] =
          d[static_cast<std::size_t>(k)] / jet_detail::kFactorial[k];
    }
    return j;
  }

  int nvars() const { return nvars_; }
  int order() const { return order_; }
  double value() const { return c_[0]; }

  double coeff(int idx) const { return c_[static_cast<std::size_t>(idx)]; }
  double& coeff(int idx) { return c_[static_cast<std::size_t>(idx)]; }

  /// Partial derivative for the multi-index (e0,e1,e2): Taylor coefficient
  /// times the multi-index factorial.
  double extract(int e0, int e1 = 0, int e2 = 0) const {
    if (e0 < 0 || e1 < 0 || e2 < 0 || e0 + e1 + e2 > order_)
      fail(errc::index_out_of_order, "multi-index degree exceeds jet order");
    if ((nvars_ < 2 && e1 > 0) || (nvars_ < 3 && e2 > 0))
      fail(errc::index_out_of_order, "multi-index uses an inactive variable");
    double f = jet_detail::kFactorial[e0] * jet_detail::kFactorial[e1] *
               jet_detail::kFactorial[e2];
    return c_[static_cast<std::size_t>(jet_detail::index_of(e0, e1, e2))] * f;
  }

  Jet truncated(int new_order) const {
    if (new_order > order_) fail(errc::shape_mismatch, "cannot raise jet order");
    Jet r(nvars_, new_order);
    for (int i = 0; i < jet_detail::kNumMonos; ++i)
      if (jet_detail::kMonos[static_cast<std::size_t>(i)].deg <= new_order)
        r.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)];
    return r;
  }

  /// Jet of the partial derivative with respect to `var`, one order lower.
  Jet derivative(int var) const {
    if (order_ < 1) fail(errc::index_out_of_order, "cannot differentiate an order-0 jet");
    Jet r(nvars_, order_ - 1);
    for (int i = 0; i < jet_detail::kNumMonos; ++i) {
      const auto& mo = jet_detail::kMonos[static_cast<std::size_t>(i)];
      if (mo.deg > order_ - 1) continue;
      int e[3] = {mo.e0, mo.e1, mo.e2};
      e[var] += 1;
      int src = jet_detail::index_of(e[0], e[1], e[2]);
      r.c_[static_cast<std::size_t>(i)] =
          c_[static_cast<std::size_t>(src)] * static_cast<double>(e[var]);
    }
    return r;
  }

  friend Jet operator+(const Jet& a, const Jet& b) {
    check_shape(a, b);
    Jet r(a.nvars_, a.order_);
    for (int i = 0; i < jet_detail::kNumMonos; ++i)
      r.c_[static_cast<std::size_t>(i)] =
          a.c_[static_cast<std::size_t>(i)] + b.c_[static_cast<std::size_t>(i)];
    return r;
  }

  friend Jet operator-(const Jet& a, const Jet& b) {
    check_shape(a, b);
    Jet r(a.nvars_, a.order_);
    for (int i = 0; i < jet_detail::kNumMonos; ++i)
      r.c_[static_cast<std::size_t>(i)] =
          a.c_[static_cast<std::size_t>(i)] - b.c_[static_cast<std::size_t>(i)];
    return r;
  }

  friend Jet operator-(const Jet& a) {
    Jet r(a.nvars_, a.order_);
    for (int i = 0; i < jet_detail::kNumMonos; ++i)
      r.c_[static_cast<std::size_t>(i)] = -a.c_[static_cast<std::size_t>(i)];
    return r;
  }

  friend Jet operator*(const Jet& a, const Jet& b) {
    check_shape(a, b);
    Jet r(a.nvars_, a.order_);
    for (int i = 0; i < jet_detail::kNumMonos; ++i) {
      double ai = a.c_[static_cast<std::size_t>(i)];
      if (ai == 0.0) continue;
      const auto& ma = jet_detail::kMonos[static_cast<std::size_t>(i)];
      if (ma.deg > a.order_) continue;
      for (int j = 0; j < jet_detail::kNumMonos; ++j) {
        const auto& mb = jet_detail::kMonos[static_cast<std::size_t>(j)];
        if (ma.deg + mb.deg > a.order_) continue;
        double bj = b.c_[static_cast<std::size_t>(j)];
        if (bj == 0.0) continue;
        int tgt = jet_detail::index_of(ma.e0 + mb.e0, ma.e1 + mb.e1, ma.e2 + mb.e2);
        r.c_[static_cast<std::size_t>(tgt)] += ai * bj;
      }
    }
    return r;
  }

  friend Jet operator+(const Jet& a, double s) {
    Jet r = a;
    r.c_[0] += s;
    return r;
  }
  friend Jet operator+(double s, const Jet& a) { return a + s; }
  friend Jet operator-(const Jet& a, double s) { return a + (-s); }
  friend Jet operator-(double s, const Jet& a) { return -a + s; }
  friend Jet operator*(const Jet& a, double s) {
    Jet r(a.nvars_, a.order_);
    for (int i = 0; i < jet_detail::kNumMonos; ++i)
      r.c_[static_cast<std::size_t>(i)] = a.c_[static_cast<std::size_t>(i)] * s;
    return r;
  }
  friend Jet operator*(double s, const Jet& a) { return a * s; }
  friend Jet operator/(const Jet& a, double s) { return a * (1.0 / s); }

  friend Jet operator/(const Jet& a, const Jet& b);

 private:
  static void check_shape(const Jet& a, const Jet& b) {
    if (a.nvars_ != b.nvars_ || a.order_ != b.order_)
      fail(errc::shape_mismatch, "mixed jet shapes in arithmetic");
  }

  int nvars_ = 1;
  int order_ = 0;
  std::array<double, jet_detail::kNumMonos> c_{};
};

namespace jet_detail {

/// Composes f after a, given the Taylor coefficients of f at a.value():
/// fc[k] = f^(k)(a0) / k!. Exact in the truncated algebra because the
/// zero-value part of a is nilpotent beyond the stored order.
inline Jet compose(const Jet& a, const std::array<double, 4>& fc) {
  Jet w = a;
  w.coeff(0) = 0.0;
  int n = a.order();
  Jet r = Jet::constant(a.nvars(), a.order(), fc[static_cast<std::size_t>(n)]);
  for (int k = n - 1; k >= 0; --k) r = r * w + fc[static_cast<std::size_t>(k)];
  return r;
}

}  // namespace jet_detail

inline Jet sin(const Jet& a) {
  double v = a.value();
  return jet_detail::compose(
      a, {std::sin(v), std::cos(v), -std::sin(v) / 2.0, -std::cos(v) / 6.0});
}

inline Jet cos(const Jet& a) {
  double v = a.value();
  return jet_detail::compose(
      a, {std::cos(v), -std::sin(v), -std::cos(v) / 2.0, std::sin(v) / 6.0});
}

inline Jet sinh(const Jet& a) {
  double v = a.value();
  return jet_detail::compose(
      a, {std::sinh(v), std::cosh(v), std::sinh(v) / 2.0, std::cosh(v) / 6.0});
}

inline Jet cosh(const Jet& a) {
  double v = a.value();
  return jet_detail::compose(
      a, {std::cosh(v), std::sinh(v), std::cosh(v) / 2.0, std::sinh(v) / 6.0});
}

inline Jet sqrt(const Jet& a) {
  double v = a.value();
  if (!(v > 0.0)) fail(errc::domain_error, "sqrt of a nonpositive jet value");
  double s = std::sqrt(v);
  return jet_detail::compose(
      a, {s, 0.5 / s, -1.0 / (8.0 * v * s), 1.0 / (16.0 * v * v * s)});
}

inline Jet recip(const Jet& a) {
  double v = a.value();
  if (std::abs(v) < 1e-300) fail(errc::division_by_zero_value, "reciprocal of a zero jet value");
  double iv = 1.0 / v;
  return jet_detail::compose(a, {iv, -iv * iv, iv * iv * iv, -iv * iv * iv * iv});
}

/// Integer power by the derivative rule; negative exponents require a
/// nonzero value part.
inline Jet pow_int(const Jet& a, int n) {
  double v = a.value();
  if (n < 0 && std::abs(v) < 1e-300)
    fail(errc::division_by_zero_value, "negative power of a zero jet value");
  std::array<double, 4> fc{};
  double coef = 1.0;
  for (int k = 0; k <= 3; ++k) {
    int e = n - k;
    double p;
    if (e >= 0) {
      p = 1.0;
      for (int i = 0; i < e; ++i) p *= v;
    } else {
      p = 1.0;
      for (int i = 0; i < -e; ++i) p *= v;
      p = 1.0 / p;
    }
    fc[static_cast<std::size_t>(k)] = coef * p / jet_detail::kFactorial[k];
    coef *= static_cast<double>(n - k);
    if (coef == 0.0 && k < 3) {
      // remaining derivatives vanish identically
      for (int r = k + 1; r <= 3; ++r) fc[static_cast<std::size_t>(r)] = 0.0;
      break;
    }
  }
  return jet_detail::compose(a, fc);
}

inline Jet operator/(const Jet& a, const Jet& b) {
  if (std::abs(b.value()) < 1e-300)
    fail(errc::division_by_zero_value, "jet division by zero value part");
  return a * recip(b);
}

inline Jet operator/(double s, const Jet& a) { return recip(a) * s; }

}  // namespace biconserv
