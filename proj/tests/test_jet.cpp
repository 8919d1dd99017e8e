#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "biconserv/jet.hpp"

using namespace biconserv;

namespace {

// ---------------------------------------------------------------------------
// Independent oracle: dense trivariate polynomials with exact (small integer)
// coefficient arithmetic. Degree cap 9 is enough for depth-limited products
// of degree-3 leaves.
// ---------------------------------------------------------------------------
struct Poly3 {
  static constexpr int D = 10;
  std::array<double, D * D * D> c{};

  static int id(int i, int j, int k) { return (i * D + j) * D + k; }

  static Poly3 constant(double v) {
    Poly3 p;
    p.c[0] = v;
    return p;
  }
  static Poly3 var(int which) {
    Poly3 p;
    int e[3] = {0, 0, 0};
    e[which] = 1;
    p.c[static_cast<std::size_t>(id(e[0], e[1], e[2]))] = 1.0;
    return p;
  }

  Poly3 operator+(const Poly3& o) const {
    Poly3 r;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] + o.c[i];
    return r;
  }
  Poly3 operator-(const Poly3& o) const {
    Poly3 r;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
  Poly3 operator*(const Poly3& o) const {
    Poly3 r;
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b)
        for (int d = 0; d < D; ++d) {
          double x = c[static_cast<std::size_t>(id(a, b, d))];
          if (x == 0.0) continue;
          for (int a2 = 0; a2 + a < D; ++a2)
            for (int b2 = 0; b2 + b < D; ++b2)
              for (int d2 = 0; d2 + d < D; ++d2) {
                double y = o.c[static_cast<std::size_t>(id(a2, b2, d2))];
                if (y == 0.0) continue;
                r.c[static_cast<std::size_t>(id(a + a2, b + b2, d + d2))] += x * y;
              }
        }
    return r;
  }

  // exact value of the partial derivative d^(e0,e1,e2) at point p
  double deriv_at(int e0, int e1, int e2, const std::array<double, 3>& p) const {
    auto fall = [](int n, int k) {
      double f = 1.0;
      for (int i = 0; i < k; ++i) f *= static_cast<double>(n - i);
      return f;
    };
    double s = 0.0;
    for (int a = e0; a < D; ++a)
      for (int b = e1; b < D; ++b)
        for (int d = e2; d < D; ++d) {
          double x = c[static_cast<std::size_t>(id(a, b, d))];
          if (x == 0.0) continue;
          double term = x * fall(a, e0) * fall(b, e1) * fall(d, e2);
          term *= std::pow(p[0], a - e0) * std::pow(p[1], b - e1) * std::pow(p[2], d - e2);
          s += term;
        }
    return s;
  }
};

Jet jet_var(int nvars, int order, int which, double v) {
  return Jet::variable(nvars, order, which, v);
}

}  // namespace

TEST_CASE("jet arithmetic examples") {
  // (1+s)(1-s) at order 2
  Jet s = jet_var(1, 2, 0, 0.0);
  Jet p = (1.0 + s) * (1.0 - s);
  CHECK(p.value() == 1.0);
  CHECK(p.extract(1) == 0.0);
  CHECK(p.extract(2) / 2.0 == -1.0);  // Taylor coefficient -1

  Jet five = Jet::constant(1, 2, 5.0);
  Jet two = Jet::constant(1, 2, 2.0);
  CHECK((five / two).value() == 2.5);

  // s*t at order 2 with two variables: only the mixed coefficient survives
  Jet s2 = jet_var(2, 2, 0, 0.0);
  Jet t2 = jet_var(2, 2, 1, 0.0);
  Jet st = s2 * t2;
  CHECK(st.value() == 0.0);
  CHECK(st.extract(1, 0) == 0.0);
  CHECK(st.extract(0, 1) == 0.0);
  CHECK(st.extract(1, 1) == 1.0);
  CHECK(st.extract(2, 0) == 0.0);
}

TEST_CASE("jet elementary functions") {
  // sin of the identity jet at 0, order 3: Maclaurin (0, 1, 0, -1/6)
  Jet s = jet_var(1, 3, 0, 0.0);
  Jet sn = sin(s);
  CHECK(sn.value() == 0.0);
  CHECK(sn.extract(1) == 1.0);
  CHECK(sn.extract(2) == 0.0);
  CHECK(sn.extract(3) == -1.0);  // coefficient -1/6 times 3!

  CHECK(cosh(Jet::constant(1, 3, 0.0)).value() == 1.0);

  // sqrt(4 + 4s) = 2 sqrt(1+s) = 2 + s - s^2/4 + ...
  Jet a = Jet::constant(1, 2, 4.0) + jet_var(1, 2, 0, 0.0) * 4.0;
  Jet r = sqrt(a);
  CHECK(r.value() == 2.0);
  CHECK(r.extract(1) == Catch::Approx(1.0).margin(1e-15));
  CHECK(r.extract(2) / 2.0 == Catch::Approx(-0.25).margin(1e-15));

  // extract returns partial derivatives
  Jet x = jet_var(1, 3, 0, 0.0);
  CHECK((x * x).extract(2) == 2.0);
}

TEST_CASE("jet errors") {
  Jet a(2, 2), b(3, 2), c(2, 1);
  REQUIRE_THROWS_AS(a + b, error);
  REQUIRE_THROWS_AS(a * c, error);
  REQUIRE_THROWS_AS(a / Jet::constant(2, 2, 0.0), error);
  REQUIRE_THROWS_AS(sqrt(Jet::constant(1, 2, -1.0)), error);
  REQUIRE_THROWS_AS(recip(Jet::constant(1, 2, 0.0)), error);
  REQUIRE_THROWS_AS(Jet::constant(1, 2, 1.0).extract(3), error);
  try {
    (void)(a + b);
  } catch (const error& e) {
    CHECK(e.code() == errc::shape_mismatch);
  }
}

TEST_CASE("random polynomial expressions match exact expansion") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_int_distribution<int> ptv(-2, 2);

  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 3> p = {static_cast<double>(ptv(rng)),
                               static_cast<double>(ptv(rng)),
                               static_cast<double>(ptv(rng))};
    // random expression tree over {+,-,*} with leaves c, s, t, u
    std::function<std::pair<Jet, Poly3>(int)> gen = [&](int depth) {
      if (depth == 0 || pick(rng) == 0) {
        int which = pick(rng) % 4;
        if (which == 3) {
          double v = coef(rng);
          return std::make_pair(Jet::constant(3, 3, v), Poly3::constant(v));
        }
        return std::make_pair(jet_var(3, 3, which, p[static_cast<std::size_t>(which)]),
                              Poly3::var(which));
      }
      auto [ja, pa] = gen(depth - 1);
      auto [jb, pb] = gen(depth - 1);
      switch (pick(rng) % 3) {
        case 0: return std::make_pair(ja + jb, pa + pb);
        case 1: return std::make_pair(ja - jb, pa - pb);
        default: return std::make_pair(ja * jb, pa * pb);
      }
    };
    auto [j, poly] = gen(3);
    for (int e0 = 0; e0 <= 3; ++e0)
      for (int e1 = 0; e0 + e1 <= 3; ++e1)
        for (int e2 = 0; e0 + e1 + e2 <= 3; ++e2)
          REQUIRE(j.extract(e0, e1, e2) == poly.deriv_at(e0, e1, e2, p));
  }
}

TEST_CASE("sin^2 + cos^2 is the constant 1 jet") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    Jet a = jet_var(3, 3, 0, u(rng)) + jet_var(3, 3, 1, u(rng)) * 0.7 +
            jet_var(3, 3, 2, u(rng)) * (-1.3);
    Jet one = sin(a) * sin(a) + cos(a) * cos(a);
    CHECK(one.value() == Catch::Approx(1.0).margin(1e-14));
    for (int e0 = 0; e0 <= 3; ++e0)
      for (int e1 = 0; e0 + e1 <= 3; ++e1)
        for (int e2 = 0; e0 + e1 + e2 <= 3; ++e2)
          if (e0 + e1 + e2 > 0) CHECK(std::abs(one.extract(e0, e1, e2)) <= 1e-13);
  }
}

namespace {

// a smooth composite expression usable with both doubles and jets
template <class T>
T smooth_expr(const T& s, const T& t, const T& u, const std::array<double, 6>& a) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  T w = s * a[0] + t * a[1] + u * a[2];
  T q = s * t * a[3] + u * a[4] + 2.5;
  return sin(w) * cos(u * a[5] - s) + sqrt(q * q + 1.0) + (1.0 + w * w) * 0.25;
}

}  // namespace

TEST_CASE("jet derivatives of compositions match finite differences") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> c(-0.8, 0.8);
  for (int trial = 0; trial < 40; ++trial) {
    std::array<double, 6> a;
    for (double& x : a) x = c(rng);
    std::array<double, 3> p = {c(rng), c(rng), c(rng)};

    Jet js = Jet::variable(3, 3, 0, p[0]);
    Jet jt = Jet::variable(3, 3, 1, p[1]);
    Jet ju = Jet::variable(3, 3, 2, p[2]);
    Jet f = smooth_expr(js, jt, ju, a);

    auto fd = [&](int var, double h) {
      auto at = [&](double d0, double d1, double d2) {
        return smooth_expr(p[0] + d0, p[1] + d1, p[2] + d2, a);
      };
      double d[3] = {0, 0, 0};
      auto shift = [&](double step) {
        d[0] = d[1] = d[2] = 0;
        d[var] = step;
        return at(d[0], d[1], d[2]);
      };
      // 5-point Richardson central difference
      return (8.0 * (shift(h) - shift(-h)) - (shift(2 * h) - shift(-2 * h))) / (12.0 * h);
    };

    for (int var = 0; var < 3; ++var) {
      int e[3] = {0, 0, 0};
      e[var] = 1;
      double ref = fd(var, 1e-5);
      double got = f.extract(e[0], e[1], e[2]);
      REQUIRE(std::abs(got - ref) <= 1e-7 * (1.0 + std::abs(ref)));
    }

    // one mixed second partial against the 4-point cross difference
    double h = 1e-4;
    auto at2 = [&](double ds, double dt) {
      return smooth_expr(p[0] + ds, p[1] + dt, p[2], a);
    };
    double mixed = (at2(h, h) - at2(h, -h) - at2(-h, h) + at2(-h, -h)) / (4 * h * h);
    REQUIRE(std::abs(f.extract(1, 1, 0) - mixed) <= 1e-5 * (1.0 + std::abs(mixed)));
  }
}

TEST_CASE("jet division and derivative shift are consistent") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    Jet a = Jet::constant(3, 3, u(rng) + 3.0);
    Jet b = Jet::constant(3, 3, u(rng) + 2.0);
    for (int v = 0; v < 3; ++v) {
      a = a + Jet::variable(3, 3, v, 0.0) * u(rng);
      b = b + Jet::variable(3, 3, v, 0.0) * u(rng);
      a = a * (Jet::variable(3, 3, v, 0.0) * u(rng) + 1.0);
    }
    Jet q = a / b;
    Jet back = q * b;
    for (int e0 = 0; e0 <= 3; ++e0)
      for (int e1 = 0; e0 + e1 <= 3; ++e1)
        for (int e2 = 0; e0 + e1 + e2 <= 3; ++e2)
          CHECK(std::abs(back.extract(e0, e1, e2) - a.extract(e0, e1, e2)) <= 1e-12);

    // derivative(): the shifted jet reproduces extract of the parent
    Jet ds = a.derivative(0);
    CHECK(ds.value() == Catch::Approx(a.extract(1, 0, 0)).margin(1e-14));
    CHECK(ds.extract(0, 1, 0) == Catch::Approx(a.extract(1, 1, 0)).margin(1e-13));
    CHECK(ds.extract(1, 1, 0) == Catch::Approx(a.extract(2, 1, 0)).margin(1e-13));
  }
}

TEST_CASE("pow_int against repeated multiplication") {
  Jet x = Jet::variable(2, 3, 0, 1.5) + Jet::variable(2, 3, 1, 0.0) * 0.5;
  Jet p3 = pow_int(x, 3);
  Jet m3 = x * x * x;
  for (int e0 = 0; e0 <= 3; ++e0)
    for (int e1 = 0; e0 + e1 <= 3; ++e1)
      CHECK(p3.extract(e0, e1) == Catch::Approx(m3.extract(e0, e1)).margin(1e-12));

  Jet pm2 = pow_int(x, -2);
  Jet im2 = recip(x * x);
  for (int e0 = 0; e0 <= 3; ++e0)
    for (int e1 = 0; e0 + e1 <= 3; ++e1)
      CHECK(pm2.extract(e0, e1) == Catch::Approx(im2.extract(e0, e1)).margin(1e-12));
}
