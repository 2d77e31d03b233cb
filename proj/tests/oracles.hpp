#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's numerical routines beyond constructing inputs.

#include "sqlr/sieve_network.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace sqlr::oracle {

// Adaptive Simpson on [a, b] to absolute tolerance `tol`.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol,
                      int depth = 60) {
  struct Rec {
    static double run(const std::function<double(double)>& f, double a, double b, double fa,
                      double fm, double fb, double whole, double tol, int depth) {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m);
      const double rm = 0.5 * (m + b);
      const double flm = f(lm);
      const double frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double diff = left + right - whole;
      if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
      return run(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Rec::run(f, a, b, fa, fm, fb, whole, tol, depth);
}

// P(chi2_1 > x) = P(|Z| > sqrt(x)) = 2 * integral_{sqrt x}^{inf} phi(u) du.
inline double chisq1_sf_quadrature(double x) {
  const double phi_norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  auto density = [phi_norm](double u) { return 2.0 * phi_norm * std::exp(-0.5 * u * u); };
  const double lo = std::sqrt(x);
  // Tail mass beyond lo + 40 is below 1e-300.
  double total = 0.0;
  for (double a = lo; a < lo + 40.0; a += 1.0) total += simpson(density, a, a + 1.0, 1e-15);
  return total;
}

// F(d1, d2) density; the normalizer uses std::lgamma.
inline double f_density(double t, double d1, double d2) {
  if (t <= 0.0) return 0.0;
  const double log_norm = std::lgamma(0.5 * (d1 + d2)) - std::lgamma(0.5 * d1) -
                          std::lgamma(0.5 * d2) + 0.5 * d1 * std::log(d1 / d2);
  return std::exp(log_norm + (0.5 * d1 - 1.0) * std::log(t) -
                  0.5 * (d1 + d2) * std::log1p(d1 * t / d2));
}

// P(F > x) by quadrature of the density over [x, inf) with t = x + s/(1-s).
inline double f_sf_quadrature(double x, double d1, double d2) {
  auto integrand = [=](double s) {
    if (s >= 1.0) return 0.0;
    const double one_minus = 1.0 - s;
    const double t = x + s / one_minus;
    return f_density(t, d1, d2) / (one_minus * one_minus);
  };
  if (x == 0.0 && d1 < 2.0) {
    // Integrable t^(-1/2) spike at 0: substitute t = u^2 on [0, 1].
    auto near = [=](double u) { return 2.0 * u * f_density(u * u, d1, d2); };
    double head = 0.0;
    for (int k = 0; k < 64; ++k) head += simpson(near, k / 64.0, (k + 1) / 64.0, 1e-15);
    return head + f_sf_quadrature(1.0, d1, d2);
  }
  double total = 0.0;
  const int pieces = 512;
  for (int k = 0; k < pieces; ++k) {
    total += simpson(integrand, static_cast<double>(k) / pieces,
                     static_cast<double>(k + 1) / pieces, 1e-15);
  }
  return total;
}

// Central differences of Q_n with respect to every weight, flattened in the
// order alpha0, alphas, gammas (row-major), gamma0s.
inline Vector finite_difference_gradient(const SieveNetwork& net, const Dataset& data,
                                         double h = 1e-5) {
  auto loss = [&](const SieveNetwork& w) {
    double s = 0.0;
    for (Index i = 0; i < data.n(); ++i) {
      double f = w.alpha0;
      for (Index j = 0; j < w.width(); ++j) {
        double z = w.gamma0s[j];
        for (Index k = 0; k < w.input_dim(); ++k) z += w.gammas(j, k) * data.x()(i, k);
        f += w.alphas[j] / (1.0 + std::exp(-z));
      }
      s += (data.y()[i] - f) * (data.y()[i] - f);
    }
    return s / static_cast<double>(data.n());
  };
  const Index r = net.width();
  const Index d = net.input_dim();
  Vector g(1 + r + r * d + r);
  Index idx = 0;
  auto probe = [&](auto&& get) {
    SieveNetwork plus = net;
    SieveNetwork minus = net;
    get(plus) += h;
    get(minus) -= h;
    g[idx++] = (loss(plus) - loss(minus)) / (2.0 * h);
  };
  probe([](SieveNetwork& w) -> double& { return w.alpha0; });
  for (Index j = 0; j < r; ++j) probe([j](SieveNetwork& w) -> double& { return w.alphas[j]; });
  for (Index j = 0; j < r; ++j) {
    for (Index k = 0; k < d; ++k) {
      probe([j, k](SieveNetwork& w) -> double& { return w.gammas(j, k); });
    }
  }
  for (Index j = 0; j < r; ++j) probe([j](SieveNetwork& w) -> double& { return w.gamma0s[j]; });
  return g;
}

inline Vector flatten(const Gradient& g) {
  const Index r = g.d_alphas.size();
  const Index d = g.d_gammas.cols();
  Vector v(1 + r + r * d + r);
  Index idx = 0;
  v[idx++] = g.d_alpha0;
  for (Index j = 0; j < r; ++j) v[idx++] = g.d_alphas[j];
  for (Index j = 0; j < r; ++j) {
    for (Index k = 0; k < d; ++k) v[idx++] = g.d_gammas(j, k);
  }
  for (Index j = 0; j < r; ++j) v[idx++] = g.d_gamma0s[j];
  return v;
}

// Nearest point of the l1 ball of `radius` to (vx, vy) among a uniform grid
// of `points` x `points` over [-radius, radius]^2. For each grid column the
// best feasible grid row is one of the two rows bracketing clamp(vy), so the
// search is exact over the grid in O(points).
inline std::pair<double, double> grid_project_2d(double vx, double vy, double radius,
                                                 int points = 2001) {
  double best = std::numeric_limits<double>::infinity();
  std::pair<double, double> arg{0.0, 0.0};
  const double step = 2.0 * radius / (points - 1);
  auto feasible = [&](double px, double py) {
    return std::abs(px) + std::abs(py) <= radius * (1.0 + 1e-12);
  };
  for (int a = 0; a < points; ++a) {
    const double px = -radius + a * step;
    const double rest = radius - std::abs(px);
    const double target = std::clamp(vy, -rest, rest);
    const double pos = (target + radius) / step;
    for (double b : {std::floor(pos) - 1, std::floor(pos), std::ceil(pos), std::ceil(pos) + 1}) {
      if (b < 0 || b > points - 1) continue;
      const double py = -radius + b * step;
      if (!feasible(px, py)) continue;
      const double dist = (px - vx) * (px - vx) + (py - vy) * (py - vy);
      if (dist < best) {
        best = dist;
        arg = {px, py};
      }
    }
  }
  return arg;
}

}  // namespace sqlr::oracle
