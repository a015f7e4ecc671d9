#pragma once

// Numerical quadrature used as an independent oracle for exact Haar integrals.

#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

namespace equispectra::testing {

/// Gauss-Legendre nodes and weights on [a, b], by Newton iteration on P_n.
inline std::vector<std::pair<double, double>> gauss_legendre(int n, double a, double b) {
  std::vector<std::pair<double, double>> out;
  for (int i = 1; i <= n; ++i) {
    double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double w = 2 / ((1 - x * x) * dp * dp);
    out.emplace_back(0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w);
  }
  return out;
}

/// Average of f(cos t, sin t) over the circle by the composite trapezoid rule.
inline double circle_average(const std::function<double(double, double)>& f, int nodes = 256) {
  double sum = 0;
  for (int k = 0; k < nodes; ++k) {
    double t = 2 * std::numbers::pi * k / nodes;
    sum += f(std::cos(t), std::sin(t));
  }
  return sum / nodes;
}

/// Average over the unit 3-sphere in Hopf coordinates
/// (cos e cos a, cos e sin a, sin e cos b, sin e sin b), density sin e cos e.
inline double sphere3_average(const std::function<double(double, double, double, double)>& f, int nodes = 48) {
  auto eta = gauss_legendre(nodes, 0, std::numbers::pi / 2);
  double sum = 0, total = 0;
  for (auto [e, we] : eta) {
    const double w = we * std::sin(e) * std::cos(e);
    for (int i = 0; i < nodes; ++i) {
      const double a = 2 * std::numbers::pi * i / nodes;
      for (int j = 0; j < nodes; ++j) {
        const double b = 2 * std::numbers::pi * j / nodes;
        sum += w * f(std::cos(e) * std::cos(a), std::cos(e) * std::sin(a), std::sin(e) * std::cos(b),
                     std::sin(e) * std::sin(b));
        total += w;
      }
    }
  }
  return sum / total;
}

}  // namespace equispectra::testing
