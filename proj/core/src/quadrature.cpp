#include "heatcp/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace heatcp {

namespace {

// Newton iteration on the Legendre polynomial; standard construction.
GaussRule build_rule(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1 || order > 64) {
    throw std::invalid_argument("gauss_legendre: order out of range");
  }
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) {
    it = cache.emplace(order, build_rule(order)).first;
  }
  return it->second;
}

double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("integrate_panels: panels < 1");
  const GaussRule& rule = gauss_legendre(order);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    double acc = 0.0;
    for (int q = 0; q < order; ++q) {
      acc += rule.weights[q] * f(mid + 0.5 * h * rule.nodes[q]);
    }
    total += acc * 0.5 * h;
  }
  return total;
}

double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals) {
  if (intervals < 2 || intervals % 2 != 0) {
    throw std::invalid_argument("simpson: need an even interval count");
  }
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int j = 1; j < intervals; ++j) {
    acc += f(a + j * h) * (j % 2 == 1 ? 4.0 : 2.0);
  }
  return acc * h / 3.0;
}

}  // namespace heatcp
