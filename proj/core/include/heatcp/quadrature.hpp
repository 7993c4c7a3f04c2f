#ifndef HEATCP_QUADRATURE_HPP
#define HEATCP_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace heatcp {

// Gauss-Legendre nodes and weights on [-1,1], computed once per order and
// cached.  Orders up to 64 are supported.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussRule& gauss_legendre(int order);

// Integrates f over [a,b] with `panels` equal Gauss-Legendre panels.
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels, int order = 12);

// Composite Simpson on a uniform grid with an even number of intervals.
double simpson(const std::function<double(double)>& f, double a, double b,
               int intervals);

}  // namespace heatcp

#endif
