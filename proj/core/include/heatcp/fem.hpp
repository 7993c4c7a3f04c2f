#ifndef HEATCP_FEM_HPP
#define HEATCP_FEM_HPP

#include <vector>

#include "heatcp/profile.hpp"

namespace heatcp {

// Independent matrix discretization of the Dirichlet form
// E_theta(u,v) = int theta u' v'.  Piecewise-linear elements on a grid
// with a node placed at tau, so the discontinuous coefficient is exact
// per cell.  Generalized eigenpairs (stiffness vs consistent mass) are
// located by Sturm-count bisection; eigenvectors by inverse iteration.
class FemDecomposition {
 public:
  FemDecomposition(DiffusivityProfile profile, std::vector<double> nodes,
                   std::vector<double> eigenvalues,
                   std::vector<std::vector<double>> vectors)
      : profile_(profile),
        nodes_(std::move(nodes)),
        eigenvalues_(std::move(eigenvalues)),
        vectors_(std::move(vectors)) {}

  const DiffusivityProfile& profile() const { return profile_; }
  int mode_count() const { return static_cast<int>(eigenvalues_.size()); }

  double eigenvalue(int k) const;  // 1-based

  // Piecewise-linear interpolation of the mass-normalized eigenvector.
  // Only available when the decomposition was built with vectors.
  double evaluate(int k, double x) const;

 private:
  DiffusivityProfile profile_;
  std::vector<double> nodes_;
  std::vector<double> eigenvalues_;
  std::vector<std::vector<double>> vectors_;  // interior node values
};

FemDecomposition fem_oracle(const DiffusivityProfile& profile, int cells,
                            int mode_count, bool with_vectors = false);

}  // namespace heatcp

#endif
