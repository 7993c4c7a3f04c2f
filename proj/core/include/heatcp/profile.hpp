#ifndef HEATCP_PROFILE_HPP
#define HEATCP_PROFILE_HPP

namespace heatcp {

// Piecewise-constant diffusivity on (0,1): theta_minus left of the change
// point tau, theta_plus from tau on.  Both values live in the admissible
// band [theta_lo, theta_hi].  Immutable after construction.
class DiffusivityProfile {
 public:
  DiffusivityProfile(double theta_minus, double theta_plus, double tau,
                     double theta_lo, double theta_hi);

  double theta_minus() const { return theta_minus_; }
  double theta_plus() const { return theta_plus_; }
  double tau() const { return tau_; }
  double theta_lo() const { return theta_lo_; }
  double theta_hi() const { return theta_hi_; }

  // Jump height; may be zero or negative.
  double eta() const { return theta_plus_ - theta_minus_; }

  bool constant() const { return theta_minus_ == theta_plus_; }

  // theta(x) with the left-open convention: theta_minus on (0,tau),
  // theta_plus on [tau,1).
  double value(double x) const { return x < tau_ ? theta_minus_ : theta_plus_; }

 private:
  double theta_minus_;
  double theta_plus_;
  double tau_;
  double theta_lo_;
  double theta_hi_;
};

}  // namespace heatcp

#endif
