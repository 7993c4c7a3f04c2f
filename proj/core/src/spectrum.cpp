#include "heatcp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "heatcp/errors.hpp"

namespace heatcp {

namespace {

constexpr double kPi = std::numbers::pi;

// Prufer-type phase at x=1 as a function of lambda.  Within each constant
// piece the phase advances linearly with slope sqrt(lambda/theta); crossing
// tau maps the fractional phase r in [0,pi) through
//   r' = atan(gamma tan r),  gamma = sqrt(theta_plus/theta_minus),
// continued to preserve the integer multiple of pi.  The result is strictly
// increasing and continuous in lambda, and lambda_k solves phase = k*pi.
double phase_at_one(double lambda, const DiffusivityProfile& p) {
  const double omega_minus = std::sqrt(lambda / p.theta_minus());
  const double omega_plus = std::sqrt(lambda / p.theta_plus());
  const double phi_left = omega_minus * p.tau();

  const double gamma = std::sqrt(p.theta_plus() / p.theta_minus());
  const double m = std::floor(phi_left / kPi);
  const double r = phi_left - m * kPi;
  double r_mapped;
  if (r < 0.5 * kPi) {
    r_mapped = std::atan(gamma * std::tan(r));
  } else if (r > 0.5 * kPi) {
    r_mapped = kPi + std::atan(gamma * std::tan(r));
  } else {
    r_mapped = 0.5 * kPi;
  }
  return m * kPi + r_mapped + omega_plus * (1.0 - p.tau());
}

EigenMode build_mode(double lambda, const DiffusivityProfile& p) {
  EigenMode mode;
  mode.lambda = lambda;
  mode.omega_minus = std::sqrt(lambda / p.theta_minus());
  mode.omega_plus = std::sqrt(lambda / p.theta_plus());

  const double sl = std::sin(mode.omega_minus * p.tau());
  const double sr = std::sin(mode.omega_plus * (1.0 - p.tau()));
  const double cl = std::cos(mode.omega_minus * p.tau());
  const double cr = std::cos(mode.omega_plus * (1.0 - p.tau()));

  // Ratio B/A from whichever matching equation is better conditioned:
  // value continuity A*sl = B*sr, or flux continuity
  // theta_-*A*om*cl = -theta_+*B*op*cr.  At an eigenvalue a small |sr|
  // forces a small |sl| and |cr| near 1, so the flux equation takes over.
  const double a = 1.0;
  double b;
  const double flux_l = p.theta_minus() * mode.omega_minus * cl;
  const double flux_r = p.theta_plus() * mode.omega_plus * cr;
  if (std::abs(sr) > 0.1) {
    b = a * sl / sr;
  } else {
    b = -a * flux_l / flux_r;
  }

  // Closed-form piecewise norm: int_0^t sin^2(w x) dx = t/2 - sin(2wt)/(4w).
  const double tl = p.tau();
  const double tr = 1.0 - p.tau();
  const double il =
      0.5 * tl - std::sin(2.0 * mode.omega_minus * tl) / (4.0 * mode.omega_minus);
  const double ir =
      0.5 * tr - std::sin(2.0 * mode.omega_plus * tr) / (4.0 * mode.omega_plus);
  const double norm = std::sqrt(a * a * il + b * b * ir);
  mode.amp_left = a / norm;
  mode.amp_right = b / norm;
  if (mode.amp_left < 0.0) {  // sign convention e'(0) > 0
    mode.amp_left = -mode.amp_left;
    mode.amp_right = -mode.amp_right;
  }
  return mode;
}

}  // namespace

double characteristic_value(double lambda, const DiffusivityProfile& p) {
  const double omega_minus = std::sqrt(lambda / p.theta_minus());
  const double omega_plus = std::sqrt(lambda / p.theta_plus());
  return p.theta_minus() * omega_minus * std::cos(omega_minus * p.tau()) *
             std::sin(omega_plus * (1.0 - p.tau())) +
         p.theta_plus() * omega_plus * std::cos(omega_plus * (1.0 - p.tau())) *
             std::sin(omega_minus * p.tau());
}

SpectralDecomposition decompose(const DiffusivityProfile& profile,
                                int mode_count, double tol) {
  if (mode_count < 1) throw std::invalid_argument("decompose: mode_count < 1");
  if (!(tol > 0.0)) throw std::invalid_argument("decompose: tol <= 0");

  std::vector<EigenMode> modes;
  modes.reserve(mode_count);
  for (int k = 1; k <= mode_count; ++k) {
    // Operator comparison brackets: theta_lo pi^2 k^2 <= lambda_k <= theta_hi pi^2 k^2.
    double lo = 0.999 * profile.theta_lo() * kPi * kPi * k * k;
    double hi = 1.001 * profile.theta_hi() * kPi * kPi * k * k;
    const double target = k * kPi;
    if (phase_at_one(lo, profile) > target ||
        phase_at_one(hi, profile) < target) {
      throw BracketingFailure("decompose: eigenvalue " + std::to_string(k) +
                              " escaped its comparison bracket");
    }
    while ((hi - lo) > tol * hi) {
      const double mid = 0.5 * (lo + hi);
      if (phase_at_one(mid, profile) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    modes.push_back(build_mode(0.5 * (lo + hi), profile));
  }
  return SpectralDecomposition(profile, std::move(modes));
}

double SpectralDecomposition::eigenvalue(int k) const {
  return mode(k).lambda;
}

const EigenMode& SpectralDecomposition::mode(int k) const {
  if (k < 1 || k > mode_count()) {
    throw IndexOutOfRange("mode index " + std::to_string(k) +
                          " outside 1.." + std::to_string(mode_count()));
  }
  return modes_[static_cast<std::size_t>(k - 1)];
}

double SpectralDecomposition::evaluate(int k, double x) const {
  const EigenMode& m = mode(k);
  if (x < profile_.tau()) {
    return m.amp_left * std::sin(m.omega_minus * x);
  }
  return m.amp_right * std::sin(m.omega_plus * (1.0 - x));
}

double SpectralDecomposition::evaluate_derivative(int k, double x) const {
  const EigenMode& m = mode(k);
  if (x < profile_.tau()) {
    return m.amp_left * m.omega_minus * std::cos(m.omega_minus * x);
  }
  return -m.amp_right * m.omega_plus * std::cos(m.omega_plus * (1.0 - x));
}

double evaluate_eigenfunction(const SpectralDecomposition& decomp, int k,
                              double x) {
  return decomp.evaluate(k, x);
}

double inverse_apply_second_derivative(const DiffusivityProfile& p,
                                       const std::function<double(double)>& f,
                                       double x) {
  const double jump = (p.theta_plus() - p.theta_minus()) /
                      (p.tau() * p.theta_plus() + (1.0 - p.tau()) * p.theta_minus());
  const double f_tau = f(p.tau());
  if (x < p.tau()) {
    return (f(x) - jump * f_tau * x) / p.theta_minus();
  }
  return (f(x) + jump * f_tau * (1.0 - x)) / p.theta_plus();
}

}  // namespace heatcp
