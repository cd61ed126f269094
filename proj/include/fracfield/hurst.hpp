#pragma once

namespace fracfield {

/// The Hurst index H in (1/2, 1) together with every derived constant the
/// fractional-in-time machinery needs:
///   alpha_h  = H(2H-1)                      (kernel constant of |u-v|^{2H-2})
///   c_h      = Gamma(2H+1) sin(pi H)/(2 pi) (spectral weight constant)
///   c_star_h = sqrt(alpha_h / Beta(H-1/2, 2-2H))
///   d_h      = c_star_h^2 Gamma(H-1/2)^2    (transfer-isometry constant)
/// d_h == 2 pi c_h holds as a cross-check identity.
struct HurstModel {
  double h = 0.0;
  double alpha_h = 0.0;
  double c_h = 0.0;
  double c_star_h = 0.0;
  double d_h = 0.0;
};

/// Builds the constant set; throws std::domain_error unless 1/2 < H < 1.
HurstModel hurst_constants(double h);

/// fBm covariance R_H(t, s) = (t^{2H} + s^{2H} - |t-s|^{2H}) / 2, t, s >= 0.
double covariance_rh(double t, double s, const HurstModel& model);

}  // namespace fracfield
