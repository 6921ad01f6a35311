#pragma once

namespace fracvar {

/// Gamma function for strictly positive arguments.
/// Throws std::domain_error for z <= 0 (or non-finite z); negative arguments
/// and the reflection formula are deliberately unsupported.
double gamma(double z);

/// log(Gamma(z)) for z > 0. Same domain contract as gamma().
double ln_gamma(double z);

/// 1/Gamma(z) extended by continuity with 0 at the poles z = 0, -1, -2, ...
/// Only non-negative z (within `pole_tol` of a pole, or z > 0) are accepted;
/// the fractional power rule never needs anything else.
double reciprocal_gamma(double z, double pole_tol = 1e-12);

}  // namespace fracvar
