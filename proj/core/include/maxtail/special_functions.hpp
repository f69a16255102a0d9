#pragma once

namespace maxtail {

// Gamma function for real x.
// Throws std::domain_error at the poles (x = 0, -1, -2, ...) and
// std::overflow_error for x > 171.6 where the result exceeds double range.
// Relative error is below 1e-13 on [1e-3, 170].
double gamma(double x);

// Upper incomplete gamma Gamma(s, x) = integral_x^inf t^(s-1) e^(-t) dt,
// unnormalised.  Requires s > 0 and x >= 0; underflows to 0 for large x.
// Relative error is below 1e-12 over the supported range.
double upper_incomplete_gamma(double s, double x);

// Complementary error function, accurate to 1e-13 relative error over the
// range where the result is representable.  Underflows to 0 near x = 26.5.
double erfc(double x);

}  // namespace maxtail
