#pragma once

namespace lciso::special {

inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
inline constexpr double kSqrt2 = 1.41421356237309504880168872421;

/// Standard normal density.
double normal_pdf(double x);

/// Standard normal CDF, accurate in both tails (erfc based).
double normal_cdf(double x);

/// Inverse of the standard normal CDF (Wichura, AS 241, PPND16).
/// Relative accuracy about 1e-16 on (0, 1); returns -inf / +inf at 0 / 1.
double normal_quantile(double p);

}  // namespace lciso::special
