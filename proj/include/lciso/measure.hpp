#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace lciso {

enum class MeasureKind { Gaussian, Logistic, Laplace, CustomProfile };

std::string to_string(MeasureKind kind);

/// Isoperimetric profile J on [0, 1]; only values on (0, 1/2] are consulted,
/// the rest is obtained by symmetry.
using ProfileFunction = std::function<double(double)>;

struct MeasureOptions {
  double prob_tol = 1e-12;      // probability-space tolerance of quantile inversion
  double quantile_eps = 1e-9;   // tail band refused by quadrature-based quantiles
};

/// A symmetric log-concave probability measure on the real line.
///
/// Built-in families evaluate closed forms; a custom measure is described only
/// by its isoperimetric profile J and reconstructs its quantile function from
///
///     F^{-1}(p) = integral_{1/2}^{p} dt / J(t).
///
/// Instances are immutable and cheap to copy; every member is thread-safe.
class MeasureModel {
 public:
  static MeasureModel gaussian(MeasureOptions options = {});
  static MeasureModel logistic(double scale, MeasureOptions options = {});
  static MeasureModel laplace(double rate, MeasureOptions options = {});
  /// Throws InvalidMeasure if J is not positive on (0,1) or not symmetric
  /// about 1/2 (checked on a grid). Breakpoints are abscissae where J has
  /// kinks; quadrature panels are split there.
  static MeasureModel custom(ProfileFunction profile, MeasureOptions options = {},
                             std::string label = "custom", std::vector<double> breakpoints = {});

  MeasureKind kind() const { return kind_; }
  /// Logistic scale s, Laplace rate c; 0 for the Gaussian and custom profiles.
  double parameter() const { return parameter_; }
  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }
  double prob_tol() const { return options_.prob_tol; }
  double quantile_eps() const { return options_.quantile_eps; }
  const std::string& name() const { return name_; }

  /// f(x); zero outside [a_f, b_f] and at +-inf. At a finite support endpoint
  /// the one-sided limit is returned.
  double density(double x) const;
  double cdf(double x) const;
  /// F^{-1}(p). p = 0 and p = 1 map to the support endpoints. Custom profiles
  /// throw QuantileOutOfBand for p in (0, eps) or (1 - eps, 1).
  double quantile(double p) const;
  /// J(r) = f(F^{-1}(r)), with J(0) = J(1) = 0.
  double profile(double r) const;

 private:
  struct CustomTable;

  MeasureModel() = default;
  double builtin_cdf(double x) const;
  double builtin_density(double x) const;
  double builtin_quantile_lower(double p) const;
  double custom_quantile_lower(double p) const;
  double custom_cdf_lower(double x) const;

  MeasureKind kind_ = MeasureKind::Gaussian;
  double parameter_ = 0.0;
  double support_lo_ = 0.0;
  double support_hi_ = 0.0;
  MeasureOptions options_;
  std::string name_;
  std::shared_ptr<const CustomTable> custom_;
};

struct ConcavityReport {
  bool concave = true;
  double worst_violation = 0.0;  // max over tested pairs of (J(u)+J(v))/2 - J((u+v)/2)
  double worst_u = 0.0;
  double worst_v = 0.0;
};

/// Midpoint concavity of J on grid_n uniform interior points, for all pairs at
/// most grid_n/4 steps apart. Requires grid_n >= 3.
ConcavityReport check_profile_concavity(const MeasureModel& m, int grid_n,
                                        double tol = 1e-12);

/// Hypothesis (H) near the origin: t -> J(t)/t strictly decreasing on a
/// geometric grid of (0, eps], with step tolerance 1e-10. Requires 0 < eps <= 1/4.
bool satisfies_H(const MeasureModel& m, double eps);

}  // namespace lciso
