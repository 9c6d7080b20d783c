#pragma once

// Noise distribution abstraction: cdf, pdf, pdf derivative, quantile, and the
// unquantized per-sample information constant rho0 = integral of
// [pdf'(x)]^2 / pdf(x).  Models are zero-mean and immutable; every method is
// safe to call concurrently.

#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace qcrb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Scalar standard-normal helpers.  The cdf uses the complementary error
// function so both tails keep full relative accuracy; log_cdf switches to an
// asymptotic Mills-ratio expansion once erfc underflows (x < -36).
double normal_cdf(double x);
double normal_sf(double x);       // P(X > x), no cancellation in the right tail
double normal_log_cdf(double x);  // accurate down to x ~ -1e7 and beyond
double normal_pdf(double x);
double normal_pdf_derivative(double x);

enum class NoiseKind { StandardNormal, Laplace, Custom };

class NoiseModel {
  public:
    static NoiseModel standard_normal();

    // Laplace with density exp(-|x|/scale) / (2*scale); variance 2*scale^2.
    // scale = 1/sqrt(2) gives the unit-variance member used throughout.
    static NoiseModel laplace(double scale);
    static NoiseModel laplace_unit_variance();

    // User-supplied distribution.  The callables are validated on a grid at
    // construction: cdf monotone with the correct limits, pdf nonnegative and
    // consistent with d(cdf)/dx away from the declared non-smooth points, and
    // the declared variance consistent with the quadrature second moment.
    static NoiseModel custom(std::function<double(double)> cdf,
                             std::function<double(double)> pdf,
                             std::function<double(double)> pdf_derivative,
                             double variance,
                             std::vector<double> non_smooth_points = {},
                             std::string name = "custom");

    NoiseKind kind() const;
    const std::string& name() const;

    double cdf(double x) const;             // exact 0/1 at -inf/+inf
    double sf(double x) const;              // 1 - cdf, tail-stable
    double log_cdf(double x) const;
    double pdf(double x) const;             // exact 0 at +-inf
    double pdf_derivative(double x) const;  // exact 0 at +-inf
    double variance() const;
    const std::vector<double>& non_smooth_points() const;

    // Inverse cdf by safeguarded Newton/bisection; |cdf(result) - t| <= 1e-12.
    // Throws std::domain_error unless 0 < t < 1.
    double quantile(double t) const;

    // Adaptive quadrature of [pdf'(x)]^2 / pdf(x) over [-40, 40] (relative
    // tolerance 1e-8, kinks split out, tail contribution checked negligible).
    // Cached after the first call.  Throws std::domain_error if the pdf
    // vanishes on an interior interval and std::runtime_error if the
    // quadrature fails to converge.
    double rho0() const;

  private:
    struct Impl;
    struct Rho0Cache;
    NoiseModel(std::shared_ptr<const Impl> impl);
    std::shared_ptr<const Impl> impl_;
    std::shared_ptr<Rho0Cache> rho0_cache_;
};

inline double rho0(const NoiseModel& model) { return model.rho0(); }

}  // namespace qcrb
