#pragma once

// Parametric signal models s_n(theta) with analytic Jacobians.  Samples are
// indexed n = 1..N throughout (an off-by-one here changes every bound).

#include <functional>
#include <string>
#include <vector>

namespace qcrb {

struct ParamVector {
    std::vector<double> values;
    std::vector<std::string> names;

    int size() const { return static_cast<int>(values.size()); }
};

// Validated constructor (equal lengths, p >= 1).
ParamVector make_params(std::vector<double> values, std::vector<std::string> names);

// Canonical parameter vector [a1, a2, w1, w2, phi1, phi2] for the
// two-sinusoid model s_n = a1*sin(w1*n + phi1) + a2*sin(w2*n + phi2).
ParamVector two_sinusoid_params(double a1, double a2, double w1, double w2,
                                double phi1, double phi2);

enum class SignalKind { TwoSinusoid, SingleValuePassthrough, Custom };

class SignalModel {
  public:
    using EvalFn = std::function<double(const ParamVector&, int)>;
    using JacobianFn = std::function<std::vector<double>(const ParamVector&, int)>;

    static SignalModel two_sinusoid(int n_samples);

    // s_n(theta) = theta[0] for every n; handy 1-parameter test model.
    static SignalModel passthrough(int n_samples);

    static SignalModel custom(int n_samples, int param_count, EvalFn eval,
                              JacobianFn jacobian, std::string name = "custom");

    SignalKind kind() const { return kind_; }
    int sample_count() const { return n_samples_; }
    int param_count() const { return param_count_; }
    const std::string& name() const { return name_; }

    // n is 1-based; throws std::out_of_range for n outside [1, N] and
    // std::invalid_argument on a parameter-count mismatch.
    double eval(const ParamVector& theta, int n) const;
    std::vector<double> jacobian_row(const ParamVector& theta, int n) const;

    // Same signal with values and Jacobian rows multiplied by `factor`
    // (used to renormalize measurements to unit noise deviation).
    SignalModel scaled(double factor) const;

  private:
    SignalModel(SignalKind kind, int n_samples, int param_count, EvalFn eval,
                JacobianFn jacobian, std::string name);
    void check_args(const ParamVector& theta, int n) const;

    SignalKind kind_;
    int n_samples_;
    int param_count_;
    EvalFn eval_;
    JacobianFn jacobian_;
    std::string name_;
};

}  // namespace qcrb
