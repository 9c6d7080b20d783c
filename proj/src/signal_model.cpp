#include "qcrb/signal_model.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace qcrb {

ParamVector make_params(std::vector<double> values, std::vector<std::string> names) {
    if (values.empty() || values.size() != names.size())
        throw std::invalid_argument("ParamVector: values and names must have equal length >= 1");
    return ParamVector{std::move(values), std::move(names)};
}

ParamVector two_sinusoid_params(double a1, double a2, double w1, double w2,
                                double phi1, double phi2) {
    return make_params({a1, a2, w1, w2, phi1, phi2},
                       {"a1", "a2", "w1", "w2", "phi1", "phi2"});
}

SignalModel::SignalModel(SignalKind kind, int n_samples, int param_count,
                         EvalFn eval, JacobianFn jacobian, std::string name)
    : kind_(kind),
      n_samples_(n_samples),
      param_count_(param_count),
      eval_(std::move(eval)),
      jacobian_(std::move(jacobian)),
      name_(std::move(name)) {
    if (n_samples_ < 1) throw std::invalid_argument("SignalModel: need N >= 1");
    if (param_count_ < 1) throw std::invalid_argument("SignalModel: need p >= 1");
}

SignalModel SignalModel::two_sinusoid(int n_samples) {
    auto eval = [](const ParamVector& th, int n) {
        const double* v = th.values.data();
        return v[0] * std::sin(v[2] * n + v[4]) + v[1] * std::sin(v[3] * n + v[5]);
    };
    auto jac = [](const ParamVector& th, int n) {
        const double* v = th.values.data();
        const double s1 = std::sin(v[2] * n + v[4]), c1 = std::cos(v[2] * n + v[4]);
        const double s2 = std::sin(v[3] * n + v[5]), c2 = std::cos(v[3] * n + v[5]);
        return std::vector<double>{s1, s2, v[0] * n * c1, v[1] * n * c2,
                                   v[0] * c1, v[1] * c2};
    };
    return SignalModel(SignalKind::TwoSinusoid, n_samples, 6, eval, jac, "two-sinusoid");
}

SignalModel SignalModel::passthrough(int n_samples) {
    auto eval = [](const ParamVector& th, int) { return th.values[0]; };
    auto jac = [](const ParamVector&, int) { return std::vector<double>{1.0}; };
    return SignalModel(SignalKind::SingleValuePassthrough, n_samples, 1, eval, jac,
                       "passthrough");
}

SignalModel SignalModel::custom(int n_samples, int param_count, EvalFn eval,
                                JacobianFn jacobian, std::string name) {
    if (!eval || !jacobian)
        throw std::invalid_argument("SignalModel::custom: missing callable");
    return SignalModel(SignalKind::Custom, n_samples, param_count, std::move(eval),
                       std::move(jacobian), std::move(name));
}

void SignalModel::check_args(const ParamVector& theta, int n) const {
    if (theta.size() != param_count_)
        throw std::invalid_argument("SignalModel: parameter count mismatch");
    if (n < 1 || n > n_samples_)
        throw std::out_of_range("SignalModel: sample index out of range");
}

double SignalModel::eval(const ParamVector& theta, int n) const {
    check_args(theta, n);
    return eval_(theta, n);
}

std::vector<double> SignalModel::jacobian_row(const ParamVector& theta, int n) const {
    check_args(theta, n);
    std::vector<double> row = jacobian_(theta, n);
    if (static_cast<int>(row.size()) != param_count_)
        throw std::invalid_argument("SignalModel: jacobian row has wrong length");
    return row;
}

SignalModel SignalModel::scaled(double factor) const {
    if (!std::isfinite(factor)) throw std::invalid_argument("scaled: factor must be finite");
    SignalModel base = *this;
    auto eval = [base, factor](const ParamVector& th, int n) {
        return factor * base.eval(th, n);
    };
    auto jac = [base, factor](const ParamVector& th, int n) {
        std::vector<double> row = base.jacobian_row(th, n);
        for (double& x : row) x *= factor;
        return row;
    };
    return SignalModel(SignalKind::Custom, n_samples_, param_count_, std::move(eval),
                       std::move(jac), name_ + "-scaled");
}

}  // namespace qcrb
