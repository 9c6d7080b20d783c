#include "qcrb/fim.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qcrb {

namespace {

constexpr double kTwoPi = 6.28318530717958647693;
constexpr double kTwoOverPi = 0.63661977236758134308;

// Cell probability mass.  When the whole cell sits in the right tail both
// cdf values are ~1, so the survival function keeps the difference accurate.
double interval_mass(const NoiseModel& model, double lo, double hi) {
    const double m = (lo > 0.0) ? model.sf(lo) - model.sf(hi)
                                : model.cdf(hi) - model.cdf(lo);
    return m > 0.0 ? m : 0.0;
}

Eigen::MatrixXd weighted_outer_sum(const SignalModel& signal, const ParamVector& theta,
                                   const std::vector<double>& weights) {
    const int p = signal.param_count();
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(p, p);
    for (int n = 1; n <= signal.sample_count(); ++n) {
        const double w = weights[n - 1];
        if (w == 0.0) continue;
        const std::vector<double> row = signal.jacobian_row(theta, n);
        // Explicit upper-triangle accumulation mirrored into the lower one:
        // the result is symmetric to the last bit, which a scaled Eigen
        // product kernel does not guarantee.
        for (int i = 0; i < p; ++i) {
            const double wgi = w * row[i];
            for (int j = i; j < p; ++j) {
                const double v = wgi * row[j];
                J(i, j) += v;
                if (i != j) J(j, i) += v;
            }
        }
    }
    return J;
}

void require_standard_normal(const NoiseModel& model, const char* who) {
    if (model.kind() != NoiseKind::StandardNormal)
        throw std::invalid_argument(std::string(who) + ": requires the standard normal model");
}

void check_theta(const SignalModel& signal, const ParamVector& theta) {
    if (theta.size() != signal.param_count())
        throw std::invalid_argument("parameter count does not match the signal model");
}

}  // namespace

double rho_general(const QuantizerSpec& spec, double s, const NoiseModel& model) {
    if (!std::isfinite(s)) throw std::invalid_argument("rho_general: s must be finite");
    const int A = spec.interval_count();
    double sum = 0.0;
    for (int k = 1; k <= A; ++k) {
        const auto [lo, hi] = interval_bounds(spec, k);
        const double lt = lo - s, ut = hi - s;
        const double mass = interval_mass(model, lt, ut);
        if (mass < 1e-300) continue;
        const double diff = model.pdf(ut) - model.pdf(lt);
        sum += diff * diff / mass;
    }
    return sum;
}

double rho_binary(double delta) {
    if (std::isnan(delta)) throw std::invalid_argument("rho_binary: delta is NaN");
    if (std::abs(delta) <= 6.0) {
        // Phi(-delta) via the survival function keeps full relative accuracy;
        // 1 - Phi(delta) would lose ~half the digits already at delta ~ 5.
        return std::exp(-delta * delta) / (normal_cdf(delta) * normal_sf(delta));
    }
    // Far tail: numerator and denominator underflow separately but their
    // log-space combination stays well scaled.
    return std::exp(-delta * delta - normal_log_cdf(delta) - normal_log_cdf(-delta));
}

double eta(const QuantizerSpec& spec, double s) {
    if (!std::isfinite(s)) throw std::invalid_argument("eta: s must be finite");
    const int d = interval_index(spec, s);
    const auto [lo, hi] = interval_bounds(spec, d);
    const double lt = lo - s, ut = hi - s;
    const double m2 = std::min(ut * ut, lt * lt);  // an infinite side yields inf
    return std::exp(-0.5 * m2);
}

FimMatrix fim_general(const SignalModel& signal, const ParamVector& theta,
                      const QuantizerSpec& spec, const NoiseModel& model) {
    check_theta(signal, theta);
    const int N = signal.sample_count();
    std::vector<double> w(N);
    for (int n = 1; n <= N; ++n) w[n - 1] = rho_general(spec, signal.eval(theta, n), model);
    return FimMatrix{weighted_outer_sum(signal, theta, w), FimProvenance::GeneralQuantized,
                     signal.param_count()};
}

FimMatrix fim_unquantized(const SignalModel& signal, const ParamVector& theta,
                          const NoiseModel& model) {
    check_theta(signal, theta);
    const std::vector<double> ones(signal.sample_count(), 1.0);
    Eigen::MatrixXd J = weighted_outer_sum(signal, theta, ones);
    J *= model.rho0();
    return FimMatrix{std::move(J), FimProvenance::Unquantized, signal.param_count()};
}

FimMatrix fim_binary(const SignalModel& signal, const ParamVector& theta,
                     const NoiseModel& model, const ThresholdSequence& thresholds) {
    check_theta(signal, theta);
    require_standard_normal(model, "fim_binary");
    const int N = signal.sample_count();
    if (thresholds.size() != N)
        throw std::invalid_argument("fim_binary: threshold sequence length must equal N");
    bool constant_threshold = true;
    std::vector<double> w(N);
    for (int n = 1; n <= N; ++n) {
        w[n - 1] = rho_binary(signal.eval(theta, n) - thresholds.h[n - 1]) / kTwoPi;
        constant_threshold = constant_threshold && thresholds.h[n - 1] == thresholds.h[0];
    }
    return FimMatrix{weighted_outer_sum(signal, theta, w),
                     constant_threshold ? FimProvenance::Binary
                                        : FimProvenance::BinaryTimeVarying,
                     signal.param_count()};
}

FimMatrix fim_lower_bound(const SignalModel& signal, const ParamVector& theta,
                          const QuantizerSpec& spec, const NoiseModel& model) {
    check_theta(signal, theta);
    require_standard_normal(model, "fim_lower_bound");
    const int N = signal.sample_count();
    std::vector<double> w(N);
    for (int n = 1; n <= N; ++n) {
        const double e = eta(spec, signal.eval(theta, n));
        w[n - 1] = kTwoOverPi * e * e;
    }
    return FimMatrix{weighted_outer_sum(signal, theta, w),
                     spec.interval_count() == 2 ? FimProvenance::LowerBoundBinary
                                                : FimProvenance::LowerBoundGeneral,
                     signal.param_count()};
}

CrbResult crb(const FimMatrix& fim) {
    const int p = fim.param_count;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fim.entries);
    const Eigen::VectorXd& lam = es.eigenvalues();  // ascending
    const double lmax = lam(p - 1);
    const bool singular = !(lmax > 0.0) || lam(0) <= 1e-12 * lmax;
    if (singular) {
        return CrbResult{Eigen::MatrixXd::Constant(p, p, kInf), kInf, true};
    }
    Eigen::MatrixXd inv =
        es.eigenvectors() * lam.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
    inv = 0.5 * (inv + inv.transpose()).eval();
    return CrbResult{std::move(inv), lmax / lam(0), false};
}

bool loewner_leq(const FimMatrix& a, const FimMatrix& b, double tol) {
    if (a.param_count != b.param_count)
        throw std::invalid_argument("loewner_leq: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b.entries - a.entries,
                                                      Eigen::EigenvaluesOnly);
    double scale = std::max(std::abs(a.entries.trace()), std::abs(b.entries.trace()));
    if (scale == 0.0) scale = 1.0;
    return es.eigenvalues()(0) >= -tol * scale;
}

namespace {

std::string matrix_csv(const Eigen::MatrixXd& m, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != m.rows())
        throw std::invalid_argument("matrix_csv: name count does not match dimension");
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
    }
    out += '\n';
    char buf[40];
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
            if (j) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

}  // namespace

std::string fim_to_csv(const FimMatrix& fim, const std::vector<std::string>& names) {
    return matrix_csv(fim.entries, names);
}

std::string crb_to_csv(const CrbResult& res, const std::vector<std::string>& names) {
    return matrix_csv(res.matrix, names);
}

}  // namespace qcrb
