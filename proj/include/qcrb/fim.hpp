#pragma once

// Fisher-information computations for quantized and unquantized measurements,
// all in noise-normalized units (unit noise deviation).  The per-sample
// information factor for a quantizer with cells {I_k} at signal value s is
//
//   rho(s) = sum_k [pdf(u_k - s) - pdf(l_k - s)]^2 / [cdf(u_k - s) - cdf(l_k - s)]
//
// and the information matrix is J = sum_n rho(s_n) * g_n g_n^T with g_n the
// Jacobian row of s_n.  All reductions are sequential, so repeated runs give
// bit-identical matrices.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qcrb/noise.hpp"
#include "qcrb/quantizer.hpp"
#include "qcrb/signal_model.hpp"

namespace qcrb {

enum class FimProvenance {
    GeneralQuantized,
    Unquantized,
    Binary,
    BinaryTimeVarying,
    LowerBoundGeneral,
    LowerBoundBinary,
};

struct FimMatrix {
    Eigen::MatrixXd entries;  // p x p, symmetric PSD
    FimProvenance provenance;
    int param_count;
};

struct CrbResult {
    Eigen::MatrixXd matrix;  // J^{-1}, or +inf markers when J is singular
    double condition_number;
    bool singular;
};

// Per-sample information factor of a general quantizer at signal value s.
// Cells with probability mass below 1e-300 contribute 0 (the squared pdf
// difference decays faster than the mass, so the true limit is 0).
double rho_general(const QuantizerSpec& spec, double s, const NoiseModel& model);

// Information factor of a binary (one-threshold) quantizer under standard
// normal noise at threshold offset delta = s - h:
//   rho1(delta) = exp(-delta^2) / (Phi(delta) * Phi(-delta)),
// evaluated in log space for |delta| > 6 so the tails never hit 0/0.
// rho1(0) = 4; the binary information matrix uses rho1 / (2*pi).
double rho_binary(double delta);

// Gaussian nearest-breakpoint factor exp(-min(u_d-s, s-l_d)^2 / 2) of the
// cell d containing s (an unbounded side defers to the finite one).
double eta(const QuantizerSpec& spec, double s);

FimMatrix fim_general(const SignalModel& signal, const ParamVector& theta,
                      const QuantizerSpec& spec, const NoiseModel& model);

// rho0(model) * sum_n g_n g_n^T  (rho0 = 1 for standard normal).
FimMatrix fim_unquantized(const SignalModel& signal, const ParamVector& theta,
                          const NoiseModel& model);

// Binary quantizer with per-sample thresholds h_n; requires standard normal
// noise (the closed form is normal-specific; other models go through
// fim_general).  h_n = 0 for all n gives the fixed-threshold-at-zero matrix.
FimMatrix fim_binary(const SignalModel& signal, const ParamVector& theta,
                     const NoiseModel& model, const ThresholdSequence& thresholds);

// (2/pi) * sum_n eta(n)^2 * g_n g_n^T; a lower bound on fim_general in the
// positive-semidefinite order.  Requires standard normal noise.
FimMatrix fim_lower_bound(const SignalModel& signal, const ParamVector& theta,
                          const QuantizerSpec& spec, const NoiseModel& model);

// Symmetric-eigendecomposition inverse.  Flags the matrix singular when
// lambda_min <= 1e-12 * lambda_max and then reports +inf entries instead of
// amplified noise.
CrbResult crb(const FimMatrix& fim);

// True iff b - a is positive semidefinite up to -tol * max(|tr a|, |tr b|).
bool loewner_leq(const FimMatrix& a, const FimMatrix& b, double tol);

// Row-major CSV with a parameter-name header; 17 significant digits,
// infinities as the literal token "inf".
std::string fim_to_csv(const FimMatrix& fim, const std::vector<std::string>& names);
std::string crb_to_csv(const CrbResult& res, const std::vector<std::string>& names);

}  // namespace qcrb
