#pragma once

// Numerical studies around the information bounds: equiprobable-refinement
// convergence of rho toward rho0, the nonnegative gap function behind the
// 2/pi binary bound, an exploratory rho-maximizing breakpoint search, and a
// randomized search for quantizers where Laplace noise carries less
// information than normal noise (the reverse of the unquantized comparison).

#include <cstdint>
#include <string>
#include <vector>

#include "qcrb/noise.hpp"
#include "qcrb/quantizer.hpp"

namespace qcrb {

struct ConvergencePoint {
    int intervals;  // A = 2^bits
    double rho;
};

// For each bit depth b, build the equiprobable 2^b-cell quantizer, translate
// it so its reference point sits at s, and evaluate rho there.  Nested grids
// make the sequence nondecreasing; it converges to rho0(model).
std::vector<ConvergencePoint> convergence_study(const NoiseModel& model,
                                                const std::vector<int>& bit_depths,
                                                double s);

std::string convergence_to_csv(const std::vector<ConvergencePoint>& points);

// Gap function f(s) = 4*Phi(s)*Phi(-s) - exp(-s^2); f >= 0 everywhere, with
// zeros at 0 and +-inf, is exactly the statement that a binary quantizer
// never exceeds 2/pi of the unquantized information per sample.
double binary_bound_f(double s);

// Sign factor of f': f'(s) = 2*exp(-s^2/2)*g(s) with
// g(s) = (2/sqrt(2*pi))*(Phi(-s) - Phi(s)) + s*exp(-s^2/2).
// g is odd, has its maximum at s = sqrt(1 - 2/pi), and turns negative
// further out.
double binary_bound_g(double s);

struct GridMinimum {
    double min_value;
    double argmin;
};

// Minimum of binary_bound_f over {grid_min + i*step}.
GridMinimum check_f_nonnegative(double grid_min, double grid_max, double step);

struct SearchResult {
    QuantizerSpec spec;
    double rho;
};

// Exploratory rho-maximization at working point s: coordinate ascent over
// the 2^bits - 1 breakpoints, line-searching each coordinate on a shrinking
// grid, with 3 seeded restarts (equiprobable init plus two jittered inits).
// Deterministic given the seed.  bits in [1, 8], iterations = full sweeps.
SearchResult rho_interval_search(const NoiseModel& model, int bits, double s,
                                 int iterations, std::uint64_t seed);

struct CounterexampleWitness {
    QuantizerSpec spec;
    double s;
    double rho_normal;
    double rho_laplace;
};

// Seeded random search over small quantizers and signal values for a witness
// with rho(Laplace, unit variance) < rho(normal) - 1e-9.  Throws
// std::runtime_error if the trial budget is exhausted (a budget failure, not
// a refutation).
CounterexampleWitness laplace_counterexample_search(std::uint64_t seed, long trials);

}  // namespace qcrb
