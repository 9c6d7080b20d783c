#pragma once

// Quantizer interval representation.  A quantizer with A cells is stored as
// its A-1 strictly increasing finite breakpoints; the implied cells are
// left-closed/right-open, adjacent, and cover the whole real line:
//   I_1 = [-inf, t_1), I_2 = [t_1, t_2), ..., I_A = [t_{A-1}, +inf).
// Output symbols are not stored: the information computations depend only on
// the cell boundaries.

#include <string>
#include <utility>
#include <vector>

#include "qcrb/noise.hpp"

namespace qcrb {

struct QuantizerSpec {
    std::vector<double> breakpoints;  // strictly increasing, all finite
    std::string label;

    int interval_count() const { return static_cast<int>(breakpoints.size()) + 1; }
};

// Validating constructor; throws std::invalid_argument on NaN/inf/non-increasing input.
QuantizerSpec make_quantizer(std::vector<double> breakpoints, std::string label = "custom");

// One threshold, two cells.
QuantizerSpec make_binary(double threshold);

// The classic 16-level minimum-MSE quantizer for a unit-power input, with
// every breakpoint multiplied by `scale`.  Throws std::domain_error for
// scale <= 0.
QuantizerSpec lloyd_max_4bit(double scale);

// Insert a new breakpoint m strictly inside cell k (1-based).  Throws
// std::out_of_range for a bad k and std::invalid_argument for m outside the
// open cell interior.
QuantizerSpec split_interval(const QuantizerSpec& spec, int k, double m);

// Equiprobable partition: breakpoints at quantile(k/A), k = 1..A-1.  The
// grids for A and 2A share their common quantile arguments bit-exactly, so
// refinement is exactly nested.  Requires A >= 2.
QuantizerSpec refine_uniform_probability(const NoiseModel& model, int intervals);

// Translate / scale every breakpoint.
QuantizerSpec shifted(const QuantizerSpec& spec, double delta);
QuantizerSpec scaled(const QuantizerSpec& spec, double factor);

// 1-based index k of the cell with l_k <= x < u_k.  NaN is rejected.
int interval_index(const QuantizerSpec& spec, double x);

// (l_k, u_k) with the outer bounds at +-inf; k is 1-based.
std::pair<double, double> interval_bounds(const QuantizerSpec& spec, int k);

// Midpoint reconstruction of x through the quantizer: the selected finite
// cell maps to its midpoint; the two unbounded cells map to the adjacent
// finite breakpoint offset outward by half the width of the neighbouring
// finite cell.  Requires at least two breakpoints.
double dac_decode(const QuantizerSpec& spec, double x);

// Plain-text form "label:b1,b2,...,bk" (17 significant digits, so the
// round-trip is bit-exact).  The label may not contain ':' or newlines.
std::string to_text(const QuantizerSpec& spec);
QuantizerSpec quantizer_from_text(const std::string& text);

// Per-sample comparator levels for a time-varying binary quantizer.
struct ThresholdSequence {
    std::vector<double> h;

    static ThresholdSequence constant(int n, double value);
    int size() const { return static_cast<int>(h.size()); }
};

}  // namespace qcrb
