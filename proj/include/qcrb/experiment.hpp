#pragma once

// The two-sinusoid benchmark: Cramer-Rao bounds versus the amplitude ratio
// r for a family of measurement schemes.
//
//   s_n = a1*sin(w1*n + phi1) + a2*sin(w2*n + phi2),  n = 1..N,
//   a1 = 1, a2 = 1/r, sigma^2 = a2^2 / (2 * 10^(snr2_db/10)),
//
// so the SNR of the weak component stays fixed while r varies.  Schemes:
//   j0  -- unquantized measurements
//   j1  -- one bit, fixed threshold 0
//   j4  -- 16 levels (the 4-bit minimum-MSE table scaled to the signal RMS)
//   j14 -- one bit with per-sample thresholds h_n = s_n reconstructed
//          through the 4-bit quantizer's midpoint DAC
// Everything is evaluated in noise-normalized units (signal, breakpoints and
// thresholds divided by sigma).

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcrb/fim.hpp"

namespace qcrb {

enum class Scheme { Unquantized, Binary0, LloydMax4, Binary4bitDacThreshold };

inline constexpr int kSweepParamCount = 6;

std::string scheme_token(Scheme s);  // "j0", "j1", "j4", "j14"
std::optional<Scheme> scheme_from_token(const std::string& token);

struct SweepConfig {
    int n_samples = 100;
    double snr2_db = 0.0;
    std::vector<double> r_grid;      // defaults to log_spaced(1, 200, 60)
    std::vector<Scheme> schemes = {Scheme::Unquantized, Scheme::Binary0,
                                   Scheme::LloydMax4, Scheme::Binary4bitDacThreshold};
    std::string output_path;

    // Base signal parameters; a2 is set to 1/r per grid point.
    double a1 = 1.0, w1 = 0.25, w2 = 0.4;
    double phi1 = 1.04719755119659774615;  // pi/3
    double phi2 = 0.78539816339744830961;  // pi/4
};

std::vector<double> log_spaced(double lo, double hi, int count);

// key=value file with keys n, snr2_db, r_min, r_max, r_points, schemes,
// output_path; '#' comment lines and blank lines are skipped; anything else
// raises ConfigError with the offending line number.
struct ConfigError : std::runtime_error {
    int line;
    ConfigError(int line_no, const std::string& message)
        : std::runtime_error(message), line(line_no) {}
};

SweepConfig parse_sweep_config(const std::string& text);

// All information matrices for one grid point, plus the normalized DAC
// reconstruction error statistics max_n |s_n - h_n| / sigma (populated when
// the j14 scheme is present).
struct PointEval {
    double r = 0.0;
    double sigma = 0.0;
    std::vector<FimMatrix> fims;  // aligned with config.schemes
    double dac_error_max = 0.0;
    double dac_error_rms = 0.0;
};

PointEval evaluate_point(const SweepConfig& config, double r);

struct SweepRow {
    double r = 0.0;
    double sigma = 0.0;
    // Diagonal CRB entries per scheme (aligned with config.schemes), in the
    // parameter order a1, a2, w1, w2, phi1, phi2; +inf marks a singular FIM.
    std::vector<std::array<double, kSweepParamCount>> crb_diag;
};

// Rows ordered by increasing r; deterministic (bit-identical across runs).
std::vector<SweepRow> run_sweep(const SweepConfig& config);

std::string sweep_csv_header(const SweepConfig& config);
void write_sweep_csv(const SweepConfig& config, const std::vector<SweepRow>& rows,
                     std::ostream& out);

struct BowlVerdict {
    double argmin_r;
    bool decreasing_before;  // first third of the grid above the middle third on average
    bool increasing_after;   // last third above the middle third on average
};

// Shape check of the one-bit (j1) CRB curve for w1.  Requires >= 10 rows and
// the Binary0 scheme in the config.
BowlVerdict bowl_shape_check(const std::vector<SweepRow>& rows, const SweepConfig& config);

}  // namespace qcrb
