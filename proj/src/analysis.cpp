#include "qcrb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "qcrb/fim.hpp"

namespace qcrb {

namespace {

constexpr double kTwoOverSqrt2Pi = 0.79788456080286535588;

// Small deterministic generator (splitmix64) so searches reproduce exactly
// for a given seed on every platform.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double uniform() {  // [0, 1)
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

}  // namespace

std::vector<ConvergencePoint> convergence_study(const NoiseModel& model,
                                                const std::vector<int>& bit_depths,
                                                double s) {
    if (bit_depths.empty())
        throw std::invalid_argument("convergence_study: empty bit depth list");
    for (std::size_t i = 0; i < bit_depths.size(); ++i) {
        if (bit_depths[i] < 1 || bit_depths[i] > 20)
            throw std::domain_error("convergence_study: bit depth must be in [1, 20]");
        if (i > 0 && bit_depths[i] <= bit_depths[i - 1])
            throw std::invalid_argument("convergence_study: bit depths must be increasing");
    }
    std::vector<ConvergencePoint> out;
    out.reserve(bit_depths.size());
    for (int b : bit_depths) {
        const int A = 1 << b;
        const QuantizerSpec spec = shifted(refine_uniform_probability(model, A), s);
        out.push_back({A, rho_general(spec, s, model)});
    }
    return out;
}

std::string convergence_to_csv(const std::vector<ConvergencePoint>& points) {
    std::string out = "A,rho\n";
    char buf[48];
    for (const ConvergencePoint& p : points) {
        std::snprintf(buf, sizeof buf, "%d,%.17g\n", p.intervals, p.rho);
        out += buf;
    }
    return out;
}

double binary_bound_f(double s) {
    return 4.0 * normal_cdf(s) * normal_cdf(-s) - std::exp(-s * s);
}

double binary_bound_g(double s) {
    return kTwoOverSqrt2Pi * (normal_cdf(-s) - normal_cdf(s)) +
           s * std::exp(-0.5 * s * s);
}

GridMinimum check_f_nonnegative(double grid_min, double grid_max, double step) {
    if (!(step > 0.0)) throw std::domain_error("check_f_nonnegative: step must be positive");
    if (!(grid_min <= grid_max))
        throw std::invalid_argument("check_f_nonnegative: empty grid");
    const long count = std::lround((grid_max - grid_min) / step);
    GridMinimum best{kInf, grid_min};
    for (long i = 0; i <= count; ++i) {
        const double x = grid_min + static_cast<double>(i) * step;
        const double v = binary_bound_f(x);
        if (v < best.min_value) best = {v, x};
    }
    return best;
}

SearchResult rho_interval_search(const NoiseModel& model, int bits, double s,
                                 int iterations, std::uint64_t seed) {
    if (bits < 1 || bits > 8)
        throw std::domain_error("rho_interval_search: bits must be in [1, 8]");
    if (iterations < 1)
        throw std::domain_error("rho_interval_search: iterations must be >= 1");
    const int A = 1 << bits;
    const int nb = A - 1;
    constexpr int kRestarts = 3;
    constexpr int kGridPoints = 33;
    constexpr double kSpan0 = 1.0;
    constexpr double kShrink = 0.65;

    std::vector<double> best_x;
    double best_rho = -1.0;
    for (int restart = 0; restart < kRestarts; ++restart) {
        SplitMix64 rng(seed + static_cast<std::uint64_t>(restart) * 0x9E3779B97F4A7C15ULL);
        // Equiprobable init, jittered in the probability domain on restarts
        // (jitter < 1/2 cell keeps the breakpoints strictly increasing).
        std::vector<double> x(nb);
        for (int k = 1; k <= nb; ++k) {
            double p = static_cast<double>(k) / A;
            if (restart > 0) p = (k + 0.6 * (rng.uniform() - 0.5)) / A;
            x[k - 1] = model.quantile(p) + s;
        }
        auto eval = [&](const std::vector<double>& b) {
            return rho_general(QuantizerSpec{b, "candidate"}, s, model);
        };
        double cur = eval(x);
        double span = kSpan0;
        for (int sweep = 0; sweep < iterations; ++sweep) {
            for (int k = 0; k < nb; ++k) {
                const double lo = (k > 0) ? x[k - 1] : -kInf;
                const double hi = (k + 1 < nb) ? x[k + 1] : kInf;
                const double center = x[k];
                double arg_best = center;
                for (int i = 0; i < kGridPoints; ++i) {
                    const double m =
                        center - span + 2.0 * span * i / (kGridPoints - 1);
                    if (!(m > lo && m < hi)) continue;
                    std::vector<double> cand = x;
                    cand[k] = m;
                    const double v = eval(cand);
                    if (v > cur) {
                        cur = v;
                        arg_best = m;
                    }
                }
                x[k] = arg_best;
            }
            span *= kShrink;
        }
        if (cur > best_rho) {
            best_rho = cur;
            best_x = x;
        }
    }
    return SearchResult{make_quantizer(std::move(best_x), "search-b" + std::to_string(bits)),
                        best_rho};
}

CounterexampleWitness laplace_counterexample_search(std::uint64_t seed, long trials) {
    if (trials < 1)
        throw std::invalid_argument("laplace_counterexample_search: trials must be >= 1");
    const NoiseModel normal = NoiseModel::standard_normal();
    const NoiseModel lap = NoiseModel::laplace_unit_variance();
    SplitMix64 rng(seed);
    for (long t = 0; t < trials; ++t) {
        const int A = 2 + static_cast<int>(rng.next() % 5);  // 2..6 cells
        std::vector<double> b(A - 1);
        for (double& v : b) v = rng.uniform(-3.0, 3.0);
        std::sort(b.begin(), b.end());
        bool degenerate = false;
        for (std::size_t i = 1; i < b.size(); ++i)
            if (b[i] - b[i - 1] < 1e-9) degenerate = true;
        if (degenerate) continue;
        const double s = rng.uniform(-2.0, 2.0);
        const QuantizerSpec spec = make_quantizer(std::move(b), "witness");
        const double rho_n = rho_general(spec, s, normal);
        const double rho_l = rho_general(spec, s, lap);
        if (rho_l < rho_n - 1e-9) return CounterexampleWitness{spec, s, rho_n, rho_l};
    }
    throw std::runtime_error("laplace_counterexample_search: no witness within the trial budget");
}

}  // namespace qcrb
