#include "qcrb/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

namespace qcrb {

namespace {

const char* kParamNames[kSweepParamCount] = {"a1", "a2", "w1", "w2", "phi1", "phi2"};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError(line, "bad numeric value for '" + key + "'");
    return x;
}

int parse_int(const std::string& v, int line, const std::string& key) {
    const double x = parse_double(v, line, key);
    if (x != std::floor(x) || std::abs(x) > 1e9)
        throw ConfigError(line, "'" + key + "' must be an integer");
    return static_cast<int>(x);
}

}  // namespace

std::string scheme_token(Scheme s) {
    switch (s) {
        case Scheme::Unquantized: return "j0";
        case Scheme::Binary0: return "j1";
        case Scheme::LloydMax4: return "j4";
        case Scheme::Binary4bitDacThreshold: return "j14";
    }
    return "?";
}

std::optional<Scheme> scheme_from_token(const std::string& token) {
    if (token == "j0") return Scheme::Unquantized;
    if (token == "j1") return Scheme::Binary0;
    if (token == "j4") return Scheme::LloydMax4;
    if (token == "j14") return Scheme::Binary4bitDacThreshold;
    return std::nullopt;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_spaced: need 0 < lo <= hi");
    if (count < 1) throw std::invalid_argument("log_spaced: count must be >= 1");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    const double ratio = hi / lo;
    for (int i = 0; i < count; ++i)
        out[i] = lo * std::pow(ratio, static_cast<double>(i) / (count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

SweepConfig parse_sweep_config(const std::string& text) {
    SweepConfig cfg;
    double r_min = 1.0, r_max = 200.0;
    int r_points = 60;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line_no, "expected key=value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "n") {
            cfg.n_samples = parse_int(value, line_no, key);
            if (cfg.n_samples < 1) throw ConfigError(line_no, "'n' must be >= 1");
        } else if (key == "snr2_db") {
            cfg.snr2_db = parse_double(value, line_no, key);
        } else if (key == "r_min") {
            r_min = parse_double(value, line_no, key);
            if (!(r_min > 0)) throw ConfigError(line_no, "'r_min' must be positive");
        } else if (key == "r_max") {
            r_max = parse_double(value, line_no, key);
            if (!(r_max > 0)) throw ConfigError(line_no, "'r_max' must be positive");
        } else if (key == "r_points") {
            r_points = parse_int(value, line_no, key);
            if (r_points < 1) throw ConfigError(line_no, "'r_points' must be >= 1");
        } else if (key == "schemes") {
            cfg.schemes.clear();
            std::size_t pos = 0;
            while (pos <= value.size()) {
                std::size_t comma = value.find(',', pos);
                if (comma == std::string::npos) comma = value.size();
                const std::string tok = trim(value.substr(pos, comma - pos));
                const auto s = scheme_from_token(tok);
                if (!s) throw ConfigError(line_no, "unknown scheme '" + tok + "'");
                if (std::find(cfg.schemes.begin(), cfg.schemes.end(), *s) != cfg.schemes.end())
                    throw ConfigError(line_no, "duplicate scheme '" + tok + "'");
                cfg.schemes.push_back(*s);
                pos = comma + 1;
            }
        } else if (key == "output_path") {
            cfg.output_path = value;
        } else {
            throw ConfigError(line_no, "unknown key '" + key + "'");
        }
    }
    if (!(r_min <= r_max)) throw ConfigError(line_no, "r_min must not exceed r_max");
    cfg.r_grid = log_spaced(r_min, r_max, r_points);
    return cfg;
}

PointEval evaluate_point(const SweepConfig& config, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("evaluate_point: r must be positive");
    const NoiseModel normal = NoiseModel::standard_normal();
    const int N = config.n_samples;
    const double a2 = 1.0 / r;
    const double snr2 = std::pow(10.0, config.snr2_db / 10.0);
    const double sigma = a2 / std::sqrt(2.0 * snr2);

    const ParamVector theta = two_sinusoid_params(config.a1, a2, config.w1, config.w2,
                                                  config.phi1, config.phi2);
    const SignalModel base = SignalModel::two_sinusoid(N);
    const SignalModel normalized = base.scaled(1.0 / sigma);

    PointEval out;
    out.r = r;
    out.sigma = sigma;
    out.fims.reserve(config.schemes.size());
    for (Scheme scheme : config.schemes) {
        switch (scheme) {
            case Scheme::Unquantized:
                out.fims.push_back(fim_unquantized(normalized, theta, normal));
                break;
            case Scheme::Binary0:
                out.fims.push_back(
                    fim_binary(normalized, theta, normal, ThresholdSequence::constant(N, 0.0)));
                break;
            case Scheme::LloydMax4: {
                // The quantizer table is specified for a unit-power input, so
                // scale it by the RMS of the noiseless signal, then normalize.
                const double rms = std::sqrt(0.5 * (config.a1 * config.a1 + a2 * a2));
                const QuantizerSpec lm_normalized = scaled(lloyd_max_4bit(rms), 1.0 / sigma);
                out.fims.push_back(fim_general(normalized, theta, lm_normalized, normal));
                break;
            }
            case Scheme::Binary4bitDacThreshold: {
                const double rms = std::sqrt(0.5 * (config.a1 * config.a1 + a2 * a2));
                const QuantizerSpec lm = lloyd_max_4bit(rms);  // measurement units
                ThresholdSequence h{std::vector<double>(N)};
                double err_max = 0.0, err_sq = 0.0;
                for (int n = 1; n <= N; ++n) {
                    const double s = base.eval(theta, n);
                    const double rec = dac_decode(lm, s);
                    h.h[n - 1] = rec / sigma;
                    const double e = std::abs(s - rec) / sigma;
                    err_max = std::max(err_max, e);
                    err_sq += e * e;
                }
                out.dac_error_max = err_max;
                out.dac_error_rms = std::sqrt(err_sq / N);
                out.fims.push_back(fim_binary(normalized, theta, normal, h));
                break;
            }
        }
    }
    return out;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    std::vector<double> grid = config.r_grid;
    if (grid.empty()) grid = log_spaced(1.0, 200.0, 60);
    std::sort(grid.begin(), grid.end());
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (double r : grid) {
        const PointEval pe = evaluate_point(config, r);
        SweepRow row;
        row.r = pe.r;
        row.sigma = pe.sigma;
        row.crb_diag.reserve(pe.fims.size());
        for (const FimMatrix& fim : pe.fims) {
            const CrbResult c = crb(fim);
            std::array<double, kSweepParamCount> diag{};
            for (int i = 0; i < kSweepParamCount; ++i) diag[i] = c.matrix(i, i);
            row.crb_diag.push_back(diag);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string sweep_csv_header(const SweepConfig& config) {
    std::string out = "r,sigma";
    for (Scheme s : config.schemes)
        for (const char* p : kParamNames)
            out += "," + scheme_token(s) + "_crb_" + p;
    return out;
}

void write_sweep_csv(const SweepConfig& config, const std::vector<SweepRow>& rows,
                     std::ostream& out) {
    out << sweep_csv_header(config) << '\n';
    char buf[40];
    for (const SweepRow& row : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", row.r);
        out << buf;
        std::snprintf(buf, sizeof buf, "%.17g", row.sigma);
        out << ',' << buf;
        for (const auto& diag : row.crb_diag)
            for (double v : diag) {
                std::snprintf(buf, sizeof buf, "%.17g", v);
                out << ',' << buf;
            }
        out << '\n';
    }
}

BowlVerdict bowl_shape_check(const std::vector<SweepRow>& rows, const SweepConfig& config) {
    if (rows.size() < 10)
        throw std::invalid_argument("bowl_shape_check: need at least 10 grid points");
    const auto it = std::find(config.schemes.begin(), config.schemes.end(), Scheme::Binary0);
    if (it == config.schemes.end())
        throw std::invalid_argument("bowl_shape_check: config lacks the j1 scheme");
    const std::size_t scheme_idx = it - config.schemes.begin();
    const int w1_idx = 2;

    std::vector<double> curve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        curve[i] = rows[i].crb_diag.at(scheme_idx)[w1_idx];

    const std::size_t k =
        std::min_element(curve.begin(), curve.end()) - curve.begin();
    const std::size_t third = curve.size() / 3;
    auto mean = [&](std::size_t b, std::size_t e) {
        double s = 0.0;
        for (std::size_t i = b; i < e; ++i) s += curve[i];
        return s / static_cast<double>(e - b);
    };
    const double m_first = mean(0, third);
    const double m_mid = mean(third, 2 * third);
    const double m_last = mean(2 * third, curve.size());
    return BowlVerdict{rows[k].r, m_first > m_mid, m_last > m_mid};
}

}  // namespace qcrb
