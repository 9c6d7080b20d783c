#include "qcrb/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

namespace qcrb {

namespace {

void validate_breakpoints(const std::vector<double>& b) {
    for (double x : b)
        if (!std::isfinite(x))
            throw std::invalid_argument("quantizer breakpoints must be finite");
    for (std::size_t i = 1; i < b.size(); ++i)
        if (!(b[i - 1] < b[i]))
            throw std::invalid_argument("quantizer breakpoints must be strictly increasing");
}

}  // namespace

QuantizerSpec make_quantizer(std::vector<double> breakpoints, std::string label) {
    validate_breakpoints(breakpoints);
    return QuantizerSpec{std::move(breakpoints), std::move(label)};
}

QuantizerSpec make_binary(double threshold) {
    return make_quantizer({threshold}, "binary");
}

QuantizerSpec lloyd_max_4bit(double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::domain_error("lloyd_max_4bit: scale must be positive");
    static const double base[15] = {-2.401, -1.844, -1.437, -1.099, -0.7996,
                                    -0.5224, -0.2582, 0.0,   0.2582, 0.5224,
                                    0.7996,  1.099,  1.437,  1.844,  2.401};
    std::vector<double> b(std::begin(base), std::end(base));
    for (double& x : b) x *= scale;
    return make_quantizer(std::move(b), "lloyd-max-4bit");
}

QuantizerSpec split_interval(const QuantizerSpec& spec, int k, double m) {
    const int A = spec.interval_count();
    if (k < 1 || k > A) throw std::out_of_range("split_interval: cell index out of range");
    const auto [lo, hi] = interval_bounds(spec, k);
    if (!(m > lo && m < hi))
        throw std::invalid_argument("split_interval: split point not interior to the cell");
    std::vector<double> b = spec.breakpoints;
    b.insert(b.begin() + (k - 1), m);
    return make_quantizer(std::move(b), spec.label);
}

QuantizerSpec refine_uniform_probability(const NoiseModel& model, int intervals) {
    if (intervals < 2)
        throw std::domain_error("refine_uniform_probability: need at least 2 intervals");
    std::vector<double> b(intervals - 1);
    for (int k = 1; k < intervals; ++k)
        b[k - 1] = model.quantile(static_cast<double>(k) / intervals);
    return make_quantizer(std::move(b), "equiprobable-" + std::to_string(intervals));
}

QuantizerSpec shifted(const QuantizerSpec& spec, double delta) {
    std::vector<double> b = spec.breakpoints;
    for (double& x : b) x += delta;
    return make_quantizer(std::move(b), spec.label);
}

QuantizerSpec scaled(const QuantizerSpec& spec, double factor) {
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw std::domain_error("scaled: factor must be positive");
    std::vector<double> b = spec.breakpoints;
    for (double& x : b) x *= factor;
    return make_quantizer(std::move(b), spec.label);
}

int interval_index(const QuantizerSpec& spec, double x) {
    if (std::isnan(x)) throw std::invalid_argument("interval_index: x is NaN");
    const auto& b = spec.breakpoints;
    return static_cast<int>(std::upper_bound(b.begin(), b.end(), x) - b.begin()) + 1;
}

std::pair<double, double> interval_bounds(const QuantizerSpec& spec, int k) {
    const int A = spec.interval_count();
    if (k < 1 || k > A) throw std::out_of_range("interval_bounds: cell index out of range");
    const double lo = (k == 1) ? -kInf : spec.breakpoints[k - 2];
    const double hi = (k == A) ? kInf : spec.breakpoints[k - 1];
    return {lo, hi};
}

double dac_decode(const QuantizerSpec& spec, double x) {
    const auto& b = spec.breakpoints;
    const std::size_t nb = b.size();
    if (nb < 2)
        throw std::invalid_argument("dac_decode: need at least two breakpoints");
    const int k = interval_index(spec, x);
    if (k == 1) return b[0] - 0.5 * (b[1] - b[0]);
    if (k == spec.interval_count()) return b[nb - 1] + 0.5 * (b[nb - 1] - b[nb - 2]);
    return 0.5 * (b[k - 2] + b[k - 1]);
}

std::string to_text(const QuantizerSpec& spec) {
    if (spec.label.find(':') != std::string::npos ||
        spec.label.find('\n') != std::string::npos)
        throw std::invalid_argument("to_text: label may not contain ':' or newline");
    std::string out = spec.label + ":";
    char buf[40];
    for (std::size_t i = 0; i < spec.breakpoints.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", spec.breakpoints[i]);
        if (i) out += ',';
        out += buf;
    }
    return out;
}

QuantizerSpec quantizer_from_text(const std::string& text) {
    std::string line = text;
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) line.pop_back();
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("quantizer text must look like label:b1,b2,...");
    std::string label = line.substr(0, colon);
    std::string rest = line.substr(colon + 1);
    std::vector<double> b;
    std::size_t pos = 0;
    while (pos < rest.size()) {
        std::size_t comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        const std::string tok = rest.substr(pos, comma - pos);
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (tok.empty() || end != tok.c_str() + tok.size())
            throw std::invalid_argument("bad breakpoint token '" + tok + "'");
        b.push_back(v);
        pos = comma + 1;
    }
    return make_quantizer(std::move(b), std::move(label));
}

ThresholdSequence ThresholdSequence::constant(int n, double value) {
    if (n < 0) throw std::invalid_argument("ThresholdSequence: negative length");
    return ThresholdSequence{std::vector<double>(static_cast<std::size_t>(n), value)};
}

}  // namespace qcrb
