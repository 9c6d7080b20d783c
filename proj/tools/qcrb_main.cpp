// qcrb: Fisher information and Cramer-Rao bounds for quantized measurements.
//
// Exit codes: 0 success, 1 I/O or search-budget failure, 2 usage/parse error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "qcrb/analysis.hpp"
#include "qcrb/experiment.hpp"
#include "qcrb/fim.hpp"

namespace {

using namespace qcrb;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

NoiseModel model_from_name(const std::string& dist) {
    if (dist == "normal") return NoiseModel::standard_normal();
    if (dist == "laplace") return NoiseModel::laplace_unit_variance();
    throw std::invalid_argument("unknown distribution '" + dist + "'");
}

// --quantizer accepts binary:<threshold>, lloydmax4:<scale>,
// equiprob:<intervals> (relative to --dist), a bare comma-separated
// breakpoint list, or the label:b1,b2,... serialized form.
QuantizerSpec quantizer_from_arg(const std::string& arg, const NoiseModel& model) {
    auto number = [&](const std::string& tok) {
        char* end = nullptr;
        const double v = std::strtod(tok.c_str(), &end);
        if (tok.empty() || end != tok.c_str() + tok.size())
            throw std::invalid_argument("bad number '" + tok + "' in --quantizer");
        return v;
    };
    if (arg.rfind("binary:", 0) == 0) return make_binary(number(arg.substr(7)));
    if (arg.rfind("lloydmax4:", 0) == 0) return lloyd_max_4bit(number(arg.substr(10)));
    if (arg.rfind("equiprob:", 0) == 0) {
        const double a = number(arg.substr(9));
        if (a != static_cast<int>(a))
            throw std::invalid_argument("equiprob: interval count must be an integer");
        return refine_uniform_probability(model, static_cast<int>(a));
    }
    if (arg.find(':') != std::string::npos) return quantizer_from_text(arg);
    QuantizerSpec spec = quantizer_from_text("custom:" + arg);
    return spec;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("error writing '" + path + "'");
}

std::vector<std::string> sweep_param_names() {
    return {"a1", "a2", "w1", "w2", "phi1", "phi2"};
}

// Shared options of the single-point fim/crb commands.
struct PointArgs {
    std::string scheme = "j0";
    int n = 100;
    double r = 1.0;
    double snr2_db = 0.0;
    std::string output;
};

PointEval eval_single(const PointArgs& a) {
    const auto scheme = scheme_from_token(a.scheme);
    if (!scheme) throw std::invalid_argument("unknown scheme '" + a.scheme + "'");
    SweepConfig cfg;
    cfg.n_samples = a.n;
    cfg.snr2_db = a.snr2_db;
    cfg.schemes = {*scheme};
    cfg.r_grid = {a.r};
    return evaluate_point(cfg, a.r);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fisher information / Cramer-Rao bounds for quantized measurements"};
    app.require_subcommand(1);

    // ---- rho ----
    auto* c_rho = app.add_subcommand("rho", "Per-sample information factor of a quantizer");
    std::string rho_quant, rho_dist = "normal";
    double rho_s = 0.0;
    c_rho->add_option("--quantizer", rho_quant, "binary:<t> | lloydmax4:<scale> | equiprob:<A> | b1,b2,...")
        ->required();
    c_rho->add_option("--s", rho_s, "signal value")->required();
    c_rho->add_option("--dist", rho_dist, "normal | laplace (unit variance)");
    c_rho->callback([&] {
        const NoiseModel model = model_from_name(rho_dist);
        const QuantizerSpec spec = quantizer_from_arg(rho_quant, model);
        std::cout << "rho " << fmt12(rho_general(spec, rho_s, model)) << "\n";
        std::cout << "rho0 " << fmt12(model.rho0()) << "\n";
    });

    // ---- fim / crb ----
    PointArgs fim_args, crb_args;
    auto add_point_options = [](CLI::App* cmd, PointArgs& a) {
        cmd->add_option("--scheme", a.scheme, "j0 | j1 | j4 | j14");
        cmd->add_option("--n", a.n, "sample count");
        cmd->add_option("--r", a.r, "amplitude ratio a1/a2");
        cmd->add_option("--snr2-db", a.snr2_db, "SNR of the weak component, dB");
        cmd->add_option("--output", a.output, "output CSV path (default stdout)");
    };
    auto* c_fim = app.add_subcommand("fim", "Information matrix of the two-sinusoid benchmark");
    add_point_options(c_fim, fim_args);
    c_fim->callback([&] {
        const PointEval pe = eval_single(fim_args);
        write_output(fim_args.output, fim_to_csv(pe.fims.at(0), sweep_param_names()));
    });
    auto* c_crb = app.add_subcommand("crb", "CRB matrix of the two-sinusoid benchmark");
    add_point_options(c_crb, crb_args);
    c_crb->callback([&] {
        const PointEval pe = eval_single(crb_args);
        const CrbResult res = crb(pe.fims.at(0));
        std::string out = crb_to_csv(res, sweep_param_names());
        out += "condition_number " + fmt12(res.condition_number) + "\n";
        out += std::string("singular ") + (res.singular ? "1" : "0") + "\n";
        write_output(crb_args.output, out);
    });

    // ---- sweep ----
    auto* c_sweep = app.add_subcommand("sweep", "CRB-versus-r sweep driven by a config file");
    std::string sweep_cfg_path, sweep_out_override;
    c_sweep->add_option("--config", sweep_cfg_path, "key=value config file")->required();
    c_sweep->add_option("--output", sweep_out_override, "override the config output_path");
    c_sweep->callback([&] {
        const SweepConfig cfg = parse_sweep_config(read_file(sweep_cfg_path));
        const std::vector<SweepRow> rows = run_sweep(cfg);
        const std::string path =
            !sweep_out_override.empty() ? sweep_out_override : cfg.output_path;
        std::ostringstream ss;
        write_sweep_csv(cfg, rows, ss);
        write_output(path, ss.str());
    });

    // ---- converge ----
    auto* c_conv = app.add_subcommand("converge", "Equiprobable-refinement convergence of rho");
    std::string conv_bits = "1:16", conv_dist = "normal", conv_out;
    double conv_s = 0.0;
    c_conv->add_option("--bits", conv_bits, "bit range lo:hi");
    c_conv->add_option("--dist", conv_dist, "normal | laplace");
    c_conv->add_option("--s", conv_s, "evaluation point");
    c_conv->add_option("--output", conv_out, "output CSV path (default stdout)");
    c_conv->callback([&] {
        int lo = 0, hi = 0;
        if (std::sscanf(conv_bits.c_str(), "%d:%d", &lo, &hi) != 2 || lo < 1 || hi < lo)
            throw std::invalid_argument("--bits must look like lo:hi with 1 <= lo <= hi");
        std::vector<int> depths;
        for (int b = lo; b <= hi; ++b) depths.push_back(b);
        const auto pts = convergence_study(model_from_name(conv_dist), depths, conv_s);
        write_output(conv_out, convergence_to_csv(pts));
    });

    // ---- fcheck ----
    auto* c_f = app.add_subcommand("fcheck", "Grid minimum of the binary-bound gap function");
    double f_min = -10.0, f_max = 10.0, f_step = 1e-3;
    c_f->add_option("--min", f_min, "grid start");
    c_f->add_option("--max", f_max, "grid end");
    c_f->add_option("--step", f_step, "grid step");
    c_f->callback([&] {
        const GridMinimum gm = check_f_nonnegative(f_min, f_max, f_step);
        std::cout << "min_f " << fmt12(gm.min_value) << " at_s " << fmt12(gm.argmin) << "\n";
    });

    // ---- search ----
    auto* c_search = app.add_subcommand("search", "Coordinate-ascent rho maximization");
    int search_bits = 4, search_iters = 30;
    double search_s = 0.0;
    std::uint64_t search_seed = 1;
    std::string search_dist = "normal";
    c_search->add_option("--bits", search_bits, "quantizer bit depth (1..8)")->required();
    c_search->add_option("--s", search_s, "working point");
    c_search->add_option("--seed", search_seed, "RNG seed");
    c_search->add_option("--iterations", search_iters, "coordinate-ascent sweeps");
    c_search->add_option("--dist", search_dist, "normal | laplace");
    c_search->callback([&] {
        const SearchResult res = rho_interval_search(model_from_name(search_dist), search_bits,
                                                     search_s, search_iters, search_seed);
        std::cout << "rho_star " << fmt12(res.rho) << "\n";
        std::cout << "quantizer " << to_text(res.spec) << "\n";
    });

    // ---- counterexample ----
    auto* c_ce = app.add_subcommand(
        "counterexample", "Quantizer where Laplace noise is less informative than normal");
    std::uint64_t ce_seed = 1;
    long ce_trials = 100000;
    c_ce->add_option("--seed", ce_seed, "RNG seed");
    c_ce->add_option("--trials", ce_trials, "trial budget");
    c_ce->callback([&] {
        CounterexampleWitness w;
        try {
            w = laplace_counterexample_search(ce_seed, ce_trials);
        } catch (const std::runtime_error& e) {
            throw IoError(e.what());  // budget exhausted -> exit 1
        }
        std::cout << "quantizer " << to_text(w.spec) << "\n";
        std::cout << "s " << fmt12(w.s) << "\n";
        std::cout << "rho_normal " << fmt12(w.rho_normal) << "\n";
        std::cout << "rho_laplace " << fmt12(w.rho_laplace) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // prints help, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error at line " << e.line << ": " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
