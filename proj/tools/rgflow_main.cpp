// rgflow: numerical renormalization-group engine for 1-D nonlinear
// diffusion equations with periodic coefficients.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rgflow/errors.hpp"
#include "rgflow/presets.hpp"
#include "rgflow/run_config.hpp"
#include "rgflow/runner.hpp"

namespace {

// "1,3,5-7" -> {1,3,5,6,7}
std::vector<int> parse_rows(const std::string& text) {
    std::vector<int> rows;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const size_t dash = item.find('-');
        if (dash == std::string::npos) {
            rows.push_back(std::stoi(item));
        } else {
            const int lo = std::stoi(item.substr(0, dash));
            const int hi = std::stoi(item.substr(dash + 1));
            for (int r = lo; r <= hi; ++r) rows.push_back(r);
        }
    }
    return rows;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical RG engine for self-similar asymptotics of 1-D "
                 "diffusion equations with periodic coefficients"};
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "run one simulation from a config");
    std::string config_path, out_dir;
    run_cmd->add_option("--config", config_path, "config file (key = value)");
    run_cmd->add_option("--out", out_dir, "output directory");

    // table
    auto* table_cmd =
        app.add_subcommand("table", "run the stock simulation presets 1-15");
    std::string rows_text = "1-15", table_out = "out/table";
    int opt_count = 0, opt_iters = 0;
    double opt_reldiff = -1.0;
    table_cmd->add_option("--rows", rows_text, "rows, e.g. '11-13' or '1,5,8'");
    table_cmd->add_option("--out", table_out, "output directory");
    table_cmd->add_option("--count", opt_count, "override grid count");
    table_cmd->add_option("--iters", opt_iters, "override max iterations");
    table_cmd->add_option("--reldiff-tol", opt_reldiff,
                          "override stopping tolerance (0 disables)");

    // sweep-barenblatt
    auto* bar_cmd = app.add_subcommand("sweep-barenblatt",
                                       "alpha(eps) for Barenblatt's equation");
    std::vector<double> eps_list{0.0, 0.1, 0.2, 0.3, 0.4};
    std::string bar_out = "out/barenblatt";
    bar_cmd->add_option("--eps", eps_list, "epsilon values");
    bar_cmd->add_option("--out", bar_out, "output directory");
    int bar_count = 0, bar_iters = 0;
    bar_cmd->add_option("--count", bar_count, "override grid count");
    bar_cmd->add_option("--iters", bar_iters, "override max iterations");

    // sweep-relevant
    auto* rel_cmd = app.add_subcommand(
        "sweep-relevant", "alpha(a) for the relevant term -u^a, 1 < a < 3");
    std::vector<double> a_list{1.5, 2.0, 2.5};
    double rel_mu = 0.0, rel_amp = 0.0;
    std::string rel_g = "none", rel_out = "out/relevant";
    rel_cmd->add_option("--a", a_list, "exponents a in (1, 3)");
    rel_cmd->add_option("--mu", rel_mu, "oscillation strength");
    rel_cmd->add_option("--g", rel_g, "periodic coefficient (none|g1|g2|g3)");
    rel_cmd->add_option("--out", rel_out, "output directory");
    rel_cmd->add_option("--amplitude", rel_amp,
                        "initial-condition amplitude knob");
    int rel_count = 0, rel_iters = 0;
    rel_cmd->add_option("--count", rel_count, "override grid count");
    rel_cmd->add_option("--iters", rel_iters, "override max iterations");

    // harmonic-mean
    auto* hm_cmd =
        app.add_subcommand("harmonic-mean", "harmonic mean of 1 + mu*g");
    std::string hm_g = "g1";
    double hm_mu = 0.0, hm_tol = 1e-10;
    hm_cmd->add_option("--g", hm_g, "periodic coefficient (none|g1|g2|g3)");
    hm_cmd->add_option("--mu", hm_mu, "oscillation strength");
    hm_cmd->add_option("--tol", hm_tol, "quadrature tolerance");

    // plots
    auto* plots_cmd =
        app.add_subcommand("plots", "write gnuplot scripts for run artifacts");
    std::string plots_dir = "out";
    plots_cmd->add_option("--out", plots_dir, "run directory with CSV files");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(run_cmd)) {
            rgflow::RunConfig cfg;
            try {
                cfg = rgflow::parse_config(
                    config_path.empty() ? "" : read_file(config_path));
            } catch (const rgflow::ConfigError& e) {
                std::fprintf(stderr, "%s\n", e.what());
                return 2;
            }
            if (!out_dir.empty()) cfg.out_dir = out_dir;
            return rgflow::cmd_run(cfg);
        }
        if (app.got_subcommand(table_cmd)) {
            rgflow::RunOverrides ov;
            if (opt_count > 0) ov.grid_count = opt_count;
            if (opt_iters > 0) ov.max_iter = opt_iters;
            if (opt_reldiff >= 0.0) ov.reldiff_tol = opt_reldiff;
            return rgflow::cmd_table(parse_rows(rows_text), table_out, ov);
        }
        if (app.got_subcommand(bar_cmd)) {
            rgflow::RunOverrides ov;
            if (bar_count > 0) ov.grid_count = bar_count;
            if (bar_iters > 0) ov.max_iter = bar_iters;
            return rgflow::cmd_sweep_barenblatt(eps_list, bar_out, ov);
        }
        if (app.got_subcommand(rel_cmd)) {
            rgflow::RunOverrides ov;
            if (rel_count > 0) ov.grid_count = rel_count;
            if (rel_iters > 0) ov.max_iter = rel_iters;
            if (rel_amp > 0.0) ov.ic_amplitude = rel_amp;
            return rgflow::cmd_sweep_relevant(a_list, rel_mu, rel_g, rel_out, ov);
        }
        if (app.got_subcommand(hm_cmd)) {
            return rgflow::cmd_harmonic_mean(hm_g, hm_mu, hm_tol);
        }
        if (app.got_subcommand(plots_cmd)) {
            return rgflow::emit_plots(plots_dir);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "rgflow: %s\n", e.what());
        return 2;
    }
    return 0;
}
