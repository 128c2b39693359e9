#pragma once

#include <string>
#include <vector>

#include "rgflow/equations.hpp"
#include "rgflow/rg_engine.hpp"
#include "rgflow/stepper.hpp"

namespace rgflow {

// One fully-specified simulation. parse_config() fills it from the
// line-oriented `key = value` text format (see README for the key list);
// every field has the stock default so empty text is a valid heat run.
struct RunConfig {
    // equation
    double mu = 0.0;
    std::string g_name = "none"; // none | g1 | g2 | g3 | fourier
    std::vector<double> g_cos;   // fourier: coefficients of cos(kx), k = 1..
    std::vector<double> g_sin;   //          coefficients of sin(kx)
    EquationForm form = EquationForm::Standard;
    double epsilon = 0.0;
    std::vector<MonomialTerm> terms;

    // initial condition
    std::string ic_name = "gauss"; // gauss | bump | double_bump
    double ic_amplitude = 1.0;
    double ic_width = 4.0;

    // grid
    double half_width = 5.0;
    int grid_count = 27;

    // rg
    double L = 1.021;
    BetaPolicy::Kind policy = BetaPolicy::Kind::FixedHalf;
    int dominant_term = 1; // 1-based index into terms (scaling_relation)
    int max_iter = 500;
    double reldiff_tol = 1e-6;

    // stepper
    StepperConfig stepper;

    // outputs
    std::string out_dir = "out";
    bool write_trace = true;
    bool write_profile = true;
    bool write_summary = true;
};

// Parses and validates; throws ConfigError naming line and key.
RunConfig parse_config(const std::string& text);

// Builders from a validated config.
EquationSpec build_equation(const RunConfig& cfg);
Field build_initial_field(const RunConfig& cfg);
BetaPolicy build_policy(const RunConfig& cfg);
StopRule build_stop(const RunConfig& cfg);

} // namespace rgflow
