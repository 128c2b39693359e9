#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "rgflow/equations.hpp"
#include "rgflow/grid_field.hpp"
#include "rgflow/stepper.hpp"

namespace rgflow {

// How beta_{n+1} is chosen. FixedHalf keeps the Laplacian invariant;
// ScalingRelation keeps the designated monomial term invariant instead.
struct BetaPolicy {
    enum class Kind { FixedHalf, ScalingRelation };
    Kind kind = Kind::FixedHalf;
    int dominant_term_index = 0;

    static BetaPolicy fixed_half() { return {}; }
    static BetaPolicy scaling_relation(int term_index) {
        return {Kind::ScalingRelation, term_index};
    }
};

struct RGState {
    int n = 0;
    Field profile;            // f_n
    RGCoefficients coeffs;    // chi_n, omega_n, lambda_n per term
    double sum_alpha = 0.0;   // alpha_1 + ... + alpha_n
    double sum_beta = 0.0;
    double last_alpha = 0.0;
    double last_beta = 0.0;
};

RGState initial_state(const EquationSpec& spec, const Field& f0);

struct TraceRecord {
    int n = 0;
    double alpha_n = 0.0;
    double beta_n = 0.0;
    double A_n = 0.0;
    double B_n = 0.0;
    double reldiff_L1 = 0.0;
    double reldiff_Linf = 0.0;
    std::vector<double> lambda_magnitudes;
    int grid_count = 0;
    int substeps = 0;
};

// ln(c0/cL)/ln L; both centre values must be strictly positive.
double compute_alpha(double center_initial, double center_final, double L);

// FixedHalf -> 1/2; ScalingRelation -> (1 + (1-a-b-c) alpha)/(b + 2c).
double compute_beta(const BetaPolicy& policy, double alpha_next,
                    const MonomialTerm& term);

// values *= L^alpha, spacing *= L^-beta; node indices unchanged.
Field rescale(const Field& profile_at_L, double alpha, double beta, double L);

// chi *= L^{1-2 beta}, omega *= L^beta,
// lambda_i *= L^{1 - (b_i+2c_i) beta + (1-a_i-b_i-c_i) alpha}.
RGCoefficients update_coefficients(const RGCoefficients& coeffs,
                                   std::span<const MonomialTerm> terms,
                                   double alpha, double beta, double L);

struct Prefactors {
    double A = 1.0;
    double B = 1.0;
};

// A_n = L^{n alpha_n - sum_alpha}, B_n = L^{n beta_n - sum_beta}.
Prefactors prefactors(int n, double alpha_n, double beta_n, double sum_alpha,
                      double sum_beta, double L);

// One RG iteration: evolve over [1, L], extract exponents, rescale,
// update coefficients, trim tails. Mutates state and returns the trace
// record of the completed iteration.
TraceRecord rg_step(RGState& state, const EquationSpec& spec,
                    const BetaPolicy& policy, const StepperConfig& stepper_cfg,
                    double L);

struct StopRule {
    int max_iter = 500;
    double reldiff_tol = 1e-6; // L-inf; 0 disables early stopping
};

struct RunSummary {
    int iterations = 0;
    double alpha_star = 0.0;   // mean of the last (up to) 10 alpha_n
    double A_star = 0.0;       // last A_n
    double sigma_fit = 0.0;    // NaN when the profile cannot be fitted
    double sigma_theory = 0.0; // harmonic mean of 1 + mu g
    double fit_residual = 0.0;
};

struct RunResult {
    std::vector<TraceRecord> trace;
    Field final_profile;
    RunSummary summary;
};

using TraceObserver = std::function<void(const TraceRecord&)>;

// Iterates rg_step until max_iter or reldiff_Linf < reldiff_tol. The
// observer (if any) sees each record as it is produced, which keeps
// partial traces available when a step throws.
RunResult run(const EquationSpec& spec, const Field& f0,
              const BetaPolicy& policy, double L, const StopRule& stop,
              const StepperConfig& stepper_cfg = {},
              const TraceObserver& observer = {});

} // namespace rgflow
