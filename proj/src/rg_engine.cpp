#include "rgflow/rg_engine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rgflow/diagnostics.hpp"
#include "rgflow/errors.hpp"

namespace rgflow {

RGState initial_state(const EquationSpec& spec, const Field& f0) {
    RGState st;
    st.profile = f0;
    st.coeffs = initial_coefficients(spec);
    return st;
}

double compute_alpha(double center_initial, double center_final, double L) {
    if (!(L > 1.0)) throw std::invalid_argument("compute_alpha requires L > 1");
    if (!(center_initial > 0.0) || !(center_final > 0.0)) {
        throw DegenerateProfileError(
            "profile centre must stay strictly positive (got " +
            std::to_string(center_initial) + " -> " +
            std::to_string(center_final) + ")");
    }
    return std::log(center_initial / center_final) / std::log(L);
}

double compute_beta(const BetaPolicy& policy, double alpha_next,
                    const MonomialTerm& term) {
    if (policy.kind == BetaPolicy::Kind::FixedHalf) return 0.5;
    const double b2c = term.b + 2.0 * term.c;
    if (!(b2c >= 1.0)) {
        throw std::invalid_argument(
            "scaling-relation policy needs a dominant term with b + 2c >= 1");
    }
    return (1.0 + (1.0 - term.a - term.b - term.c) * alpha_next) / b2c;
}

Field rescale(const Field& profile_at_L, double alpha, double beta, double L) {
    if (!(L > 1.0)) throw std::invalid_argument("rescale requires L > 1");
    const double amp = std::pow(L, alpha);
    std::vector<double> vals(profile_at_L.values.size());
    for (size_t i = 0; i < vals.size(); ++i) {
        vals[i] = amp * profile_at_L.values[i];
    }
    Grid g{profile_at_L.grid.spacing * std::pow(L, -beta),
           profile_at_L.grid.count};
    return Field{g, std::move(vals)};
}

RGCoefficients update_coefficients(const RGCoefficients& coeffs,
                                   std::span<const MonomialTerm> terms,
                                   double alpha, double beta, double L) {
    RGCoefficients out = coeffs;
    out.chi *= std::pow(L, 1.0 - 2.0 * beta);
    out.omega *= std::pow(L, beta);
    for (size_t i = 0; i < terms.size(); ++i) {
        const MonomialTerm& t = terms[i];
        const double expo = 1.0 - (t.b + 2.0 * t.c) * beta +
                            (1.0 - t.a - t.b - t.c) * alpha;
        out.lambdas[i] *= std::pow(L, expo);
        if (!std::isfinite(out.lambdas[i])) {
            throw DivergingCoefficientError(
                "lambda of term " + std::to_string(i + 1) +
                " overflowed; the term is relevant under this policy");
        }
    }
    if (!std::isfinite(out.chi) || !std::isfinite(out.omega)) {
        throw DivergingCoefficientError("chi or omega overflowed");
    }
    return out;
}

Prefactors prefactors(int n, double alpha_n, double beta_n, double sum_alpha,
                      double sum_beta, double L) {
    if (n < 1) throw std::invalid_argument("prefactors requires n >= 1");
    return {std::pow(L, n * alpha_n - sum_alpha),
            std::pow(L, n * beta_n - sum_beta)};
}

TraceRecord rg_step(RGState& state, const EquationSpec& spec,
                    const BetaPolicy& policy, const StepperConfig& stepper_cfg,
                    double L) {
    if (policy.kind == BetaPolicy::Kind::ScalingRelation &&
        (policy.dominant_term_index < 0 ||
         policy.dominant_term_index >= static_cast<int>(spec.terms.size()))) {
        throw std::invalid_argument("dominant term index out of range");
    }

    const double c0 = center_value(state.profile);
    int substeps = 0;
    const Field u_L =
        evolve(spec, state.coeffs, state.profile, L, stepper_cfg, &substeps);

    const double alpha = compute_alpha(c0, center_value(u_L), L);
    const MonomialTerm dominant =
        policy.kind == BetaPolicy::Kind::ScalingRelation
            ? spec.terms[policy.dominant_term_index]
            : MonomialTerm{};
    const double beta = compute_beta(policy, alpha, dominant);

    Field f_next = tail_trim(rescale(u_L, alpha, beta, L),
                             stepper_cfg.trim_floor);
    state.coeffs = update_coefficients(state.coeffs, spec.terms, alpha, beta, L);

    state.n += 1;
    state.sum_alpha += alpha;
    state.sum_beta += beta;
    state.last_alpha = alpha;
    state.last_beta = beta;
    const Prefactors pf =
        prefactors(state.n, alpha, beta, state.sum_alpha, state.sum_beta, L);

    TraceRecord rec;
    rec.n = state.n;
    rec.alpha_n = alpha;
    rec.beta_n = beta;
    rec.A_n = pf.A;
    rec.B_n = pf.B;
    rec.reldiff_L1 = rel_diff(f_next, state.profile, Norm::L1);
    rec.reldiff_Linf = rel_diff(f_next, state.profile, Norm::Linf);
    rec.lambda_magnitudes.reserve(state.coeffs.lambdas.size());
    for (double l : state.coeffs.lambdas) {
        rec.lambda_magnitudes.push_back(std::abs(l));
    }
    rec.grid_count = f_next.grid.count;
    rec.substeps = substeps;

    state.profile = std::move(f_next);
    return rec;
}

RunResult run(const EquationSpec& spec, const Field& f0,
              const BetaPolicy& policy, double L, const StopRule& stop,
              const StepperConfig& stepper_cfg, const TraceObserver& observer) {
    if (stop.max_iter < 1) throw std::invalid_argument("max_iter must be >= 1");
    if (!(L > 1.0)) throw std::invalid_argument("run requires L > 1");
    validate(spec);

    RunResult res;
    res.trace.reserve(stop.max_iter);
    RGState state = initial_state(spec, f0);

    for (int i = 0; i < stop.max_iter; ++i) {
        TraceRecord rec;
        try {
            rec = rg_step(state, spec, policy, stepper_cfg, L);
        } catch (const BlowUpError& e) {
            throw RunError(i + 1, ErrorClass::BlowUp, e.what());
        } catch (const DegenerateProfileError& e) {
            throw RunError(i + 1, ErrorClass::DegenerateProfile, e.what());
        } catch (const DivergingCoefficientError& e) {
            throw RunError(i + 1, ErrorClass::DivergingCoefficient, e.what());
        }
        if (observer) observer(rec);
        res.trace.push_back(std::move(rec));
        if (stop.reldiff_tol > 0.0 &&
            res.trace.back().reldiff_Linf < stop.reldiff_tol) {
            break;
        }
    }

    RunSummary& s = res.summary;
    s.iterations = static_cast<int>(res.trace.size());
    const int k = std::min<int>(10, s.iterations);
    double acc = 0.0;
    for (int i = s.iterations - k; i < s.iterations; ++i) {
        acc += res.trace[i].alpha_n;
    }
    s.alpha_star = acc / k;
    s.A_star = res.trace.back().A_n;
    s.sigma_theory = harmonic_mean(spec.g, spec.mu);
    try {
        const SigmaFit fit = sigma_fit(state.profile);
        s.sigma_fit = fit.sigma;
        s.fit_residual = fit.fit_residual;
    } catch (const InsufficientDataError&) {
        s.sigma_fit = std::numeric_limits<double>::quiet_NaN();
        s.fit_residual = std::numeric_limits<double>::quiet_NaN();
    }

    res.final_profile = std::move(state.profile);
    return res;
}

} // namespace rgflow
