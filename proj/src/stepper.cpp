#include "rgflow/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "kernel.hpp"
#include "rgflow/errors.hpp"

namespace rgflow {

double stable_dt(const EquationSpec& spec, const RGCoefficients& coeffs,
                 double spacing, const StepperConfig& cfg) {
    if (!(cfg.stability_constant > 0.0 && cfg.stability_constant <= 0.5)) {
        throw std::invalid_argument("stability constant must lie in (0, 0.5]");
    }
    double bound = 1.0 + std::abs(spec.mu) * spec.g.sup_abs;
    if (spec.form == EquationForm::Barenblatt) bound += spec.epsilon;
    return cfg.stability_constant * spacing * spacing / (coeffs.chi * bound);
}

Field evolve(const EquationSpec& spec, const RGCoefficients& coeffs,
             const Field& f0, double t_end, const StepperConfig& cfg,
             int* substeps_out) {
    if (!(t_end > 1.0)) throw std::invalid_argument("evolve requires t_end > 1");
    if (cfg.pad_per_step < 1) {
        throw std::invalid_argument("pad_per_step must be >= 1");
    }
    validate(spec);

    const double dt_cap = stable_dt(spec, coeffs, f0.grid.spacing, cfg);
    const int m = static_cast<int>(std::ceil((t_end - 1.0) / dt_cap));
    const double dt = (t_end - 1.0) / m;

    const int pad = cfg.pad_per_step;
    const int n0 = f0.grid.count;
    const int final_count = n0 + 2 * m * pad;
    const Grid out_grid{f0.grid.spacing, final_count};

    // Two zero-initialized buffers: an index outside the active window
    // has never been written and is therefore an exact zero in both, so
    // skipping it reproduces the padded update bit for bit.
    std::vector<double> cur(final_count, 0.0);
    std::vector<double> nxt(final_count, 0.0);
    std::copy(f0.values.begin(), f0.values.end(), cur.begin() + m * pad);

    const detail::Stencil st = detail::build_stencil(
        spec, coeffs, f0.grid.spacing, final_count, out_grid.center_index());

    for (int k = 1; k <= m; ++k) {
        const int lo = (m - k) * pad;
        const int hi = final_count - 1 - (m - k) * pad;
        const double sum =
            detail::sweep(st, cur.data(), nxt.data(), lo + 1, hi - 1, dt);
        if (!std::isfinite(sum)) {
            for (int j = lo; j <= hi; ++j) {
                if (!std::isfinite(nxt[j])) {
                    throw BlowUpError(k, 1.0 + k * dt, out_grid.node(j));
                }
            }
        }
        cur.swap(nxt);
    }

    if (substeps_out) *substeps_out = m;
    return Field{out_grid, std::move(cur)};
}

Field tail_trim(const Field& f, double rel_floor) {
    if (rel_floor < 0.0) throw std::invalid_argument("rel_floor must be >= 0");
    if (rel_floor == 0.0) return f;

    double peak = 0.0;
    for (double v : f.values) peak = std::max(peak, std::abs(v));
    const double thr = rel_floor * peak;

    const int n = f.grid.count;
    const int k_max = (n - 3) / 2; // keep at least a 3-node grid
    int k = 0;
    while (k < k_max && std::abs(f.values[k]) < thr &&
           std::abs(f.values[n - 1 - k]) < thr) {
        ++k;
    }
    if (k == 0) return f;

    std::vector<double> vals(f.values.begin() + k, f.values.end() - k);
    return Field{Grid{f.grid.spacing, n - 2 * k}, std::move(vals)};
}

} // namespace rgflow
