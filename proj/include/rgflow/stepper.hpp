#pragma once

#include "rgflow/equations.hpp"
#include "rgflow/grid_field.hpp"

namespace rgflow {

struct StepperConfig {
    double stability_constant = 0.45; // C in (1 + max|mu g|) dt <= C dx^2
    int pad_per_step = 1;             // zero nodes added per side per step
    double trim_floor = 1e-14;        // relative tail threshold (rg_step)
};

// C dx^2 / (chi (1 + |mu| sup|g| + eps_if_Barenblatt)).
double stable_dt(const EquationSpec& spec, const RGCoefficients& coeffs,
                 double spacing, const StepperConfig& cfg);

// Forward Euler from t = 1 to t = t_end with uniform dt = (t_end-1)/m,
// m = ceil((t_end-1)/stable_dt); the field is zero-extended by
// pad_per_step per side before every step, so the returned grid has
// f0.count + 2*m*pad_per_step nodes. Throws BlowUpError with the
// substep/time/node of the first non-finite value.
Field evolve(const EquationSpec& spec, const RGCoefficients& coeffs,
             const Field& f0, double t_end, const StepperConfig& cfg,
             int* substeps_out = nullptr);

// Symmetrically removes boundary nodes with |value| < rel_floor * max|f|.
// Never removes the centre node; rel_floor = 0 is the identity.
Field tail_trim(const Field& f, double rel_floor);

} // namespace rgflow
