#pragma once

#include "rgflow/equations.hpp"
#include "rgflow/grid_field.hpp"

namespace rgflow {

// Homogenized diffusivity [ (1/T) int_0^T dx/(1 + mu g) ]^{-1} by
// composite Simpson quadrature with panel doubling (64 panels up).
double harmonic_mean(const PeriodicCoefficient& g, double mu,
                     double tol = 1e-10);

struct SigmaFit {
    double sigma = 0.0;
    double fit_residual = 0.0; // RMS about the fitted line
    int points_used = 0;
    int excluded_nonpositive = 0;
};

struct FitWindow {
    double lo = 0.02; // relative-to-peak levels
    double hi = 0.90;
};

// Normalizes the profile to peak 1, keeps nodes whose value sits inside
// the window, and fits -log(value) = s * x^2/4 through the origin;
// sigma = 1/s. Throws InsufficientDataError with < 2 usable points.
SigmaFit sigma_fit(const Field& profile, const FitWindow& window = {});

// amplitude * exp(-x^2/(4 sigma)) / sqrt(4 pi sigma)
Field gaussian_profile(double sigma, double amplitude, const Grid& grid);

// 1/2 + eps/sqrt(2 pi e)
double barenblatt_alpha_first_order(double epsilon);

// 1/(a-1) for 1 < a < 3
double relevant_alpha(double a);

} // namespace rgflow
