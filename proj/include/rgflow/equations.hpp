#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rgflow/grid_field.hpp"

namespace rgflow {

// Smooth periodic coefficient g with zero mean over one period. The
// bounds are consulted by the stability and ellipticity checks, so they
// must dominate the actual range of the evaluator.
struct PeriodicCoefficient {
    std::function<double(double)> evaluator;
    double period = 0.0;
    double sup_abs = 0.0; // sup |g|
    double inf_val = 0.0; // inf g
    double sup_val = 0.0; // sup g
};

// g1 = cos x, g2 = [cos x + sin 2x + cos 4x]/2.72,
// g3 = triangle wave 1 - 2|x/pi mod 2 - 1|; all with period 2*pi.
PeriodicCoefficient builtin_g(const std::string& name);

// Zero-mean trigonometric polynomial sum_k cos_k*cos(kx) + sin_k*sin(kx),
// period 2*pi; bounds sampled numerically.
PeriodicCoefficient fourier_g(std::span<const double> cos_coeffs,
                              std::span<const double> sin_coeffs);

// Identically zero coefficient (mu irrelevant).
PeriodicCoefficient no_g();

// One monomial lambda * u^a (u_x)^b (u_xx)^c. Exponents are reals so
// that non-integer powers (e.g. -u^1.5 in the relevant-case studies)
// can be driven; all stock presets use integers.
struct MonomialTerm {
    double coeff = 0.0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    double degree() const { return a + 2.0 * b + 3.0 * c - 3.0; }
};

enum class TermClass { Irrelevant, Marginal, Relevant };
TermClass classify(const MonomialTerm& term);

enum class EquationForm { Standard, Divergence, Barenblatt };

// u_t = chi [1 + mu g(omega x)] u_xx + sum_i lambda_i u^a (u_x)^b (u_xx)^c
// (Standard), the flux form d_x([1 + mu g] d_x u) of the same (Divergence),
// or u_t = (1 + eps H(-u_t)) u_xx (Barenblatt).
struct EquationSpec {
    double mu = 0.0;
    PeriodicCoefficient g;
    EquationForm form = EquationForm::Standard;
    double epsilon = 0.0; // Barenblatt only
    std::vector<MonomialTerm> terms;
};

// Checks ellipticity 1 + mu g > 0 and the Barenblatt restrictions
// (mu = 0, no terms). Throws std::invalid_argument.
void validate(const EquationSpec& spec);

// Renormalized coefficients of the flow; lambdas holds the current
// coefficient of each MonomialTerm in spec.terms order.
struct RGCoefficients {
    double chi = 1.0;
    double omega = 1.0;
    std::vector<double> lambdas;
};

// chi = omega = 1, lambdas = the bare term coefficients.
RGCoefficients initial_coefficients(const EquationSpec& spec);

using FieldGenerator = std::function<Field(const Grid&)>;

// gauss:       A exp(-x^2/w)
// bump:        A exp(1 - 1/(1 - (x/w)^2)) for |x| < w, else 0
// double_bump: two overlapping bumps centred at +-w/4 with half-width 3w/4
FieldGenerator initial_condition(const std::string& name, double amplitude,
                                 double width);

// Finite-difference right-hand side. Interior nodes use the 3-point
// Laplacian and centred first differences; boundary nodes return 0
// (they are freshly padded zeros). Throws BlowUpError on non-finite
// results, std::invalid_argument on fields with < 3 nodes.
Field rhs(const EquationSpec& spec, const RGCoefficients& coeffs,
          const Field& u);

} // namespace rgflow
