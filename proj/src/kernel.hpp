#pragma once

// Shared finite-difference kernel behind rhs() and evolve(). The epoch
// driver precomputes the oscillating coefficient per node once (node
// positions never move within an epoch, padding only extends the index
// range), so the hot loop is a pure stencil sweep.

#include <cmath>
#include <cstdint>
#include <vector>

#include "rgflow/equations.hpp"

namespace rgflow::detail {

// u^e with fast paths for the exponents that actually occur: small
// integers and half-integers. 0^0 = 1 so absent factors are neutral.
struct PowOp {
    enum class Kind : std::uint8_t { Zero, One, Int, HalfInt, Real };
    Kind kind = Kind::Zero;
    int n = 0;
    double e = 0.0;

    static PowOp make(double expo) {
        PowOp p;
        p.e = expo;
        if (expo == 0.0) {
            p.kind = Kind::Zero;
        } else if (expo == 1.0) {
            p.kind = Kind::One;
        } else if (expo == std::floor(expo) && expo <= 64.0) {
            p.kind = Kind::Int;
            p.n = static_cast<int>(expo);
        } else if (2.0 * expo == std::floor(2.0 * expo) && expo <= 64.0) {
            p.kind = Kind::HalfInt;
            p.n = static_cast<int>(expo - 0.5);
        } else {
            p.kind = Kind::Real;
        }
        return p;
    }

    double ipow(double x) const {
        double r = 1.0;
        for (int i = 0; i < n; ++i) r *= x;
        return r;
    }

    double operator()(double x) const {
        switch (kind) {
            case Kind::Zero: return 1.0;
            case Kind::One: return x;
            case Kind::Int: return ipow(x);
            case Kind::HalfInt: return ipow(x) * std::sqrt(x);
            case Kind::Real: return std::pow(x, e);
        }
        return 1.0;
    }
};

struct TermOp {
    double lam = 0.0;
    PowOp pu, pd1, pd2;
};

struct Stencil {
    EquationForm form = EquationForm::Standard;
    double chi = 1.0;
    double eps = 0.0;
    double inv_dx2 = 0.0;
    double inv_2dx = 0.0;
    std::vector<double> node_coeff; // Standard, mu != 0: chi*(1 + mu g(w x_j))
    std::vector<double> flux_coeff; // Divergence: chi*(1 + mu g) at j+1/2
    std::vector<TermOp> terms;
};

Stencil build_stencil(const EquationSpec& spec, const RGCoefficients& coeffs,
                      double dx, int count, int center_index);

// Computes rhs (euler_dt = 0) or the Euler update u + dt*rhs (euler_dt =
// dt) on [lo, hi] inclusive; other entries of out are untouched. Returns
// the sum of written values, which goes non-finite iff one of them does.
double sweep(const Stencil& st, const double* u, double* out, int lo, int hi,
             double euler_dt);

} // namespace rgflow::detail
