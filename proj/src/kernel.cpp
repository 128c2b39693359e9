#include "kernel.hpp"

namespace rgflow::detail {

Stencil build_stencil(const EquationSpec& spec, const RGCoefficients& coeffs,
                      double dx, int count, int center_index) {
    Stencil st;
    st.form = spec.form;
    st.chi = coeffs.chi;
    st.eps = spec.epsilon;
    st.inv_dx2 = 1.0 / (dx * dx);
    st.inv_2dx = 1.0 / (2.0 * dx);

    // The coefficient argument is omega*x_j = (j - c) * (omega*dx); the
    // product omega*dx is formed once to keep one rounding per node.
    const double od = coeffs.omega * dx;
    if (spec.form == EquationForm::Standard && spec.mu != 0.0) {
        st.node_coeff.resize(count);
        for (int j = 0; j < count; ++j) {
            st.node_coeff[j] =
                st.chi * (1.0 + spec.mu * spec.g.evaluator((j - center_index) * od));
        }
    } else if (spec.form == EquationForm::Divergence) {
        st.flux_coeff.resize(count - 1);
        for (int j = 0; j + 1 < count; ++j) {
            st.flux_coeff[j] =
                st.chi *
                (1.0 + spec.mu * spec.g.evaluator((j - center_index + 0.5) * od));
        }
    }

    st.terms.reserve(spec.terms.size());
    for (size_t i = 0; i < spec.terms.size(); ++i) {
        const MonomialTerm& t = spec.terms[i];
        st.terms.push_back(TermOp{coeffs.lambdas[i], PowOp::make(t.a),
                                  PowOp::make(t.b), PowOp::make(t.c)});
    }
    return st;
}

namespace {

enum class Coeff { Constant, PerNode };

template <EquationForm FORM, Coeff COEFF, bool HAS_TERMS, bool EULER>
double sweep_impl(const Stencil& st, const double* u, double* out, int lo,
                  int hi, double euler_dt) {
    const double inv_dx2 = st.inv_dx2;
    const double inv_2dx = st.inv_2dx;
    const double chi = st.chi;
    const double eps = st.eps;
    const double* nc = st.node_coeff.data();
    const double* fc = st.flux_coeff.data();
    double sum = 0.0;
    for (int j = lo; j <= hi; ++j) {
        const double d2 = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * inv_dx2;
        double acc;
        if constexpr (FORM == EquationForm::Divergence) {
            acc = (fc[j] * (u[j + 1] - u[j]) - fc[j - 1] * (u[j] - u[j - 1])) *
                  inv_dx2;
        } else if constexpr (FORM == EquationForm::Barenblatt) {
            acc = chi * (d2 < 0.0 ? 1.0 + eps : 1.0) * d2;
        } else {
            acc = (COEFF == Coeff::PerNode ? nc[j] : chi) * d2;
        }
        if constexpr (HAS_TERMS) {
            const double d1 = (u[j + 1] - u[j - 1]) * inv_2dx;
            for (const TermOp& t : st.terms) {
                acc += t.lam * t.pu(u[j]) * t.pd1(d1) * t.pd2(d2);
            }
        }
        const double v = EULER ? u[j] + euler_dt * acc : acc;
        out[j] = v;
        sum += v;
    }
    return sum;
}

template <EquationForm FORM, Coeff COEFF, bool HAS_TERMS>
double sweep_form(const Stencil& st, const double* u, double* out, int lo,
                  int hi, double euler_dt) {
    return euler_dt != 0.0
               ? sweep_impl<FORM, COEFF, HAS_TERMS, true>(st, u, out, lo, hi,
                                                          euler_dt)
               : sweep_impl<FORM, COEFF, HAS_TERMS, false>(st, u, out, lo, hi,
                                                           euler_dt);
}

} // namespace

double sweep(const Stencil& st, const double* u, double* out, int lo, int hi,
             double euler_dt) {
    const bool terms = !st.terms.empty();
    switch (st.form) {
        case EquationForm::Divergence:
            return terms ? sweep_form<EquationForm::Divergence, Coeff::PerNode,
                                      true>(st, u, out, lo, hi, euler_dt)
                         : sweep_form<EquationForm::Divergence, Coeff::PerNode,
                                      false>(st, u, out, lo, hi, euler_dt);
        case EquationForm::Barenblatt:
            return sweep_form<EquationForm::Barenblatt, Coeff::Constant, false>(
                st, u, out, lo, hi, euler_dt);
        case EquationForm::Standard:
        default:
            if (st.node_coeff.empty()) {
                return terms
                           ? sweep_form<EquationForm::Standard, Coeff::Constant,
                                        true>(st, u, out, lo, hi, euler_dt)
                           : sweep_form<EquationForm::Standard, Coeff::Constant,
                                        false>(st, u, out, lo, hi, euler_dt);
            }
            return terms ? sweep_form<EquationForm::Standard, Coeff::PerNode,
                                      true>(st, u, out, lo, hi, euler_dt)
                         : sweep_form<EquationForm::Standard, Coeff::PerNode,
                                      false>(st, u, out, lo, hi, euler_dt);
    }
}

} // namespace rgflow::detail
