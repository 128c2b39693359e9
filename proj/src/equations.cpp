#include "rgflow/equations.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kernel.hpp"
#include "rgflow/errors.hpp"

namespace rgflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Scans one period to bound the range of an arbitrary evaluator.
PeriodicCoefficient with_sampled_bounds(std::function<double(double)> eval,
                                        double period) {
    const int n = 65536;
    double lo = eval(0.0), hi = lo;
    for (int i = 1; i < n; ++i) {
        const double v = eval(period * i / n);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    PeriodicCoefficient g;
    g.evaluator = std::move(eval);
    g.period = period;
    g.inf_val = lo;
    g.sup_val = hi;
    g.sup_abs = std::max(std::abs(lo), std::abs(hi));
    return g;
}

double triangle_wave(double x) {
    double r = std::fmod(x / std::numbers::pi, 2.0);
    if (r < 0.0) r += 2.0;
    return 1.0 - 2.0 * std::abs(r - 1.0);
}

} // namespace

PeriodicCoefficient builtin_g(const std::string& name) {
    if (name == "g1") {
        return {[](double x) { return std::cos(x); }, kTwoPi, 1.0, -1.0, 1.0};
    }
    if (name == "g2") {
        auto f = [](double x) {
            return (std::cos(x) + std::sin(2.0 * x) + std::cos(4.0 * x)) / 2.72;
        };
        return with_sampled_bounds(f, kTwoPi);
    }
    if (name == "g3") {
        return {triangle_wave, kTwoPi, 1.0, -1.0, 1.0};
    }
    throw std::invalid_argument("unknown periodic coefficient '" + name + "'");
}

PeriodicCoefficient fourier_g(std::span<const double> cos_coeffs,
                              std::span<const double> sin_coeffs) {
    if (cos_coeffs.empty() && sin_coeffs.empty()) {
        throw std::invalid_argument("fourier coefficient lists are both empty");
    }
    std::vector<double> cc(cos_coeffs.begin(), cos_coeffs.end());
    std::vector<double> sc(sin_coeffs.begin(), sin_coeffs.end());
    auto f = [cc, sc](double x) {
        double v = 0.0;
        for (size_t k = 0; k < cc.size(); ++k) v += cc[k] * std::cos((k + 1) * x);
        for (size_t k = 0; k < sc.size(); ++k) v += sc[k] * std::sin((k + 1) * x);
        return v;
    };
    return with_sampled_bounds(f, kTwoPi);
}

PeriodicCoefficient no_g() {
    return {[](double) { return 0.0; }, kTwoPi, 0.0, 0.0, 0.0};
}

TermClass classify(const MonomialTerm& term) {
    const double d = term.degree();
    if (d > 0.0) return TermClass::Irrelevant;
    if (d < 0.0) return TermClass::Relevant;
    return TermClass::Marginal;
}

void validate(const EquationSpec& spec) {
    if (spec.mu != 0.0) {
        const double worst =
            spec.mu >= 0.0 ? spec.mu * spec.g.inf_val : spec.mu * spec.g.sup_val;
        if (!(1.0 + worst > 0.0)) {
            throw std::invalid_argument(
                "ellipticity violated: 1 + mu*g reaches " +
                std::to_string(1.0 + worst));
        }
    }
    if (spec.form == EquationForm::Barenblatt) {
        if (spec.mu != 0.0 || !spec.terms.empty()) {
            throw std::invalid_argument(
                "Barenblatt form requires mu = 0 and no monomial terms");
        }
        if (spec.epsilon < 0.0) {
            throw std::invalid_argument("Barenblatt epsilon must be >= 0");
        }
    }
    for (const auto& t : spec.terms) {
        if (t.a < 0.0 || t.b < 0.0 || t.c < 0.0) {
            throw std::invalid_argument("monomial exponents must be >= 0");
        }
    }
}

RGCoefficients initial_coefficients(const EquationSpec& spec) {
    RGCoefficients c;
    c.lambdas.reserve(spec.terms.size());
    for (const auto& t : spec.terms) c.lambdas.push_back(t.coeff);
    return c;
}

FieldGenerator initial_condition(const std::string& name, double amplitude,
                                 double width) {
    if (!(width > 0.0)) {
        throw std::invalid_argument("initial-condition width must be positive");
    }
    auto sample = [](const Grid& g, auto&& fn) {
        std::vector<double> v(g.count);
        for (int j = 0; j < g.count; ++j) v[j] = fn(g.node(j));
        return make_field(g, std::move(v));
    };
    auto bump = [](double s) {
        const double s2 = s * s;
        return s2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s2)) : 0.0;
    };
    if (name == "gauss") {
        return [=](const Grid& g) {
            return sample(g, [=](double x) {
                return amplitude * std::exp(-x * x / width);
            });
        };
    }
    if (name == "bump") {
        return [=](const Grid& g) {
            return sample(g, [=](double x) { return amplitude * bump(x / width); });
        };
    }
    if (name == "double_bump") {
        // humps at +-3w/7 with half-width 4w/7: supports overlap so the
        // centre stays positive, but the shape dips there
        return [=](const Grid& g) {
            return sample(g, [=](double x) {
                const double c = 3.0 * width / 7.0;
                const double h = 4.0 * width / 7.0;
                return amplitude * (bump((x - c) / h) + bump((x + c) / h));
            });
        };
    }
    throw std::invalid_argument("unknown initial condition '" + name + "'");
}

Field rhs(const EquationSpec& spec, const RGCoefficients& coeffs,
          const Field& u) {
    if (u.grid.count < 3) {
        throw std::invalid_argument("rhs needs at least 3 nodes");
    }
    validate(spec);
    const detail::Stencil st = detail::build_stencil(
        spec, coeffs, u.grid.spacing, u.grid.count, u.grid.center_index());
    std::vector<double> out(u.values.size(), 0.0);
    detail::sweep(st, u.values.data(), out.data(), 1, u.grid.count - 2, 0.0);
    for (int j = 0; j < u.grid.count; ++j) {
        if (!std::isfinite(out[j])) throw BlowUpError(0, 1.0, u.grid.node(j));
    }
    return Field{u.grid, std::move(out)};
}

} // namespace rgflow
