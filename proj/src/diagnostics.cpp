#include "rgflow/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rgflow/errors.hpp"

namespace rgflow {

namespace {

double simpson_inverse_mean(const PeriodicCoefficient& g, double mu,
                            int panels) {
    const double T = g.period;
    const double h = T / panels;
    auto f = [&](double x) { return 1.0 / (1.0 + mu * g.evaluator(x)); };
    double acc = f(0.0) + f(T);
    for (int i = 1; i < panels; ++i) {
        acc += (i % 2 == 1 ? 4.0 : 2.0) * f(i * h);
    }
    return acc * h / 3.0; // integral of 1/(1 + mu g) over one period
}

} // namespace

double harmonic_mean(const PeriodicCoefficient& g, double mu, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
    const double worst = mu >= 0.0 ? mu * g.inf_val : mu * g.sup_val;
    if (!(1.0 + worst > 0.0)) {
        throw std::invalid_argument("ellipticity violated: 1 + mu*g reaches " +
                                    std::to_string(1.0 + worst));
    }
    // 64 starting panels keep the triangle-wave kinks (period quarters)
    // on panel boundaries through every doubling.
    double prev = g.period / simpson_inverse_mean(g, mu, 64);
    for (int panels = 128; panels <= (1 << 24); panels *= 2) {
        const double cur = g.period / simpson_inverse_mean(g, mu, panels);
        if (std::abs(cur - prev) < tol) return cur;
        prev = cur;
    }
    return prev;
}

SigmaFit sigma_fit(const Field& profile, const FitWindow& window) {
    if (!(window.lo >= 0.0 && window.lo < window.hi && window.hi <= 1.0)) {
        throw std::invalid_argument("fit window must satisfy 0 <= lo < hi <= 1");
    }
    double peak = 0.0;
    for (double v : profile.values) peak = std::max(peak, v);
    if (!(peak > 0.0)) {
        throw InsufficientDataError("profile has no positive peak");
    }

    SigmaFit out;
    double sxx = 0.0, sxy = 0.0;
    std::vector<double> xs, ys;
    for (int j = 0; j < profile.grid.count; ++j) {
        const double v = profile.values[j] / peak;
        if (!(v > window.lo && v < window.hi)) continue;
        if (v <= 0.0) {
            ++out.excluded_nonpositive;
            continue;
        }
        const double x = profile.grid.node(j);
        const double X = 0.25 * x * x;
        const double Y = -std::log(v);
        sxx += X * X;
        sxy += X * Y;
        xs.push_back(X);
        ys.push_back(Y);
    }
    out.points_used = static_cast<int>(xs.size());
    if (out.points_used < 2) {
        throw InsufficientDataError("sigma fit needs at least 2 points, got " +
                                    std::to_string(out.points_used));
    }
    const double slope = sxy / sxx;
    if (!(slope > 0.0)) {
        throw InsufficientDataError("sigma fit produced a nonpositive slope");
    }
    out.sigma = 1.0 / slope;
    double rss = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - slope * xs[i];
        rss += r * r;
    }
    out.fit_residual = std::sqrt(rss / xs.size());
    return out;
}

Field gaussian_profile(double sigma, double amplitude, const Grid& grid) {
    if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
    const double norm =
        amplitude / std::sqrt(4.0 * std::numbers::pi * sigma);
    std::vector<double> vals(grid.count);
    for (int j = 0; j < grid.count; ++j) {
        const double x = grid.node(j);
        vals[j] = norm * std::exp(-x * x / (4.0 * sigma));
    }
    return make_field(grid, std::move(vals));
}

double barenblatt_alpha_first_order(double epsilon) {
    return 0.5 + epsilon / std::sqrt(2.0 * std::numbers::pi * std::numbers::e);
}

double relevant_alpha(double a) {
    if (!(a > 1.0 && a < 3.0)) {
        throw std::invalid_argument("relevant exponent must satisfy 1 < a < 3");
    }
    return 1.0 / (a - 1.0);
}

} // namespace rgflow
