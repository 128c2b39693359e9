#include "rgflow/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rgflow/errors.hpp"

namespace rgflow {

namespace {

void check_finite(const std::vector<double>& values) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("field contains a non-finite value");
        }
    }
}

double norm_of(const Field& f, Norm norm) {
    double acc = 0.0;
    if (norm == Norm::Linf) {
        for (double v : f.values) acc = std::max(acc, std::abs(v));
    } else {
        for (double v : f.values) acc += std::abs(v);
        acc *= f.grid.spacing;
    }
    return acc;
}

} // namespace

Grid make_grid(double half_width, int count) {
    if (count < 3 || count % 2 == 0) {
        throw std::invalid_argument("grid count must be odd and >= 3, got " +
                                    std::to_string(count));
    }
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw std::invalid_argument("grid half_width must be positive");
    }
    return Grid{2.0 * half_width / (count - 1), count};
}

Field make_field(Grid grid, std::vector<double> values) {
    if (static_cast<int>(values.size()) != grid.count) {
        throw std::invalid_argument("field length does not match grid count");
    }
    check_finite(values);
    return Field{grid, std::move(values)};
}

Field zero_field(const Grid& grid) {
    return Field{grid, std::vector<double>(grid.count, 0.0)};
}

Field extend_with_zeros(const Field& f, int k) {
    if (k < 1) throw std::invalid_argument("padding count must be >= 1");
    std::vector<double> out(f.values.size() + 2 * static_cast<size_t>(k), 0.0);
    std::copy(f.values.begin(), f.values.end(), out.begin() + k);
    return Field{Grid{f.grid.spacing, f.grid.count + 2 * k}, std::move(out)};
}

double center_value(const Field& f) {
    return f.values[f.grid.center_index()];
}

double mass(const Field& f) {
    double s = 0.0;
    for (double v : f.values) s += v;
    return f.grid.spacing * s;
}

Field resample(const Field& f, const Grid& target) {
    if (target == f.grid) return f;
    std::vector<double> out(target.count, 0.0);
    const int n = f.grid.count;
    const double inv_dx = 1.0 / f.grid.spacing;
    const int cf = f.grid.center_index();
    for (int i = 0; i < target.count; ++i) {
        const double pos = target.node(i) * inv_dx + cf;
        const double jf = std::floor(pos);
        const int j = static_cast<int>(jf);
        if (j < 0 || j >= n) continue;       // outside the domain -> 0
        const double frac = pos - jf;
        if (j == n - 1) {
            // exactly on (or rounding onto) the last node
            out[i] = (frac == 0.0) ? f.values[j] : 0.0;
        } else {
            out[i] = f.values[j] * (1.0 - frac) + f.values[j + 1] * frac;
        }
    }
    return Field{target, std::move(out)};
}

double rel_diff(const Field& f, const Field& g, Norm norm) {
    const double denom = norm_of(f, norm);
    if (denom == 0.0) {
        throw ZeroNormError("rel_diff: reference field has zero norm");
    }
    const Field gi = resample(g, f.grid);
    double acc = 0.0;
    if (norm == Norm::Linf) {
        for (int i = 0; i < f.grid.count; ++i) {
            acc = std::max(acc, std::abs(f.values[i] - gi.values[i]));
        }
    } else {
        for (int i = 0; i < f.grid.count; ++i) {
            acc += std::abs(f.values[i] - gi.values[i]);
        }
        acc *= f.grid.spacing;
    }
    return acc / denom;
}

} // namespace rgflow
