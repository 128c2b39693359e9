#pragma once

#include <span>
#include <vector>

namespace rgflow {

// Uniform symmetric 1-D mesh. count is odd so that x = 0 is always a
// node: x_j = (j - center_index) * spacing.
struct Grid {
    double spacing = 1.0;
    int count = 3;

    int center_index() const { return (count - 1) / 2; }
    double node(int j) const { return (j - center_index()) * spacing; }
    double half_width() const { return center_index() * spacing; }

    bool operator==(const Grid&) const = default;
};

// spacing = 2 * half_width / (count - 1); count must be odd and >= 3.
Grid make_grid(double half_width, int count);

// Real-valued samples on a Grid. Every public operation that returns a
// Field guarantees finite values.
struct Field {
    Grid grid;
    std::vector<double> values;
};

// Validates length and finiteness.
Field make_field(Grid grid, std::vector<double> values);
Field zero_field(const Grid& grid);

// Appends k zeros on each side; spacing and the x = 0 node are preserved.
Field extend_with_zeros(const Field& f, int k);

double center_value(const Field& f);

// Rectangle rule: spacing * sum(values). Exact for the discrete
// conservation identities of the zero-padded 3-point stencil.
double mass(const Field& f);

enum class Norm { L1, Linf };

// ||f - g|| / ||f||, with g first resampled onto f's grid (zero outside
// its support). Throws ZeroNormError when ||f|| = 0.
double rel_diff(const Field& f, const Field& g, Norm norm);

// Linear interpolation of f at the target nodes, zero outside f's
// domain. Identity when target == f.grid.
Field resample(const Field& f, const Grid& target);

} // namespace rgflow
