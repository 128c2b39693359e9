#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "rgflow/errors.hpp"
#include "rgflow/grid_field.hpp"

using namespace rgflow;

namespace {

Field sample(const Grid& g, double (*fn)(double)) {
    std::vector<double> v(g.count);
    for (int j = 0; j < g.count; ++j) v[j] = fn(g.node(j));
    return make_field(g, std::move(v));
}

double kernel1(double x) {
    return std::exp(-x * x / 4.0) / std::sqrt(4.0 * std::numbers::pi);
}

// tiny deterministic LCG for the property checks
struct Lcg {
    unsigned long long s = 0x9e3779b97f4a7c15ull;
    double next() {
        s = s * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<double>((s >> 11) & 0xffffffffffffull) / 281474976710656.0;
    }
};

} // namespace

TEST_CASE("make_grid basics") {
    const Grid g = make_grid(5.0, 27);
    CHECK(g.spacing == doctest::Approx(0.38461538461538464).epsilon(1e-15));
    CHECK(g.count == 27);
    CHECK(g.center_index() == 13);
    CHECK(g.node(13) == 0.0);
    CHECK(g.node(0) == doctest::Approx(-5.0));
    CHECK(g.node(26) == doctest::Approx(5.0));

    const Grid g3 = make_grid(1.0, 3);
    CHECK(g3.node(0) == doctest::Approx(-1.0));
    CHECK(g3.node(1) == 0.0);
    CHECK(g3.node(2) == doctest::Approx(1.0));

    const Grid g9 = make_grid(5.0, 9);
    CHECK(g9.spacing == doctest::Approx(1.25));
    CHECK(g9.node(4) == 0.0);

    CHECK_THROWS_AS(make_grid(5.0, 28), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(5.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 27), std::invalid_argument);
}

TEST_CASE("make_field validation") {
    const Grid g = make_grid(1.0, 3);
    CHECK_THROWS_AS(make_field(g, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_field(g, {1.0, std::nan(""), 0.0}),
                    std::invalid_argument);
}

TEST_CASE("extend_with_zeros") {
    const Field one{Grid{1.0, 1}, {1.0}};
    const Field padded = extend_with_zeros(one, 1);
    CHECK(padded.values == std::vector<double>{0.0, 1.0, 0.0});
    CHECK(padded.grid.count == 3);
    CHECK(padded.grid.center_index() == 1);
    CHECK(padded.grid.spacing == 1.0);

    const Field f = sample(make_grid(5.0, 27), kernel1);
    const Field fp = extend_with_zeros(f, 3);
    CHECK(fp.grid.count == 33);
    CHECK(mass(fp) == mass(f)); // zeros add no mass, bit-exact
    CHECK(center_value(fp) == center_value(f));
    CHECK(fp.grid.node(fp.grid.center_index()) == 0.0);

    CHECK_THROWS_AS(extend_with_zeros(f, 0), std::invalid_argument);
}

TEST_CASE("center_value and mass") {
    const Grid g = make_grid(5.0, 27);
    const Field gauss = sample(g, [](double x) { return std::exp(-x * x / 4.0); });
    CHECK(center_value(gauss) == 1.0);
    CHECK(center_value(zero_field(g)) == 0.0);
    CHECK(center_value(sample(g, kernel1)) ==
          doctest::Approx(0.28209479177387814).epsilon(1e-15));

    const Field ones = make_field(g, std::vector<double>(27, 1.0));
    CHECK(mass(ones) == doctest::Approx(10.384615384615385).epsilon(1e-15));
    CHECK(mass(zero_field(g)) == 0.0);

    // unit-mass discrete Gaussian on a wide grid: quadrature error far
    // below the grid scale
    const Field k = sample(make_grid(10.0, 201), kernel1);
    CHECK(mass(k) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("resample") {
    const Grid g = make_grid(5.0, 27);
    const Field f = sample(g, kernel1);
    SUBCASE("identity on own grid") {
        const Field r = resample(f, g);
        CHECK(r.values == f.values);
    }
    SUBCASE("linear data reproduced at midpoints") {
        const Field ramp = sample(g, [](double x) { return 2.0 * x + 3.0; });
        const Grid fine = make_grid(5.0, 53); // nodes include midpoints
        const Field r = resample(ramp, fine);
        for (int j = 1; j + 1 < fine.count; ++j) {
            CHECK(r.values[j] ==
                  doctest::Approx(2.0 * fine.node(j) + 3.0).epsilon(1e-12));
        }
    }
    SUBCASE("zero outside the source domain") {
        const Grid wide = make_grid(20.0, 81);
        const Field r = resample(f, wide);
        CHECK(r.values.front() == 0.0);
        CHECK(r.values.back() == 0.0);
    }
    SUBCASE("interpolation stays inside [min, max]") {
        Lcg rng;
        Grid src = make_grid(3.0, 17);
        std::vector<double> v(src.count);
        double lo = 1e300, hi = -1e300;
        for (double& x : v) {
            x = rng.next() * 2.0 - 1.0;
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
        const Field rf = make_field(src, v);
        const Field out = resample(rf, make_grid(4.0, 101));
        for (double x : out.values) {
            CHECK(x >= std::min(lo, 0.0) - 1e-15);
            CHECK(x <= std::max(hi, 0.0) + 1e-15);
        }
    }
}

TEST_CASE("rel_diff") {
    const Grid g = make_grid(5.0, 27);
    const Field f = sample(g, [](double x) { return std::exp(-x * x / 4.0); });

    CHECK(rel_diff(f, f, Norm::L1) == 0.0);
    CHECK(rel_diff(f, f, Norm::Linf) == 0.0);
    CHECK(rel_diff(f, zero_field(g), Norm::Linf) == 1.0);

    Field scaled = f;
    for (double& v : scaled.values) v *= 1.1;
    CHECK(rel_diff(f, scaled, Norm::Linf) == doctest::Approx(0.1).epsilon(1e-12));

    SUBCASE("invariant under common scaling") {
        Field f2 = f, g2 = scaled;
        for (double& v : f2.values) v *= 7.25;
        for (double& v : g2.values) v *= 7.25;
        CHECK(rel_diff(f2, g2, Norm::L1) ==
              doctest::Approx(rel_diff(f, scaled, Norm::L1)).epsilon(1e-12));
        CHECK(rel_diff(f2, g2, Norm::Linf) ==
              doctest::Approx(rel_diff(f, scaled, Norm::Linf)).epsilon(1e-12));
    }
    SUBCASE("zero reference norm") {
        CHECK_THROWS_AS(rel_diff(zero_field(g), f, Norm::L1), ZeroNormError);
    }
    SUBCASE("cross-grid comparison uses interpolation") {
        // same function sampled on a finer grid differs only by interpolation
        const Field fine =
            sample(make_grid(5.0, 129), [](double x) { return std::exp(-x * x / 4.0); });
        // dominated by the h^2/8 interpolation bound of the coarse grid:
        // (10/26)^2 / 8 * max|f''| = 0.0092
        CHECK(rel_diff(fine, f, Norm::Linf) < 0.012);
        CHECK(rel_diff(fine, f, Norm::Linf) > 0.0);
    }
}
