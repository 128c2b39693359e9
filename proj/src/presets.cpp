#include "rgflow/presets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rgflow {

namespace {

// centre value of the unit-mass heat kernel at t = 1
const double kKernelCenter = 1.0 / std::sqrt(4.0 * std::numbers::pi);

void set_ic(RunConfig& cfg, int which) {
    switch (which) {
        case 1: // gauss, exactly the heat kernel at t = 1 shape
            cfg.ic_name = "gauss";
            cfg.ic_amplitude = kKernelCenter;
            cfg.ic_width = 4.0;
            break;
        case 2: // compactly supported bump on [-5, 5]
            cfg.ic_name = "bump";
            cfg.ic_amplitude = kKernelCenter;
            cfg.ic_width = 5.0;
            break;
        case 3: // double bump on [-4, 4]; centre value 2 e^{-9/7} A
            cfg.ic_name = "double_bump";
            cfg.ic_amplitude = kKernelCenter / (2.0 * std::exp(-9.0 / 7.0));
            cfg.ic_width = 4.0;
            break;
        default:
            throw std::invalid_argument("bad initial-condition id");
    }
}

} // namespace

RunConfig table_preset(int row) {
    RunConfig cfg;
    switch (row) {
        case 1:  cfg.mu = 0.1;   cfg.g_name = "g1"; set_ic(cfg, 1); break;
        case 2:  cfg.mu = 0.1;   cfg.g_name = "g1"; set_ic(cfg, 2); break;
        case 3:  cfg.mu = -0.15; cfg.g_name = "g1"; set_ic(cfg, 1); break;
        case 4:  cfg.mu = 0.1;   cfg.g_name = "g1"; set_ic(cfg, 3); break;
        case 5:
            cfg.mu = 0.1; cfg.g_name = "g1";
            cfg.terms = {{0.1, 4, 0, 0}};
            set_ic(cfg, 1);
            break;
        case 6:
            cfg.mu = 0.1; cfg.g_name = "g1";
            cfg.terms = {{0.1, 2, 1, 0}};
            set_ic(cfg, 1);
            break;
        case 7:
            cfg.mu = 0.1; cfg.g_name = "g2";
            cfg.terms = {{0.3, 8, 0, 0}};
            set_ic(cfg, 3);
            break;
        case 8:  cfg.mu = 0.8;   cfg.g_name = "g1"; set_ic(cfg, 1); break;
        case 9:  cfg.mu = 0.1;   cfg.g_name = "g3"; set_ic(cfg, 1); break;
        case 10: cfg.mu = 0.8;   cfg.g_name = "g3"; set_ic(cfg, 1); break;
        case 11: set_ic(cfg, 1); break;
        case 12: set_ic(cfg, 2); break;
        case 13: set_ic(cfg, 3); break;
        case 14:
            cfg.mu = 0.1; cfg.g_name = "g1";
            cfg.terms = {{0.1, 1, 1, 1}};
            set_ic(cfg, 1);
            break;
        case 15:
            cfg.mu = 0.6; cfg.g_name = "g3";
            cfg.terms = {{0.1, 0, 1, 1}};
            set_ic(cfg, 2);
            break;
        default:
            throw std::invalid_argument("table rows run from 1 to 15, got " +
                                        std::to_string(row));
    }
    return cfg;
}

} // namespace rgflow
