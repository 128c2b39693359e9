#pragma once

#include "rgflow/run_config.hpp"

namespace rgflow {

// The 15 stock simulations (mu, g, nonlinear term, initial condition).
// The three initial-condition shapes f1/f2/f3 are the gauss, bump and
// double_bump library functions, with amplitudes chosen so that every
// shape starts with centre value (4 pi)^{-1/2} -- the centre value of
// the unit-mass heat kernel at t = 1. With that normalization the
// prefactor A_n of a heat-equation run converges to the initial mass.
RunConfig table_preset(int row); // 1..15

constexpr int kTableRows = 15;

} // namespace rgflow
