#pragma once

#include <cstddef>

namespace conelab {

// Central numerical tolerances and discretization defaults. Everything the
// library treats as "equal", "unit", or "flat" is decided here, so that a
// single configuration (e.g. from the CLI) governs all modules.
struct Tolerances {
  double unit_norm = 1e-12;        // |x| == 1 acceptance for sphere points
  double trig = 1e-9;              // spherical triangle self-consistency
  double angle = 1e-9;             // junction angle checks (120/180 degrees)
  double degenerate = 1e-12;       // sin(theta) floor for tangents/slerp
  double length_preserve = 1e-12;  // exact-length bookkeeping
  double hausdorff_step = 1e-3;    // arc sampling step, in units of r
  double alpha_floor = 1e-6;       // discard ratio samples below this alpha+
  double quad_rel = 1e-9;          // adaptive quadrature relative target
};

Tolerances& tolerances();

}  // namespace conelab
