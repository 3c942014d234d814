#pragma once

// Umbrella header for the hwkb library.

#include "hwkb/grid.hpp"
#include "hwkb/field.hpp"
#include "hwkb/kernels.hpp"
#include "hwkb/wkb.hpp"
#include "hwkb/solver.hpp"
#include "hwkb/diagnostics.hpp"
#include "hwkb/rate.hpp"
#include "hwkb/harness.hpp"
#include "hwkb/checks.hpp"
#include "hwkb/config.hpp"
