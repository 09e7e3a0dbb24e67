#pragma once

// Umbrella header.

#include "setvar/common.hpp"
#include "setvar/config.hpp"
#include "setvar/convex.hpp"
#include "setvar/fbm.hpp"
#include "setvar/io.hpp"
#include "setvar/path.hpp"
#include "setvar/quadrature.hpp"
#include "setvar/report.hpp"
#include "setvar/rng.hpp"
#include "setvar/steiner.hpp"
#include "setvar/suites.hpp"
#include "setvar/svcalc.hpp"
#include "setvar/variation.hpp"
#include "setvar/young.hpp"
