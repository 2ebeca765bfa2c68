// Umbrella header.
#pragma once

#include "fsolink/atmosphere.hpp"
#include "fsolink/budget.hpp"
#include "fsolink/errors.hpp"
#include "fsolink/geometry.hpp"
#include "fsolink/optics.hpp"
#include "fsolink/quantities.hpp"
#include "fsolink/scenario.hpp"
#include "fsolink/solver.hpp"
#include "fsolink/sweep.hpp"
#include "fsolink/table.hpp"
#include "fsolink/version.hpp"
