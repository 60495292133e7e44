#pragma once

// Umbrella header.

#include "ritzsym/bounds.hpp"
#include "ritzsym/cases.hpp"
#include "ritzsym/eigensolvers.hpp"
#include "ritzsym/errors.hpp"
#include "ritzsym/lanczos.hpp"
#include "ritzsym/matrix_market.hpp"
#include "ritzsym/operators.hpp"
#include "ritzsym/quadrature.hpp"
#include "ritzsym/report.hpp"
#include "ritzsym/symmetry.hpp"
