//==============================================================================
// sqgfront.hpp — umbrella header for the SQG front solver library.
//==============================================================================
#pragma once

#include "sqgfront/grid.hpp"
#include "sqgfront/multiplier.hpp"
#include "sqgfront/norms.hpp"
#include "sqgfront/symbols.hpp"
#include "sqgfront/symbol_quadrature.hpp"
#include "sqgfront/nonlinearity.hpp"
#include "sqgfront/paraproduct.hpp"
#include "sqgfront/evolution.hpp"
#include "sqgfront/dispersion.hpp"
#include "sqgfront/io.hpp"
