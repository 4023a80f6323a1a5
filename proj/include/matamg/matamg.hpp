#pragma once

/// Umbrella header for the smoothed-aggregation multigrid library.

#include <matamg/aggregation.hpp>
#include <matamg/coarse_solve.hpp>
#include <matamg/exports.hpp>
#include <matamg/fem.hpp>
#include <matamg/filtering.hpp>
#include <matamg/hierarchy.hpp>
#include <matamg/material_tensor.hpp>
#include <matamg/matrix_market.hpp>
#include <matamg/pcg.hpp>
#include <matamg/smoothers.hpp>
#include <matamg/sparse_matrix.hpp>
#include <matamg/strength.hpp>
#include <matamg/vcycle.hpp>
