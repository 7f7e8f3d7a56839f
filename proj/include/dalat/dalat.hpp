#pragma once

// Discrete analytic lattice toolkit: basis polynomials and difference
// operators on the right half-lattice, state-space realizations of rational
// discrete analytic functions, Schur-class kernels from coisometric
// colligations, and mesh-refinement limits. Everything is templated over an
// exact Gaussian-rational scalar and a complex-double scalar.

#include "dalat/basis.hpp"
#include "dalat/json_io.hpp"
#include "dalat/lattice.hpp"
#include "dalat/matrix.hpp"
#include "dalat/mesh.hpp"
#include "dalat/numerics.hpp"
#include "dalat/realization.hpp"
#include "dalat/scalar.hpp"
#include "dalat/schur.hpp"
#include "dalat/series.hpp"
#include "dalat/verify.hpp"
