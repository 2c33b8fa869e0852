#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "qso/cubic_matrix.hpp"
#include "qso/simplex_point.hpp"
#include "qso/stochastic_matrix.hpp"

namespace qso {

// Seeded generators for property testing. All three are deterministic
// functions of (m, seed): the same pair always reproduces the same object,
// on every platform (the engine is mt19937_64 with a fixed bit-to-double
// mapping, not the distribution templates of <random>, whose output is
// implementation-defined).

// Uniform point on the simplex (Dirichlet(1,...,1) via exponential spacings).
SimplexPoint random_simplex(std::size_t m, std::uint64_t seed);

// Same sampler drawing from a caller-owned engine; lets one seed drive a
// whole stream of points.
SimplexPoint random_simplex(std::size_t m, std::mt19937_64& engine);

// Each row drawn like random_simplex, independently.
StochasticMatrix random_stochastic(std::size_t m, std::uint64_t seed);

// Fibers drawn for parent pairs i <= j only, normalized over k, then
// mirrored to (j, i); symmetry therefore holds bit-exactly by construction.
CubicHeredityMatrix random_cubic(std::size_t m, std::uint64_t seed);

}  // namespace qso
