#include "qso/random.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "qso/error.hpp"

namespace qso {
namespace {

// Uniform double in the open interval (0, 1): the top 53 bits of the engine
// output, offset by half a step. Never returns 0 or 1, so -log(u) below is
// always finite and positive.
double unit_open(std::mt19937_64& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

// Exponential(1) weights normalized to sum 1 give a uniform (Dirichlet(1))
// sample on the simplex.
std::vector<double> dirichlet_weights(std::size_t m, std::mt19937_64& engine) {
  std::vector<double> w(m);
  double sum = 0.0;
  for (double& v : w) {
    v = -std::log(unit_open(engine));
    sum += v;
  }
  if (!(sum > 0.0)) {
    throw Error(ErrorCode::DegenerateSample, "all sampled weights vanished");
  }
  for (double& v : w) v /= sum;
  return w;
}

void require_dimension(std::size_t m) {
  if (m == 0) {
    throw Error(ErrorCode::InvalidDimension, "dimension must be at least 1");
  }
}

}  // namespace

SimplexPoint random_simplex(std::size_t m, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  return random_simplex(m, engine);
}

SimplexPoint random_simplex(std::size_t m, std::mt19937_64& engine) {
  require_dimension(m);
  return SimplexPoint::validated(dirichlet_weights(m, engine));
}

StochasticMatrix random_stochastic(std::size_t m, std::uint64_t seed) {
  require_dimension(m);
  std::mt19937_64 engine(seed);
  std::vector<double> entries;
  entries.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::vector<double> row = dirichlet_weights(m, engine);
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return StochasticMatrix::validated(m, std::move(entries));
}

CubicHeredityMatrix random_cubic(std::size_t m, std::uint64_t seed) {
  require_dimension(m);
  std::mt19937_64 engine(seed);
  std::vector<double> entries(m * m * m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const std::vector<double> fiber = dirichlet_weights(m, engine);
      for (std::size_t k = 0; k < m; ++k) {
        entries[(i * m + j) * m + k] = fiber[k];
        entries[(j * m + i) * m + k] = fiber[k];
      }
    }
  }
  return CubicHeredityMatrix::validated(m, std::move(entries));
}

}  // namespace qso
