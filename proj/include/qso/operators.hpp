#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qso/chain_schedule.hpp"
#include "qso/cubic_matrix.hpp"
#include "qso/simplex_point.hpp"
#include "qso/stochastic_matrix.hpp"

namespace qso {

// Evolution law for trajectories: Bernoulli draws the second parent from the
// current population (q_ij = x_j); Markov uses the schedule's interbreeding
// matrix.
enum class EvolutionMode { kBernoulli, kMarkov };

// Summation path for the quadratic form. kFull is the literal double sum
// over all (i, j) and is the default everywhere; kSymmetric folds the
// p_{ij,k} = p_{ji,k} pairs and exists so tests can cross-check the two
// rounding paths.
enum class BernoulliSum { kFull, kSymmetric };

// One generation of the Bernoulli quadratic stochastic operator:
// (Vx)_k = sum_{i,j} p_{ij,k} x_i x_j.
SimplexPoint bernoulli_apply(const CubicHeredityMatrix& p, const SimplexPoint& x,
                             BernoulliSum sum = BernoulliSum::kFull);

// One generation of the Markov quadratic stochastic operator under
// Pi-panmixia: (V_Pi x)_k = sum_{i,j} p_{ij,k} q_{ij} x_i.
SimplexPoint markov_apply(const CubicHeredityMatrix& p, const StochasticMatrix& pi,
                          const SimplexPoint& x);

// The action Pi |-> Pi P on stochastic matrices: row k of the result is
// q_k P_k, the k-th row of Pi times the k-th slice of the tensor.
StochasticMatrix pi_action(const StochasticMatrix& pi, const CubicHeredityMatrix& p);

// One-step transition matrix Q(x) of the chain a Bernoulli trajectory
// induces: pi_action with every row of Pi equal to x, i.e. row i = x P_i.
StochasticMatrix induced_transition(const CubicHeredityMatrix& p, const SimplexPoint& x);

// The factored form V_Pi x = x (Pi P); agrees with markov_apply within
// rounding (the library's cheapest full consistency check).
SimplexPoint markov_apply_via_matrix(const CubicHeredityMatrix& p, const StochasticMatrix& pi,
                                     const SimplexPoint& x);

struct Trajectory {
  // x^(0), ..., x^(N).
  std::vector<SimplexPoint> points;
  // Q(0), ..., Q(N-1) when recording was requested: the one-step transition
  // matrices satisfying points[n+1] == points[n] * transition_log[n] up to
  // rounding.
  std::optional<std::vector<StochasticMatrix>> transition_log;
};

// Iterates the schedule from x0 for the given number of generations.
// Bernoulli mode ignores the schedule's interbreeding matrices. Trajectories
// renormalize after every step, so points drift-free over arbitrarily long
// runs.
Trajectory run_trajectory(const ChainSchedule& schedule, const SimplexPoint& x0,
                          std::uint64_t steps, EvolutionMode mode,
                          bool record_transitions = false);

}  // namespace qso
