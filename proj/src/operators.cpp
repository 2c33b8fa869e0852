#include "qso/operators.hpp"

#include <string>
#include <vector>

#include "qso/detail/step_kernels.hpp"
#include "qso/error.hpp"

namespace qso {
namespace {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": dimensions " + std::to_string(a) + " and " +
                    std::to_string(b) + " do not agree");
  }
}

SimplexPoint finish_step(std::vector<double> out) {
  detail::renormalize_step(out);
  // The division above landed the sum within a few ulps of 1, so validation
  // passes without touching the coordinates again.
  return SimplexPoint::validated(std::move(out));
}

}  // namespace

SimplexPoint bernoulli_apply(const CubicHeredityMatrix& p, const SimplexPoint& x,
                             BernoulliSum sum) {
  require_same_dim(p.dim(), x.dim(), "bernoulli_apply");
  std::vector<double> in(x.coords().begin(), x.coords().end());
  std::vector<double> out(p.dim(), 0.0);
  if (sum == BernoulliSum::kFull) {
    detail::bernoulli_step(p, in, out);
  } else {
    detail::bernoulli_step_symmetric(p, in, out);
  }
  return finish_step(std::move(out));
}

SimplexPoint markov_apply(const CubicHeredityMatrix& p, const StochasticMatrix& pi,
                          const SimplexPoint& x) {
  require_same_dim(p.dim(), pi.dim(), "markov_apply");
  require_same_dim(p.dim(), x.dim(), "markov_apply");
  std::vector<double> in(x.coords().begin(), x.coords().end());
  std::vector<double> out(p.dim(), 0.0);
  detail::markov_step(p, pi, in, out);
  return finish_step(std::move(out));
}

StochasticMatrix pi_action(const StochasticMatrix& pi, const CubicHeredityMatrix& p) {
  require_same_dim(pi.dim(), p.dim(), "pi_action");
  const std::size_t m = p.dim();
  std::vector<double> out(m * m, 0.0);
  // Row k of the result is q_k P_k; unrolling over the tensor directly
  // avoids materializing each slice.
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      const double qkj = pi.at(k, j);
      if (qkj == 0.0) continue;
      for (std::size_t c = 0; c < m; ++c) {
        out[k * m + c] += qkj * p.at(k, j, c);
      }
    }
  }
  return StochasticMatrix::from_arithmetic(m, std::move(out));
}

StochasticMatrix induced_transition(const CubicHeredityMatrix& p, const SimplexPoint& x) {
  require_same_dim(p.dim(), x.dim(), "induced_transition");
  return pi_action(StochasticMatrix::constant_rows(x), p);
}

SimplexPoint markov_apply_via_matrix(const CubicHeredityMatrix& p, const StochasticMatrix& pi,
                                     const SimplexPoint& x) {
  require_same_dim(p.dim(), pi.dim(), "markov_apply_via_matrix");
  require_same_dim(p.dim(), x.dim(), "markov_apply_via_matrix");
  return left_action(x, pi_action(pi, p));
}

Trajectory run_trajectory(const ChainSchedule& schedule, const SimplexPoint& x0,
                          std::uint64_t steps, EvolutionMode mode, bool record_transitions) {
  require_same_dim(schedule.dim(), x0.dim(), "run_trajectory");
  if (const auto len = schedule.length(); len && *len < steps) {
    throw Error(ErrorCode::ScheduleExhausted,
                "schedule provides " + std::to_string(*len) + " steps, " +
                    std::to_string(steps) + " requested");
  }

  Trajectory trajectory;
  trajectory.points.reserve(static_cast<std::size_t>(steps) + 1);
  trajectory.points.push_back(x0);
  if (record_transitions) {
    trajectory.transition_log.emplace();
    trajectory.transition_log->reserve(static_cast<std::size_t>(steps));
  }

  for (std::uint64_t n = 0; n < steps; ++n) {
    const ScheduleStep& step = schedule.at(n);
    const SimplexPoint& x = trajectory.points.back();
    if (mode == EvolutionMode::kMarkov && !step.interbreeding) {
      throw Error(ErrorCode::DimensionMismatch,
                  "markov mode requires an interbreeding matrix at schedule step " +
                      std::to_string(n + 1));
    }
    if (record_transitions) {
      const StochasticMatrix& pi = mode == EvolutionMode::kBernoulli
                                       ? StochasticMatrix::constant_rows(x)
                                       : *step.interbreeding;
      trajectory.transition_log->push_back(pi_action(pi, step.heredity));
    }
    SimplexPoint next = mode == EvolutionMode::kBernoulli
                            ? bernoulli_apply(step.heredity, x)
                            : markov_apply(step.heredity, *step.interbreeding, x);
    trajectory.points.push_back(std::move(next));
  }
  return trajectory;
}

}  // namespace qso
