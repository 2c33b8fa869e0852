#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qso/cubic_matrix.hpp"
#include "qso/stochastic_matrix.hpp"

namespace qso {

// One generation's worth of model data: the heredity tensor P^{(n,n+1)} and,
// for Markov-mode evolution, the interbreeding matrix Pi^{(n,n+1)}. Bernoulli
// mode ignores the interbreeding member.
struct ScheduleStep {
  CubicHeredityMatrix heredity;
  std::optional<StochasticMatrix> interbreeding;
};

// Time-indexed source of ScheduleSteps driving a non-homogeneous chain.
// Three shapes cover the needed generality: the same step forever, a finite
// list, and a finite list repeated cyclically. A constant schedule stores
// its step once, however many generations are run.
class ChainSchedule {
 public:
  static ChainSchedule constant(ScheduleStep step);
  static ChainSchedule finite(std::vector<ScheduleStep> steps);
  static ChainSchedule periodic(std::vector<ScheduleStep> steps);

  // Step driving generation n -> n+1. A finite schedule asked beyond its
  // length raises ScheduleExhausted.
  const ScheduleStep& at(std::uint64_t n) const;

  // Number of steps a finite schedule can serve; nullopt when unbounded.
  std::optional<std::uint64_t> length() const noexcept;

  std::size_t dim() const noexcept { return m_; }

 private:
  enum class Shape { kConstant, kFinite, kPeriodic };

  ChainSchedule(Shape shape, std::vector<ScheduleStep> steps);

  Shape shape_;
  std::vector<ScheduleStep> steps_;
  std::size_t m_;
};

}  // namespace qso
