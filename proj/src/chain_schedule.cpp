#include "qso/chain_schedule.hpp"

#include <string>

#include "qso/error.hpp"

namespace qso {

ChainSchedule::ChainSchedule(Shape shape, std::vector<ScheduleStep> steps)
    : shape_(shape), steps_(std::move(steps)) {
  if (steps_.empty()) {
    throw Error(ErrorCode::EmptyVector, "schedule needs at least one step");
  }
  m_ = steps_.front().heredity.dim();
  for (std::size_t n = 0; n < steps_.size(); ++n) {
    const ScheduleStep& s = steps_[n];
    if (s.heredity.dim() != m_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "schedule step " + std::to_string(n + 1) + " has dimension " +
                      std::to_string(s.heredity.dim()) + ", expected " + std::to_string(m_));
    }
    if (s.interbreeding && s.interbreeding->dim() != m_) {
      throw Error(ErrorCode::DimensionMismatch,
                  "interbreeding matrix of schedule step " + std::to_string(n + 1) +
                      " has dimension " + std::to_string(s.interbreeding->dim()) +
                      ", expected " + std::to_string(m_));
    }
  }
}

ChainSchedule ChainSchedule::constant(ScheduleStep step) {
  std::vector<ScheduleStep> one;
  one.push_back(std::move(step));
  return ChainSchedule(Shape::kConstant, std::move(one));
}

ChainSchedule ChainSchedule::finite(std::vector<ScheduleStep> steps) {
  return ChainSchedule(Shape::kFinite, std::move(steps));
}

ChainSchedule ChainSchedule::periodic(std::vector<ScheduleStep> steps) {
  return ChainSchedule(Shape::kPeriodic, std::move(steps));
}

const ScheduleStep& ChainSchedule::at(std::uint64_t n) const {
  switch (shape_) {
    case Shape::kConstant:
      return steps_.front();
    case Shape::kFinite:
      if (n >= steps_.size()) {
        throw Error(ErrorCode::ScheduleExhausted,
                    "step " + std::to_string(n) + " requested from a schedule of length " +
                        std::to_string(steps_.size()));
      }
      return steps_[n];
    case Shape::kPeriodic:
      return steps_[n % steps_.size()];
  }
  return steps_.front();  // unreachable
}

std::optional<std::uint64_t> ChainSchedule::length() const noexcept {
  if (shape_ == Shape::kFinite) return steps_.size();
  return std::nullopt;
}

}  // namespace qso
