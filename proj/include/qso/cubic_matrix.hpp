#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qso/stochastic_matrix.hpp"

namespace qso {

// Heredity coefficients p_{ij,k}: an m x m x m tensor where p_{ij,k} is the
// probability that parents of species i and j produce offspring of species
// k. Invariants: p_{ij,k} >= 0, p_{ij,k} == p_{ji,k} exactly, and each
// (i,j)-fiber sums to 1 over k within kSumTolerance. Storage is row-major
// with k fastest: entries[(i*m + j)*m + k].
class CubicHeredityMatrix {
 public:
  // Full validation. Symmetry is an exact structural identity, so it is
  // checked bit-for-bit; negativity is exact too (no clamping — heredity
  // tables are authored data, not arithmetic output).
  static CubicHeredityMatrix validated(std::size_t m, std::vector<double> entries);

  std::size_t dim() const noexcept { return m_; }

  // 0-based indices; p_{i+1 j+1, k+1} in the 1-based convention of messages.
  double at(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return entries_[(i * m_ + j) * m_ + k];
  }

  // Offspring distribution of the parent pair (i, j): the length-m fiber
  // over k.
  std::span<const double> fiber(std::size_t i, std::size_t j) const noexcept {
    return {entries_.data() + (i * m_ + j) * m_, m_};
  }

  // The stochastic block P_{i+1} with (P_i)_{jk} = p_{ij,k}. Every slice of
  // a valid tensor is a valid stochastic matrix.
  StochasticMatrix slice(std::size_t i) const;

  std::span<const double> entries() const noexcept { return entries_; }

  bool operator==(const CubicHeredityMatrix&) const = default;

 private:
  CubicHeredityMatrix(std::size_t m, std::vector<double> entries)
      : m_(m), entries_(std::move(entries)) {}

  std::size_t m_;
  std::vector<double> entries_;
};

}  // namespace qso
