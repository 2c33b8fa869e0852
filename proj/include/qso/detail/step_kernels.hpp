#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qso/cubic_matrix.hpp"
#include "qso/error.hpp"
#include "qso/ext_float.hpp"
#include "qso/numeric_format.hpp"
#include "qso/stochastic_matrix.hpp"
#include "qso/tolerances.hpp"

// One-generation evolution kernels, shared verbatim by the double lane
// (operators, f64 Cesaro estimates) and the extended lane (the long-horizon
// Zakharevich experiment). A single template instantiated for both scalar
// types guarantees the two lanes perform the same operations in the same
// order, which is what makes them bit-compatible while the double lane stays
// in range.

namespace qso::detail {

template <class S>
struct NumericOps;

template <>
struct NumericOps<double> {
  static double from_double(double v) noexcept { return v; }
  static double to_double(double v) noexcept { return v; }
  static bool is_zero(double v) noexcept { return v == 0.0; }
};

template <>
struct NumericOps<ExtFloat> {
  static ExtFloat from_double(double v) noexcept { return ExtFloat::from_double(v); }
  static double to_double(ExtFloat v) noexcept { return v.to_double(); }
  static bool is_zero(ExtFloat v) noexcept { return v.is_zero(); }
};

template <class S>
std::vector<S> lift_point(std::span<const double> coords) {
  std::vector<S> out;
  out.reserve(coords.size());
  for (double v : coords) out.push_back(NumericOps<S>::from_double(v));
  return out;
}

// (Vx)_k = sum_{i,j} p_{ij,k} x_i x_j — the literal double sum, k outer,
// i middle, j inner, plain left-to-right accumulation. Zero factors are
// skipped; with nonnegative inputs that never changes a rounded result.
template <class S>
void bernoulli_step(const CubicHeredityMatrix& p, const std::vector<S>& x, std::vector<S>& out) {
  using N = NumericOps<S>;
  const std::size_t m = p.dim();
  for (std::size_t k = 0; k < m; ++k) {
    S acc = N::from_double(0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (N::is_zero(x[i])) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const double pijk = p.at(i, j, k);
        if (pijk == 0.0 || N::is_zero(x[j])) continue;
        acc = acc + ((N::from_double(pijk) * x[i]) * x[j]);
      }
    }
    out[k] = acc;
  }
}

// Same sum folded over the symmetry p_{ij,k} = p_{ji,k}:
// (Vx)_k = sum_i p_{ii,k} x_i^2 + 2 sum_{i<j} p_{ij,k} x_i x_j.
// Mathematically identical, different rounding path; kept as a
// cross-checking alternative, not the default.
template <class S>
void bernoulli_step_symmetric(const CubicHeredityMatrix& p, const std::vector<S>& x,
                              std::vector<S>& out) {
  using N = NumericOps<S>;
  const std::size_t m = p.dim();
  const S two = N::from_double(2.0);
  for (std::size_t k = 0; k < m; ++k) {
    S acc = N::from_double(0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (N::is_zero(x[i])) continue;
      const double piik = p.at(i, i, k);
      if (piik != 0.0) {
        acc = acc + ((N::from_double(piik) * x[i]) * x[i]);
      }
      for (std::size_t j = i + 1; j < m; ++j) {
        const double pijk = p.at(i, j, k);
        if (pijk == 0.0 || N::is_zero(x[j])) continue;
        acc = acc + (two * ((N::from_double(pijk) * x[i]) * x[j]));
      }
    }
    out[k] = acc;
  }
}

// (V_Pi x)_k = sum_{i,j} p_{ij,k} q_{ij} x_i, same loop discipline.
template <class S>
void markov_step(const CubicHeredityMatrix& p, const StochasticMatrix& pi,
                 const std::vector<S>& x, std::vector<S>& out) {
  using N = NumericOps<S>;
  const std::size_t m = p.dim();
  for (std::size_t k = 0; k < m; ++k) {
    S acc = N::from_double(0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (N::is_zero(x[i])) continue;
      for (std::size_t j = 0; j < m; ++j) {
        const double pijk = p.at(i, j, k);
        const double qij = pi.at(i, j);
        if (pijk == 0.0 || qij == 0.0) continue;
        acc = acc + ((N::from_double(pijk) * N::from_double(qij)) * x[i]);
      }
    }
    out[k] = acc;
  }
}

// Post-step cleanup shared by every lane: clamp rounding debris in
// (-kNegativeClamp, 0) to zero, reject anything worse, then divide by the
// coordinate sum. The operators preserve the simplex exactly in real
// arithmetic, so the division only strips floating-point drift — but it must
// run every step: the Bernoulli operator squares the sum, so drift would
// otherwise compound doubly-exponentially.
template <class S>
void renormalize_step(std::vector<S>& v) {
  using N = NumericOps<S>;
  const S zero = N::from_double(0.0);
  const S floor = N::from_double(-kNegativeClamp);
  for (std::size_t c = 0; c < v.size(); ++c) {
    if (v[c] < zero) {
      if (!(v[c] > floor)) {
        throw Error(ErrorCode::NegativeCoordinate,
                    "coordinate " + std::to_string(c + 1) + " is " +
                        format_full(N::to_double(v[c])));
      }
      v[c] = zero;
    }
  }
  S sum = zero;
  for (const S& c : v) sum = sum + c;
  if (!(sum > zero)) {
    throw Error(ErrorCode::NotNormalized, "step result sums to " +
                                              format_full(N::to_double(sum)));
  }
  for (S& c : v) c = c / sum;
}

}  // namespace qso::detail
