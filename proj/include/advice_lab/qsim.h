#pragma once

// Exact statevector simulation of query algorithms.
//
// Basis states are triples (position, answer, workspace). A query XORs the
// oracle's value at `position` into `answer`; the workspace is untouched.
// Query magnitudes are read off the position register right before each query.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "advice_lab/common.h"

namespace advice_lab::qsim {

using Amplitude = std::complex<double>;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kForbiddenMassTolerance = 1e-12;

struct Coordinates {
  std::size_t position = 0;
  std::size_t answer = 0;
  std::size_t workspace = 0;
  bool operator==(const Coordinates&) const = default;
};

struct BasisLayout {
  std::size_t num_positions = 2;
  std::size_t answer_dim = 2;
  std::size_t workspace_dim = 1;

  BasisLayout() = default;
  BasisLayout(std::size_t positions, std::size_t answers, std::size_t workspace);

  std::size_t dimension() const { return num_positions * answer_dim * workspace_dim; }
  std::size_t index(std::size_t position, std::size_t answer, std::size_t workspace = 0) const;
  std::size_t index(const Coordinates& c) const { return index(c.position, c.answer, c.workspace); }
  Coordinates coordinates(std::size_t index) const;

  bool operator==(const BasisLayout&) const = default;
};

/// Which coordinate a measurement reads. kFull measures the whole basis index.
enum class Register { kPosition, kAnswer, kWorkspace, kFull };

std::string register_name(Register reg);

class PureState {
 public:
  /// Throws std::invalid_argument unless the amplitudes have unit norm.
  PureState(BasisLayout layout, std::vector<Amplitude> amplitudes);

  static PureState basis(const BasisLayout& layout, std::size_t index);
  static PureState basis(const BasisLayout& layout, const Coordinates& c) {
    return basis(layout, layout.index(c));
  }

  const BasisLayout& layout() const { return layout_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Amplitude> amplitudes() const { return amplitudes_; }
  std::span<Amplitude> mutable_amplitudes() { return amplitudes_; }
  const Amplitude& operator[](std::size_t i) const { return amplitudes_[i]; }
  Amplitude& operator[](std::size_t i) { return amplitudes_[i]; }

  double norm() const;
  bool is_normalized(double tolerance = kNormTolerance) const;

 private:
  BasisLayout layout_;
  std::vector<Amplitude> amplitudes_;
};

class ForbiddenQueryError : public std::runtime_error {
 public:
  ForbiddenQueryError(std::size_t index, double mass);
  std::size_t index() const { return index_; }
  double mass() const { return mass_; }

 private:
  std::size_t index_;
  double mass_;
};

/// A black box: a permutation of [N], an arbitrary function [N] -> [N]
/// (hybrid oracles built during decoding), or an N-bit string with an
/// optional index that must never be queried.
class Oracle {
 public:
  enum class Kind { kPermutation, kFunction, kBitString };

  /// Requires N = 2^n and a bijection on [N].
  static Oracle permutation(std::vector<std::uint32_t> values);
  /// Requires N = 2^n and values in [N]; not necessarily bijective.
  static Oracle function(std::vector<std::uint32_t> values);
  static Oracle bit_string(std::span<const std::uint8_t> bits,
                           std::optional<std::size_t> forbidden = std::nullopt);

  Kind kind() const { return kind_; }
  std::size_t size() const { return values_.size(); }
  std::size_t answer_dim() const { return kind_ == Kind::kBitString ? 2 : values_.size(); }
  std::optional<std::size_t> forbidden() const { return forbidden_; }
  std::span<const std::uint32_t> values() const { return values_; }

  /// Classical evaluation. Throws ForbiddenQueryError on the forbidden index.
  std::uint32_t operator()(std::size_t index) const;

  /// Same values, different forbidden index (bit strings only).
  Oracle with_forbidden(std::optional<std::size_t> forbidden) const;

  bool compatible_with(const BasisLayout& layout) const;

 private:
  Oracle(Kind kind, std::vector<std::uint32_t> values, std::optional<std::size_t> forbidden)
      : kind_(kind), values_(std::move(values)), forbidden_(forbidden) {}

  Kind kind_;
  std::vector<std::uint32_t> values_;
  std::optional<std::size_t> forbidden_;
};

/// Positions where two oracles of the same shape disagree.
std::vector<std::size_t> difference_set(const Oracle& a, const Oracle& b);

void apply_oracle_in_place(PureState& state, const Oracle& oracle);
PureState apply_oracle(const PureState& state, const Oracle& oracle);

/// q_j for every position j: squared amplitude mass on basis states with position j.
std::vector<double> query_magnitudes(const PureState& state);

std::vector<double> measurement_distribution(const PureState& state, Register reg);

double euclidean_distance(const PureState& a, const PureState& b);

/// Sum of |p(x) - q(x)| (no factor 1/2).
double tv_distance(std::span<const double> p, std::span<const double> q);

struct QueryTrace {
  std::vector<std::vector<double>> per_step;  // per_step[t][j] = q_j(phi_t)
  std::vector<double> totals;                 // totals[j] = sum over t
  std::size_t num_queries = 0;

  double total_mass() const;
};

/// Called with the step index t and the state to transform in place. Returns
/// true when a query follows this step, false when t was the final step.
using StepFn = std::function<bool(std::size_t step, PureState& state)>;

/// A query algorithm with (possibly empty) classical advice baked in. `begin`
/// produces a fresh per-run step function for the given input (an element y
/// for inversion, an index j for the box problem). Runs start from the basis
/// state (0, 0, 0) and make at most `max_queries` queries.
struct AlgorithmSpec {
  std::string name;
  BasisLayout layout;
  std::size_t max_queries = 0;
  Bits advice;
  Register output = Register::kPosition;
  std::function<StepFn(std::uint64_t input)> begin;
};

struct RunResult {
  PureState final_state;
  QueryTrace trace;
};

/// Alternates steps and oracle applications. Throws std::runtime_error if a
/// step breaks normalization or the algorithm exceeds max_queries, and
/// propagates ForbiddenQueryError.
RunResult run(const AlgorithmSpec& alg, const Oracle& oracle, std::uint64_t input);

/// Probability that measuring the algorithm's output register yields `value`.
double output_probability(const AlgorithmSpec& alg, const PureState& final_state,
                          std::uint64_t value);

// ---- state-preparation primitives used by built-in steps ----

/// Unitary reflection mapping basis vector `from` onto the unit vector
/// `target` (Householder). Acts on the whole state.
void reflect_onto(PureState& state, std::size_t from, std::span<const Amplitude> target);

/// Applies 2|s><s| - I on the position register in every (answer, workspace)
/// slice, where |s> is uniform over `support`.
void diffuse_positions(PureState& state, std::span<const std::size_t> support);

// ---- built-in algorithms ----

/// Grover search for f^{-1}(y) on a permutation oracle. Each iteration
/// computes f into the answer register, flips the phase where the answer is y
/// and uncomputes, so it costs two queries. Output register: position.
AlgorithmSpec grover_inversion_algorithm(std::size_t n_elements, std::size_t iterations);

/// Grover search for a 1-bit among positions other than the forbidden input
/// index j of a bit-string oracle. Two queries per iteration.
AlgorithmSpec box_grover_algorithm(std::size_t n_positions, std::size_t iterations);

/// Makes no queries and leaves `value` in the output register.
AlgorithmSpec constant_algorithm(const BasisLayout& layout, Register output,
                                 std::uint64_t value);

std::size_t default_grover_iterations(std::size_t n_elements);

struct GroverResult {
  std::uint32_t candidate = 0;
  double success_probability = 0.0;  // probability of measuring f^{-1}(y)
  double candidate_probability = 0.0;
  std::size_t iterations = 0;
  QueryTrace trace;
};

GroverResult grover_invert(const Oracle& f, std::uint32_t y,
                           std::optional<std::size_t> iterations = std::nullopt);

/// sin^2((2k+1) theta) with sin(theta) = 1/sqrt(N).
double grover_closed_form(std::size_t n_elements, std::size_t iterations);

}  // namespace advice_lab::qsim

namespace advice_lab::qsim {

/// An algorithm together with the preprocessing that produces its advice.
/// `preprocess` sees the whole oracle; `instantiate` rebuilds the algorithm
/// from the advice bits alone.
struct AdvisedAlgorithm {
  std::string name;
  std::function<Bits(const Oracle&)> preprocess;
  std::function<AlgorithmSpec(const Bits&)> instantiate;
};

/// Grover inversion with empty advice.
AdvisedAlgorithm grover_scheme(std::size_t n_elements, std::size_t iterations);

}  // namespace advice_lab::qsim
