#include "advice_lab/qsim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace advice_lab::qsim {

BasisLayout::BasisLayout(std::size_t positions, std::size_t answers, std::size_t workspace)
    : num_positions(positions), answer_dim(answers), workspace_dim(workspace) {
  if (positions < 2) throw std::invalid_argument("BasisLayout: need at least 2 positions");
  if (answers < 1 || workspace < 1) {
    throw std::invalid_argument("BasisLayout: register dimensions must be positive");
  }
}

std::size_t BasisLayout::index(std::size_t position, std::size_t answer,
                               std::size_t workspace) const {
  if (position >= num_positions || answer >= answer_dim || workspace >= workspace_dim) {
    throw std::out_of_range("BasisLayout::index: coordinate out of range");
  }
  return (position * answer_dim + answer) * workspace_dim + workspace;
}

Coordinates BasisLayout::coordinates(std::size_t index) const {
  if (index >= dimension()) throw std::out_of_range("BasisLayout::coordinates: index out of range");
  Coordinates c;
  c.workspace = index % workspace_dim;
  index /= workspace_dim;
  c.answer = index % answer_dim;
  c.position = index / answer_dim;
  return c;
}

std::string register_name(Register reg) {
  switch (reg) {
    case Register::kPosition: return "position";
    case Register::kAnswer: return "answer";
    case Register::kWorkspace: return "workspace";
    case Register::kFull: return "full";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(BasisLayout layout, std::vector<Amplitude> amplitudes)
    : layout_(layout), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != layout_.dimension()) {
    throw std::invalid_argument("PureState: amplitude count does not match layout dimension");
  }
  if (!is_normalized()) {
    std::ostringstream msg;
    msg << "PureState: norm " << norm() << " is not 1";
    throw std::invalid_argument(msg.str());
  }
}

PureState PureState::basis(const BasisLayout& layout, std::size_t index) {
  std::vector<Amplitude> amps(layout.dimension());
  if (index >= amps.size()) throw std::out_of_range("PureState::basis: index out of range");
  amps[index] = 1.0;
  return PureState(layout, std::move(amps));
}

double PureState::norm() const {
  double sum = 0.0;
  for (const auto& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum);
}

bool PureState::is_normalized(double tolerance) const {
  return std::abs(norm() - 1.0) <= tolerance;
}

// ---------------------------------------------------------------------------
// Oracle

ForbiddenQueryError::ForbiddenQueryError(std::size_t index, double mass)
    : std::runtime_error("query touches forbidden index " + std::to_string(index) +
                         " with mass " + std::to_string(mass)),
      index_(index),
      mass_(mass) {}

Oracle Oracle::permutation(std::vector<std::uint32_t> values) {
  const std::size_t n = values.size();
  if (n < 2 || !is_power_of_two(n)) {
    throw std::invalid_argument("permutation oracle: size must be a power of two >= 2");
  }
  std::vector<bool> seen(n, false);
  for (auto v : values) {
    if (v >= n || seen[v]) throw std::invalid_argument("permutation oracle: not a bijection on [N]");
    seen[v] = true;
  }
  return Oracle(Kind::kPermutation, std::move(values), std::nullopt);
}

Oracle Oracle::function(std::vector<std::uint32_t> values) {
  const std::size_t n = values.size();
  if (n < 2 || !is_power_of_two(n)) {
    throw std::invalid_argument("function oracle: size must be a power of two >= 2");
  }
  for (auto v : values) {
    if (v >= n) throw std::invalid_argument("function oracle: value outside [N]");
  }
  return Oracle(Kind::kFunction, std::move(values), std::nullopt);
}

Oracle Oracle::bit_string(std::span<const std::uint8_t> bits, std::optional<std::size_t> forbidden) {
  if (bits.size() < 2) throw std::invalid_argument("bit-string oracle: need N >= 2");
  if (forbidden && *forbidden >= bits.size()) {
    throw std::invalid_argument("bit-string oracle: forbidden index outside [N]");
  }
  std::vector<std::uint32_t> values(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw std::invalid_argument("bit-string oracle: entries must be 0 or 1");
    values[i] = bits[i];
  }
  return Oracle(Kind::kBitString, std::move(values), forbidden);
}

std::uint32_t Oracle::operator()(std::size_t index) const {
  if (index >= values_.size()) throw std::out_of_range("oracle query outside [N]");
  if (forbidden_ && *forbidden_ == index) throw ForbiddenQueryError(index, 1.0);
  return values_[index];
}

Oracle Oracle::with_forbidden(std::optional<std::size_t> forbidden) const {
  if (kind_ != Kind::kBitString) {
    throw std::invalid_argument("only bit-string oracles carry a forbidden index");
  }
  if (forbidden && *forbidden >= values_.size()) {
    throw std::invalid_argument("bit-string oracle: forbidden index outside [N]");
  }
  return Oracle(kind_, values_, forbidden);
}

bool Oracle::compatible_with(const BasisLayout& layout) const {
  return layout.num_positions == size() && layout.answer_dim == answer_dim();
}

std::vector<std::size_t> difference_set(const Oracle& a, const Oracle& b) {
  if (a.size() != b.size() || a.answer_dim() != b.answer_dim()) {
    throw std::invalid_argument("difference_set: oracles have different shapes");
  }
  std::vector<std::size_t> delta;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.values()[i] != b.values()[i]) delta.push_back(i);
  }
  return delta;
}

void apply_oracle_in_place(PureState& state, const Oracle& oracle) {
  const BasisLayout& layout = state.layout();
  if (!oracle.compatible_with(layout)) {
    throw std::invalid_argument("apply_oracle: layout incompatible with oracle");
  }
  const std::size_t ans = layout.answer_dim;
  const std::size_t ws = layout.workspace_dim;
  const std::size_t block = ans * ws;

  if (auto j = oracle.forbidden()) {
    double mass = 0.0;
    for (std::size_t k = 0; k < block; ++k) mass += std::norm(state[*j * block + k]);
    if (mass > kForbiddenMassTolerance) throw ForbiddenQueryError(*j, mass);
  }

  // Within a position block, XOR by v permutes answer values; answer_dim is
  // 2 or a power of two, so a ^ v stays in range.
  std::vector<Amplitude> scratch(block);
  auto amps = state.mutable_amplitudes();
  for (std::size_t pos = 0; pos < layout.num_positions; ++pos) {
    const std::uint32_t v = oracle.values()[pos];
    if (v == 0) continue;
    auto slot = amps.subspan(pos * block, block);
    for (std::size_t a = 0; a < ans; ++a) {
      const std::size_t target = a ^ v;
      for (std::size_t w = 0; w < ws; ++w) scratch[target * ws + w] = slot[a * ws + w];
    }
    std::copy(scratch.begin(), scratch.end(), slot.begin());
  }
}

PureState apply_oracle(const PureState& state, const Oracle& oracle) {
  PureState out = state;
  apply_oracle_in_place(out, oracle);
  return out;
}

std::vector<double> query_magnitudes(const PureState& state) {
  const BasisLayout& layout = state.layout();
  const std::size_t block = layout.answer_dim * layout.workspace_dim;
  std::vector<double> q(layout.num_positions, 0.0);
  for (std::size_t pos = 0; pos < layout.num_positions; ++pos) {
    for (std::size_t k = 0; k < block; ++k) q[pos] += std::norm(state[pos * block + k]);
  }
  return q;
}

std::vector<double> measurement_distribution(const PureState& state, Register reg) {
  const BasisLayout& layout = state.layout();
  std::size_t size = 0;
  switch (reg) {
    case Register::kPosition: size = layout.num_positions; break;
    case Register::kAnswer: size = layout.answer_dim; break;
    case Register::kWorkspace: size = layout.workspace_dim; break;
    case Register::kFull: size = layout.dimension(); break;
  }
  std::vector<double> dist(size, 0.0);
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    const double p = std::norm(state[i]);
    if (p == 0.0) continue;
    if (reg == Register::kFull) {
      dist[i] += p;
      continue;
    }
    const Coordinates c = layout.coordinates(i);
    switch (reg) {
      case Register::kPosition: dist[c.position] += p; break;
      case Register::kAnswer: dist[c.answer] += p; break;
      case Register::kWorkspace: dist[c.workspace] += p; break;
      case Register::kFull: break;
    }
  }
  return dist;
}

double euclidean_distance(const PureState& a, const PureState& b) {
  if (a.dimension() != b.dimension()) {
    throw std::invalid_argument("euclidean_distance: dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dimension(); ++i) sum += std::norm(a[i] - b[i]);
  return std::sqrt(sum);
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return sum;
}

double QueryTrace::total_mass() const {
  double sum = 0.0;
  for (double v : totals) sum += v;
  return sum;
}

// ---------------------------------------------------------------------------
// run

RunResult run(const AlgorithmSpec& alg, const Oracle& oracle, std::uint64_t input) {
  if (!oracle.compatible_with(alg.layout)) {
    throw std::invalid_argument("run: algorithm '" + alg.name +
                                "' layout is incompatible with the oracle");
  }
  if (!alg.begin) throw std::invalid_argument("run: algorithm '" + alg.name + "' has no steps");

  PureState state = PureState::basis(alg.layout, 0);
  StepFn step = alg.begin(input);

  QueryTrace trace;
  trace.totals.assign(alg.layout.num_positions, 0.0);
  for (std::size_t t = 0;; ++t) {
    const bool more = step(t, state);
    if (!state.is_normalized()) {
      std::ostringstream msg;
      msg << "run: step " << t << " of '" << alg.name << "' is not norm-preserving (norm "
          << state.norm() << ")";
      throw std::runtime_error(msg.str());
    }
    if (!more) break;
    if (trace.num_queries == alg.max_queries) {
      throw std::runtime_error("run: algorithm '" + alg.name + "' exceeded its query budget");
    }
    auto q = query_magnitudes(state);
    for (std::size_t j = 0; j < q.size(); ++j) trace.totals[j] += q[j];
    trace.per_step.push_back(std::move(q));
    apply_oracle_in_place(state, oracle);
    ++trace.num_queries;
  }
  return RunResult{std::move(state), std::move(trace)};
}

double output_probability(const AlgorithmSpec& alg, const PureState& final_state,
                          std::uint64_t value) {
  const auto dist = measurement_distribution(final_state, alg.output);
  return value < dist.size() ? dist[value] : 0.0;
}

// ---------------------------------------------------------------------------
// primitives

void reflect_onto(PureState& state, std::size_t from, std::span<const Amplitude> target) {
  if (target.size() != state.dimension() || from >= state.dimension()) {
    throw std::invalid_argument("reflect_onto: target has wrong dimension");
  }
  if (std::abs(target[from].imag()) > 1e-15) {
    throw std::invalid_argument("reflect_onto: target overlap with the source must be real");
  }
  // u = e_from - target; H = I - 2 u u^dag / |u|^2 sends e_from to target.
  const double overlap = target[from].real();
  const double u_norm2 = 2.0 - 2.0 * overlap;
  if (u_norm2 < 1e-15) return;
  auto amps = state.mutable_amplitudes();
  Amplitude proj = amps[from];
  for (std::size_t i = 0; i < amps.size(); ++i) proj -= std::conj(target[i]) * amps[i];
  const Amplitude scale = 2.0 * proj / u_norm2;
  for (std::size_t i = 0; i < amps.size(); ++i) amps[i] += scale * target[i];
  amps[from] -= scale;
}

void diffuse_positions(PureState& state, std::span<const std::size_t> support) {
  if (support.empty()) return;
  const BasisLayout& layout = state.layout();
  const std::size_t block = layout.answer_dim * layout.workspace_dim;
  const double inv = 1.0 / static_cast<double>(support.size());
  for (std::size_t k = 0; k < block; ++k) {
    Amplitude mean = 0.0;
    for (auto p : support) mean += state[p * block + k];
    mean *= inv;
    for (auto p : support) {
      auto& a = state[p * block + k];
      a = 2.0 * mean - a;
    }
  }
}

namespace {

std::vector<Amplitude> uniform_positions(const BasisLayout& layout,
                                         std::span<const std::size_t> support) {
  std::vector<Amplitude> target(layout.dimension());
  const double amp = 1.0 / std::sqrt(static_cast<double>(support.size()));
  for (auto p : support) target[layout.index(p, 0, 0)] = amp;
  return target;
}

void flip_phase_on_answer(PureState& state, std::size_t answer) {
  const BasisLayout& layout = state.layout();
  for (std::size_t pos = 0; pos < layout.num_positions; ++pos) {
    for (std::size_t w = 0; w < layout.workspace_dim; ++w) {
      auto& a = state[layout.index(pos, answer, w)];
      a = -a;
    }
  }
}

// Shared Grover schedule. Step 0 prepares the uniform superposition over
// `support`; afterwards odd steps mark (phase flip on the computed answer)
// and even steps diffuse. 2k queries for k iterations.
StepFn grover_schedule(std::vector<std::size_t> support, std::size_t marked_answer,
                       std::size_t iterations) {
  return [support = std::move(support), marked_answer, iterations](std::size_t t,
                                                                   PureState& state) {
    const std::size_t last = 2 * iterations;
    if (t == 0) {
      const auto target = uniform_positions(state.layout(), support);
      reflect_onto(state, 0, target);
    } else if (t % 2 == 1) {
      flip_phase_on_answer(state, marked_answer);
    } else {
      diffuse_positions(state, support);
    }
    return t < last;
  };
}

}  // namespace

AlgorithmSpec grover_inversion_algorithm(std::size_t n_elements, std::size_t iterations) {
  if (n_elements < 2 || !is_power_of_two(n_elements)) {
    throw std::invalid_argument("grover_inversion_algorithm: N must be a power of two >= 2");
  }
  AlgorithmSpec alg;
  alg.name = "grover-invert";
  alg.layout = BasisLayout(n_elements, n_elements, 1);
  alg.max_queries = 2 * iterations;
  alg.output = Register::kPosition;
  alg.begin = [n_elements, iterations](std::uint64_t y) -> StepFn {
    if (y >= n_elements) throw std::invalid_argument("grover inversion: target outside [N]");
    std::vector<std::size_t> support(n_elements);
    for (std::size_t i = 0; i < n_elements; ++i) support[i] = i;
    return grover_schedule(std::move(support), y, iterations);
  };
  return alg;
}

AlgorithmSpec box_grover_algorithm(std::size_t n_positions, std::size_t iterations) {
  if (n_positions < 2) throw std::invalid_argument("box_grover_algorithm: need N >= 2");
  AlgorithmSpec alg;
  alg.name = "box-grover";
  alg.layout = BasisLayout(n_positions, 2, 1);
  alg.max_queries = 2 * iterations;
  alg.output = Register::kPosition;
  alg.begin = [n_positions, iterations](std::uint64_t j) -> StepFn {
    if (j >= n_positions) throw std::invalid_argument("box grover: index outside [N]");
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n_positions; ++i) {
      if (i != j) support.push_back(i);
    }
    return grover_schedule(std::move(support), 1, iterations);
  };
  return alg;
}

AlgorithmSpec constant_algorithm(const BasisLayout& layout, Register output, std::uint64_t value) {
  AlgorithmSpec alg;
  alg.name = "constant";
  alg.layout = layout;
  alg.max_queries = 0;
  alg.output = output;
  Coordinates c;
  switch (output) {
    case Register::kPosition: c.position = value; break;
    case Register::kAnswer: c.answer = value; break;
    case Register::kWorkspace: c.workspace = value; break;
    case Register::kFull: c = layout.coordinates(value); break;
  }
  const std::size_t target = layout.index(c);
  alg.begin = [target](std::uint64_t) -> StepFn {
    return [target](std::size_t, PureState& state) {
      std::swap(state[0], state[target]);
      return false;
    };
  };
  return alg;
}

std::size_t default_grover_iterations(std::size_t n_elements) {
  return static_cast<std::size_t>(std::floor(std::numbers::pi / 4.0 *
                                             std::sqrt(static_cast<double>(n_elements))));
}

double grover_closed_form(std::size_t n_elements, std::size_t iterations) {
  const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(n_elements)));
  const double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
  return s * s;
}

GroverResult grover_invert(const Oracle& f, std::uint32_t y, std::optional<std::size_t> iterations) {
  if (f.kind() != Oracle::Kind::kPermutation) {
    throw std::invalid_argument("grover_invert: needs a permutation oracle");
  }
  const std::size_t n = f.size();
  GroverResult result;
  result.iterations = iterations.value_or(default_grover_iterations(n));
  const AlgorithmSpec alg = grover_inversion_algorithm(n, result.iterations);
  RunResult out = run(alg, f, y);
  const auto dist = measurement_distribution(out.final_state, Register::kPosition);
  const auto best = std::max_element(dist.begin(), dist.end());
  result.candidate = static_cast<std::uint32_t>(best - dist.begin());
  result.candidate_probability = *best;
  const auto values = f.values();
  const auto preimage = std::find(values.begin(), values.end(), y) - values.begin();
  result.success_probability = dist[static_cast<std::size_t>(preimage)];
  result.trace = std::move(out.trace);
  return result;
}

}  // namespace advice_lab::qsim

namespace advice_lab::qsim {

AdvisedAlgorithm grover_scheme(std::size_t n_elements, std::size_t iterations) {
  AdvisedAlgorithm scheme;
  scheme.name = "grover";
  scheme.preprocess = [](const Oracle&) { return Bits{}; };
  scheme.instantiate = [n_elements, iterations](const Bits&) {
    return grover_inversion_algorithm(n_elements, iterations);
  };
  return scheme;
}

}  // namespace advice_lab::qsim
