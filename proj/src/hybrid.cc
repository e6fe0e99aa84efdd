#include "advice_lab/hybrid.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace advice_lab::hybrid {

Word word_from_bits(std::span<const std::uint8_t> bits) {
  if (bits.size() > 64) throw std::invalid_argument("word_from_bits: more than 64 bits");
  Word w = 0;
  for (std::size_t p = 0; p < bits.size(); ++p) {
    if (bits[p]) w |= Word{1} << p;
  }
  return w;
}

Bits bits_from_word(Word w, std::size_t n) {
  Bits bits(n);
  for (std::size_t p = 0; p < n; ++p) bits[p] = static_cast<std::uint8_t>((w >> p) & 1u);
  return bits;
}

namespace {

Word window_mask(std::span<const std::size_t> window) {
  Word mask = 0;
  for (auto p : window) {
    if (p >= 64) throw std::invalid_argument("window index outside a 64-bit word");
    mask |= Word{1} << p;
  }
  return mask;
}

}  // namespace

std::pair<Word, Word> collision_in_window(std::span<const Word> members, std::size_t n,
                                          std::span<const std::size_t> window) {
  for (auto p : window) {
    if (p >= n) throw std::invalid_argument("collision_in_window: window index outside [n]");
  }
  const Word outside = ~window_mask(window);
  std::unordered_map<Word, Word> first_seen;
  first_seen.reserve(members.size());
  for (Word w : members) {
    auto [it, inserted] = first_seen.emplace(w & outside, w);
    if (!inserted && it->second != w) return {it->second, w};
  }
  throw std::invalid_argument(
      "collision_in_window: no two members agree outside the window (class too small?)");
}

bool has_collision_brute_force(std::span<const Word> members, std::span<const std::size_t> window) {
  const Word outside = ~window_mask(window);
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if (members[a] != members[b] && ((members[a] ^ members[b]) & outside) == 0) return true;
    }
  }
  return false;
}

SwapReport verify_swapping(const AlgorithmSpec& alg, const Oracle& oracle_x,
                           const Oracle& oracle_y, std::uint64_t input) {
  if (!oracle_x.compatible_with(alg.layout) || !oracle_y.compatible_with(alg.layout)) {
    throw std::invalid_argument("verify_swapping: oracle layout mismatch");
  }
  SwapReport report;
  report.delta = qsim::difference_set(oracle_x, oracle_y);
  const auto run_x = qsim::run(alg, oracle_x, input);
  const auto run_y = qsim::run(alg, oracle_y, input);
  report.num_queries = run_x.trace.num_queries;
  for (auto j : report.delta) report.delta_magnitude += run_x.trace.totals[j];
  report.bound = std::sqrt(static_cast<double>(report.num_queries) * report.delta_magnitude);
  report.actual = qsim::euclidean_distance(run_x.final_state, run_y.final_state);
  report.magnitudes_x = run_x.trace.totals;
  report.holds = report.actual <= report.bound + qsim::kNormTolerance;
  return report;
}

TvReport verify_tv(const PureState& a, const PureState& b, qsim::Register reg) {
  if (!(a.layout() == b.layout())) throw std::invalid_argument("verify_tv: layout mismatch");
  TvReport report;
  const auto pa = qsim::measurement_distribution(a, reg);
  const auto pb = qsim::measurement_distribution(b, reg);
  report.tv = qsim::tv_distance(pa, pb);
  report.euclidean = qsim::euclidean_distance(a, b);
  report.bound = 4.0 * report.euclidean;
  report.holds = report.tv <= report.bound + qsim::kNormTolerance;
  return report;
}

std::vector<AdvicePartition> enumerate_partitions(std::size_t n_positions, std::size_t m,
                                                  const qsim::AdvisedAlgorithm& scheme) {
  if (n_positions < 2 || n_positions > 12) {
    throw std::invalid_argument("enumerate_partitions: exhaustive enumeration needs 2 <= N <= 12");
  }
  std::map<Bits, std::vector<Word>> classes;
  const Word count = Word{1} << n_positions;
  for (Word w = 0; w < count; ++w) {
    const Bits bits = bits_from_word(w, n_positions);
    Bits alpha = scheme.preprocess(Oracle::bit_string(bits));
    if (alpha.size() != m) throw std::logic_error("advice scheme produced the wrong advice length");
    classes[std::move(alpha)].push_back(w);
  }
  std::vector<AdvicePartition> out;
  out.reserve(classes.size());
  for (auto& [alpha, members] : classes) {
    out.push_back(AdvicePartition{m, alpha, std::move(members)});
  }
  return out;
}

bool MagnitudeEstimate::within_three_sigma() const {
  const double gap = std::abs(mean - expected);
  if (standard_error == 0.0) return gap <= qsim::kNormTolerance;
  return gap <= 3.0 * standard_error;
}

MagnitudeEstimate estimate_mean_magnitude(const qsim::QueryTrace& trace, std::size_t forbidden,
                                          std::size_t samples, std::uint64_t seed) {
  const std::size_t n = trace.totals.size();
  if (n < 2 || forbidden >= n || samples < 2) {
    throw std::invalid_argument("estimate_mean_magnitude: bad arguments");
  }
  std::mt19937_64 rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    std::size_t z = uniform_below(rng, n - 1);
    if (z >= forbidden) ++z;
    const double q = trace.totals[z];
    sum += q;
    sum_sq += q * q;
  }
  MagnitudeEstimate est;
  est.samples = samples;
  const double k = static_cast<double>(samples);
  est.mean = sum / k;
  const double variance = std::max(0.0, (sum_sq - k * est.mean * est.mean) / (k - 1.0));
  est.standard_error = std::sqrt(variance / k);
  // Floating noise on a constant population should not read as spread.
  if (est.standard_error < 1e-12) est.standard_error = 0.0;
  est.expected = static_cast<double>(trace.num_queries) / static_cast<double>(n - 1);
  return est;
}

namespace {

std::vector<std::size_t> sample_window(std::mt19937_64& rng, std::size_t n, std::size_t size) {
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) pool[i] = i;
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t pick = i + uniform_below(rng, n - i);
    std::swap(pool[i], pool[pick]);
  }
  pool.resize(size);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

BoxStatistics box_experiment(const BoxConfig& config, const qsim::AdvisedAlgorithm& scheme,
                             std::size_t threads) {
  const std::size_t n = config.n_positions;
  const std::size_t m = config.m;
  if (m < 1 || m >= n) throw std::invalid_argument("box_experiment: need 1 <= m < N");
  if (config.trials < 1) throw std::invalid_argument("box_experiment: need at least one trial");

  const auto partitions = enumerate_partitions(n, m, scheme);
  std::map<Bits, const AdvicePartition*> by_alpha;
  for (const auto& p : partitions) by_alpha[p.alpha] = &p;
  const std::size_t min_class = std::size_t{1} << (n - m);

  BoxStatistics stats;
  stats.n_positions = n;
  stats.m = m;
  stats.trials.resize(config.trials);

  parallel_for(config.trials, threads, [&](std::size_t t) {
    BoxTrial& trial = stats.trials[t];
    trial.trial = t;
    trial.seed = derive_seed(config.seed, t);
    std::mt19937_64 rng(trial.seed);

    const Word x0 = uniform_below(rng, Word{1} << n);
    trial.alpha = scheme.preprocess(Oracle::bit_string(bits_from_word(x0, n)));
    const AdvicePartition& cls = *by_alpha.at(trial.alpha);
    trial.class_size = cls.members.size();
    trial.forbidden = uniform_below(rng, n);
    trial.window = sample_window(rng, n, m + 1);
    if (trial.class_size < min_class) {
      trial.skipped = true;
      return;
    }

    std::tie(trial.x, trial.y) = collision_in_window(cls.members, n, trial.window);
    const auto alg = scheme.instantiate(trial.alpha);
    const auto ox = Oracle::bit_string(bits_from_word(trial.x, n), trial.forbidden);
    const auto oy = Oracle::bit_string(bits_from_word(trial.y, n), trial.forbidden);
    trial.swap = verify_swapping(alg, ox, oy, trial.forbidden);

    for (auto z : trial.window) trial.window_magnitude += trial.swap.magnitudes_x[z];
    trial.distance_bound = static_cast<double>(trial.swap.num_queries) *
                           std::sqrt(static_cast<double>(m + 1) / static_cast<double>(n - 1));

    qsim::QueryTrace trace;
    trace.totals = trial.swap.magnitudes_x;
    trace.num_queries = trial.swap.num_queries;
    trial.magnitude = estimate_mean_magnitude(trace, trial.forbidden, config.magnitude_samples,
                                              derive_seed(trial.seed, 1));
  });

  double pooled_sum = 0.0;
  double expected_sum = 0.0;
  std::size_t counted = 0;
  for (const auto& trial : stats.trials) {
    if (trial.skipped) {
      ++stats.skipped;
      continue;
    }
    if (trial.swap.holds) ++stats.swaps_held;
    stats.max_distance = std::max(stats.max_distance, trial.swap.actual);
    pooled_sum += trial.magnitude.mean;
    expected_sum += trial.magnitude.expected;
    ++counted;
  }
  if (counted > 0) {
    stats.magnitude_mean = pooled_sum / static_cast<double>(counted);
    stats.magnitude_expected = expected_sum / static_cast<double>(counted);
  }
  return stats;
}

}  // namespace advice_lab::hybrid
