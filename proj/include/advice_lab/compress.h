#pragma once

// Compressing a permutation with an algorithm that inverts it.
//
// The encoder draws a random set R (shared with the decoder), finds the
// "good" elements G of R (inverted by the algorithm while putting little query
// magnitude on the rest of R) and writes:
//   advice | |G| | f(R) as a subset | f on [N]\R | f(G) within f(R) | f on R\G
// The decoder recovers f(G) -> G by simulating the algorithm against the
// oracle h that equals f off R and is constantly y on R.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

#include "advice_lab/qsim.h"

namespace advice_lab::compress {

using BigInt = boost::multiprecision::cpp_int;
using qsim::AdvisedAlgorithm;
using qsim::AlgorithmSpec;
using qsim::Oracle;

// ---- combinatorial codecs ----

BigInt binomial(std::size_t n, std::size_t k);
BigInt factorial(std::size_t n);

/// Bits needed to name one of `count` values: ceil(log2 count), 0 for count <= 1.
std::size_t index_bits(const BigInt& count);
double log2_big(const BigInt& value);
/// log2(n!) via lgamma.
double log2_factorial(std::size_t n);

/// Colexicographic rank of a k-subset of [n] (combinatorial number system).
/// Elements may come in any order. Throws std::invalid_argument on duplicates
/// or elements outside [n].
BigInt rank_set(std::span<const std::uint32_t> subset, std::size_t n);
/// Inverse of rank_set; ascending output. Throws std::out_of_range unless rank < C(n, k).
std::vector<std::uint32_t> unrank_set(const BigInt& rank, std::size_t n, std::size_t k);

/// Lehmer-code rank of a permutation of [m].
BigInt rank_perm(std::span<const std::uint32_t> perm);
/// Throws std::out_of_range unless rank < m!.
std::vector<std::uint32_t> unrank_perm(const BigInt& rank, std::size_t m);

// ---- parameters and sampling ----

struct CompressionParams {
  double delta = 0.9;
  double c = 0.001;
  std::size_t min_good = 1;
  double success_threshold = 2.0 / 3.0;

  /// sqrt(c) < 1/24: a good element is still output with probability > 1/2
  /// under h. Throws std::invalid_argument when violated or out of (0, 1).
  void validate() const;
  bool decoding_certain() const;
  /// delta/2 - 10 delta^2 / c, the margin in the lower bound on |G|.
  double good_set_margin() const { return delta / 2.0 - 10.0 * delta * delta / c; }
  bool good_set_margin_positive() const { return good_set_margin() > 0.0; }
};

/// Each element of [N] independently with probability delta / T^2. Ascending.
std::vector<std::uint32_t> sample_R(std::size_t n_elements, double delta, std::size_t queries,
                                    std::uint64_t seed);

/// Elements x whose preimage query f(x) the algorithm answers with x with
/// exact probability >= threshold.
std::vector<std::uint32_t> inversion_set(const Oracle& f, const AlgorithmSpec& alg,
                                         double threshold = 2.0 / 3.0);

/// x in I and R with sum_{z in R\{x}} q_z(x) <= c/T (T = alg.max_queries;
/// with T = 0 the condition is vacuous).
std::vector<std::uint32_t> good_set(const Oracle& f, const AlgorithmSpec& alg,
                                    std::span<const std::uint32_t> r_set,
                                    const CompressionParams& params);

// ---- encoding ----

struct Encoding {
  Bits advice;
  std::size_t good_count = 0;
  std::size_t r_size = 0;
  BigInt fr_rank;     // f(R) among C(N, |R|)
  BigInt outer_rank;  // [N]\R -> [N]\f(R) among (N-|R|)!
  BigInt fg_rank;     // f(G) within f(R) among C(|R|, |G|)
  BigInt inner_rank;  // R\G -> f(R\G) among (|R|-|G|)!
  std::size_t logical_bits = 0;

  bool operator==(const Encoding&) const = default;
};

/// S + ceil(log2 N) for |G| + ceil(log2 N) for |R| + the four rank widths.
/// Counts are stored minus one, which fits since 1 <= |G| <= |R| <= N.
std::size_t logical_bit_length(std::size_t n_elements, std::size_t advice_bits,
                               std::size_t r_size, std::size_t good_count);

/// Header allowance: length <= S + log2 N! - log2 |G|! + kKappa * log2 N.
inline constexpr double kKappa = 4.0;
double length_bound(std::size_t n_elements, std::size_t advice_bits, std::size_t good_count);

struct EncodeResult {
  std::optional<Encoding> encoding;  // empty: |G| < min_good
  std::vector<std::uint32_t> good;
  std::size_t inverted_in_r = 0;  // |I n R|
  bool ok() const { return encoding.has_value(); }
};

EncodeResult encode(const Oracle& f, const AdvisedAlgorithm& scheme,
                    std::span<const std::uint32_t> r_set, const CompressionParams& params);

/// h(z) = known[z] off R and y on R. `known` has length N; entries at R are ignored.
Oracle build_h(std::span<const std::uint32_t> known, std::span<const std::uint32_t> r_set,
               std::uint32_t y);

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rebuilds f. Throws DecodeError on corrupt ranks, on an ambiguous most
/// likely output (top two within 1e-9) or on an inconsistent recovered G.
std::vector<std::uint32_t> decode(const Encoding& enc, std::span<const std::uint32_t> r_set,
                                  const AdvisedAlgorithm& scheme, const CompressionParams& params);

/// ||phi_f - phi_h|| for input f(x), h built with y = f(x).
double hybrid_distance(const Oracle& f, const AlgorithmSpec& alg,
                       std::span<const std::uint32_t> r_set, std::uint32_t x);

nlohmann::json to_json(const Encoding& enc);
Encoding encoding_from_json(const nlohmann::json& j);

/// Length-prefixed (4-byte big-endian) big-endian magnitude bytes.
std::vector<std::uint8_t> bigint_to_bytes(const BigInt& value);
BigInt bigint_from_bytes(std::span<const std::uint8_t> bytes);

std::string base64_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> base64_decode(const std::string& text);

// ---- counting ----

struct CountingReport {
  bool holds = false;
  double required_bits = 0.0;  // log2 c + log2 |X|
  double available_bits = 0.0;
  double slack_bits = 0.0;     // available - required
};

/// |Y| >= c |X| in log form: log2 c + x_size_log2 <= enc_bits_max.
CountingReport counting_check(double x_size_log2, double enc_bits_max, double c = 0.8);

struct InstanceTradeoff {
  double lhs_bits = 0.0;  // log2(eps N! / 4)
  double rhs_bits = 0.0;  // measured logical length
  double slack_bits = 0.0;
  double t2s = 0.0;       // T^2 * S
  double eps_n = 0.0;     // eps * N
};

InstanceTradeoff instance_tradeoff(std::size_t n_elements, std::size_t advice_bits,
                                   std::size_t queries, double eps, std::size_t logical_bits);

// ---- event statistics ----

struct EventFrequencies {
  std::size_t samples = 0;
  double p_a = 0.0;
  double p_b = 0.0;
  double p_ab = 0.0;
  /// |p_ab - p_a p_b| <= 3 sigma, sigma from the binomial spread of p_ab.
  bool independent_within_three_sigma() const;
};

/// Draws R many times and records (A) x in R, (B) sum_{z in R\{x}} q_z <= threshold.
EventFrequencies event_frequencies(std::span<const double> magnitudes, std::uint32_t x,
                                   double inclusion_probability, double threshold,
                                   std::size_t samples, std::uint64_t seed);

}  // namespace advice_lab::compress
