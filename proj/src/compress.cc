#include "advice_lab/compress.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <openssl/evp.h>

namespace advice_lab::compress {

namespace {

constexpr double kTieTolerance = 1e-9;
constexpr std::uint32_t kUnset = UINT32_MAX;

std::vector<std::uint32_t> checked_sorted_subset(std::span<const std::uint32_t> subset,
                                                 std::size_t n, const char* what) {
  std::vector<std::uint32_t> sorted(subset.begin(), subset.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument(std::string(what) + ": repeated element");
  }
  if (!sorted.empty() && sorted.back() >= n) {
    throw std::invalid_argument(std::string(what) + ": element outside the ground set");
  }
  return sorted;
}

std::vector<std::uint32_t> complement(std::span<const std::uint32_t> sorted, std::size_t n) {
  std::vector<std::uint32_t> out;
  out.reserve(n - sorted.size());
  std::size_t k = 0;
  for (std::uint32_t v = 0; v < n; ++v) {
    if (k < sorted.size() && sorted[k] == v) {
      ++k;
    } else {
      out.push_back(v);
    }
  }
  return out;
}

std::vector<std::uint32_t> sorted_difference(std::span<const std::uint32_t> a,
                                             std::span<const std::uint32_t> b) {
  std::vector<std::uint32_t> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t position_in(std::span<const std::uint32_t> sorted, std::uint32_t value) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
  if (it == sorted.end() || *it != value) throw std::logic_error("value missing from sorted set");
  return static_cast<std::size_t>(it - sorted.begin());
}

/// Index-mapping bijection: the i-th element of `domain` goes to the
/// perm[i]-th element of `codomain`.
std::vector<std::uint32_t> relative_permutation(const Oracle& f,
                                                std::span<const std::uint32_t> domain,
                                                std::span<const std::uint32_t> codomain) {
  std::vector<std::uint32_t> perm(domain.size());
  for (std::size_t i = 0; i < domain.size(); ++i) {
    perm[i] = static_cast<std::uint32_t>(position_in(codomain, f.values()[domain[i]]));
  }
  return perm;
}

}  // namespace

// ---------------------------------------------------------------------------
// codecs

BigInt binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt factorial(std::size_t n) {
  BigInt result = 1;
  for (std::size_t i = 2; i <= n; ++i) result *= i;
  return result;
}

std::size_t index_bits(const BigInt& count) {
  if (count <= 1) return 0;
  const BigInt top = count - 1;
  return boost::multiprecision::msb(top) + 1;
}

double log2_big(const BigInt& value) {
  if (value <= 0) throw std::domain_error("log2_big: value must be positive");
  const std::size_t msb = boost::multiprecision::msb(value);
  if (msb < 53) return std::log2(value.convert_to<double>());
  const std::size_t shift = msb - 52;
  const BigInt head = value >> shift;
  return std::log2(head.convert_to<double>()) + static_cast<double>(shift);
}

double log2_factorial(std::size_t n) {
  return std::lgamma(static_cast<double>(n) + 1.0) / std::numbers::ln2;
}

BigInt rank_set(std::span<const std::uint32_t> subset, std::size_t n) {
  const auto sorted = checked_sorted_subset(subset, n, "rank_set");
  BigInt rank = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) rank += binomial(sorted[i], i + 1);
  return rank;
}

std::vector<std::uint32_t> unrank_set(const BigInt& rank, std::size_t n, std::size_t k) {
  if (k > n || rank < 0 || rank >= binomial(n, k)) {
    throw std::out_of_range("unrank_set: rank outside [0, C(n, k))");
  }
  std::vector<std::uint32_t> out(k);
  BigInt rest = rank;
  std::size_t ceiling = n;  // elements chosen so far are >= ceiling
  for (std::size_t i = k; i >= 1; --i) {
    // Largest c < ceiling with C(c, i) <= rest. C(i-1, i) = 0 always qualifies.
    std::size_t c = i - 1;
    BigInt value = 0;
    BigInt next = 1;  // C(i, i)
    while (c + 1 < ceiling && next <= rest) {
      ++c;
      value = next;
      next = next * (c + 1) / (c + 1 - i);
    }
    out[i - 1] = static_cast<std::uint32_t>(c);
    rest -= value;
    ceiling = c;
  }
  return out;
}

BigInt rank_perm(std::span<const std::uint32_t> perm) {
  const std::size_t m = perm.size();
  std::vector<bool> seen(m, false);
  for (auto v : perm) {
    if (v >= m || seen[v]) throw std::invalid_argument("rank_perm: not a permutation");
    seen[v] = true;
  }
  BigInt rank = 0;
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t smaller_after = 0;
    for (std::size_t j = i + 1; j < m; ++j) {
      if (perm[j] < perm[i]) ++smaller_after;
    }
    rank = rank * (m - i) + smaller_after;
  }
  return rank;
}

std::vector<std::uint32_t> unrank_perm(const BigInt& rank, std::size_t m) {
  if (rank < 0 || rank >= factorial(m)) throw std::out_of_range("unrank_perm: rank outside [0, m!)");
  std::vector<std::size_t> digits(m);
  BigInt rest = rank;
  for (std::size_t i = m; i-- > 0;) {
    const std::size_t radix = m - i;
    digits[i] = static_cast<std::size_t>(rest % radix);
    rest /= radix;
  }
  std::vector<std::uint32_t> remaining(m);
  for (std::size_t v = 0; v < m; ++v) remaining[v] = static_cast<std::uint32_t>(v);
  std::vector<std::uint32_t> perm(m);
  for (std::size_t i = 0; i < m; ++i) {
    perm[i] = remaining[digits[i]];
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(digits[i]));
  }
  return perm;
}

// ---------------------------------------------------------------------------
// parameters and sampling

bool CompressionParams::decoding_certain() const { return std::sqrt(c) < 1.0 / 24.0; }

void CompressionParams::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in (0, 1)");
  if (!decoding_certain()) {
    throw std::invalid_argument("need sqrt(c) < 1/24 so that decoding is certain");
  }
  if (!(success_threshold > 0.5 && success_threshold <= 1.0)) {
    throw std::invalid_argument("success threshold must lie in (1/2, 1]");
  }
}

std::vector<std::uint32_t> sample_R(std::size_t n_elements, double delta, std::size_t queries,
                                    std::uint64_t seed) {
  if (queries == 0) throw std::invalid_argument("sample_R: inclusion probability delta/T^2 needs T >= 1");
  const double t = static_cast<double>(queries);
  const double p = delta / (t * t);
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("sample_R: delta/T^2 must lie in (0, 1]");
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> r_set;
  for (std::uint32_t z = 0; z < n_elements; ++z) {
    if (unit_interval(rng()) < p) r_set.push_back(z);
  }
  return r_set;
}

std::vector<std::uint32_t> inversion_set(const Oracle& f, const AlgorithmSpec& alg,
                                         double threshold) {
  std::vector<std::uint32_t> inverted;
  for (std::uint32_t x = 0; x < f.size(); ++x) {
    const auto result = qsim::run(alg, f, f.values()[x]);
    if (qsim::output_probability(alg, result.final_state, x) >= threshold - 1e-12) {
      inverted.push_back(x);
    }
  }
  return inverted;
}

namespace {

struct Classification {
  std::vector<std::uint32_t> good;
  std::size_t inverted = 0;
};

Classification classify(const Oracle& f, const AlgorithmSpec& alg,
                        std::span<const std::uint32_t> r_sorted, const CompressionParams& params) {
  Classification out;
  const std::size_t t = alg.max_queries;
  const double budget = t == 0 ? 0.0 : params.c / static_cast<double>(t);
  for (auto x : r_sorted) {
    const auto result = qsim::run(alg, f, f.values()[x]);
    if (qsim::output_probability(alg, result.final_state, x) < params.success_threshold - 1e-12) {
      continue;
    }
    ++out.inverted;
    double mass = 0.0;
    for (auto z : r_sorted) {
      if (z != x) mass += result.trace.totals[z];
    }
    if (t == 0 || mass <= budget) out.good.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> good_set(const Oracle& f, const AlgorithmSpec& alg,
                                    std::span<const std::uint32_t> r_set,
                                    const CompressionParams& params) {
  const auto sorted = checked_sorted_subset(r_set, f.size(), "good_set");
  return classify(f, alg, sorted, params).good;
}

// ---------------------------------------------------------------------------
// encoding

std::size_t logical_bit_length(std::size_t n_elements, std::size_t advice_bits,
                               std::size_t r_size, std::size_t good_count) {
  const std::size_t header = 2 * ceil_log2(n_elements);
  return advice_bits + header + index_bits(binomial(n_elements, r_size)) +
         index_bits(factorial(n_elements - r_size)) + index_bits(binomial(r_size, good_count)) +
         index_bits(factorial(r_size - good_count));
}

double length_bound(std::size_t n_elements, std::size_t advice_bits, std::size_t good_count) {
  return static_cast<double>(advice_bits) + log2_factorial(n_elements) -
         log2_factorial(good_count) + kKappa * std::log2(static_cast<double>(n_elements));
}

EncodeResult encode(const Oracle& f, const AdvisedAlgorithm& scheme,
                    std::span<const std::uint32_t> r_set, const CompressionParams& params) {
  if (f.kind() != Oracle::Kind::kPermutation) throw std::invalid_argument("encode: f must be a permutation");
  params.validate();
  const std::size_t n = f.size();
  const auto r_sorted = checked_sorted_subset(r_set, n, "encode");

  Bits advice = scheme.preprocess(f);
  const AlgorithmSpec alg = scheme.instantiate(advice);

  EncodeResult result;
  auto cls = classify(f, alg, r_sorted, params);
  result.good = std::move(cls.good);
  result.inverted_in_r = cls.inverted;
  if (result.good.size() < std::max<std::size_t>(params.min_good, 1)) return result;

  const auto image = [&f](std::span<const std::uint32_t> xs) {
    std::vector<std::uint32_t> ys;
    ys.reserve(xs.size());
    for (auto x : xs) ys.push_back(f.values()[x]);
    std::sort(ys.begin(), ys.end());
    return ys;
  };

  Encoding enc;
  enc.advice = std::move(advice);
  enc.good_count = result.good.size();
  enc.r_size = r_sorted.size();

  const auto f_r = image(r_sorted);
  enc.fr_rank = rank_set(f_r, n);

  const auto outside = complement(r_sorted, n);
  const auto f_outside = complement(f_r, n);
  enc.outer_rank = rank_perm(relative_permutation(f, outside, f_outside));

  const auto f_g = image(result.good);
  std::vector<std::uint32_t> fg_index;
  for (auto y : f_g) fg_index.push_back(static_cast<std::uint32_t>(position_in(f_r, y)));
  enc.fg_rank = rank_set(fg_index, f_r.size());

  const auto rest = sorted_difference(r_sorted, result.good);
  const auto f_rest = sorted_difference(f_r, f_g);
  enc.inner_rank = rank_perm(relative_permutation(f, rest, f_rest));

  enc.logical_bits = logical_bit_length(n, enc.advice.size(), enc.r_size, enc.good_count);
  result.encoding = std::move(enc);
  return result;
}

Oracle build_h(std::span<const std::uint32_t> known, std::span<const std::uint32_t> r_set,
               std::uint32_t y) {
  std::vector<std::uint32_t> values(known.begin(), known.end());
  for (auto z : r_set) {
    if (z >= values.size()) throw std::invalid_argument("build_h: R not inside [N]");
    values[z] = y;
  }
  return Oracle::function(std::move(values));
}

std::vector<std::uint32_t> decode(const Encoding& enc, std::span<const std::uint32_t> r_set,
                                  const AdvisedAlgorithm& scheme, const CompressionParams& params) {
  params.validate();
  const AlgorithmSpec alg = scheme.instantiate(enc.advice);
  const std::size_t n = alg.layout.num_positions;
  const auto r_sorted = checked_sorted_subset(r_set, n, "decode");
  const std::size_t r = r_sorted.size();
  const std::size_t g = enc.good_count;
  if (enc.r_size != r) throw DecodeError("decode: encoding was made for a different R");
  if (g < 1 || g > r) throw DecodeError("decode: good count outside [1, |R|]");
  if (enc.fr_rank < 0 || enc.fr_rank >= binomial(n, r) || enc.outer_rank < 0 ||
      enc.outer_rank >= factorial(n - r) || enc.fg_rank < 0 || enc.fg_rank >= binomial(r, g) ||
      enc.inner_rank < 0 || enc.inner_rank >= factorial(r - g)) {
    throw DecodeError("decode: rank out of range (corrupt encoding)");
  }

  std::vector<std::uint32_t> table(n, kUnset);
  const auto f_r = unrank_set(enc.fr_rank, n, r);
  const auto outside = complement(r_sorted, n);
  const auto f_outside = complement(f_r, n);
  const auto outer = unrank_perm(enc.outer_rank, n - r);
  for (std::size_t i = 0; i < outside.size(); ++i) table[outside[i]] = f_outside[outer[i]];

  std::vector<std::uint32_t> f_g;
  for (auto idx : unrank_set(enc.fg_rank, r, g)) f_g.push_back(f_r[idx]);

  std::vector<std::uint32_t> good;
  for (auto y : f_g) {
    const Oracle h = build_h(table, r_sorted, y);
    const auto result = qsim::run(alg, h, y);
    const auto dist = qsim::measurement_distribution(result.final_state, alg.output);
    std::size_t best = 0;
    for (std::size_t v = 1; v < dist.size(); ++v) {
      if (dist[v] > dist[best]) best = v;
    }
    for (std::size_t v = 0; v < dist.size(); ++v) {
      if (v != best && dist[best] - dist[v] <= kTieTolerance) {
        throw DecodeError("decode: ambiguous most likely output");
      }
    }
    const auto x = static_cast<std::uint32_t>(best);
    if (!std::binary_search(r_sorted.begin(), r_sorted.end(), x) || table[x] != kUnset) {
      throw DecodeError("decode: recovered preimage is not a fresh element of R");
    }
    table[x] = y;
    good.push_back(x);
  }
  std::sort(good.begin(), good.end());

  const auto rest = sorted_difference(r_sorted, good);
  const auto f_rest = sorted_difference(f_r, f_g);
  const auto inner = unrank_perm(enc.inner_rank, r - g);
  for (std::size_t i = 0; i < rest.size(); ++i) table[rest[i]] = f_rest[inner[i]];

  if (std::find(table.begin(), table.end(), kUnset) != table.end()) {
    throw DecodeError("decode: table incomplete");
  }
  return table;
}

double hybrid_distance(const Oracle& f, const AlgorithmSpec& alg,
                       std::span<const std::uint32_t> r_set, std::uint32_t x) {
  const std::uint32_t y = f.values()[x];
  const Oracle h = build_h(f.values(), r_set, y);
  const auto run_f = qsim::run(alg, f, y);
  const auto run_h = qsim::run(alg, h, y);
  return qsim::euclidean_distance(run_f.final_state, run_h.final_state);
}

// ---------------------------------------------------------------------------
// serialization

std::vector<std::uint8_t> bigint_to_bytes(const BigInt& value) {
  if (value < 0) throw std::invalid_argument("bigint_to_bytes: negative value");
  std::vector<std::uint8_t> magnitude;
  if (value != 0) boost::multiprecision::export_bits(value, std::back_inserter(magnitude), 8, true);
  const auto len = static_cast<std::uint32_t>(magnitude.size());
  std::vector<std::uint8_t> out(4 + magnitude.size());
  for (int k = 0; k < 4; ++k) out[k] = static_cast<std::uint8_t>(len >> (24 - 8 * k));
  std::copy(magnitude.begin(), magnitude.end(), out.begin() + 4);
  return out;
}

BigInt bigint_from_bytes(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw std::invalid_argument("bigint_from_bytes: missing length prefix");
  const std::uint32_t len = (std::uint32_t{bytes[0]} << 24) | (std::uint32_t{bytes[1]} << 16) |
                            (std::uint32_t{bytes[2]} << 8) | std::uint32_t{bytes[3]};
  if (bytes.size() != 4 + std::size_t{len}) {
    throw std::invalid_argument("bigint_from_bytes: length prefix does not match payload");
  }
  BigInt value = 0;
  if (len > 0) boost::multiprecision::import_bits(value, bytes.begin() + 4, bytes.end(), 8, true);
  return value;
}

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int written = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                      static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(written));
  return out;
}

std::vector<std::uint8_t> base64_decode(const std::string& text) {
  if (text.size() % 4 != 0) throw std::invalid_argument("base64: length not a multiple of 4");
  std::vector<std::uint8_t> out(3 * text.size() / 4);
  const int written = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                      static_cast<int>(text.size()));
  if (written < 0) throw std::invalid_argument("base64: malformed input");
  std::size_t padding = 0;
  if (!text.empty() && text.back() == '=') ++padding;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++padding;
  out.resize(static_cast<std::size_t>(written) - padding);
  return out;
}

nlohmann::json to_json(const Encoding& enc) {
  const auto b64 = [](const BigInt& v) { return base64_encode(bigint_to_bytes(v)); };
  return {{"S", enc.advice.size()},
          {"good_count", enc.good_count},
          {"r_size", enc.r_size},
          {"ranks",
           {{"fR", b64(enc.fr_rank)},
            {"outer", b64(enc.outer_rank)},
            {"fG", b64(enc.fg_rank)},
            {"inner", b64(enc.inner_rank)}}},
          {"advice", base64_encode(pack_bits(enc.advice))},
          {"logical_bits", enc.logical_bits}};
}

Encoding encoding_from_json(const nlohmann::json& j) {
  const auto rank = [&j](const char* key) {
    return bigint_from_bytes(base64_decode(j.at("ranks").at(key).get<std::string>()));
  };
  Encoding enc;
  const auto s = j.at("S").get<std::size_t>();
  enc.advice = unpack_bits(base64_decode(j.at("advice").get<std::string>()), s);
  enc.good_count = j.at("good_count").get<std::size_t>();
  enc.r_size = j.at("r_size").get<std::size_t>();
  enc.fr_rank = rank("fR");
  enc.outer_rank = rank("outer");
  enc.fg_rank = rank("fG");
  enc.inner_rank = rank("inner");
  enc.logical_bits = j.at("logical_bits").get<std::size_t>();
  return enc;
}

// ---------------------------------------------------------------------------
// counting

CountingReport counting_check(double x_size_log2, double enc_bits_max, double c) {
  if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("counting_check: c must lie in (0, 1]");
  CountingReport report;
  report.required_bits = std::log2(c) + x_size_log2;
  report.available_bits = enc_bits_max;
  report.slack_bits = enc_bits_max - report.required_bits;
  report.holds = report.required_bits <= enc_bits_max;
  return report;
}

InstanceTradeoff instance_tradeoff(std::size_t n_elements, std::size_t advice_bits,
                                   std::size_t queries, double eps, std::size_t logical_bits) {
  InstanceTradeoff out;
  out.lhs_bits = std::log2(eps) + log2_factorial(n_elements) - 2.0;
  out.rhs_bits = static_cast<double>(logical_bits);
  out.slack_bits = out.rhs_bits - out.lhs_bits;
  const double t = static_cast<double>(queries);
  out.t2s = t * t * static_cast<double>(advice_bits);
  out.eps_n = eps * static_cast<double>(n_elements);
  return out;
}

// ---------------------------------------------------------------------------
// events

bool EventFrequencies::independent_within_three_sigma() const {
  const double q = p_a * p_b;
  const double sigma = std::sqrt(q * (1.0 - q) / static_cast<double>(samples));
  return std::abs(p_ab - q) <= 3.0 * sigma + 1e-12;
}

EventFrequencies event_frequencies(std::span<const double> magnitudes, std::uint32_t x,
                                   double inclusion_probability, double threshold,
                                   std::size_t samples, std::uint64_t seed) {
  if (x >= magnitudes.size() || samples == 0) throw std::invalid_argument("event_frequencies: bad arguments");
  std::mt19937_64 rng(seed);
  std::size_t count_a = 0, count_b = 0, count_ab = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    bool a = false;
    double mass = 0.0;
    for (std::uint32_t z = 0; z < magnitudes.size(); ++z) {
      const bool in_r = unit_interval(rng()) < inclusion_probability;
      if (z == x) {
        a = in_r;
      } else if (in_r) {
        mass += magnitudes[z];
      }
    }
    const bool b = mass <= threshold;
    count_a += a;
    count_b += b;
    count_ab += a && b;
  }
  EventFrequencies out;
  out.samples = samples;
  const double k = static_cast<double>(samples);
  out.p_a = static_cast<double>(count_a) / k;
  out.p_b = static_cast<double>(count_b) / k;
  out.p_ab = static_cast<double>(count_ab) / k;
  return out;
}

}  // namespace advice_lab::compress
