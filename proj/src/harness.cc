#include "advice_lab/harness.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>

#include "advice_lab/advice.h"
#include "advice_lab/compress.h"
#include "advice_lab/hybrid.h"

namespace advice_lab::harness {

namespace {

std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string num(std::uint64_t v) { return std::to_string(v); }
std::string num(std::size_t v, int) { return std::to_string(v); }

std::string hex(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << v;
  return out.str();
}

std::string flag(bool b) { return b ? "1" : "0"; }

template <class Range>
std::string joined(const Range& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ';';
    out += std::to_string(v);
  }
  return out;
}

std::vector<std::size_t> default_s_list(const ExperimentConfig& config,
                                        std::vector<std::size_t> fallback) {
  return config.s_list.empty() ? fallback : config.s_list;
}

}  // namespace

// ---------------------------------------------------------------------------
// config

std::string ExperimentConfig::canonical() const {
  std::ostringstream out;
  out << "command=" << command << ";n=" << n << ";m=" << m << ";s=" << joined(s_list)
      << ";delta=" << num(delta) << ";c=" << num(c) << ";trials=" << trials << ";seed=" << seed
      << ";iterations=" << (iterations ? std::to_string(*iterations) : "default")
      << ";algorithm=" << algorithm << ";suite=" << suite;
  return out.str();
}

std::uint64_t ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw std::invalid_argument("--trials must be at least 1");
  if (command == "grover") {
    if (n < 2 || !is_power_of_two(n) || n > 256) {
      throw std::invalid_argument("grover: N must be a power of two in [2, 256]");
    }
  } else if (command == "box") {
    if (n < 2 || n > 12) throw std::invalid_argument("box: N must lie in [2, 12] (exhaustive classes)");
    if (m < 1 || m >= n) throw std::invalid_argument("box: need 1 <= m < N");
  } else if (command == "hellman") {
    if (n < 2 || !is_power_of_two(n) || n > (1u << 20)) {
      throw std::invalid_argument("hellman: N must be a power of two in [2, 2^20]");
    }
    for (auto s : s_list) {
      if (s < 1 || s > n) throw std::invalid_argument("hellman: every s must lie in [1, N]");
    }
  } else if (command == "compress") {
    if (n < 2 || !is_power_of_two(n) || n > 64) {
      throw std::invalid_argument("compress: N must be a power of two in [2, 64]");
    }
    for (auto s : s_list) {
      if (s < 1 || s > n) throw std::invalid_argument("compress: s must lie in [1, N]");
    }
  } else if (command == "verify") {
    static const std::vector<std::string> suites{"swapping", "tv", "collision", "codec", "all"};
    if (std::find(suites.begin(), suites.end(), suite) == suites.end()) {
      throw std::invalid_argument("verify: unknown suite '" + suite + "'");
    }
  } else {
    throw std::invalid_argument("unknown command '" + command + "'");
  }
}

std::size_t threads_from_env() {
  if (const char* env = std::getenv("ADVICE_LAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1;
}

// ---------------------------------------------------------------------------
// emission

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  return out.str();
}

nlohmann::ordered_json to_json(const Table& table) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json entry = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) entry[table.columns[i]] = row[i];
    rows.push_back(std::move(entry));
  }
  return rows;
}

std::string render(const Table& table, Format format) {
  if (format == Format::kCsv) return to_csv(table);
  return to_json(table).dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// generators

std::vector<std::uint32_t> random_permutation(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint32_t>(i);
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[uniform_below(rng, i)]);
  return perm;
}

Bits random_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Bits bits(n);
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
  return bits;
}

namespace {

std::vector<std::uint32_t> with_transposition(std::vector<std::uint32_t> f, std::mt19937_64& rng) {
  const std::size_t a = uniform_below(rng, f.size());
  std::size_t b = uniform_below(rng, f.size() - 1);
  if (b >= a) ++b;
  std::swap(f[a], f[b]);
  return f;
}

Bits with_flips(Bits x, std::mt19937_64& rng) {
  const std::size_t flips = 1 + uniform_below(rng, 3);
  for (std::size_t k = 0; k < flips; ++k) x[uniform_below(rng, x.size())] ^= 1u;
  return x;
}

}  // namespace

SwapInstance make_swap_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t n = (rng() & 1u) ? 16 : 8;
  const std::size_t family = uniform_below(rng, 4);
  switch (family) {
    case 0: {
      auto f = random_permutation(n, rng());
      auto g = with_transposition(f, rng);
      const std::size_t iters = 1 + uniform_below(rng, qsim::default_grover_iterations(n));
      return SwapInstance{"grover-invert", qsim::grover_inversion_algorithm(n, iters),
                          qsim::Oracle::permutation(std::move(f)),
                          qsim::Oracle::permutation(std::move(g)), uniform_below(rng, n)};
    }
    case 1: {
      auto f = random_permutation(n, rng());
      const std::size_t s = 1 + uniform_below(rng, 4);
      auto oracle_f = qsim::Oracle::permutation(f);
      auto alg = advice::hellman_algorithm(advice::hellman_build(oracle_f, s));
      auto g = with_transposition(f, rng);
      return SwapInstance{"hellman", std::move(alg), std::move(oracle_f),
                          qsim::Oracle::permutation(std::move(g)), uniform_below(rng, n)};
    }
    case 2: {
      auto x = random_bits(n, rng());
      auto y = with_flips(x, rng);
      const std::size_t j = uniform_below(rng, n);
      const std::size_t iters = 1 + uniform_below(rng, 2);
      return SwapInstance{"box-grover", qsim::box_grover_algorithm(n, iters),
                          qsim::Oracle::bit_string(x, j), qsim::Oracle::bit_string(y, j), j};
    }
    default: {
      auto x = random_bits(n, rng());
      const std::size_t m = 1 + uniform_below(rng, n - 1);
      auto alg = advice::parity_algorithm(advice::parity_preprocess(x, m));
      auto y = with_flips(x, rng);
      const std::size_t j = uniform_below(rng, n);
      return SwapInstance{"parity", std::move(alg), qsim::Oracle::bit_string(x, j),
                          qsim::Oracle::bit_string(y, j), j};
    }
  }
}

std::pair<qsim::PureState, qsim::PureState> make_state_pair(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const qsim::BasisLayout layout(2 + uniform_below(rng, 7), 1 + uniform_below(rng, 4),
                                 1 + uniform_below(rng, 2));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const auto random_vector = [&] {
    std::vector<qsim::Amplitude> v(layout.dimension());
    for (auto& a : v) a = {gauss(rng), gauss(rng)};
    return v;
  };
  const auto normalized = [](std::vector<qsim::Amplitude> v) {
    double norm = 0.0;
    for (const auto& a : v) norm += std::norm(a);
    norm = std::sqrt(norm);
    for (auto& a : v) a /= norm;
    return v;
  };
  auto a = normalized(random_vector());
  std::vector<qsim::Amplitude> b;
  if (rng() & 1u) {
    b = normalized(random_vector());
  } else {
    const double eps = 0.01 + 0.49 * unit_interval(rng());
    b = random_vector();
    for (std::size_t i = 0; i < b.size(); ++i) b[i] = a[i] + eps * b[i];
    b = normalized(std::move(b));
  }
  return {qsim::PureState(layout, std::move(a)), qsim::PureState(layout, std::move(b))};
}

// ---------------------------------------------------------------------------
// commands

Table cmd_grover(const ExperimentConfig& config) {
  const std::size_t n = config.n;
  const std::size_t iterations = config.iterations.value_or(qsim::default_grover_iterations(n));
  Table table;
  table.columns = {"config_hash", "seed", "trial", "n", "iterations", "queries", "target",
                   "candidate", "success_probability", "closed_form", "query_mass"};
  struct Row {
    std::uint64_t seed;
    std::uint32_t target;
    qsim::GroverResult result;
  };
  std::vector<Row> rows(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    Row& row = rows[t];
    row.seed = derive_seed(config.seed, t);
    std::mt19937_64 rng(row.seed);
    const auto f = qsim::Oracle::permutation(random_permutation(n, rng()));
    row.target = static_cast<std::uint32_t>(uniform_below(rng, n));
    row.result = qsim::grover_invert(f, row.target, iterations);
  });
  const double closed = qsim::grover_closed_form(n, iterations);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const auto& r = rows[t].result;
    const double mass = r.trace.total_mass();
    table.rows.push_back({hex(config.hash()), num(rows[t].seed), num(t, 0), num(n, 0),
                          num(iterations, 0), num(r.trace.num_queries, 0), num(rows[t].target, 0),
                          num(r.candidate, 0), num(r.success_probability), num(closed), num(mass)});
    if (std::abs(r.success_probability - closed) > 1e-6) {
      table.violations.push_back("trial " + std::to_string(t) + ": success probability off closed form");
    }
    if (std::abs(mass - static_cast<double>(r.trace.num_queries)) > 1e-9) {
      table.violations.push_back("trial " + std::to_string(t) + ": total query magnitude != T");
    }
  }
  return table;
}

namespace {

qsim::AdvisedAlgorithm box_scheme(const ExperimentConfig& config) {
  auto scheme = advice::parity_scheme(config.n, config.m);
  const std::string alg = config.algorithm.empty() ? "parity" : config.algorithm;
  if (alg == "parity") return scheme;
  const std::size_t n = config.n;
  if (alg == "grover") {
    const std::size_t iters = config.iterations.value_or(1);
    scheme.name = "box-grover";
    scheme.instantiate = [n, iters](const Bits&) { return qsim::box_grover_algorithm(n, iters); };
    return scheme;
  }
  if (alg == "idle") {
    scheme.name = "idle";
    scheme.instantiate = [n](const Bits&) {
      return qsim::constant_algorithm(qsim::BasisLayout(n, 2, 1), qsim::Register::kAnswer, 0);
    };
    return scheme;
  }
  throw std::invalid_argument("box: --alg must be parity, grover or idle");
}

}  // namespace

Table cmd_box(const ExperimentConfig& config) {
  const auto scheme = box_scheme(config);
  hybrid::BoxConfig box;
  box.n_positions = config.n;
  box.m = config.m;
  box.trials = config.trials;
  box.seed = config.seed;
  const auto stats = hybrid::box_experiment(box, scheme, config.threads);

  Table table;
  table.columns = {"config_hash", "seed", "trial", "n", "m", "algorithm", "alpha", "class_size",
                   "skipped", "forbidden", "window", "x", "y", "delta", "queries", "distance",
                   "swap_bound", "holds", "window_magnitude", "distance_bound", "mean_qz",
                   "expected_qz"};
  for (const auto& t : stats.trials) {
    table.rows.push_back(
        {hex(config.hash()), num(t.seed), num(t.trial, 0), num(config.n, 0), num(config.m, 0),
         scheme.name, to_bitstring(t.alpha), num(t.class_size, 0), flag(t.skipped),
         num(t.forbidden, 0), joined(t.window), to_bitstring(hybrid::bits_from_word(t.x, config.n)),
         to_bitstring(hybrid::bits_from_word(t.y, config.n)), joined(t.swap.delta),
         num(t.swap.num_queries, 0), num(t.swap.actual), num(t.swap.bound), flag(t.swap.holds),
         num(t.window_magnitude), num(t.distance_bound), num(t.magnitude.mean),
         num(t.magnitude.expected)});
    if (!t.skipped && !t.swap.holds) {
      table.violations.push_back("trial " + std::to_string(t.trial) + ": swapping bound violated");
    }
  }
  table.notes.push_back("skipped " + std::to_string(stats.skipped) + " of " +
                        std::to_string(stats.trials.size()) + " trials (small advice class)");
  table.notes.push_back("pooled mean q_z = " + num(stats.magnitude_mean) +
                        ", pooled T/(N-1) = " + num(stats.magnitude_expected));
  return table;
}

Table cmd_hellman(const ExperimentConfig& config) {
  const std::size_t n = config.n;
  const double n_bits = static_cast<double>(ceil_log2(n));
  std::vector<std::size_t> s_list = default_s_list(config, {});
  if (s_list.empty()) {
    for (std::size_t s : {8u, 16u, 32u, 64u}) {
      if (s <= n) s_list.push_back(s);
    }
    if (s_list.empty()) s_list.push_back(n);
  }
  Table table;
  table.columns = {"config_hash", "seed", "n", "s", "trials", "entries_max", "space_bits",
                   "header_bits_max", "worst_calls", "mean_calls", "product", "ratio_to_2nN",
                   "correct_fraction"};
  for (auto s : s_list) {
    std::vector<advice::TradeoffPoint> points(config.trials);
    parallel_for(config.trials, config.threads, [&](std::size_t t) {
      const auto f = qsim::Oracle::permutation(random_permutation(n, derive_seed(config.seed, t)));
      points[t] = advice::measure_tradeoff(f, s);
    });
    std::size_t entries = 0, space = 0, header = 0, worst = 0, correct = 0;
    double mean_calls = 0.0;
    for (const auto& p : points) {
      entries = std::max(entries, p.entries);
      space = std::max(space, p.space_bits);
      header = std::max(header, p.header_bits);
      worst = std::max(worst, p.worst_calls);
      mean_calls += p.mean_calls / static_cast<double>(points.size());
      correct += p.all_correct;
    }
    const std::size_t product = space * worst;
    const double ratio = static_cast<double>(product) / (2.0 * n_bits * static_cast<double>(n));
    const double fraction = static_cast<double>(correct) / static_cast<double>(points.size());
    table.rows.push_back({hex(config.hash()), num(config.seed), num(n, 0), num(s, 0),
                          num(config.trials, 0), num(entries, 0), num(space, 0), num(header, 0),
                          num(worst, 0), num(mean_calls), num(product, 0), num(ratio),
                          num(fraction)});
    const std::string tag = "s=" + std::to_string(s) + ": ";
    if (correct != points.size()) table.violations.push_back(tag + "an inversion was wrong");
    if (worst > 2 * s + 2) table.violations.push_back(tag + "oracle calls exceed 2s+2");
    if (ratio > 8.0 || ratio < 1.0 / 8.0) {
      table.violations.push_back(tag + "S*T outside a factor 8 of N*2n");
    }
  }
  return table;
}

namespace {

qsim::AdvisedAlgorithm compress_scheme(const ExperimentConfig& config) {
  const std::string alg = config.algorithm.empty() ? "hellman" : config.algorithm;
  if (alg == "hellman") {
    return advice::hellman_scheme(config.n, default_s_list(config, {2}).front());
  }
  if (alg == "grover") {
    return qsim::grover_scheme(config.n,
                               config.iterations.value_or(qsim::default_grover_iterations(config.n)));
  }
  if (alg == "inverse-table") return advice::inverse_table_scheme(config.n);
  throw std::invalid_argument("compress: --alg must be hellman, grover or inverse-table");
}

}  // namespace

Table cmd_compress(const ExperimentConfig& config) {
  const std::size_t n = config.n;
  const auto scheme = compress_scheme(config);
  compress::CompressionParams params;
  params.delta = config.delta;
  params.c = config.c;
  params.validate();

  const auto f = qsim::Oracle::permutation(random_permutation(n, splitmix64(config.seed)));
  const auto alg = scheme.instantiate(scheme.preprocess(f));
  // A query-free algorithm would make delta/T^2 infinite; sample as if T = 1.
  const std::size_t t_for_sampling = std::max<std::size_t>(alg.max_queries, 1);
  const double closeness = std::sqrt(params.c) + 1e-9;

  struct Row {
    std::uint64_t seed = 0;
    std::size_t r_size = 0;
    std::size_t inverted = 0;
    std::size_t good = 0;
    bool encoded = false;
    bool decoded = false;
    bool silent_mismatch = false;
    std::size_t logical = 0;
    std::size_t formula = 0;
    double bound = 0.0;
    double max_h = 0.0;
  };
  std::vector<Row> rows(config.trials);
  parallel_for(config.trials, config.threads, [&](std::size_t t) {
    Row& row = rows[t];
    row.seed = derive_seed(config.seed, t);
    const auto r_set = compress::sample_R(n, params.delta, t_for_sampling, row.seed);
    row.r_size = r_set.size();
    const auto enc = compress::encode(f, scheme, r_set, params);
    row.inverted = enc.inverted_in_r;
    row.good = enc.good.size();
    for (auto x : enc.good) {
      row.max_h = std::max(row.max_h, compress::hybrid_distance(f, alg, r_set, x));
    }
    if (!enc.ok()) return;
    row.encoded = true;
    row.logical = enc.encoding->logical_bits;
    row.formula = compress::logical_bit_length(n, enc.encoding->advice.size(), row.r_size, row.good);
    row.bound = compress::length_bound(n, enc.encoding->advice.size(), row.good);
    try {
      const auto decoded = compress::decode(*enc.encoding, r_set, scheme, params);
      const auto values = f.values();
      row.decoded = std::equal(decoded.begin(), decoded.end(), values.begin(), values.end());
      row.silent_mismatch = !row.decoded;
    } catch (const compress::DecodeError&) {
      row.decoded = false;
    }
  });

  Table table;
  table.columns = {"config_hash", "seed", "trial", "n", "algorithm", "advice_bits", "queries",
                   "r_size", "inverted_in_r", "good", "encode_ok", "decode_ok", "logical_bits",
                   "formula_bits", "bound_bits", "max_h_distance"};
  std::size_t successes = 0;
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const Row& r = rows[t];
    successes += r.decoded;
    table.rows.push_back({hex(config.hash()), num(r.seed), num(t, 0), num(n, 0), scheme.name,
                          num(alg.advice.size(), 0), num(alg.max_queries, 0), num(r.r_size, 0),
                          num(r.inverted, 0), num(r.good, 0), flag(r.encoded), flag(r.decoded),
                          num(r.logical, 0), num(r.formula, 0), num(r.bound), num(r.max_h)});
    const std::string tag = "trial " + std::to_string(t) + ": ";
    if (r.encoded && r.logical != r.formula) table.violations.push_back(tag + "length identity broken");
    if (r.encoded && static_cast<double>(r.logical) > r.bound + 1e-9) {
      table.violations.push_back(tag + "length exceeds S + log N! - log |G|! + kappa log N");
    }
    if (r.max_h > closeness) table.violations.push_back(tag + "good element farther than sqrt(c) under h");
    if (r.silent_mismatch) table.violations.push_back(tag + "decode returned a different permutation");
  }
  table.notes.push_back("decode(encode(f)) = f in " + std::to_string(successes) + " of " +
                        std::to_string(rows.size()) + " draws");
  table.notes.push_back(std::string("good-set margin delta/2 - 10 delta^2/c = ") +
                        num(params.good_set_margin()) +
                        (params.good_set_margin_positive() ? "" : " (not positive at these constants)"));
  return table;
}

Table cmd_verify(const ExperimentConfig& config) {
  const std::vector<std::string> suites =
      config.suite == "all" ? std::vector<std::string>{"swapping", "tv", "collision", "codec"}
                            : std::vector<std::string>{config.suite};
  Table table;
  table.columns = {"config_hash", "seed", "suite", "trial", "family", "metric", "bound", "holds"};
  for (std::size_t si = 0; si < suites.size(); ++si) {
    const std::string& suite = suites[si];
    struct Row {
      std::uint64_t seed = 0;
      std::string family;
      double metric = 0.0;
      double bound = 0.0;
      bool holds = false;
    };
    std::vector<Row> rows(config.trials);
    const std::uint64_t suite_seed = derive_seed(config.seed, 1000 + si);
    parallel_for(config.trials, config.threads, [&](std::size_t t) {
      Row& row = rows[t];
      row.seed = derive_seed(suite_seed, t);
      if (suite == "swapping") {
        const auto inst = make_swap_instance(row.seed);
        const auto rep = hybrid::verify_swapping(inst.algorithm, inst.oracle_x, inst.oracle_y, inst.input);
        row.family = inst.family;
        row.metric = rep.actual;
        row.bound = rep.bound;
        row.holds = rep.holds;
      } else if (suite == "tv") {
        const auto [a, b] = make_state_pair(row.seed);
        const auto rep = hybrid::verify_tv(a, b);
        row.family = "random-states";
        row.metric = rep.tv;
        row.bound = rep.bound;
        row.holds = rep.holds;
      } else if (suite == "collision") {
        std::mt19937_64 rng(row.seed);
        const std::size_t n = 2 + uniform_below(rng, 9);
        const std::size_t m = 1 + uniform_below(rng, n - 1);
        const std::size_t need = std::size_t{1} << (n - m);
        const std::size_t size = need + uniform_below(rng, (std::size_t{1} << n) - need + 1);
        std::vector<hybrid::Word> all(std::size_t{1} << n);
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + uniform_below(rng, all.size() - i)]);
        all.resize(size);
        std::vector<std::size_t> window(n);
        for (std::size_t i = 0; i < n; ++i) window[i] = i;
        for (std::size_t i = 0; i <= m; ++i) std::swap(window[i], window[i + uniform_below(rng, n - i)]);
        window.resize(m + 1);
        const hybrid::Word inside = [&] {
          hybrid::Word w = 0;
          for (auto p : window) w |= hybrid::Word{1} << p;
          return w;
        }();
        const auto [x, y] = hybrid::collision_in_window(all, n, window);
        const bool valid = x != y && ((x ^ y) & ~inside) == 0 &&
                           std::find(all.begin(), all.end(), x) != all.end() &&
                           std::find(all.begin(), all.end(), y) != all.end();
        const bool brute = hybrid::has_collision_brute_force(all, window);
        row.family = "n=" + std::to_string(n) + ",m=" + std::to_string(m);
        row.metric = valid ? 1.0 : 0.0;
        row.bound = brute ? 1.0 : 0.0;
        row.holds = valid && brute;
      } else {
        std::mt19937_64 rng(row.seed);
        const std::size_t n = 1 + uniform_below(rng, 64);
        const std::size_t k = uniform_below(rng, n + 1);
        auto perm = random_permutation(n, rng());
        std::vector<std::uint32_t> subset(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
        std::sort(subset.begin(), subset.end());
        const bool set_ok = compress::unrank_set(compress::rank_set(subset, n), n, k) == subset;
        const bool perm_ok = compress::unrank_perm(compress::rank_perm(perm), n) == perm;
        row.family = "n=" + std::to_string(n) + ",k=" + std::to_string(k);
        row.metric = (set_ok ? 1.0 : 0.0) + (perm_ok ? 1.0 : 0.0);
        row.bound = 2.0;
        row.holds = set_ok && perm_ok;
      }
    });
    for (std::size_t t = 0; t < rows.size(); ++t) {
      const Row& r = rows[t];
      table.rows.push_back({hex(config.hash()), num(r.seed), suite, num(t, 0), r.family,
                            num(r.metric), num(r.bound), flag(r.holds)});
      if (!r.holds) table.violations.push_back(suite + " trial " + std::to_string(t) + " failed");
    }
    std::size_t held = 0;
    for (const auto& r : rows) held += r.holds;
    table.notes.push_back(suite + ": " + std::to_string(held) + "/" + std::to_string(rows.size()) +
                          " held");
  }
  return table;
}

Table run_command(const ExperimentConfig& config) {
  config.validate();
  if (config.command == "grover") return cmd_grover(config);
  if (config.command == "box") return cmd_box(config);
  if (config.command == "hellman") return cmd_hellman(config);
  if (config.command == "compress") return cmd_compress(config);
  return cmd_verify(config);
}

}  // namespace advice_lab::harness
