#include "advice_lab/advice.h"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace advice_lab::advice {

// ---------------------------------------------------------------------------
// Parity pad

std::size_t ParityPad::group_of(std::size_t j) const {
  if (j >= num_positions()) throw std::out_of_range("ParityPad::group_of: index outside [N]");
  const auto it = std::upper_bound(boundaries.begin(), boundaries.end(), j);
  return static_cast<std::size_t>(it - boundaries.begin()) - 1;
}

std::vector<std::size_t> equal_split(std::size_t n_positions, std::size_t m) {
  if (m < 1 || m >= n_positions) {
    throw std::invalid_argument("parity pad: need 1 <= m < N");
  }
  std::vector<std::size_t> bounds{0};
  const std::size_t base = n_positions / m;
  const std::size_t extra = n_positions % m;
  for (std::size_t g = 0; g < m; ++g) bounds.push_back(bounds.back() + base + (g < extra ? 1 : 0));
  return bounds;
}

ParityPad parity_preprocess(std::span<const std::uint8_t> x, std::size_t m) {
  ParityPad pad;
  pad.m = m;
  pad.boundaries = equal_split(x.size(), m);
  pad.parities.assign(m, 0);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t i = pad.boundaries[g]; i < pad.boundaries[g + 1]; ++i) {
      pad.parities[g] ^= static_cast<std::uint8_t>(x[i] & 1u);
    }
  }
  return pad;
}

ParityPad parity_pad_from_advice(std::size_t n_positions, const Bits& parities) {
  ParityPad pad;
  pad.m = parities.size();
  pad.boundaries = equal_split(n_positions, pad.m);
  pad.parities = parities;
  return pad;
}

std::size_t parity_query_bound(std::size_t n_positions, std::size_t m) {
  return (n_positions + m - 1) / m - 1;
}

namespace {

class ParityProgram final : public qsim::ClassicalProgram {
 public:
  ParityProgram(const ParityPad& pad, std::size_t j) : j_(j) {
    const std::size_t g = pad.group_of(j);
    parity_ = pad.parities[g];
    for (std::size_t i = pad.boundaries[g]; i < pad.boundaries[g + 1]; ++i) {
      if (i != j) members_.push_back(i);
    }
  }

  qsim::ClassicalAction start() override { return next(); }

  qsim::ClassicalAction resume(std::uint64_t answer) override {
    parity_ ^= static_cast<std::uint8_t>(answer & 1u);
    return next();
  }

 private:
  qsim::ClassicalAction next() {
    if (cursor_ < members_.size()) return qsim::Query{members_[cursor_++]};
    return qsim::Halt{parity_};
  }

  std::size_t j_;
  std::uint8_t parity_ = 0;
  std::vector<std::size_t> members_;
  std::size_t cursor_ = 0;
};

}  // namespace

ParityAnswer parity_answer(std::size_t j, const ParityPad& pad, const Oracle& oracle) {
  if (oracle.kind() != Oracle::Kind::kBitString || oracle.size() != pad.num_positions()) {
    throw std::invalid_argument("parity_answer: needs a bit-string oracle matching the pad");
  }
  ParityProgram program(pad, j);
  const auto outcome = qsim::run_classically(program, oracle.with_forbidden(j));
  return ParityAnswer{static_cast<std::uint8_t>(outcome.output), outcome.queries};
}

qsim::AlgorithmSpec parity_algorithm(const ParityPad& pad) {
  const std::size_t n = pad.num_positions();
  return qsim::classical_adapter(
      "parity", qsim::BasisLayout(n, 2, 1), parity_query_bound(n, pad.m), pad.parities,
      qsim::Register::kAnswer,
      [pad](std::uint64_t j) { return std::make_unique<ParityProgram>(pad, j); });
}

qsim::AdvisedAlgorithm parity_scheme(std::size_t n_positions, std::size_t m) {
  equal_split(n_positions, m);  // validates m
  qsim::AdvisedAlgorithm scheme;
  scheme.name = "parity";
  scheme.preprocess = [m](const Oracle& x) {
    Bits bits(x.values().begin(), x.values().end());
    return parity_preprocess(bits, m).parities;
  };
  scheme.instantiate = [n_positions](const Bits& alpha) {
    return parity_algorithm(parity_pad_from_advice(n_positions, alpha));
  };
  return scheme;
}

nlohmann::json to_json(const ParityPad& pad) {
  return {{"m", pad.m}, {"boundaries", pad.boundaries}, {"parities", to_bitstring(pad.parities)}};
}

ParityPad parity_pad_from_json(const nlohmann::json& j) {
  ParityPad pad;
  pad.m = j.at("m").get<std::size_t>();
  pad.boundaries = j.at("boundaries").get<std::vector<std::size_t>>();
  pad.parities = from_bitstring(j.at("parities").get<std::string>());
  if (pad.boundaries.size() != pad.m + 1 || pad.parities.size() != pad.m ||
      pad.boundaries.front() != 0 || !std::is_sorted(pad.boundaries.begin(), pad.boundaries.end())) {
    throw std::invalid_argument("parity pad JSON: inconsistent fields");
  }
  return pad;
}

// ---------------------------------------------------------------------------
// Iterate tables

std::size_t HellmanCycle::length() const {
  std::size_t total = 0;
  for (const auto& a : anchors) total += a.stride;
  return total;
}

std::size_t HellmanTable::num_entries() const {
  std::size_t total = 0;
  for (const auto& c : cycles) total += c.anchors.size();
  return total;
}

namespace {

void push_field(Bits& bits, std::uint64_t value, unsigned width) {
  for (unsigned k = width; k-- > 0;) bits.push_back(static_cast<std::uint8_t>((value >> k) & 1u));
}

std::uint64_t read_field(const Bits& bits, std::size_t& cursor, unsigned width) {
  if (cursor + width > bits.size()) throw std::invalid_argument("iterate-table advice truncated");
  std::uint64_t value = 0;
  for (unsigned k = 0; k < width; ++k) value = (value << 1) | bits[cursor++];
  return value;
}

std::vector<std::uint32_t> strides_for(std::size_t length, std::size_t s) {
  std::vector<std::uint32_t> strides;
  for (std::size_t done = 0; done < length; done += s) {
    strides.push_back(static_cast<std::uint32_t>(std::min(s, length - done)));
  }
  return strides;
}

}  // namespace

Bits HellmanTable::to_advice() const {
  Bits bits;
  for (const auto& cycle : cycles) {
    push_field(bits, cycle.length(), n + 1);
    for (const auto& a : cycle.anchors) {
      push_field(bits, a.start, n);
      push_field(bits, a.end, n);
    }
  }
  return bits;
}

HellmanTable HellmanTable::from_advice(const Bits& bits, unsigned n, std::size_t s) {
  HellmanTable table;
  table.n = n;
  table.s = s;
  const std::size_t total = std::size_t{1} << n;
  std::size_t covered = 0;
  std::size_t cursor = 0;
  while (covered < total) {
    const std::size_t length = read_field(bits, cursor, n + 1);
    if (length == 0 || covered + length > total) {
      throw std::invalid_argument("iterate-table advice: bad cycle length");
    }
    HellmanCycle cycle;
    for (auto stride : strides_for(length, s)) {
      AnchorPair a;
      a.start = static_cast<std::uint32_t>(read_field(bits, cursor, n));
      a.end = static_cast<std::uint32_t>(read_field(bits, cursor, n));
      a.stride = stride;
      cycle.anchors.push_back(a);
    }
    covered += length;
    table.cycles.push_back(std::move(cycle));
  }
  if (cursor != bits.size()) throw std::invalid_argument("iterate-table advice: trailing bits");
  return table;
}

std::uint32_t iterate(const Oracle& f, std::uint32_t x, std::size_t s, std::size_t* calls) {
  for (std::size_t k = 0; k < s; ++k) x = f(x);
  if (calls) *calls += s;
  return x;
}

HellmanTable hellman_build(const Oracle& f, std::size_t s) {
  if (f.kind() != Oracle::Kind::kPermutation) {
    throw std::invalid_argument("hellman_build: needs a permutation oracle");
  }
  const std::size_t total = f.size();
  if (s < 1 || s > total) throw std::invalid_argument("hellman_build: need 1 <= s <= N");

  HellmanTable table;
  table.n = ceil_log2(total);
  table.s = s;
  std::vector<bool> visited(total, false);
  std::vector<std::uint32_t> members;
  for (std::uint32_t start = 0; start < total; ++start) {
    if (visited[start]) continue;
    members.clear();
    for (std::uint32_t x = start; !visited[x]; x = f(x)) {
      visited[x] = true;
      members.push_back(x);
    }
    const std::size_t length = members.size();
    HellmanCycle cycle;
    std::size_t offset = 0;
    for (auto stride : strides_for(length, s)) {
      cycle.anchors.push_back(
          AnchorPair{members[offset], members[(offset + stride) % length], stride});
      offset += stride;
    }
    table.cycles.push_back(std::move(cycle));
  }
  return table;
}

bool hellman_table_valid(const HellmanTable& table, const Oracle& f) {
  const std::size_t total = f.size();
  if (table.num_positions() != total) return false;
  std::vector<bool> covered(total, false);
  for (const auto& cycle : table.cycles) {
    for (const auto& a : cycle.anchors) {
      if (a.stride < 1 || a.stride > table.s) return false;
      if (iterate(f, a.start, a.stride) != a.end) return false;
      std::uint32_t x = a.start;
      for (std::size_t k = 0; k < a.stride; ++k) {
        covered[x] = true;
        x = f(x);
      }
    }
  }
  if (!std::all_of(covered.begin(), covered.end(), [](bool b) { return b; })) return false;
  const std::size_t bound = (total + table.s - 1) / table.s + table.cycles.size();
  return table.num_entries() <= bound;
}

namespace {

class HellmanProgram final : public qsim::ClassicalProgram {
 public:
  HellmanProgram(std::shared_ptr<const HellmanTable> table,
                 std::shared_ptr<const std::unordered_map<std::uint32_t, std::uint32_t>> by_end,
                 std::uint32_t y, std::size_t budget)
      : table_(std::move(table)), by_end_(std::move(by_end)), y_(y), point_(y), budget_(budget) {}

  qsim::ClassicalAction start() override { return advance(); }

  qsim::ClassicalAction resume(std::uint64_t answer) override {
    const auto value = static_cast<std::uint32_t>(answer);
    if (walking_) {
      point_ = value;
      return advance();
    }
    if (value == y_) return qsim::Halt{point_};
    point_ = value;
    return query(point_);
  }

  bool exhausted() const { return exhausted_; }
  std::size_t lookups() const { return lookups_; }

 private:
  qsim::ClassicalAction advance() {
    ++lookups_;
    if (auto it = by_end_->find(point_); it != by_end_->end()) {
      walking_ = false;
      point_ = it->second;
    }
    return query(point_);
  }

  qsim::ClassicalAction query(std::uint32_t x) {
    if (calls_ == budget_) {
      exhausted_ = true;
      return qsim::Halt{point_};
    }
    ++calls_;
    return qsim::Query{x};
  }

  std::shared_ptr<const HellmanTable> table_;
  std::shared_ptr<const std::unordered_map<std::uint32_t, std::uint32_t>> by_end_;
  std::uint32_t y_;
  std::uint32_t point_;
  std::size_t budget_;
  std::size_t calls_ = 0;
  std::size_t lookups_ = 0;
  bool walking_ = true;
  bool exhausted_ = false;
};

std::shared_ptr<const std::unordered_map<std::uint32_t, std::uint32_t>> index_by_end(
    const HellmanTable& table) {
  auto index = std::make_shared<std::unordered_map<std::uint32_t, std::uint32_t>>();
  for (const auto& cycle : table.cycles) {
    for (const auto& a : cycle.anchors) (*index)[a.end] = a.start;
  }
  return index;
}

}  // namespace

std::unique_ptr<qsim::ClassicalProgram> hellman_program(std::shared_ptr<const HellmanTable> table,
                                                        std::uint32_t y, std::size_t budget) {
  auto index = index_by_end(*table);
  return std::make_unique<HellmanProgram>(std::move(table), std::move(index), y, budget);
}

Inversion hellman_invert(std::uint32_t y, const HellmanTable& table, const Oracle& f) {
  if (y >= f.size() || table.num_positions() != f.size()) {
    throw std::invalid_argument("hellman_invert: element or table does not match the oracle");
  }
  auto shared = std::make_shared<const HellmanTable>(table);
  HellmanProgram program(shared, index_by_end(table), y, 2 * f.size());
  const auto outcome = qsim::run_classically(program, f);
  if (program.exhausted()) {
    throw std::runtime_error("hellman_invert: walk exceeded the cycle bound; corrupt table");
  }
  return Inversion{static_cast<std::uint32_t>(outcome.output), outcome.queries, program.lookups()};
}

qsim::AlgorithmSpec hellman_algorithm(const HellmanTable& table) {
  const std::size_t total = table.num_positions();
  auto shared = std::make_shared<const HellmanTable>(table);
  auto index = index_by_end(table);
  const std::size_t budget = table.s;
  return qsim::classical_adapter(
      "hellman", qsim::BasisLayout(total, total, 1), budget, table.to_advice(),
      qsim::Register::kPosition, [shared, index, budget](std::uint64_t y) {
        return std::make_unique<HellmanProgram>(shared, index, static_cast<std::uint32_t>(y),
                                                budget);
      });
}

qsim::AdvisedAlgorithm hellman_scheme(std::size_t n_elements, std::size_t s) {
  if (!is_power_of_two(n_elements) || s < 1 || s > n_elements) {
    throw std::invalid_argument("hellman_scheme: need N = 2^n and 1 <= s <= N");
  }
  const unsigned n = ceil_log2(n_elements);
  qsim::AdvisedAlgorithm scheme;
  scheme.name = "hellman";
  scheme.preprocess = [s](const Oracle& f) { return hellman_build(f, s).to_advice(); };
  scheme.instantiate = [n, s](const Bits& advice) {
    return hellman_algorithm(HellmanTable::from_advice(advice, n, s));
  };
  return scheme;
}

namespace {

class LookupProgram final : public qsim::ClassicalProgram {
 public:
  explicit LookupProgram(std::uint32_t answer) : answer_(answer) {}
  qsim::ClassicalAction start() override { return qsim::Halt{answer_}; }
  qsim::ClassicalAction resume(std::uint64_t) override { return qsim::Halt{answer_}; }

 private:
  std::uint32_t answer_;
};

}  // namespace

qsim::AdvisedAlgorithm inverse_table_scheme(std::size_t n_elements) {
  if (!is_power_of_two(n_elements) || n_elements < 2) {
    throw std::invalid_argument("inverse_table_scheme: need N = 2^n");
  }
  const unsigned n = ceil_log2(n_elements);
  qsim::AdvisedAlgorithm scheme;
  scheme.name = "inverse-table";
  scheme.preprocess = [n](const Oracle& f) {
    std::vector<std::uint32_t> inverse(f.size());
    for (std::uint32_t x = 0; x < f.size(); ++x) inverse[f(x)] = x;
    Bits bits;
    for (auto v : inverse) push_field(bits, v, n);
    return bits;
  };
  scheme.instantiate = [n, n_elements](const Bits& advice) {
    std::size_t cursor = 0;
    std::vector<std::uint32_t> inverse(n_elements);
    for (auto& v : inverse) v = static_cast<std::uint32_t>(read_field(advice, cursor, n));
    return qsim::classical_adapter(
        "inverse-table", qsim::BasisLayout(n_elements, n_elements, 1), 0, advice,
        qsim::Register::kPosition, [inverse = std::move(inverse)](std::uint64_t y) {
          return std::make_unique<LookupProgram>(inverse.at(y));
        });
  };
  return scheme;
}

nlohmann::json to_json(const HellmanTable& table) {
  nlohmann::json cycles = nlohmann::json::array();
  for (const auto& cycle : table.cycles) {
    nlohmann::json anchors = nlohmann::json::array();
    for (const auto& a : cycle.anchors) anchors.push_back({a.start, a.end, a.stride});
    cycles.push_back({{"anchors", std::move(anchors)}});
  }
  return {{"n", table.n}, {"s", table.s}, {"cycles", std::move(cycles)}};
}

HellmanTable hellman_table_from_json(const nlohmann::json& j) {
  HellmanTable table;
  table.n = j.at("n").get<unsigned>();
  table.s = j.at("s").get<std::size_t>();
  if (table.n < 1 || table.n > 31 || table.s < 1) {
    throw std::invalid_argument("iterate-table JSON: bad n or s");
  }
  for (const auto& c : j.at("cycles")) {
    HellmanCycle cycle;
    for (const auto& a : c.at("anchors")) {
      if (!a.is_array() || a.size() != 3) {
        throw std::invalid_argument("iterate-table JSON: anchors are [start, end, stride]");
      }
      cycle.anchors.push_back(
          AnchorPair{a[0].get<std::uint32_t>(), a[1].get<std::uint32_t>(), a[2].get<std::uint32_t>()});
    }
    table.cycles.push_back(std::move(cycle));
  }
  return table;
}

TradeoffPoint measure_tradeoff(const Oracle& f, std::size_t s) {
  const HellmanTable table = hellman_build(f, s);
  TradeoffPoint point;
  point.s = s;
  point.entries = table.num_entries();
  point.cycles = table.cycles.size();
  point.space_bits = table.pair_bits();
  point.header_bits = table.header_bits();
  std::size_t total_calls = 0;
  for (std::uint32_t y = 0; y < f.size(); ++y) {
    const Inversion inv = hellman_invert(y, table, f);
    if (f(inv.preimage) != y) point.all_correct = false;
    point.worst_calls = std::max(point.worst_calls, inv.oracle_calls);
    point.lookups_worst = std::max(point.lookups_worst, inv.table_lookups);
    total_calls += inv.oracle_calls;
  }
  point.mean_calls = static_cast<double>(total_calls) / static_cast<double>(f.size());
  return point;
}

}  // namespace advice_lab::advice
