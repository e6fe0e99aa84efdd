#pragma once

// Deterministic classical query programs, runnable either directly against an
// oracle or embedded into the statevector simulator as an AlgorithmSpec.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "advice_lab/qsim.h"

namespace advice_lab::qsim {

struct Query {
  std::size_t position;
};
struct Halt {
  std::uint64_t output;
};
using ClassicalAction = std::variant<Query, Halt>;

/// One execution of a classical algorithm: a coroutine-style state machine
/// fed with oracle answers.
class ClassicalProgram {
 public:
  virtual ~ClassicalProgram() = default;
  virtual ClassicalAction start() = 0;
  virtual ClassicalAction resume(std::uint64_t answer) = 0;
};

using ProgramFactory = std::function<std::unique_ptr<ClassicalProgram>(std::uint64_t input)>;

struct ClassicalOutcome {
  std::uint64_t output = 0;
  std::size_t queries = 0;
};

/// Drives a program against the oracle's classical values.
ClassicalOutcome run_classically(ClassicalProgram& program, const Oracle& oracle);

/// Embeds a classical program as a query algorithm. Each step moves the
/// current basis state to (next position, 0, 0) by a transposition of two
/// basis vectors, so per-step query magnitudes are exactly 1 on the queried
/// position. The final step places the output in `output`.
AlgorithmSpec classical_adapter(std::string name, const BasisLayout& layout,
                                std::size_t max_queries, Bits advice, Register output,
                                ProgramFactory factory);

}  // namespace advice_lab::qsim
