#include "advice_lab/classical.h"

#include <cmath>
#include <stdexcept>

namespace advice_lab::qsim {

ClassicalOutcome run_classically(ClassicalProgram& program, const Oracle& oracle) {
  ClassicalOutcome outcome;
  ClassicalAction action = program.start();
  while (const auto* q = std::get_if<Query>(&action)) {
    const std::uint64_t answer = oracle(q->position);
    ++outcome.queries;
    action = program.resume(answer);
  }
  outcome.output = std::get<Halt>(action).output;
  return outcome;
}

namespace {

std::size_t locate_basis_state(const PureState& state) {
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (std::norm(state[i]) > 0.5) {
      if (std::abs(std::norm(state[i]) - 1.0) > kNormTolerance) break;
      return i;
    }
  }
  throw std::logic_error("classical adapter: state is not a computational basis state");
}

}  // namespace

AlgorithmSpec classical_adapter(std::string name, const BasisLayout& layout,
                                std::size_t max_queries, Bits advice, Register output,
                                ProgramFactory factory) {
  AlgorithmSpec alg;
  alg.name = std::move(name);
  alg.layout = layout;
  alg.max_queries = max_queries;
  alg.advice = std::move(advice);
  alg.output = output;
  alg.begin = [factory = std::move(factory), output](std::uint64_t input) -> StepFn {
    std::shared_ptr<ClassicalProgram> program = factory(input);
    return [program, output](std::size_t t, PureState& state) {
      const BasisLayout& layout = state.layout();
      const std::size_t current = locate_basis_state(state);
      const ClassicalAction action =
          t == 0 ? program->start() : program->resume(layout.coordinates(current).answer);

      std::size_t target = 0;
      bool more = false;
      if (const auto* q = std::get_if<Query>(&action)) {
        target = layout.index(q->position, 0, 0);
        more = true;
      } else {
        const std::uint64_t value = std::get<Halt>(action).output;
        Coordinates c;
        switch (output) {
          case Register::kPosition: c.position = value; break;
          case Register::kAnswer: c.answer = value; break;
          case Register::kWorkspace: c.workspace = value; break;
          case Register::kFull: c = layout.coordinates(value); break;
        }
        target = layout.index(c);
      }
      std::swap(state[current], state[target]);
      return more;
    };
  };
  return alg;
}

}  // namespace advice_lab::qsim
