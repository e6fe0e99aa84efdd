// advice_lab: seeded experiments on query algorithms with advice.
//
//   advice_lab grover   --n 64 --trials 5
//   advice_lab box      --n 8 --m 2 --alg parity
//   advice_lab hellman  --n 1024 --s 8,16,32
//   advice_lab compress --n 16 --s 2 --delta 0.9 --c 0.001
//   advice_lab verify   --suite swapping --trials 200
//
// Rows go to --out (or stdout); notes and violations go to stderr.
// Exit status 0 means every invariant held, 1 means a violation, 2 a usage error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "advice_lab/harness.h"

using advice_lab::harness::ExperimentConfig;
using advice_lab::harness::Format;

int main(int argc, char** argv) {
  CLI::App app{"advice_lab: query algorithms with advice"};
  app.require_subcommand(1, 1);

  ExperimentConfig config;
  std::string format = "csv";
  std::size_t iterations = 0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", config.n, "N, the number of positions or elements");
    sub->add_option("--m", config.m, "advice bits for the box game");
    sub->add_option("--s", config.s_list, "chain stride(s), comma separated")->delimiter(',');
    sub->add_option("--delta", config.delta, "R inclusion scale (p = delta / T^2)");
    sub->add_option("--c", config.c, "query magnitude budget for good elements");
    sub->add_option("--trials", config.trials, "number of seeded trials");
    sub->add_option("--seed", config.seed, "top-level seed");
    sub->add_option("--out", config.out, "output path (default stdout)");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--alg", config.algorithm, "algorithm variant");
    sub->add_option("--iterations", iterations, "Grover iterations (default per command)");
    sub->add_option("--suite", config.suite, "verify suite: swapping, tv, collision, codec, all");
  };
  for (const char* name : {"grover", "box", "hellman", "compress", "verify"}) {
    add_common(app.add_subcommand(name, std::string("run the ") + name + " experiment"));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  config.command = app.get_subcommands().front()->get_name();
  if (app.get_subcommands().front()->count("--iterations") > 0) config.iterations = iterations;
  config.format = format == "json" ? Format::kJson : Format::kCsv;
  config.threads = advice_lab::harness::threads_from_env();

  advice_lab::harness::Table table;
  try {
    table = advice_lab::harness::run_command(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  const std::string text = advice_lab::harness::render(table, config.format);
  if (config.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(config.out);
    if (!file) {
      std::cerr << "error: cannot open " << config.out << '\n';
      return 2;
    }
    file << text;
  }
  for (const auto& note : table.notes) std::cerr << note << '\n';
  for (const auto& v : table.violations) std::cerr << "VIOLATION " << v << '\n';
  std::cerr << "config " << std::hex << config.hash() << std::dec << ": "
            << (table.invariants_held() ? "all invariants held" : "invariants violated") << '\n';
  return table.invariants_held() ? 0 : 1;
}
