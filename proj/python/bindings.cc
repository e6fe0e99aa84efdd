#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "advice_lab/advice.h"
#include "advice_lab/compress.h"
#include "advice_lab/harness.h"
#include "advice_lab/hybrid.h"

namespace py = pybind11;
using namespace advice_lab;

namespace {

// Ranks cross the boundary as Python ints via their decimal text.
py::int_ to_py(const compress::BigInt& v) {
  return py::reinterpret_steal<py::int_>(
      PyLong_FromString(v.str().c_str(), nullptr, 10));
}

compress::BigInt from_py(const py::int_& v) {
  return compress::BigInt(py::str(v).cast<std::string>());
}

py::dict json_to_dict(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

nlohmann::json dict_to_json(const py::dict& d) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(d).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "advice_lab core bindings";

  m.def("grover_closed_form", &qsim::grover_closed_form, py::arg("n"), py::arg("iterations"));

  m.def(
      "grover_invert",
      [](std::vector<std::uint32_t> perm, std::uint32_t y, std::optional<std::size_t> iterations) {
        const auto res = qsim::grover_invert(qsim::Oracle::permutation(std::move(perm)), y, iterations);
        py::dict out;
        out["candidate"] = res.candidate;
        out["success_probability"] = res.success_probability;
        out["iterations"] = res.iterations;
        out["queries"] = res.trace.num_queries;
        out["magnitudes"] = res.trace.totals;
        return out;
      },
      py::arg("perm"), py::arg("y"), py::arg("iterations") = py::none());

  m.def(
      "parity_preprocess",
      [](const std::string& bits, std::size_t groups) {
        return json_to_dict(advice::to_json(advice::parity_preprocess(from_bitstring(bits), groups)));
      },
      py::arg("bits"), py::arg("m"));

  m.def(
      "parity_answer",
      [](std::size_t j, const py::dict& pad, const std::string& bits) {
        const auto ans = advice::parity_answer(j, advice::parity_pad_from_json(dict_to_json(pad)),
                                               qsim::Oracle::bit_string(from_bitstring(bits)));
        return py::make_tuple(static_cast<int>(ans.bit), ans.query_count);
      },
      py::arg("j"), py::arg("pad"), py::arg("bits"));

  m.def(
      "hellman_build",
      [](std::vector<std::uint32_t> perm, std::size_t s) {
        return json_to_dict(advice::to_json(advice::hellman_build(qsim::Oracle::permutation(std::move(perm)), s)));
      },
      py::arg("perm"), py::arg("s"));

  m.def(
      "hellman_invert",
      [](std::uint32_t y, const py::dict& table, std::vector<std::uint32_t> perm) {
        const auto inv = advice::hellman_invert(y, advice::hellman_table_from_json(dict_to_json(table)),
                                                qsim::Oracle::permutation(std::move(perm)));
        return py::make_tuple(inv.preimage, inv.oracle_calls);
      },
      py::arg("y"), py::arg("table"), py::arg("perm"));

  m.def(
      "rank_set",
      [](const std::vector<std::uint32_t>& subset, std::size_t n) { return to_py(compress::rank_set(subset, n)); },
      py::arg("subset"), py::arg("n"));
  m.def(
      "unrank_set",
      [](const py::int_& rank, std::size_t n, std::size_t k) { return compress::unrank_set(from_py(rank), n, k); },
      py::arg("rank"), py::arg("n"), py::arg("k"));
  m.def(
      "rank_perm", [](const std::vector<std::uint32_t>& perm) { return to_py(compress::rank_perm(perm)); },
      py::arg("perm"));
  m.def(
      "unrank_perm", [](const py::int_& rank, std::size_t n) { return compress::unrank_perm(from_py(rank), n); },
      py::arg("rank"), py::arg("n"));

  m.def(
      "collision_in_window",
      [](const std::vector<hybrid::Word>& members, std::size_t n, const std::vector<std::size_t>& window) {
        return hybrid::collision_in_window(members, n, window);
      },
      py::arg("members"), py::arg("n"), py::arg("window"));

  m.def(
      "compress_roundtrip",
      [](std::vector<std::uint32_t> perm, std::size_t s, std::vector<std::uint32_t> r_set, double delta,
         double c) {
        const std::size_t n = perm.size();
        compress::CompressionParams params;
        params.delta = delta;
        params.c = c;
        params.validate();
        const auto f = qsim::Oracle::permutation(std::move(perm));
        const auto scheme = advice::hellman_scheme(n, s);
        const auto res = compress::encode(f, scheme, r_set, params);
        py::dict out;
        out["good"] = res.good;
        if (!res.ok()) {
          out["envelope"] = py::none();
          out["decoded"] = py::none();
          return out;
        }
        out["envelope"] = json_to_dict(compress::to_json(*res.encoding));
        out["decoded"] = compress::decode(*res.encoding, r_set, scheme, params);
        return out;
      },
      py::arg("perm"), py::arg("s"), py::arg("r_set"), py::arg("delta") = 0.9, py::arg("c") = 0.001);

  m.def(
      "run_command",
      [](const std::string& command, std::size_t n, std::size_t groups, std::vector<std::size_t> s_list,
         std::size_t trials, std::uint64_t seed, const std::string& alg, const std::string& suite) {
        harness::ExperimentConfig config;
        config.command = command;
        config.n = n;
        config.m = groups;
        config.s_list = std::move(s_list);
        config.trials = trials;
        config.seed = seed;
        config.algorithm = alg;
        config.suite = suite;
        config.threads = harness::threads_from_env();
        const auto table = harness::run_command(config);
        py::dict out;
        out["columns"] = table.columns;
        out["rows"] = table.rows;
        out["violations"] = table.violations;
        out["notes"] = table.notes;
        return out;
      },
      py::arg("command"), py::arg("n") = 16, py::arg("m") = 2, py::arg("s") = std::vector<std::size_t>{},
      py::arg("trials") = 10, py::arg("seed") = 1, py::arg("alg") = "", py::arg("suite") = "all");
}
