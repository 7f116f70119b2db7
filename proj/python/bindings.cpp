#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ngrover/collision.hpp"
#include "ngrover/experiments.hpp"
#include "ngrover/grover.hpp"
#include "ngrover/linalg.hpp"
#include "ngrover/markov.hpp"
#include "ngrover/measures.hpp"
#include "ngrover/noise.hpp"

namespace py = pybind11;
using namespace ngrover;

namespace {

StepKind step_kind(const std::string& kind) {
  if (kind == "initial") return StepKind::Initial;
  if (kind == "steady") return StepKind::Steady;
  throw std::invalid_argument("kind must be 'initial' or 'steady'");
}

py::dict measure_dict(const MeasureResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["series"] = r.series;
  d["joint_series"] = r.joint_series;
  d["horizon"] = r.horizon;
  d["witness_only"] = r.witness_only;
  return d;
}

std::pair<ComplexMatrix, ComplexMatrix> grover_pair(const GroverInstance& inst,
                                                    const NoiseSpec& spec) {
  ComplexMatrix g = grover_operator(inst);
  ComplexMatrix gp = noisy_grover(g, build_chi(inst.qubits(), spec));
  return {std::move(g), std::move(gp)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grover search under Markovian-correlated noise";
  m.attr("__version__") = kArtifactVersion;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  py::class_<GroverInstance>(m, "GroverInstance")
      .def(py::init<int, std::size_t>(), py::arg("qubits"), py::arg("marked") = 0)
      .def_property_readonly("qubits", &GroverInstance::qubits)
      .def_property_readonly("dim", &GroverInstance::dim)
      .def_property_readonly("marked", &GroverInstance::marked);

  m.def("uniform_superposition", &uniform_superposition);
  m.def("grover_operator", &grover_operator);
  m.def("ideal_success_series", &ideal_success_series, py::arg("inst"), py::arg("steps"));

  py::class_<SingleQubitUnitary>(m, "SingleQubitUnitary")
      .def(py::init(&single_qubit_unitary), py::arg("a"), py::arg("b"), py::arg("theta"),
           py::arg("tol") = 1e-10)
      .def_readonly("a", &SingleQubitUnitary::a)
      .def_readonly("b", &SingleQubitUnitary::b)
      .def_readonly("theta", &SingleQubitUnitary::theta)
      .def("matrix", &SingleQubitUnitary::matrix);
  m.def("preset", [](const std::string& name) { return presets::by_name(name); }, py::arg("name"));

  py::class_<NoiseSpec>(m, "NoiseSpec")
      .def(py::init([](const SingleQubitUnitary& u, std::vector<int> positions) {
             return NoiseSpec{u, std::move(positions)};
           }),
           py::arg("u"), py::arg("positions"))
      .def_static("prefix", &NoiseSpec::prefix, py::arg("u"), py::arg("m"))
      .def_readonly("positions", &NoiseSpec::positions)
      .def_property_readonly("strength", &NoiseSpec::strength);
  m.def("build_chi", &build_chi, py::arg("qubits"), py::arg("spec"));
  m.def("noisy_grover", &noisy_grover);
  m.def(
      "closed_form_overlaps",
      [](const SingleQubitUnitary& u, int n, int m_, int q) {
        const ClosedFormOverlaps o = closed_form_overlaps(u, n, m_, q);
        py::dict d;
        d["psi_q"] = o.psi_q;
        d["s_chi_s"] = o.s_chi_s;
        d["w_chi_s"] = o.w_chi_s;
        d["w_chi_w"] = o.w_chi_w;
        d["one_step_success"] = o.one_step_success;
        return d;
      },
      py::arg("u"), py::arg("qubits"), py::arg("m"), py::arg("q"));

  py::class_<MarkovNoiseParams>(m, "MarkovNoiseParams")
      .def(py::init<double, double>(), py::arg("p"), py::arg("mu"))
      .def_property_readonly("p", &MarkovNoiseParams::p)
      .def_property_readonly("mu", &MarkovNoiseParams::mu);

  m.def(
      "markov_evolve",
      [](const GroverInstance& inst, const NoiseSpec& spec, const MarkovNoiseParams& params,
         int steps, bool keep_states) {
        EvolutionTrace t = markov_evolve(inst, spec, params, steps, {keep_states, false});
        py::dict d;
        d["success"] = t.success;
        d["states"] = t.states;
        d["max_trace_defect"] = t.max_trace_defect;
        return d;
      },
      py::arg("inst"), py::arg("spec"), py::arg("params"), py::arg("steps"),
      py::arg("keep_states") = false);
  m.def("history_oracle", &history_oracle);
  m.def("perfect_memory_success", &perfect_memory_success, py::arg("N"), py::arg("t"));

  m.def(
      "kraus_step",
      [](const std::string& kind, const MarkovNoiseParams& params, const GroverInstance& inst,
         const NoiseSpec& spec) {
        const auto [g, gp] = grover_pair(inst, spec);
        return kraus_step(step_kind(kind), params, g, gp).ops;
      },
      py::arg("kind"), py::arg("params"), py::arg("inst"), py::arg("spec"));
  m.def(
      "dilation_unitary",
      [](const std::string& kind, const MarkovNoiseParams& params, const GroverInstance& inst,
         const NoiseSpec& spec) {
        const auto [g, gp] = grover_pair(inst, spec);
        return dilation_unitary(step_kind(kind), params, g, gp).matrix;
      },
      py::arg("kind"), py::arg("params"), py::arg("inst"), py::arg("spec"));
  m.def(
      "extract_mixer",
      [](const std::string& kind, const MarkovNoiseParams& params, const GroverInstance& inst,
         const NoiseSpec& spec) {
        const auto [g, gp] = grover_pair(inst, spec);
        const MixerFactorization f =
            extract_mixer(dilation_unitary(step_kind(kind), params, g, gp),
                          build_chi(inst.qubits(), spec), g);
        py::dict d;
        d["mixer"] = ComplexMatrix(f.mixer);
        d["residual"] = f.residual;
        d["unitarity_defect"] = f.unitarity_defect;
        d["control_state"] = f.control_state;
        return d;
      },
      py::arg("kind"), py::arg("params"), py::arg("inst"), py::arg("spec"));
  m.def(
      "thermal_kraus",
      [](const std::string& kind, const MarkovNoiseParams& params, const GroverInstance& inst,
         const NoiseSpec& spec, double temperature) {
        const auto [g, gp] = grover_pair(inst, spec);
        return thermal_kraus(dilation_unitary(step_kind(kind), params, g, gp),
                             thermal_weights(temperature))
            .ops;
      },
      py::arg("kind"), py::arg("params"), py::arg("inst"), py::arg("spec"),
      py::arg("temperature"));

  m.def(
      "n_blp",
      [](const GroverInstance& inst, const NoiseSpec& spec, const MarkovNoiseParams& params,
         int horizon, std::optional<double> temperature) {
        std::optional<ThermalBath> bath;
        if (temperature) bath = thermal_weights(*temperature);
        return measure_dict(n_blp(inst, spec, params, horizon, bath));
      },
      py::arg("inst"), py::arg("spec"), py::arg("params"), py::arg("horizon"),
      py::arg("temperature") = py::none());
  m.def(
      "n_cp",
      [](const GroverInstance& inst, const NoiseSpec& spec, const MarkovNoiseParams& params,
         int horizon) { return measure_dict(n_cp(inst, spec, params, horizon)); },
      py::arg("inst"), py::arg("spec"), py::arg("params"), py::arg("horizon"));

  m.def("trace_distance", &trace_distance);
  m.def(
      "partial_trace",
      [](const ComplexMatrix& r, std::vector<std::size_t> dims, std::vector<std::size_t> keep) {
        return partial_trace(r, dims, keep);
      },
      py::arg("r"), py::arg("dims"), py::arg("keep"));

  m.def(
      "run_experiment",
      [](const std::string& subcommand, const std::map<std::string, std::string>& settings) {
        ExperimentConfig cfg;
        for (const auto& [k, v] : settings) apply_setting(cfg, k, v);
        cfg.subcommand = subcommand;
        const ResultTable t = run(cfg);
        py::dict d;
        d["meta"] = t.meta;
        d["columns"] = t.columns;
        d["rows"] = t.rows;
        d["csv"] = to_csv(t);
        return d;
      },
      py::arg("subcommand"), py::arg("settings") = std::map<std::string, std::string>{});
}
