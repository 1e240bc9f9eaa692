#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "msched/baselines.hpp"
#include "msched/chanmod.hpp"
#include "msched/grover.hpp"
#include "msched/harness.hpp"
#include "msched/qrl.hpp"
#include "msched/qsim.hpp"
#include "msched/ratemod.hpp"

namespace py = pybind11;
using namespace msched;

namespace {

py::array_t<std::complex<double>> to_numpy(const qsim::StateVector& sv) {
  // Shape, strides and data spelled out; the count-only constructor can
  // leave a zero stride on complex arrays.
  const auto amps = sv.amplitudes();
  return py::array_t<std::complex<double>>({static_cast<py::ssize_t>(amps.size())},
                                           {static_cast<py::ssize_t>(sizeof(std::complex<double>))}, amps.data());
}

qsim::StateVector from_numpy(const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 1) throw py::value_error("amplitudes must be one-dimensional");
  std::vector<qsim::amplitude> amps(a.data(), a.data() + a.size());
  return qsim::StateVector::from_amplitudes(std::move(amps));
}

py::dict row_to_dict(const harness::ResultRow& r) {
  py::dict d;
  d["method"] = r.method;
  d["T"] = r.users;
  d["A"] = r.antennas;
  d["snr_db"] = r.snr_db;
  d["epoch"] = r.epoch;
  d["mean_sum_rate"] = r.mean_sum_rate;
  d["std_sum_rate"] = r.std_sum_rate;
  d["pf_value"] = r.pf_value;
  d["seed"] = r.seed;
  return d;
}

}  // namespace

PYBIND11_MODULE(_msched, m) {
  m.doc() = "Grover-inspired QRL user scheduling simulator";

  // chanmod
  py::class_<chanmod::ChannelConfig>(m, "ChannelConfig")
      .def(py::init<>())
      .def_readwrite("num_antennas", &chanmod::ChannelConfig::num_antennas)
      .def_readwrite("num_users", &chanmod::ChannelConfig::num_users)
      .def_readwrite("array_rows", &chanmod::ChannelConfig::array_rows)
      .def_readwrite("array_cols", &chanmod::ChannelConfig::array_cols)
      .def_readwrite("rician_k", &chanmod::ChannelConfig::rician_k)
      .def_readwrite("corr_coeff", &chanmod::ChannelConfig::corr_coeff)
      .def_readwrite("noise_var", &chanmod::ChannelConfig::noise_var)
      .def_readwrite("total_power", &chanmod::ChannelConfig::total_power)
      .def_readwrite("user_angles", &chanmod::ChannelConfig::user_angles)
      .def_readwrite("seed", &chanmod::ChannelConfig::seed)
      .def("validate", &chanmod::ChannelConfig::validate);

  py::class_<chanmod::ChannelRealization>(m, "ChannelRealization")
      .def_readonly("matrix", &chanmod::ChannelRealization::matrix)
      .def_property_readonly("num_antennas", &chanmod::ChannelRealization::num_antennas)
      .def_property_readonly("num_users", &chanmod::ChannelRealization::num_users);

  py::class_<chanmod::BeamAssignment>(m, "BeamAssignment")
      .def_readonly("beam_index", &chanmod::BeamAssignment::beam_index)
      .def_readonly("beams", &chanmod::BeamAssignment::beams);

  m.def("make_config", &chanmod::make_config, py::arg("num_antennas"), py::arg("num_users"), py::arg("snr_db"),
        py::arg("seed"), py::arg("rician_k") = 3.0, py::arg("corr_coeff") = 0.5, py::arg("total_power") = 1.0);
  m.def("snr_db_to_noise_var", &chanmod::snr_db_to_noise_var, py::arg("snr_db"), py::arg("total_power") = 1.0);
  m.def("noise_var_to_snr_db", &chanmod::noise_var_to_snr_db, py::arg("noise_var"), py::arg("total_power") = 1.0);
  m.def("steering_vector", &chanmod::steering_vector, py::arg("angle"), py::arg("num_antennas"));
  m.def("corr_matrix", &chanmod::corr_matrix, py::arg("dim"), py::arg("rho"));
  m.def("dft_matrix", &chanmod::dft_matrix, py::arg("dim"));
  m.def("generate_channel", &chanmod::generate_channel, py::arg("config"), py::arg("slot"));
  m.def("beam_energy", py::overload_cast<const chanmod::ChannelRealization&, int>(&chanmod::beam_energy),
        py::arg("channel"), py::arg("user"));
  m.def("select_beams", py::overload_cast<const chanmod::ChannelRealization&>(&chanmod::select_beams),
        py::arg("channel"));

  // ratemod
  py::class_<ratemod::SchedulingVector>(m, "SchedulingVector")
      .def(py::init<std::vector<std::uint8_t>>(), py::arg("bits"))
      .def_static("zeros", &ratemod::SchedulingVector::zeros)
      .def_static("ones", &ratemod::SchedulingVector::ones)
      .def_static("from_index", &ratemod::SchedulingVector::from_index, py::arg("index"), py::arg("num_users"))
      .def("index", &ratemod::SchedulingVector::index)
      .def("count", &ratemod::SchedulingVector::count)
      .def_property_readonly("bits", &ratemod::SchedulingVector::bits)
      .def("__len__", &ratemod::SchedulingVector::size)
      .def("__eq__", [](const ratemod::SchedulingVector& a, const ratemod::SchedulingVector& b) { return a == b; })
      .def("__repr__", [](const ratemod::SchedulingVector& s) {
        std::string bits;
        for (auto b : s.bits()) bits += b ? '1' : '0';
        return "SchedulingVector('" + bits + "')";
      });
  py::implicitly_convertible<py::list, ratemod::SchedulingVector>();

  py::class_<ratemod::PFState>(m, "PFState")
      .def(py::init([](std::vector<double> avg, double forgetting, double guard) {
             return ratemod::PFState{std::move(avg), forgetting, guard};
           }),
           py::arg("avg_rates"), py::arg("forgetting") = 0.1, py::arg("guard") = 1e-6)
      .def_readwrite("avg_rates", &ratemod::PFState::avg_rates)
      .def_readwrite("forgetting", &ratemod::PFState::forgetting)
      .def_readwrite("guard", &ratemod::PFState::guard);

  py::class_<ratemod::RateReport>(m, "RateReport")
      .def_readonly("per_user_rates", &ratemod::RateReport::per_user_rates)
      .def_readonly("sum_rate", &ratemod::RateReport::sum_rate)
      .def_readonly("pf_value", &ratemod::RateReport::pf_value);

  m.def("user_sinr",
        py::overload_cast<const chanmod::ChannelRealization&, const chanmod::BeamAssignment&,
                          const ratemod::SchedulingVector&, int>(&ratemod::user_sinr),
        py::arg("channel"), py::arg("beams"), py::arg("theta"), py::arg("user"));
  m.def("instantaneous_rates",
        py::overload_cast<const chanmod::ChannelRealization&, const chanmod::BeamAssignment&,
                          const ratemod::SchedulingVector&>(&ratemod::instantaneous_rates),
        py::arg("channel"), py::arg("beams"), py::arg("theta"));
  m.def("pf_objective", &ratemod::pf_objective, py::arg("report"), py::arg("pf"), py::arg("theta"));
  m.def("pf_update", &ratemod::pf_update, py::arg("pf"), py::arg("report"), py::arg("theta"));

  // qsim
  m.def("uniform_state", [](int n) { return to_numpy(qsim::uniform_state(n)); }, py::arg("num_qubits"));
  m.def(
      "apply_phase_oracle",
      [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& a,
         std::vector<std::uint64_t> marked) {
        auto sv = from_numpy(a);
        qsim::apply_phase_oracle(sv, qsim::MarkedSet(std::move(marked)));
        return to_numpy(sv);
      },
      py::arg("amplitudes"), py::arg("marked"));
  m.def(
      "apply_diffusion",
      [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& a) {
        auto sv = from_numpy(a);
        qsim::apply_diffusion(sv);
        return to_numpy(sv);
      },
      py::arg("amplitudes"));
  m.def(
      "pattern_oracle",
      [](const std::string& pattern,
         const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& a) {
        auto sv = from_numpy(a);
        const auto ops = qsim::oracle_from_pattern(pattern);
        qsim::apply_circuit(sv, ops);
        return to_numpy(sv);
      },
      py::arg("pattern"), py::arg("amplitudes"));

  // grover
  m.def(
      "grover_search",
      [](int n, std::vector<std::uint64_t> marked, int k) {
        return to_numpy(grover::grover_search({n, qsim::MarkedSet(std::move(marked)), k}));
      },
      py::arg("num_qubits"), py::arg("marked"), py::arg("iterations"));
  m.def("success_probability", &grover::success_probability, py::arg("num_qubits"), py::arg("num_marked"),
        py::arg("iterations"));
  m.def("optimal_iterations", &grover::optimal_iterations, py::arg("num_qubits"), py::arg("num_marked"));

  // baselines
  m.def(
      "exhaustive_best",
      [](const chanmod::ChannelRealization& c, const chanmod::BeamAssignment& b, const ratemod::PFState& pf) {
        auto best = baselines::exhaustive_best(c, b, pf);
        return py::make_tuple(best.policy, best.value);
      },
      py::arg("channel"), py::arg("beams"), py::arg("pf"));
  m.def("greedy_pf",
        py::overload_cast<const chanmod::ChannelRealization&, const chanmod::BeamAssignment&,
                          const ratemod::PFState&>(&baselines::greedy_pf),
        py::arg("channel"), py::arg("beams"), py::arg("pf"));
  m.def(
      "random_policy",
      [](int t, std::uint64_t seed) {
        Rng rng(seed);
        return baselines::random_policy(t, rng);
      },
      py::arg("num_users"), py::arg("seed"));

  // qrl
  py::class_<qrl::TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("learning_rate", &qrl::TrainConfig::learning_rate)
      .def_readwrite("batch_size", &qrl::TrainConfig::batch_size)
      .def_readwrite("epochs", &qrl::TrainConfig::epochs)
      .def_readwrite("grover_iters", &qrl::TrainConfig::grover_iters)
      .def_readwrite("oracle_threshold", &qrl::TrainConfig::oracle_threshold)
      .def_readwrite("quantile_start", &qrl::TrainConfig::quantile_start)
      .def_readwrite("quantile_end", &qrl::TrainConfig::quantile_end)
      .def_readwrite("seed", &qrl::TrainConfig::seed)
      .def_readwrite("channel", &qrl::TrainConfig::channel)
      .def_readwrite("validation_slots", &qrl::TrainConfig::validation_slots)
      .def_readwrite("forgetting", &qrl::TrainConfig::forgetting)
      .def_readwrite("guard", &qrl::TrainConfig::guard)
      .def_readwrite("exploit_rounds", &qrl::TrainConfig::exploit_rounds)
      .def_readwrite("log_validation", &qrl::TrainConfig::log_validation);

  py::class_<qrl::AgentParams>(m, "AgentParams")
      .def_readonly("pf", &qrl::AgentParams::pf)
      .def_readonly("last_policy", &qrl::AgentParams::last_policy)
      .def_readonly("amplify_factor", &qrl::AgentParams::amplify_factor)
      .def_readonly("reward", &qrl::AgentParams::reward)
      .def_readonly("threshold", &qrl::AgentParams::threshold);

  m.def(
      "train",
      [](const qrl::TrainConfig& config) {
        qrl::TrainResult result;
        {
          py::gil_scoped_release release;
          result = qrl::train(config);
        }
        py::list log;
        for (const auto& e : result.log.epochs) {
          py::dict d;
          d["epoch"] = e.epoch;
          d["threshold"] = e.threshold;
          d["marked_count"] = e.marked_count;
          d["measured_policy"] = e.measured_policy;
          d["train_reward"] = e.train_reward;
          d["validation_reward"] = e.validation_reward;
          d["validation_sum_rate"] = e.validation_sum_rate;
          d["empty_slots"] = e.empty_slots;
          log.append(d);
        }
        return py::make_tuple(result.agent, log);
      },
      py::arg("config"), "Train an agent; returns (agent, per-epoch log as a list of dicts).");

  // harness
  py::class_<harness::ExperimentSpec>(m, "ExperimentSpec")
      .def_readwrite("realizations", &harness::ExperimentSpec::realizations)
      .def_readwrite("seed", &harness::ExperimentSpec::seed)
      .def_readwrite("train", &harness::ExperimentSpec::train)
      .def_readonly("axis_values", &harness::ExperimentSpec::axis_values)
      .def_property_readonly("axis", [](const harness::ExperimentSpec& s) { return std::string(to_string(s.axis)); });

  py::register_exception<harness::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("parse_config", &harness::parse_config, py::arg("text"));
  m.def(
      "run_convergence",
      [](const harness::ExperimentSpec& spec) {
        std::vector<harness::ResultRow> rows;
        {
          py::gil_scoped_release release;
          rows = harness::run_convergence(spec);
        }
        py::list out;
        for (const auto& r : rows) out.append(row_to_dict(r));
        return out;
      },
      py::arg("spec"));
  m.def(
      "run_sweep",
      [](const harness::ExperimentSpec& spec, int workers) {
        std::vector<harness::ResultRow> rows;
        {
          py::gil_scoped_release release;
          rows = harness::run_sweep(spec, workers);
        }
        py::list out;
        for (const auto& r : rows) out.append(row_to_dict(r));
        return out;
      },
      py::arg("spec"), py::arg("workers") = 1);
  m.def(
      "results_csv",
      [](const harness::ExperimentSpec& spec) {
        std::ostringstream os;
        harness::write_csv(os, spec.axis == harness::SweepAxis::Epochs ? harness::run_convergence(spec)
                                                                        : harness::run_sweep(spec, 1));
        return os.str();
      },
      py::arg("spec"), "Run the experiment and return its CSV text.");
}
