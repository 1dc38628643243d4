#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mvbandit/concentration.hpp"
#include "mvbandit/config.hpp"
#include "mvbandit/engine.hpp"
#include "mvbandit/experiments.hpp"
#include "mvbandit/regret.hpp"

namespace py = pybind11;
using namespace mvbandit;

PYBIND11_MODULE(_core, m) {
  m.doc() = "risk-averse multi-armed bandits under the mean-variance measure";

  py::class_<RandomStream>(m, "RandomStream")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("child", &RandomStream::child, py::arg("index"))
      .def("uniform01", &RandomStream::uniform01)
      .def("gaussian", &RandomStream::gaussian)
      .def("bernoulli", &RandomStream::bernoulli, py::arg("p"));

  py::class_<ArmDistribution> arm(m, "ArmDistribution");
  arm.def_static("gaussian", &ArmDistribution::gaussian, py::arg("mean"), py::arg("variance"))
      .def_static("bernoulli", &ArmDistribution::bernoulli, py::arg("p"))
      .def_property_readonly("mean", &ArmDistribution::mean)
      .def_property_readonly("variance", &ArmDistribution::variance)
      .def("mean_variance", &ArmDistribution::mean_variance, py::arg("rho"))
      .def("sample", &ArmDistribution::sample, py::arg("stream"))
      .def("__repr__", &ArmDistribution::describe);

  py::class_<StreamingMoments>(m, "StreamingMoments")
      .def(py::init<>())
      .def("add", &StreamingMoments::add, py::arg("x"))
      .def("merge", &StreamingMoments::merge, py::arg("other"))
      .def_property_readonly("count", &StreamingMoments::count)
      .def_property_readonly("mean", &StreamingMoments::mean)
      .def_property_readonly("variance", &StreamingMoments::variance)
      .def_property_readonly("variance_unbiased", &StreamingMoments::variance_unbiased)
      .def("mean_variance", &StreamingMoments::mean_variance, py::arg("rho"));

  py::class_<BanditInstance>(m, "BanditInstance")
      .def(py::init<std::vector<ArmDistribution>, double, double>(), py::arg("arms"),
           py::arg("rho"), py::arg("a") = kDefaultConcentrationConstant)
      .def_property_readonly("num_arms", &BanditInstance::num_arms)
      .def_property_readonly("rho", &BanditInstance::rho)
      .def_property_readonly("a", &BanditInstance::concentration)
      .def_property_readonly("best_arm", &BanditInstance::best_arm)
      .def_property_readonly("min_mv_gap", &BanditInstance::min_mv_gap)
      .def_property_readonly("max_abs_mean_gap", &BanditInstance::max_abs_mean_gap)
      .def_property_readonly("max_sigma", &BanditInstance::max_sigma)
      .def("mean", &BanditInstance::mean, py::arg("arm"))
      .def("variance", &BanditInstance::variance, py::arg("arm"))
      .def("mean_variance", &BanditInstance::mean_variance, py::arg("arm"))
      .def("mv_gap", &BanditInstance::mv_gap, py::arg("arm"))
      .def("mean_gap", &BanditInstance::mean_gap, py::arg("arm"));

  py::class_<MvUcbPolicy>(m, "MvUcbPolicy")
      .def(py::init([](std::optional<double> b) { return MvUcbPolicy{b}; }),
           py::arg("b") = std::nullopt)
      .def_readwrite("b", &MvUcbPolicy::bonus_scale);

  py::enum_<MvDseePolicy::Mode>(m, "DseeMode")
      .value("MODEL_SPECIFIC", MvDseePolicy::Mode::kModelSpecific)
      .value("MODEL_INDEPENDENT", MvDseePolicy::Mode::kModelIndependent);

  py::class_<MvDseePolicy>(m, "MvDseePolicy")
      .def(py::init([](MvDseePolicy::Mode mode, double w) {
             return MvDseePolicy{mode, w};
           }),
           py::arg("mode") = MvDseePolicy::Mode::kModelIndependent, py::arg("w") = 1.0)
      .def_readwrite("mode", &MvDseePolicy::mode)
      .def_readwrite("w", &MvDseePolicy::exploration_weight);

  py::class_<SingleArmPolicy>(m, "SingleArmPolicy")
      .def(py::init([](std::size_t a) { return SingleArmPolicy{a}; }), py::arg("arm"))
      .def_readwrite("arm", &SingleArmPolicy::arm);

  py::class_<ThresholdSwitchPolicy>(m, "ThresholdSwitchPolicy")
      .def(py::init([](double t) { return ThresholdSwitchPolicy{t}; }), py::arg("threshold") = 0.5)
      .def_readwrite("threshold", &ThresholdSwitchPolicy::threshold);

  py::class_<RiskNeutralUcbPolicy>(m, "RiskNeutralUcbPolicy")
      .def(py::init([](double c) { return RiskNeutralUcbPolicy{c}; }),
           py::arg("c") = RiskNeutralUcbPolicy{}.bonus_scale)
      .def_readwrite("c", &RiskNeutralUcbPolicy::bonus_scale);

  m.def("policy_label", &policy_label, py::arg("policy"));
  m.def("default_mv_ucb_scale", &default_mv_ucb_scale, py::arg("rho"), py::arg("a"));
  m.def("mv_ucb_index", &mv_ucb_index, py::arg("stats"), py::arg("rho"), py::arg("b"),
        py::arg("t"));

  py::class_<ArmRunStats>(m, "ArmRunStats")
      .def_readonly("pulls", &ArmRunStats::pulls)
      .def_readonly("mean", &ArmRunStats::mean)
      .def_readonly("variance", &ArmRunStats::variance);

  py::class_<RunTrace>(m, "RunTrace")
      .def_readonly("horizon", &RunTrace::horizon)
      .def_readonly("choices", &RunTrace::choices)
      .def_readonly("rewards", &RunTrace::rewards)
      .def_readonly("per_arm", &RunTrace::per_arm);

  m.def("run_policy", &run_policy, py::arg("instance"), py::arg("policy"), py::arg("horizon"),
        py::arg("stream"), py::call_guard<py::gil_scoped_release>());

  py::class_<ValueWithError>(m, "ValueWithError")
      .def_readonly("value", &ValueWithError::value)
      .def_readonly("std_err", &ValueWithError::std_err)
      .def("__repr__", [](const ValueWithError& v) {
        return "ValueWithError(" + std::to_string(v.value) + ", " + std::to_string(v.std_err) + ")";
      });

  py::class_<RegretDecomposition>(m, "RegretDecomposition")
      .def_readonly("term_gap", &RegretDecomposition::term_gap)
      .def_readonly("term_spread", &RegretDecomposition::term_spread)
      .def_readonly("term_cross", &RegretDecomposition::term_cross)
      .def_readonly("term_best_var", &RegretDecomposition::term_best_var)
      .def_readonly("total", &RegretDecomposition::total);

  py::class_<RegretReport>(m, "RegretReport")
      .def_readonly("policy", &RegretReport::policy)
      .def_readonly("horizon", &RegretReport::horizon)
      .def_readonly("replications", &RegretReport::replications)
      .def_readonly("empirical_mv", &RegretReport::empirical_mv)
      .def_readonly("benchmark_mv", &RegretReport::benchmark_mv)
      .def_readonly("proxy_empirical", &RegretReport::proxy_empirical)
      .def_readonly("closed_form", &RegretReport::closed_form)
      .def_readonly("empirical_minus_closed", &RegretReport::empirical_minus_closed)
      .def_readonly("mean_pulls", &RegretReport::mean_pulls)
      .def_readonly("ucb_regret_upper", &RegretReport::ucb_regret_upper)
      .def_readonly("consistency_lower", &RegretReport::consistency_lower)
      .def_readonly("benchmark_gap_bound", &RegretReport::benchmark_gap_bound);

  m.def("path_cumulative_mv", &path_cumulative_mv, py::arg("trace"), py::arg("rho"));
  m.def("single_arm_benchmark", &single_arm_benchmark, py::arg("instance"), py::arg("horizon"));
  m.def("proxy_regret_empirical",
        [](const std::vector<RunTrace>& traces, const BanditInstance& instance) {
          return proxy_regret_empirical(traces, instance);
        },
        py::arg("traces"), py::arg("instance"));
  m.def("proxy_regret_closed_form",
        [](const std::vector<RunTrace>& traces, const BanditInstance& instance) {
          return proxy_regret_closed_form(traces, instance);
        },
        py::arg("traces"), py::arg("instance"));
  m.def("mv_ucb_regret_upper_bound", &mv_ucb_regret_upper_bound, py::arg("instance"), py::arg("b"),
        py::arg("horizon"));
  m.def("consistency_regret_lower_bound", &consistency_regret_lower_bound, py::arg("instance"),
        py::arg("c1"), py::arg("horizon"));
  m.def("benchmark_gap_bound", &benchmark_gap_bound, py::arg("instance"), py::arg("horizon"));
  m.def("kl_divergence", &kl_divergence, py::arg("f"), py::arg("g"));

  py::enum_<TailSide>(m, "TailSide").value("UPPER", TailSide::kUpper).value("LOWER", TailSide::kLower);

  py::class_<TailCheckRow>(m, "TailCheckRow")
      .def_readonly("s", &TailCheckRow::sample_count)
      .def_readonly("delta", &TailCheckRow::deviation)
      .def_readonly("side", &TailCheckRow::side)
      .def_readonly("empirical", &TailCheckRow::empirical)
      .def_readonly("bound", &TailCheckRow::bound)
      .def_readonly("std_err", &TailCheckRow::std_err)
      .def_readonly("violated", &TailCheckRow::violated);

  py::class_<TailCheckReport>(m, "TailCheckReport")
      .def_readonly("rows", &TailCheckReport::rows)
      .def_readonly("replications", &TailCheckReport::replications)
      .def("any_violation", &TailCheckReport::any_violation);

  m.def(
      "verify_mv_concentration",
      [](const ArmDistribution& dist, double rho, double a,
         const std::vector<std::pair<std::uint64_t, double>>& grid, std::uint64_t replications,
         const RandomStream& stream, unsigned jobs) {
        std::vector<TailGridCell> cells;
        cells.reserve(grid.size());
        for (const auto& [s, d] : grid) {
          cells.push_back({s, d});
        }
        py::gil_scoped_release release;
        return verify_mv_concentration(dist, rho, a, cells, replications, stream, jobs);
      },
      py::arg("dist"), py::arg("rho"), py::arg("a"), py::arg("grid"), py::arg("replications"),
      py::arg("stream"), py::arg("jobs") = 0);

  py::class_<StoppingTimeCheck>(m, "StoppingTimeCheck")
      .def_readonly("arm", &StoppingTimeCheck::arm)
      .def_readonly("lhs", &StoppingTimeCheck::lhs)
      .def_readonly("lhs_std_err", &StoppingTimeCheck::lhs_std_err)
      .def_readonly("rhs", &StoppingTimeCheck::rhs)
      .def_readonly("satisfied", &StoppingTimeCheck::satisfied);

  m.def("verify_stopping_time_bound", &verify_stopping_time_bound, py::arg("instance"),
        py::arg("policy"), py::arg("horizon"), py::arg("replications"), py::arg("stream"),
        py::arg("jobs") = 0, py::call_guard<py::gil_scoped_release>());

  py::class_<PullCountCheck>(m, "PullCountCheck")
      .def_readonly("arm", &PullCountCheck::arm)
      .def_readonly("mean_pulls", &PullCountCheck::mean_pulls)
      .def_readonly("bound", &PullCountCheck::bound)
      .def_readonly("satisfied", &PullCountCheck::satisfied);

  m.def("verify_suboptimal_pull_bound", &verify_suboptimal_pull_bound, py::arg("instance"),
        py::arg("policy"), py::arg("horizon"), py::arg("replications"), py::arg("stream"),
        py::arg("jobs") = 0, py::call_guard<py::gil_scoped_release>());

  py::class_<Scenario>(m, "Scenario")
      .def(py::init([](std::string name, BanditInstance instance, std::vector<PolicySpec> policies,
                       std::vector<std::uint64_t> horizons, std::uint64_t replications,
                       std::uint64_t seed, bool emit_sample_trace) {
             return Scenario{std::move(name), std::move(instance), std::move(policies),
                             std::move(horizons), replications, seed, emit_sample_trace};
           }),
           py::arg("name"), py::arg("instance"), py::arg("policies"), py::arg("horizons"),
           py::arg("replications") = 1000, py::arg("seed") = kDefaultSeed,
           py::arg("emit_sample_trace") = false)
      .def_readonly("name", &Scenario::name)
      .def_readonly("instance", &Scenario::instance)
      .def_readonly("horizons", &Scenario::horizons)
      .def_readonly("replications", &Scenario::replications)
      .def_readonly("seed", &Scenario::seed);

  py::class_<ScenarioRow>(m, "ScenarioRow")
      .def_readonly("policy", &ScenarioRow::policy)
      .def_readonly("horizon", &ScenarioRow::horizon)
      .def_readonly("report", &ScenarioRow::report)
      .def_readonly("sample_trace", &ScenarioRow::sample_trace);

  m.def("run_scenario", &run_scenario, py::arg("scenario"), py::arg("jobs") = 0,
        py::call_guard<py::gil_scoped_release>());
  m.def("risk_profile_scenario", &risk_profile_scenario, py::arg("rho"),
        py::arg("seed") = kDefaultSeed);
  m.def("gap_sweep_scenario", &gap_sweep_scenario, py::arg("delta"), py::arg("seed") = kDefaultSeed);
  m.def("two_arm_gap_instance", &two_arm_gap_instance, py::arg("delta"));
  m.def("counterexample_instance", &counterexample_instance);

  py::class_<CounterexampleResult>(m, "CounterexampleResult")
      .def_readonly("single_arm_mv", &CounterexampleResult::single_arm_mv)
      .def_readonly("threshold_mv", &CounterexampleResult::threshold_mv)
      .def_readonly("confirmed", &CounterexampleResult::confirmed);

  m.def("counterexample_experiment", &counterexample_experiment, py::arg("replications"),
        py::arg("seed"), py::arg("threshold") = 0.5, py::arg("jobs") = 0,
        py::call_guard<py::gil_scoped_release>());

  py::class_<MinimaxInstancePair>(m, "MinimaxInstancePair")
      .def_readonly("f", &MinimaxInstancePair::f)
      .def_readonly("f_prime", &MinimaxInstancePair::f_prime)
      .def_readonly("requested_delta", &MinimaxInstancePair::requested_delta)
      .def_readonly("realized_gap", &MinimaxInstancePair::realized_gap)
      .def_readonly("horizon", &MinimaxInstancePair::horizon);

  m.def("build_minimax_pair", &build_minimax_pair, py::arg("delta"), py::arg("rho"));
  m.def("build_minimax_pair_for_horizon", &build_minimax_pair_for_horizon, py::arg("horizon"),
        py::arg("rho"), py::arg("d6") = kDefaultMinimaxGapCoefficient);

  py::class_<MinimaxRow>(m, "MinimaxRow")
      .def_readonly("horizon", &MinimaxRow::horizon)
      .def_readonly("delta", &MinimaxRow::delta)
      .def_readonly("regret_f", &MinimaxRow::regret_f)
      .def_readonly("regret_f_prime", &MinimaxRow::regret_f_prime)
      .def_readonly("max_regret", &MinimaxRow::max_regret);

  py::class_<MinimaxScalingResult>(m, "MinimaxScalingResult")
      .def_readonly("rows", &MinimaxScalingResult::rows)
      .def_readonly("slope_defined", &MinimaxScalingResult::slope_defined)
      .def_readonly("slope", &MinimaxScalingResult::slope);

  m.def(
      "minimax_scaling_experiment",
      [](const std::vector<std::uint64_t>& horizons, double rho, std::uint64_t replications,
         std::uint64_t seed, double w, double d6, unsigned jobs) {
        py::gil_scoped_release release;
        return minimax_scaling_experiment(horizons, rho, replications, seed, w, d6, jobs);
      },
      py::arg("horizons"), py::arg("rho"), py::arg("replications"), py::arg("seed"),
      py::arg("w") = 1.0, py::arg("d6") = kDefaultMinimaxGapCoefficient, py::arg("jobs") = 0);

  m.attr("__version__") = "0.1.0";
}
