// Copyright 2026 The shadow-retriever Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "shadow/analysis.hpp"
#include "shadow/channel.hpp"
#include "shadow/errors.hpp"
#include "shadow/io.hpp"
#include "shadow/planning.hpp"
#include "shadow/protocol.hpp"
#include "shadow/retrieving.hpp"

namespace py = pybind11;
using namespace shadow;

namespace {

HermitianOperator herm(const CMatrix& m) { return HermitianOperator(m); }

SdpOptions options(double tol) {
  SdpOptions o;
  o.feasibility_tol = tol;
  o.gap_tol = tol;
  return o;
}

}  // namespace

PYBIND11_MODULE(_shadow_retriever, m) {
  m.doc() = "Observable-specific retrievers for noisy quantum channels";

  auto base = py::register_exception<Error>(m, "ShadowError");
  py::register_exception<DimensionError>(m, "DimensionError", base);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base);
  py::register_exception<NotCompletelyPositive>(m, "NotCompletelyPositive", base);
  py::register_exception<NotTracePreserving>(m, "NotTracePreserving", base);
  py::register_exception<InformationDestroyed>(m, "InformationDestroyed", base);
  py::register_exception<ObservableNotNormalized>(m, "ObservableNotNormalized", base);
  py::register_exception<io::InputError>(m, "InputError", base);

  py::class_<KrausChannel>(m, "KrausChannel")
      .def(py::init<std::vector<CMatrix>, double>(), py::arg("kraus"), py::arg("tol") = kChannelTol)
      .def_property_readonly("kraus", &KrausChannel::kraus)
      .def_property_readonly("dim", &KrausChannel::dim)
      .def_property_readonly("choi", [](const KrausChannel& c) { return kraus_to_choi(c).matrix(); })
      .def("__repr__", [](const KrausChannel& c) {
        return "KrausChannel(dim=" + std::to_string(c.dim()) + ", rank=" + std::to_string(c.kraus().size()) + ")";
      });

  m.def("apply", [](const KrausChannel& c, const CMatrix& x) { return apply_map(c, x); }, py::arg("channel"),
        py::arg("x"));
  m.def("apply_choi", &apply_choi, py::arg("choi"), py::arg("x"));
  m.def("adjoint_choi", &adjoint_choi, py::arg("choi"), py::arg("dim"));
  m.def("compose", py::overload_cast<const KrausChannel&, const KrausChannel&>(&compose), py::arg("outer"),
        py::arg("inner"));
  m.def("tensor", py::overload_cast<const KrausChannel&, const KrausChannel&>(&tensor), py::arg("a"), py::arg("b"));
  m.def("transfer_matrix", &transfer_matrix, py::arg("channel"));

  m.def("make_identity_channel", &make_identity_channel, py::arg("dim"));
  m.def("make_gad", &make_gad, py::arg("epsilon"), py::arg("p"));
  m.def("make_depolarizing", &make_depolarizing, py::arg("epsilon"), py::arg("n_qubits") = 1);
  m.def(
      "make_mixed_pauli",
      [](const std::map<std::string, double>& probs) {
        PauliProbabilities p;
        for (const auto& [k, v] : probs) p[PauliString(k)] += v;
        return make_mixed_pauli(p);
      },
      py::arg("probs"));
  m.def("make_unitary", &make_unitary, py::arg("u"));
  m.def("make_case_study", &make_case_study, py::arg("which"));
  m.def("pauli_matrix", [](const std::string& s) { return PauliString(s).matrix(); }, py::arg("pauli"));

  m.def("effective_shadow_dimension", [](const KrausChannel& c) { return effective_shadow_dimension(c); },
        py::arg("channel"));
  m.def("shadow_destructivity", [](const KrausChannel& c) { return shadow_destructivity(c); }, py::arg("channel"));
  m.def("is_invertible", [](const KrausChannel& c) { return is_invertible(c); }, py::arg("channel"));

  py::class_<PreservationReport>(m, "PreservationReport")
      .def_readonly("preserved", &PreservationReport::preserved)
      .def_readonly("residual", &PreservationReport::residual)
      .def_property_readonly("witness_q", [](const PreservationReport& r) -> std::optional<CMatrix> {
        if (!r.witness_q) return std::nullopt;
        return r.witness_q->matrix();
      });
  m.def("check_preservation", [](const KrausChannel& c, const CMatrix& o) { return check_preservation(c, herm(o)); },
        py::arg("channel"), py::arg("observable"));
  m.def(
      "construct_witness_retriever",
      [](const CMatrix& o, const CMatrix& q) { return construct_witness_retriever(herm(o), herm(q)).matrix(); },
      py::arg("observable"), py::arg("q"), "Choi matrix of the adjoint map D† with D†(O) = Q.");

  py::class_<RetrieverDecomposition>(m, "RetrieverDecomposition")
      .def_readonly("c1", &RetrieverDecomposition::c1)
      .def_readonly("c2", &RetrieverDecomposition::c2)
      .def_readonly("gamma", &RetrieverDecomposition::gamma)
      .def_property_readonly("dim", &RetrieverDecomposition::dim)
      .def_property_readonly("d1", [](const RetrieverDecomposition& r) { return r.d1.matrix(); })
      .def_property_readonly("d2", [](const RetrieverDecomposition& r) { return r.d2.matrix(); })
      .def("combined", [](const RetrieverDecomposition& r) { return r.combined().matrix(); })
      .def("to_json", [](const RetrieverDecomposition& r) { return io::retriever_to_json(r).dump(); })
      .def_static("from_json", [](const std::string& s) { return io::retriever_from_json(io::json::parse(s)); });

  py::class_<SdpSolution>(m, "SdpSolution")
      .def_property_readonly("status", [](const SdpSolution& s) { return std::string(to_string(s.status)); })
      .def_readonly("gamma", &SdpSolution::gamma)
      .def_readonly("decomposition", &SdpSolution::decomposition)
      .def_readonly("dual_value", &SdpSolution::dual_value)
      .def_readonly("iterations", &SdpSolution::iterations)
      .def_readonly("message", &SdpSolution::message);

  py::class_<DualSolution>(m, "DualSolution")
      .def_property_readonly("status", [](const DualSolution& s) { return std::string(to_string(s.status)); })
      .def_readonly("value", &DualSolution::value)
      .def_readonly("m", &DualSolution::m)
      .def_readonly("n", &DualSolution::n)
      .def_readonly("k", &DualSolution::k);

  m.def(
      "retrieving_cost_sdp",
      [](const KrausChannel& c, const CMatrix& o, double tol) { return retrieving_cost_sdp(c, herm(o), options(tol)); },
      py::arg("channel"), py::arg("observable"), py::arg("tol") = 1e-8);
  m.def(
      "retrieving_cost_approx",
      [](const KrausChannel& c, const CMatrix& o, double tau, double tol) {
        return retrieving_cost_approx(c, herm(o), tau, options(tol));
      },
      py::arg("channel"), py::arg("observable"), py::arg("tau"), py::arg("tol") = 1e-8);
  m.def(
      "retrieving_cost_dual",
      [](const KrausChannel& c, const CMatrix& o, double tol) { return retrieving_cost_dual(c, herm(o), options(tol)); },
      py::arg("channel"), py::arg("observable"), py::arg("tol") = 1e-8);

  py::class_<AnalyticCost>(m, "AnalyticCost")
      .def_readonly("gamma", &AnalyticCost::gamma)
      .def_readonly("decomposition", &AnalyticCost::decomposition);
  m.def(
      "analytic_gad_cost", [](double e, double p, char o) { return analytic_gad_cost(e, p, o); }, py::arg("epsilon"),
      py::arg("p"), py::arg("pauli"));
  m.def(
      "analytic_pauli_cost",
      [](const std::map<std::string, double>& probs, const std::string& o) {
        PauliProbabilities p;
        for (const auto& [k, v] : probs) p[PauliString(k)] += v;
        return analytic_pauli_cost(p, PauliString(o));
      },
      py::arg("probs"), py::arg("pauli"));
  m.def("analytic_depolarizing_cost", &analytic_depolarizing_cost, py::arg("epsilon"));
  m.def("conventional_pec_cost_gad", &conventional_pec_cost_gad, py::arg("epsilon"), py::arg("p"));
  m.def("conventional_pec_cost_depolarizing", &conventional_pec_cost_depolarizing, py::arg("epsilon"),
        py::arg("dim"));

  m.def(
      "sampling_rounds", [](double g, double e, double d) { return sampling_rounds(g, e, d); }, py::arg("gamma"),
      py::arg("epsilon_hat"), py::arg("delta"));
  m.def(
      "exact_recovery",
      [](const CMatrix& rho, const KrausChannel& c, const RetrieverDecomposition& r, const CMatrix& o) {
        return exact_recovery(DensityMatrix(rho), c, r, herm(o));
      },
      py::arg("rho"), py::arg("channel"), py::arg("retriever"), py::arg("observable"));

  py::class_<EstimateReport>(m, "EstimateReport")
      .def_readonly("xi", &EstimateReport::xi)
      .def_readonly("rounds", &EstimateReport::rounds)
      .def_readonly("gamma", &EstimateReport::gamma)
      .def_readonly("true_value", &EstimateReport::true_value)
      .def_readonly("abs_error", &EstimateReport::abs_error)
      .def_readonly("seed", &EstimateReport::seed);
  m.def(
      "simulate_protocol",
      [](const CMatrix& rho, const KrausChannel& c, const RetrieverDecomposition& r, const CMatrix& o, double eps,
         double delta, std::uint64_t seed, std::optional<std::int64_t> rounds) {
        ProtocolConfig cfg;
        cfg.epsilon_hat = eps;
        cfg.delta = delta;
        cfg.seed = seed;
        cfg.rounds_override = rounds;
        return simulate_protocol(DensityMatrix(rho), c, r, herm(o), cfg);
      },
      py::arg("rho"), py::arg("channel"), py::arg("retriever"), py::arg("observable"), py::arg("epsilon_hat") = 0.05,
      py::arg("delta") = 0.05, py::arg("seed") = 0, py::arg("rounds") = std::nullopt);

  py::class_<PlanTerm>(m, "PlanTerm")
      .def_property_readonly("pauli", [](const PlanTerm& t) { return t.pauli.str(); })
      .def_readonly("abs_coeff", &PlanTerm::abs_coeff)
      .def_readonly("gamma_pro", &PlanTerm::gamma_pro)
      .def_readonly("gamma_con", &PlanTerm::gamma_con)
      .def_readonly("rounds_pro", &PlanTerm::rounds_pro)
      .def_readonly("rounds_con", &PlanTerm::rounds_con);
  py::class_<PlanReport>(m, "PlanReport")
      .def_readonly("terms", &PlanReport::terms)
      .def_readonly("total_pro", &PlanReport::total_pro)
      .def_readonly("total_con", &PlanReport::total_con);
  m.def(
      "plan",
      [](const std::vector<std::pair<double, std::string>>& terms, const std::string& noise, double eps, double delta,
         const std::string& aggregation, const std::string& scope) {
        std::vector<HamiltonianTerm> ts;
        for (const auto& [c, s] : terms) ts.push_back({c, PauliString(s)});
        PlanOptions opt;
        opt.noise = NoiseSpec::parse(noise);
        opt.epsilon_hat = eps;
        opt.delta = delta;
        if (aggregation != "per-term" && aggregation != "weighted") throw InvalidArgument("unknown aggregation");
        if (scope != "per-qubit" && scope != "global") throw InvalidArgument("unknown scope");
        opt.aggregation = aggregation == "weighted" ? Aggregation::Weighted : Aggregation::PerTerm;
        opt.scope = scope == "global" ? NoiseScope::Global : NoiseScope::PerQubit;
        return plan(Hamiltonian(std::move(ts)), opt);
      },
      py::arg("terms"), py::arg("noise"), py::arg("epsilon_hat") = 0.01, py::arg("delta") = 0.01,
      py::arg("aggregation") = "per-term", py::arg("scope") = "per-qubit");
}
