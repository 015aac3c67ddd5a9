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


#include "shadow/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>

#include "CLI11.hpp"
#include "shadow/analysis.hpp"
#include "shadow/errors.hpp"
#include "shadow/io.hpp"
#include "shadow/planning.hpp"
#include "shadow/protocol.hpp"
#include "shadow/retrieving.hpp"

namespace shadow::cli {

namespace {

/// Raised for conditions that map to a specific exit code.
struct Exit {
  int code;
  std::string message;
};

SdpOptions solver_options() {
  SdpOptions opts;
  if (const char* env = std::getenv("SHADOW_SDP_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(tol > 0.0) || !std::isfinite(tol)) {
      throw Exit{kExitInput, std::string("SHADOW_SDP_TOL must be a positive number, got \"") + env + "\""};
    }
    opts.feasibility_tol = tol;
    opts.gap_tol = tol;
  }
  return opts;
}

bool analytic_applicable(const io::ChannelSpec& ch, const io::ObservableSpec& obs) {
  if (!obs.pauli) return false;
  if (ch.type == "gad") return obs.pauli->n_qubits() == 1;
  return ch.probs.has_value() && obs.pauli->n_qubits() == ch.qubits;
}

AnalyticCost analytic_cost(const io::ChannelSpec& ch, const io::ObservableSpec& obs) {
  if (ch.type == "gad") {
    if ((*obs.pauli)[0] == 'I') return AnalyticCost{1.0, identity_retriever(2)};
    return analytic_gad_cost(ch.epsilon, ch.p, (*obs.pauli)[0]);
  }
  return analytic_pauli_cost(*ch.probs, *obs.pauli);
}

[[noreturn]] void not_preserved(const io::ChannelSpec& ch, const io::ObservableSpec& obs) {
  const PreservationReport rep = check_preservation(ch.channel, obs.op);
  throw Exit{kExitInfeasible, "information not preserved (residual " + format_real(rep.residual) + ")"};
}

[[noreturn]] void solver_failed(const std::string& what) { throw Exit{kExitSolver, "solver failure: " + what}; }

struct CostResult {
  double gamma = 0.0;
  std::string method;
  std::optional<RetrieverDecomposition> retriever;
  std::optional<double> dual;
  std::optional<double> verified;
};

CostResult compute_cost(const io::ChannelSpec& ch, const io::ObservableSpec& obs, std::string method, double tau,
                        bool verify) {
  if (obs.op.dim() != ch.channel.dim()) throw DimensionError("observable and channel dimensions differ");
  const SdpOptions opts = solver_options();
  if (method == "auto") method = tau > 0.0 || !analytic_applicable(ch, obs) ? "sdp" : "analytic";
  CostResult res;
  res.method = method;
  if (method == "analytic") {
    if (tau > 0.0) throw Exit{kExitInput, "--tau needs --method sdp"};
    if (!analytic_applicable(ch, obs)) {
      throw Exit{kExitInput, "analytic method needs a gad, depolarizing or mixed_pauli channel and a Pauli observable"};
    }
    try {
      AnalyticCost a = analytic_cost(ch, obs);
      res.gamma = a.gamma;
      res.retriever = std::move(a.decomposition);
    } catch (const InformationDestroyed&) {
      not_preserved(ch, obs);
    }
    if (verify) {
      const SdpSolution s = retrieving_cost_sdp(ch.channel, obs.op, opts);
      if (s.status != SdpStatus::Optimal) solver_failed(s.message);
      res.verified = s.gamma;
    }
    return res;
  }
  if (method == "dual") {
    if (tau > 0.0) throw Exit{kExitInput, "--tau needs --method sdp"};
    const DualSolution d = retrieving_cost_dual(ch.channel, obs.op, opts);
    if (d.status == SdpStatus::Infeasible) not_preserved(ch, obs);
    if (d.status != SdpStatus::Optimal) solver_failed(d.message);
    res.gamma = d.value;
    res.dual = d.value;
    return res;
  }
  const SdpSolution s = tau > 0.0 ? retrieving_cost_approx(ch.channel, obs.op, tau, opts)
                                  : retrieving_cost_sdp(ch.channel, obs.op, opts);
  if (s.status == SdpStatus::Infeasible) not_preserved(ch, obs);
  if (s.status != SdpStatus::Optimal) solver_failed(s.message);
  res.method = tau > 0.0 ? "approx" : "sdp";
  res.gamma = s.gamma;
  res.retriever = s.decomposition;
  res.dual = s.dual_value;
  if (verify && tau == 0.0 && analytic_applicable(ch, obs)) {
    try {
      res.verified = analytic_cost(ch, obs).gamma;
    } catch (const InformationDestroyed&) {
      not_preserved(ch, obs);
    }
  }
  return res;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw io::InputError("cannot write " + path);
  f << text;
}

int cmd_analyze(const std::string& channel_file, const std::string& observable_file, std::ostream& out) {
  const io::ChannelSpec ch = io::channel_from_json(io::load_json_file(channel_file));
  const ShadowProfile prof = shadow_profile(ch.channel);
  out << "d_s=" << prof.d_s << " zeta=" << format_real(prof.zeta)
      << " invertible=" << (is_invertible(ch.channel) ? "true" : "false") << '\n';
  if (!observable_file.empty()) {
    const io::ObservableSpec obs = io::observable_from_json(io::load_json_file(observable_file));
    if (obs.op.dim() != ch.channel.dim()) throw DimensionError("observable and channel dimensions differ");
    const PreservationReport rep = check_preservation(ch.channel, obs.op);
    out << "preserved=" << (rep.preserved ? "true" : "false") << " residual=" << format_real(rep.residual) << '\n';
  }
  return kExitOk;
}

int cmd_cost(const std::string& channel_file, const std::string& observable_file, const std::string& method, double tau,
             bool verify, const std::string& output, std::ostream& out, std::ostream& err) {
  const io::ChannelSpec ch = io::channel_from_json(io::load_json_file(channel_file));
  const io::ObservableSpec obs = io::observable_from_json(io::load_json_file(observable_file));
  const CostResult r = compute_cost(ch, obs, method, tau, verify);
  out << "gamma=" << format_real(r.gamma) << '\n';
  out << "method=" << r.method;
  if (r.dual && r.method != "dual") {
    out << " dual=" << format_real(*r.dual) << " gap=" << format_real(std::abs(r.gamma - *r.dual) / (1.0 + r.gamma));
  }
  out << '\n';
  if (r.verified) {
    const double diff = std::abs(*r.verified - r.gamma);
    out << "verify=" << format_real(*r.verified) << " diff=" << format_real(diff) << '\n';
    if (diff > 1e-5 * (1.0 + r.gamma)) solver_failed("analytic and SDP costs disagree");
  }
  if (!output.empty()) {
    if (!r.retriever) {
      err << "note: the dual method yields no retriever; " << output << " not written\n";
    } else {
      io::save_json_file(output, io::retriever_to_json(*r.retriever));
    }
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string channel, observable, state, retriever, method = "auto", output;
  double eps = 0.05, delta = 0.05;
  std::uint64_t seed = 0;
  std::int64_t rounds = 0;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const io::ChannelSpec ch = io::channel_from_json(io::load_json_file(a.channel));
  const io::ObservableSpec obs = io::observable_from_json(io::load_json_file(a.observable));
  const DensityMatrix rho = io::state_from_json(io::load_json_file(a.state));
  if (rho.dim() != ch.channel.dim()) throw DimensionError("state and channel dimensions differ");
  RetrieverDecomposition retriever;
  if (!a.retriever.empty()) {
    retriever = io::retriever_from_json(io::load_json_file(a.retriever));
    if (retriever.dim() != ch.channel.dim()) throw DimensionError("retriever and channel dimensions differ");
  } else {
    if (a.method == "dual") throw Exit{kExitInput, "simulate needs a retriever; use --method auto, sdp or analytic"};
    retriever = *compute_cost(ch, obs, a.method, 0.0, false).retriever;
  }
  ProtocolConfig cfg;
  cfg.epsilon_hat = a.eps;
  cfg.delta = a.delta;
  cfg.seed = a.seed;
  if (a.rounds > 0) cfg.rounds_override = a.rounds;
  const EstimateReport rep = simulate_protocol_rescaled(rho, ch.channel, retriever, obs.op, cfg);
  out << "xi=" << format_real(rep.xi) << " rounds=" << rep.rounds << " gamma=" << format_real(rep.gamma);
  if (rep.true_value) out << " true_value=" << format_real(*rep.true_value);
  if (rep.abs_error) out << " abs_error=" << format_real(*rep.abs_error);
  out << " seed=" << rep.seed << '\n';
  if (!a.output.empty()) io::save_json_file(a.output, io::report_to_json(rep));
  return kExitOk;
}

struct PlanArgs {
  std::string hamiltonian, noise, aggregation = "per-term", scope = "per-qubit", csv;
  double eps = 0.01, delta = 0.01;
  bool uniform = false;
};

std::string plan_csv(const PlanReport& r) {
  std::string s = "pauli,abs_coeff,gamma_pro,gamma_con,gamma_pro_sq,gamma_con_sq,rounds_pro,rounds_con\n";
  for (const auto& t : r.terms) {
    s += t.pauli.str() + ',' + format_csv(t.abs_coeff) + ',' + format_csv(t.gamma_pro) + ',' + format_csv(t.gamma_con) +
         ',' + format_csv(t.gamma_pro * t.gamma_pro) + ',' + format_csv(t.gamma_con * t.gamma_con) + ',' +
         std::to_string(t.rounds_pro) + ',' + std::to_string(t.rounds_con) + '\n';
  }
  return s;
}

int cmd_plan(const PlanArgs& a, std::ostream& out) {
  PlanOptions opt;
  opt.noise = NoiseSpec::parse(a.noise);
  opt.epsilon_hat = a.eps;
  opt.delta = a.delta;
  opt.aggregation = a.aggregation == "weighted" ? Aggregation::Weighted : Aggregation::PerTerm;
  opt.scope = a.scope == "global" ? NoiseScope::Global : NoiseScope::PerQubit;
  opt.uniform_coefficient = a.uniform;
  const PlanReport r = plan(Hamiltonian::load(a.hamiltonian), opt);

  std::size_t width = 5;
  for (const auto& t : r.terms) width = std::max(width, t.pauli.str().size());
  out << std::left << std::setw(static_cast<int>(width) + 2) << "pauli" << std::right << std::setw(12) << "|h|"
      << std::setw(14) << "gamma_pro" << std::setw(14) << "gamma_con" << std::setw(14) << "gamma_pro^2" << std::setw(14)
      << "gamma_con^2" << std::setw(14) << "rounds_pro" << std::setw(14) << "rounds_con" << '\n';
  for (const auto& t : r.terms) {
    out << std::left << std::setw(static_cast<int>(width) + 2) << t.pauli.str() << std::right << std::setw(12)
        << format_csv(t.abs_coeff) << std::setw(14) << format_csv(t.gamma_pro) << std::setw(14)
        << format_csv(t.gamma_con) << std::setw(14) << format_csv(t.gamma_pro * t.gamma_pro) << std::setw(14)
        << format_csv(t.gamma_con * t.gamma_con) << std::setw(14) << t.rounds_pro << std::setw(14) << t.rounds_con
        << '\n';
  }
  out << "aggregation=" << (opt.aggregation == Aggregation::Weighted ? "weighted" : "per-term")
      << " total_pro=" << r.total_pro << " total_con=" << r.total_con;
  if (r.total_pro > 0) out << " ratio=" << format_real(static_cast<double>(r.total_con) / static_cast<double>(r.total_pro));
  out << '\n';
  if (!a.csv.empty()) write_text(a.csv, plan_csv(r));
  return kExitOk;
}

struct GridArgs {
  std::string channel = "gad", obs = "X", eps_range = "0:0.9:0.05", p_range = "0:0.5:0.05", method = "analytic", output;
};

int cmd_grid(const GridArgs& a, std::ostream& out) {
  if (a.channel != "gad") throw Exit{kExitInput, "grid supports --channel gad only"};
  if (a.obs.size() != 1 || std::string("XYZxyz").find(a.obs[0]) == std::string::npos) {
    throw Exit{kExitInput, "grid --obs must be X, Y or Z"};
  }
  const char pauli = static_cast<char>(std::toupper(static_cast<unsigned char>(a.obs[0])));
  std::vector<GridRow> rows = gad_cost_grid(parse_range(a.eps_range), parse_range(a.p_range), pauli);
  if (a.method == "sdp") {
    const SdpOptions opts = solver_options();
    for (auto& row : rows) {
      const SdpSolution s = retrieving_cost_sdp(make_gad(row.epsilon, row.p), HermitianOperator(pauli_matrix(pauli)), opts);
      if (s.status != SdpStatus::Optimal) solver_failed(s.message);
      row.gamma_pro = s.gamma;
    }
  }
  std::string csv = "epsilon,p,gamma_pro,gamma_con,gamma_pro_sq,gamma_con_sq\n";
  for (const auto& r : rows) {
    csv += format_csv(r.epsilon) + ',' + format_csv(r.p) + ',' + format_csv(r.gamma_pro) + ',' +
           format_csv(r.gamma_con) + ',' + format_csv(r.gamma_pro * r.gamma_pro) + ',' +
           format_csv(r.gamma_con * r.gamma_con) + '\n';
  }
  if (a.output.empty()) {
    out << csv;
  } else {
    write_text(a.output, csv);
  }
  return kExitOk;
}

}  // namespace

std::string format_csv(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string format_real(double x) {
  std::string s = format_csv(x);
  if (std::isfinite(x) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Observable-specific error mitigation: shadow analysis, retrieving costs and sampling plans",
               "shadow-retriever"};
  app.require_subcommand(1);

  std::string channel_file, observable_file, analyze_obs;
  auto* analyze = app.add_subcommand("analyze", "Effective shadow dimension and destructivity of a channel");
  analyze->add_option("channel", channel_file, "Channel JSON")->required();
  analyze->add_option("--observable", analyze_obs, "Also test whether this observable is preserved");

  std::string method = "auto", output;
  double tau = 0.0;
  bool verify = false;
  auto* cost = app.add_subcommand("cost", "Retrieving cost of an observable under a channel");
  cost->add_option("channel", channel_file, "Channel JSON")->required();
  cost->add_option("observable", observable_file, "Observable JSON")->required();
  cost->add_option("--method", method, "auto, sdp, dual or analytic")
      ->check(CLI::IsMember({"auto", "sdp", "dual", "analytic"}));
  cost->add_option("--tau", tau, "Recovery tolerance for the approximate relaxation")->check(CLI::NonNegativeNumber);
  cost->add_flag("--verify", verify, "Cross-check the analytic and SDP costs");
  cost->add_option("--output,-o", output, "Write the retriever JSON here");

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Run the sampling protocol");
  simulate->add_option("channel", sim.channel, "Channel JSON")->required();
  simulate->add_option("observable", sim.observable, "Observable JSON")->required();
  simulate->add_option("state", sim.state, "State JSON")->required();
  simulate->add_option("--retriever", sim.retriever, "Retriever JSON written by `cost`");
  simulate->add_option("--method", sim.method, "How to compute the retriever when none is given")
      ->check(CLI::IsMember({"auto", "sdp", "analytic"}));
  simulate->add_option("--eps", sim.eps, "Target accuracy")->check(CLI::PositiveNumber);
  simulate->add_option("--delta", sim.delta, "Failure probability")->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--seed", sim.seed, "RNG seed");
  simulate->add_option("--rounds", sim.rounds, "Override the number of rounds")->check(CLI::PositiveNumber);
  simulate->add_option("--output,-o", sim.output, "Write the report JSON here");

  PlanArgs pl;
  auto* plan_cmd = app.add_subcommand("plan", "Sampling budget for a Pauli-sum Hamiltonian");
  plan_cmd->add_option("hamiltonian", pl.hamiltonian, "Hamiltonian text file")->required();
  plan_cmd->add_option("--noise", pl.noise, "depolarizing:<eps> or gad:<eps>,<p>")->required();
  plan_cmd->add_option("--eps", pl.eps, "Target accuracy")->check(CLI::PositiveNumber);
  plan_cmd->add_option("--delta", pl.delta, "Failure probability")->check(CLI::Range(0.0, 1.0));
  plan_cmd->add_option("--aggregation", pl.aggregation, "per-term or weighted")
      ->check(CLI::IsMember({"per-term", "weighted"}));
  plan_cmd->add_option("--scope", pl.scope, "per-qubit or global")->check(CLI::IsMember({"per-qubit", "global"}));
  plan_cmd->add_flag("--uniform-coefficient", pl.uniform, "Use max|h_j| for every term");
  plan_cmd->add_option("--csv", pl.csv, "Write the per-term CSV here");

  GridArgs gr;
  auto* grid = app.add_subcommand("grid", "CSV of retrieving and conventional costs over GAD parameters");
  grid->add_option("--channel", gr.channel, "Channel family")->capture_default_str();
  grid->add_option("--obs", gr.obs, "Single-qubit Pauli observable")->capture_default_str();
  grid->add_option("--eps-range", gr.eps_range, "start:stop:step")->capture_default_str();
  grid->add_option("--p-range", gr.p_range, "start:stop:step")->capture_default_str();
  grid->add_option("--method", gr.method, "analytic or sdp")->check(CLI::IsMember({"analytic", "sdp"}));
  grid->add_option("--output,-o", gr.output, "Write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(channel_file, analyze_obs, out);
    if (cost->parsed()) return cmd_cost(channel_file, observable_file, method, tau, verify, output, out, err);
    if (simulate->parsed()) return cmd_simulate(sim, out);
    if (plan_cmd->parsed()) return cmd_plan(pl, out);
    if (grid->parsed()) return cmd_grid(gr, out);
  } catch (const Exit& e) {
    err << e.message << '\n';
    return e.code;
  } catch (const InformationDestroyed& e) {
    err << "information not preserved: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const ConvergenceError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitInput;
}

}  // namespace shadow::cli
