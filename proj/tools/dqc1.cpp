// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver: analytic threshold tables, criterion sweeps over
// (n, alpha, bipartition, circuit), trace estimation, and the constructive
// demos (near-identity entangler, entangling-unitary search, discord check).
//
// Exit codes: 0 success, 2 usage error, 3 numeric-validation failure.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dqc1/report.hpp"

namespace {

using dqc1::Bipartition;
using dqc1::Matrix;
using json = nlohmann::ordered_json;

// "2..6", "4", or "1,3,5" -> list of integers.
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const auto range = text.find("..");
  if (range != std::string::npos) {
    const int lo = std::stoi(text.substr(0, range));
    const int hi = std::stoi(text.substr(range + 2));
    if (hi < lo) throw CLI::ValidationError("range is empty: " + text);
    for (int value = lo; value <= hi; ++value) out.push_back(value);
    return out;
  }
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (!token.empty()) out.push_back(std::stoi(token));
  }
  if (out.empty()) throw CLI::ValidationError("empty integer list: " + text);
  return out;
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream stream(text);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (!token.empty()) out.push_back(std::stod(token));
  }
  if (out.empty()) throw CLI::ValidationError("empty value list: " + text);
  return out;
}

// "lo:hi:step" -> inclusive grid from an index formula, so replays agree
// to the bit.
std::vector<double> parse_real_range(const std::string& text) {
  double lo = 0.0, hi = 0.0, step = 0.0;
  char c1 = 0, c2 = 0;
  std::stringstream stream(text);
  stream >> lo >> c1 >> hi >> c2 >> step;
  if (stream.fail() || c1 != ':' || c2 != ':' || step <= 0.0 || hi < lo) {
    throw CLI::ValidationError("bad range (want lo:hi:step): " + text);
  }
  const long count = std::lround(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    out.push_back(lo + static_cast<double>(i) * step);
  }
  return out;
}

// Matrix certificate file: "rows cols" header line, then one row per line
// as whitespace-separated "re im" pairs.
void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ' ';
      out << dqc1::format_real(m(r, c).real()) << ' '
          << dqc1::format_real(m(r, c).imag());
    }
    out << '\n';
  }
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  return file;
}

void emit_object(const json& object, const std::string& format,
                 std::ostream& out) {
  if (format == "json") {
    out << object.dump(2) << '\n';
    return;
  }
  for (const auto& [key, value] : object.items()) {
    out << key << ": "
        << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
  }
}

// The one-clean-qubit input at (n, alpha), evolved by an optional circuit
// file; shared by scan-like subcommands.
dqc1::DensityMatrix build_state(int n, double alpha,
                                const std::string& circuit_path) {
  dqc1::DensityMatrix state = dqc1::dqc1_state(n, alpha);
  if (!circuit_path.empty()) {
    const auto ops = dqc1::parse_circuit_file(circuit_path);
    state = dqc1::evolve(dqc1::circuit_unitary(ops, n + 1), state);
  }
  return state;
}

int run_thresholds(const std::string& n_text, const std::string& format,
                   const std::string& output_path) {
  const std::vector<int> ns = parse_int_list(n_text);
  std::ofstream file;
  std::ostream& out = open_output(file, output_path);
  json rows = json::array();
  for (const int n : ns) {
    if (n < 1) throw CLI::ValidationError("n must be positive");
    const auto [necessary, sufficient] = dqc1::dqc1_all_cuts_bounds(n);
    for (int k = 1; 2 * k <= n + 1; ++k) {
      rows.push_back(json{{"n", n},
                          {"k", k},
                          {"alpha_ppt", dqc1::dqc1_alpha_threshold(k)},
                          {"alpha_necessary", necessary},
                          {"alpha_sufficient", sufficient}});
    }
  }
  if (format == "json") {
    out << rows.dump(2) << '\n';
  } else {
    out << "n,k,alpha_ppt,alpha_necessary,alpha_sufficient\n";
    for (const auto& row : rows) {
      out << row["n"].get<int>() << ',' << row["k"].get<int>() << ','
          << dqc1::format_real(row["alpha_ppt"].get<double>()) << ','
          << dqc1::format_real(row["alpha_necessary"].get<double>()) << ','
          << dqc1::format_real(row["alpha_sufficient"].get<double>()) << '\n';
    }
  }
  return 0;
}

struct ScanArgs {
  std::string n_text = "2";
  std::string alpha_text;
  std::string alpha_range;
  std::string cut_text;
  std::string circuit_path;
  dqc1::SweepConfig config;
};

int run_scan_command(ScanArgs& args, const std::string& format) {
  args.config.n_range = parse_int_list(args.n_text);
  if (!args.alpha_text.empty()) {
    args.config.alpha_grid = parse_real_list(args.alpha_text);
  }
  if (!args.alpha_range.empty()) {
    const auto grid = parse_real_range(args.alpha_range);
    args.config.alpha_grid.insert(args.config.alpha_grid.end(), grid.begin(),
                                  grid.end());
  }
  if (args.config.alpha_grid.empty()) args.config.alpha_grid = {0.0};
  if (!args.cut_text.empty()) {
    args.config.cut_sizes = parse_int_list(args.cut_text);
  }
  args.config.format = format == "json" ? dqc1::SweepConfig::Format::kJson
                                        : dqc1::SweepConfig::Format::kCsv;

  std::vector<dqc1::GateOp> circuit;
  if (!args.circuit_path.empty()) {
    circuit = dqc1::parse_circuit_file(args.circuit_path);
  }
  const auto records = dqc1::run_scan(args.config, circuit);

  std::ofstream file;
  std::ostream& out = open_output(file, args.config.output_path);
  if (args.config.format == dqc1::SweepConfig::Format::kJson) {
    dqc1::write_json(out, records);
  } else {
    dqc1::write_csv(out, records);
  }
  return 0;
}

int run_trace(const std::string& circuit_path, int n, double alpha,
              long shots, std::uint64_t seed, const std::string& format,
              const std::string& output_path) {
  const auto ops = dqc1::parse_circuit_file(circuit_path);
  if (n <= 0) n = std::max(1, dqc1::circuit_qubit_count(ops));
  const dqc1::Unitary v = dqc1::circuit_unitary(ops, n);
  const dqc1::Complex exact =
      v.matrix.trace() / static_cast<double>(v.dim());
  const dqc1::TraceEstimate estimate =
      dqc1::normalized_trace_estimate(v, alpha, shots, seed);

  std::ofstream file;
  std::ostream& out = open_output(file, output_path);
  emit_object(json{{"n", n},
                   {"alpha", alpha},
                   {"shots", estimate.shots},
                   {"exact_re", exact.real()},
                   {"exact_im", exact.imag()},
                   {"estimate_re", estimate.estimate.real()},
                   {"estimate_im", estimate.estimate.imag()},
                   {"std_error_re", estimate.std_error_re},
                   {"std_error_im", estimate.std_error_im}},
              format, out);
  return 0;
}

int run_demo(int n, double epsilon, const std::string& cut_text,
             const std::string& unitary_path, const std::string& format,
             const std::string& output_path) {
  const Bipartition bp =
      cut_text.empty() ? dqc1::make_bipartition(n + 1, {0})
                       : dqc1::bipartition_from_string(cut_text, n + 1);
  const dqc1::BoundaryOrbitDemo demo = dqc1::boundary_orbit_demo(n, bp, epsilon);
  if (!unitary_path.empty()) write_matrix_file(unitary_path, demo.u.matrix);

  std::ofstream file;
  std::ostream& out = open_output(file, output_path);
  emit_object(json{{"n", n},
                   {"bipartition", bp.to_string()},
                   {"epsilon", epsilon},
                   {"negativity", demo.negativity},
                   {"distance_to_identity", demo.distance_to_identity}},
              format, out);
  return 0;
}

int run_search(int n, double alpha, const std::string& state_kind,
               const std::string& cut_text, long budget, std::uint64_t seed,
               const std::string& unitary_path, const std::string& format,
               const std::string& output_path) {
  const Bipartition bp =
      cut_text.empty() ? dqc1::make_bipartition(n + 1, {0})
                       : dqc1::bipartition_from_string(cut_text, n + 1);
  dqc1::DensityMatrix state;
  if (state_kind == "tau") {
    state = dqc1::tau_state(n);
  } else if (state_kind == "dqc1") {
    state = dqc1::dqc1_state(n, alpha);
  } else {
    throw CLI::ValidationError("unknown state kind: " + state_kind);
  }
  const dqc1::SearchResult result =
      dqc1::search_entangling_unitary(state, bp, budget, seed);
  if (!unitary_path.empty()) write_matrix_file(unitary_path, result.u.matrix);

  json object{{"n", n},
              {"state", state_kind},
              {"alpha", alpha},
              {"bipartition", bp.to_string()},
              {"budget", budget},
              {"evaluations", result.evaluations},
              {"best_negativity", result.best_negativity}};
  if (state_kind == "dqc1" &&
      alpha >= dqc1::dqc1_alpha_threshold(bp.size_a())) {
    object["note"] = "criterion guarantees PPT at this cut size";
  }
  std::ofstream file;
  std::ostream& out = open_output(file, output_path);
  emit_object(object, format, out);
  return 0;
}

int run_discord_check(int n, double alpha, const std::string& circuit_path,
                      const std::string& cut_text,
                      const std::string& alphas_text,
                      const std::string& format,
                      const std::string& output_path) {
  const Bipartition bp =
      cut_text.empty() ? dqc1::make_bipartition(n + 1, {0})
                       : dqc1::bipartition_from_string(cut_text, n + 1);
  const dqc1::DensityMatrix state = build_state(n, alpha, circuit_path);
  const dqc1::DiscordVerdict verdict = dqc1::is_zero_discord(state, bp);

  json object{{"n", n},
              {"alpha", alpha},
              {"measured_party", bp.to_string()},
              {"zero_discord", verdict.zero_discord},
              {"offdiag_max", verdict.offdiag_max},
              {"tol", verdict.tol}};
  if (!alphas_text.empty()) {
    const std::vector<double> alphas = parse_real_list(alphas_text);
    object["depolarization_invariant"] =
        dqc1::discord_depolarization_check(state, bp, alphas);
  }
  std::ofstream file;
  std::ostream& out = open_output(file, output_path);
  emit_object(object, format, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-clean-qubit entanglement and discord toolkit"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");

  std::string format = "csv";
  const auto add_format = [&format](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"csv", "json", "text"}));
  };

  // thresholds
  auto* thresholds = app.add_subcommand(
      "thresholds", "Analytic PPT-from-spectrum noise thresholds per cut size");
  std::string thresholds_n = "2..6";
  std::string thresholds_out;
  thresholds->add_option("--n", thresholds_n, "Work-register sizes (a..b or list)");
  thresholds->add_option("--output", thresholds_out, "Write to file");
  add_format(thresholds);

  // scan
  auto* scan = app.add_subcommand(
      "scan", "Evaluate every applicable criterion over a parameter grid");
  ScanArgs scan_args;
  scan->add_option("--n", scan_args.n_text, "Work-register sizes (a..b or list)");
  scan->add_option("--alpha", scan_args.alpha_text, "Mixing parameters (list)");
  scan->add_option("--alpha-range", scan_args.alpha_range,
                   "Mixing parameter grid lo:hi:step");
  scan->add_option("--cut-sizes", scan_args.cut_text,
                   "Keep only these party-A sizes");
  scan->add_flag("--full-enumeration", scan_args.config.full_enumeration,
                 "Scan every canonical bipartition (n <= 8)");
  scan->add_option("--circuit", scan_args.circuit_path,
                   "Circuit file applied to the input state");
  scan->add_option("--seed", scan_args.config.seed, "Root seed");
  scan->add_option("--threads", scan_args.config.threads,
                   "Worker threads (0 = hardware)");
  scan->add_option("--run-id", scan_args.config.run_id, "Run label");
  scan->add_option("--output", scan_args.config.output_path, "Write to file");
  add_format(scan);

  // trace
  auto* trace = app.add_subcommand(
      "trace", "Exact and sampled normalized trace of a circuit unitary");
  std::string trace_circuit;
  int trace_n = 0;
  double trace_alpha = 0.0;
  long trace_shots = 100000;
  std::uint64_t trace_seed = 0;
  std::string trace_out;
  trace->add_option("--circuit", trace_circuit, "Circuit file for the unitary")
      ->required();
  trace->add_option("--n", trace_n, "Register size (default: from circuit)");
  trace->add_option("--alpha", trace_alpha, "Clean-qubit mixing parameter");
  trace->add_option("--shots", trace_shots, "Measurement shots per axis");
  trace->add_option("--seed", trace_seed, "Sampling seed");
  trace->add_option("--output", trace_out, "Write to file");
  add_format(trace);

  // demo-lemma1
  auto* demo = app.add_subcommand(
      "demo-lemma1",
      "Near-identity unitary entangling the zero-noise input state");
  int demo_n = 1;
  double demo_epsilon = 0.5;
  std::string demo_cut, demo_unitary, demo_out;
  demo->add_option("--n", demo_n, "Work-register size");
  demo->add_option("--epsilon", demo_epsilon, "Distance budget ||U-I||_1");
  demo->add_option("--bipartition", demo_cut, "Party-A qubits (default 0)");
  demo->add_option("--unitary-out", demo_unitary, "Write U as a matrix file");
  demo->add_option("--output", demo_out, "Write to file");
  add_format(demo);

  // search
  auto* search = app.add_subcommand(
      "search", "Search for an entangling unitary at a fixed cut");
  int search_n = 2;
  double search_alpha = 0.0;
  std::string search_state = "dqc1";
  std::string search_cut, search_unitary, search_out;
  long search_budget = 400;
  std::uint64_t search_seed = 0;
  search->add_option("--n", search_n, "Work-register size");
  search->add_option("--alpha", search_alpha, "Mixing parameter (dqc1 state)");
  search->add_option("--state", search_state, "Input state: dqc1 or tau")
      ->check(CLI::IsMember({"dqc1", "tau"}));
  search->add_option("--bipartition", search_cut, "Party-A qubits (default 0)");
  search->add_option("--budget", search_budget, "Negativity evaluations");
  search->add_option("--seed", search_seed, "Search seed");
  search->add_option("--unitary-out", search_unitary,
                     "Write the best U as a matrix file");
  search->add_option("--output", search_out, "Write to file");
  add_format(search);

  // discord-check
  auto* discord = app.add_subcommand(
      "discord-check", "Zero-discord verdict for a chosen measured party");
  int discord_n = 2;
  double discord_alpha = 0.0;
  std::string discord_circuit, discord_cut, discord_alphas, discord_out;
  discord->add_option("--n", discord_n, "Work-register size");
  discord->add_option("--alpha", discord_alpha, "Mixing parameter");
  discord->add_option("--circuit", discord_circuit,
                      "Circuit file applied to the input state");
  discord->add_option("--bipartition", discord_cut,
                      "Measured-party qubits (default 0)");
  discord->add_option("--alphas", discord_alphas,
                      "Also check verdict constancy across this list");
  discord->add_option("--output", discord_out, "Write to file");
  add_format(discord);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (thresholds->parsed()) {
      return run_thresholds(thresholds_n, format, thresholds_out);
    }
    if (scan->parsed()) {
      return run_scan_command(scan_args, format);
    }
    if (trace->parsed()) {
      return run_trace(trace_circuit, trace_n, trace_alpha, trace_shots,
                       trace_seed, format, trace_out);
    }
    if (demo->parsed()) {
      return run_demo(demo_n, demo_epsilon, demo_cut, demo_unitary, format,
                      demo_out);
    }
    if (search->parsed()) {
      return run_search(search_n, search_alpha, search_state, search_cut,
                        search_budget, search_seed, search_unitary, format,
                        search_out);
    }
    if (discord->parsed()) {
      return run_discord_check(discord_n, discord_alpha, discord_circuit,
                               discord_cut, discord_alphas, format,
                               discord_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const dqc1::validation_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
