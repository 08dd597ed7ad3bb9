// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dqc1/circuits.hpp"
#include "dqc1/discord.hpp"
#include "dqc1/spectrum_criteria.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace dqc1 {

enum class Criterion {
  kPpt,
  kNegativity,
  kJohnston,
  kHildebrand,
  kDegenerate,
  kDiscord,
  kWitness,
};

const char* criterion_name(Criterion criterion);

// One evaluated criterion at one sweep point.  margin conventions:
//   ppt         smallest partial-transpose eigenvalue (>= -tol iff verdict).
//   negativity  the negativity itself; verdict = above the PPT tolerance.
//   johnston    spectrum-criterion slack lambda_{d-1}+2sqrt(..)-lambda_1.
//   hildebrand  smallest Lambda+Lambda^T eigenvalue over orderings.
//   degenerate  closed-form slack (l+ + l-) - 2^k (l+ - l-).
//   discord     tol minus the largest off-diagonal block entry.
//   witness     min(tol - |diag term|, |cross term| - tol).
struct CriterionReport {
  std::string run_id;
  int n = 0;
  double alpha = 0.0;
  std::string bipartition;
  Criterion criterion = Criterion::kPpt;
  bool verdict = false;
  double margin = 0.0;
  std::uint64_t seed = 0;
  std::int64_t wall_time_ms = 0;
};

struct SweepConfig {
  std::vector<int> n_range;
  std::vector<double> alpha_grid;
  // Party-A sizes to scan; empty = every size a canonical cut can have.
  std::vector<int> cut_sizes;
  // Scan one leading cut {0..k-1} per size by default; true scans every
  // canonical bipartition (register capped at 9 qubits total).
  bool full_enumeration = false;
  long shots = 0;
  std::uint64_t seed = 0;
  long budget = 0;
  std::string output_path;
  enum class Format { kCsv, kJson } format = Format::kCsv;
  std::string run_id = "run";
  int threads = 0;  // 0 = hardware concurrency
};

// Evaluates every applicable criterion over the (n, alpha, bipartition)
// grid.  The state at each point is the one-clean-qubit input evolved by
// `circuit` (empty = identity) on n+1 qubits.  Records come back sorted
// grid-major then bipartition-minor regardless of worker scheduling, with
// per-task seeds fanned out of config.seed by task ordinal.
std::vector<CriterionReport> run_scan(const SweepConfig& config,
                                      const std::vector<GateOp>& circuit);

void write_csv(std::ostream& out, const std::vector<CriterionReport>& records);
void write_json(std::ostream& out,
                const std::vector<CriterionReport>& records);

// Shortest text that round-trips the value (printf %.17g trimmed).
std::string format_real(double value);

}  // namespace dqc1
