// SPDX-License-Identifier: Apache-2.0
#include "dqc1/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <system_error>
#include <thread>
#include <utility>

#include <json.hpp>

#include "dqc1/seeding.hpp"

namespace dqc1 {

const char* criterion_name(Criterion criterion) {
  switch (criterion) {
    case Criterion::kPpt: return "ppt";
    case Criterion::kNegativity: return "negativity";
    case Criterion::kJohnston: return "johnston";
    case Criterion::kHildebrand: return "hildebrand";
    case Criterion::kDegenerate: return "degenerate";
    case Criterion::kDiscord: return "discord";
    case Criterion::kWitness: return "witness";
  }
  return "?";
}

std::string format_real(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (result.ec != std::errc{}) {
    throw std::runtime_error("number formatting failed");
  }
  return std::string(buffer, result.ptr);
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t elapsed_ms(Clock::time_point since) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               since)
      .count();
}

// State, spectrum, and bipartition list shared by every task of one grid
// point; built once by whichever worker arrives first.
struct GridPoint {
  int n = 0;
  double alpha = 0.0;
  std::vector<Bipartition> cuts;
  std::once_flag built;
  DensityMatrix state;
  SortedSpectrum spectrum;
};

std::vector<Bipartition> cuts_for(int n, const SweepConfig& config) {
  const int total = n + 1;
  std::vector<Bipartition> cuts;
  if (config.full_enumeration) {
    if (n > 8) {
      throw std::invalid_argument("full enumeration limited to n <= 8");
    }
    cuts = enumerate_bipartitions(total);
  } else {
    for (int k = 1; 2 * k <= total; ++k) {
      std::vector<int> leading(static_cast<std::size_t>(k));
      std::iota(leading.begin(), leading.end(), 0);
      cuts.push_back(make_bipartition(total, leading));
    }
  }
  if (!config.cut_sizes.empty()) {
    std::vector<Bipartition> kept;
    for (const Bipartition& bp : cuts) {
      for (const int k : config.cut_sizes) {
        if (bp.size_a() == k) {
          kept.push_back(bp);
          break;
        }
      }
    }
    cuts.swap(kept);
  }
  return cuts;
}

void check_config(const SweepConfig& config) {
  if (config.n_range.empty() || config.alpha_grid.empty()) {
    throw std::invalid_argument("sweep grid is empty");
  }
  for (const int n : config.n_range) {
    if (n < 1) throw std::invalid_argument("work register must be positive");
  }
  for (const double alpha : config.alpha_grid) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
      throw std::invalid_argument("invalid mixing parameter");
    }
  }
  for (const int k : config.cut_sizes) {
    if (k < 1) throw std::invalid_argument("cut size must be positive");
  }
  if (config.threads < 0) {
    throw std::invalid_argument("thread count must be nonnegative");
  }
}

// Every criterion that applies to one (state, cut) pair, in enum order.
void evaluate_cut(const GridPoint& grid, const Bipartition& bp,
                  const OrderingSet* orderings, const SweepConfig& config,
                  std::uint64_t task_seed,
                  std::vector<CriterionReport>& out) {
  const int k = bp.size_a();
  const std::size_t dim = grid.state.dim();
  const double tol = ppt_tolerance(dim);

  CriterionReport base;
  base.run_id = config.run_id;
  base.n = grid.n;
  base.alpha = grid.alpha;
  base.bipartition = bp.to_string();
  base.seed = task_seed;

  const auto emit = [&](Criterion criterion, bool verdict, double margin,
                        Clock::time_point since) {
    CriterionReport record = base;
    record.criterion = criterion;
    record.verdict = verdict;
    record.margin = margin;
    record.wall_time_ms = elapsed_ms(since);
    out.push_back(std::move(record));
  };

  auto start = Clock::now();
  const PptVerdict ppt = is_ppt(grid.state, bp);
  emit(Criterion::kPpt, ppt.ppt, ppt.min_eigenvalue, start);

  start = Clock::now();
  const double nu = negativity(grid.state, bp);
  emit(Criterion::kNegativity, nu > tol, nu, start);

  if (k == 1) {
    start = Clock::now();
    const CriterionVerdict johnston = johnston_sfs(grid.spectrum);
    emit(Criterion::kJohnston, johnston.ok, johnston.margin, start);
  }

  if (orderings != nullptr) {
    start = Clock::now();
    const CriterionVerdict hildebrand = hildebrand_ppt_from_spectrum(
        grid.spectrum, k, grid.n + 1, *orderings);
    emit(Criterion::kHildebrand, hildebrand.ok, hildebrand.margin, start);
  }

  if (in_degenerate_class(grid.spectrum, k)) {
    start = Clock::now();
    const CriterionVerdict degenerate =
        degenerate_ppt_condition(degenerate_pair_from(grid.spectrum), k);
    emit(Criterion::kDegenerate, degenerate.ok, degenerate.margin, start);
  }

  start = Clock::now();
  const DiscordVerdict discord = is_zero_discord(grid.state, bp);
  emit(Criterion::kDiscord, discord.zero_discord,
       discord.tol - discord.offdiag_max, start);

  start = Clock::now();
  Vector phi = Vector::Zero(static_cast<Eigen::Index>(dim));
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(dim));
  phi(static_cast<Eigen::Index>(dim) - 1) = 1.0;
  psi(0) = 1.0;
  const bool fired = pt_witness(grid.state, bp, phi, psi);
  const Matrix pt = partial_transpose(grid.state, bp);
  const double diag = std::abs((phi.adjoint() * pt * phi).value());
  const double cross = std::abs((psi.adjoint() * pt * phi).value());
  emit(Criterion::kWitness, fired, std::min(tol - diag, cross - tol), start);
}

}  // namespace

std::vector<CriterionReport> run_scan(const SweepConfig& config,
                                      const std::vector<GateOp>& circuit) {
  check_config(config);

  std::vector<std::unique_ptr<GridPoint>> grid;
  for (const int n : config.n_range) {
    std::vector<Bipartition> cuts = cuts_for(n, config);
    for (const double alpha : config.alpha_grid) {
      auto point = std::make_unique<GridPoint>();
      point->n = n;
      point->alpha = alpha;
      point->cuts = cuts;
      grid.push_back(std::move(point));
    }
  }

  // Ordering sets are pure functions of the cut size; build the ones the
  // sweep needs up front instead of once per task.  A size is skipped when
  // the register is too small for the pair table.
  std::map<int, OrderingSet> ordering_sets;
  for (const auto& point : grid) {
    const Eigen::Index dim = Eigen::Index{1} << (point->n + 1);
    for (const Bipartition& bp : point->cuts) {
      const int k = bp.size_a();
      const Eigen::Index p = Eigen::Index{1} << k;
      if (k > 4 || p * (p + 1) / 2 > dim) continue;
      if (ordering_sets.find(k) == ordering_sets.end()) {
        ordering_sets.emplace(k, default_realizable_orderings(k));
      }
    }
  }

  // Task list in output order: grid-major, bipartition-minor.
  struct Task {
    GridPoint* point;
    const Bipartition* bp;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (const auto& point : grid) {
    for (const Bipartition& bp : point->cuts) {
      tasks.push_back({point.get(), &bp,
                       derive_seed(config.seed,
                                   static_cast<std::uint64_t>(tasks.size()))});
    }
  }

  std::vector<std::vector<CriterionReport>> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  const auto worker = [&] {
    while (true) {
      if (stop.load()) return;
      const std::size_t index = next.fetch_add(1);
      if (index >= tasks.size()) return;
      Task& task = tasks[index];
      try {
        std::call_once(task.point->built, [&] {
          const int total = task.point->n + 1;
          DensityMatrix state = dqc1_state(task.point->n, task.point->alpha);
          if (!circuit.empty()) {
            state = evolve(circuit_unitary(circuit, total), state);
          }
          task.point->spectrum = state_spectrum(state);
          task.point->state = std::move(state);
        });
        const int k = task.bp->size_a();
        const auto found = ordering_sets.find(k);
        const OrderingSet* orderings =
            found == ordering_sets.end() ? nullptr : &found->second;
        const Eigen::Index p = Eigen::Index{1} << k;
        if (orderings != nullptr &&
            p * (p + 1) / 2 > static_cast<Eigen::Index>(
                                  task.point->state.dim())) {
          orderings = nullptr;
        }
        evaluate_cut(*task.point, *task.bp, orderings, config, task.seed,
                     results[index]);
      } catch (...) {
        stop.store(true);
        const std::lock_guard<std::mutex> hold(failure_mutex);
        if (failure == nullptr) failure = std::current_exception();
        return;
      }
    }
  };

  unsigned thread_count = config.threads > 0
                              ? static_cast<unsigned>(config.threads)
                              : std::thread::hardware_concurrency();
  if (thread_count == 0) thread_count = 1;
  thread_count = static_cast<unsigned>(
      std::min<std::size_t>(thread_count, std::max<std::size_t>(tasks.size(), 1)));

  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure != nullptr) std::rethrow_exception(failure);

  std::vector<CriterionReport> records;
  for (std::vector<CriterionReport>& chunk : results) {
    for (CriterionReport& record : chunk) {
      records.push_back(std::move(record));
    }
  }
  return records;
}

namespace {

std::string csv_quote(const std::string& field) {
  std::string out = "\"";
  for (const char letter : field) {
    if (letter == '"') out += '"';
    out += letter;
  }
  out += '"';
  return out;
}

}  // namespace

void write_csv(std::ostream& out,
               const std::vector<CriterionReport>& records) {
  out << "run_id,n,alpha,bipartition,criterion,verdict,margin,seed,"
         "wall_time_ms\n";
  for (const CriterionReport& record : records) {
    out << csv_quote(record.run_id) << ',' << record.n << ','
        << format_real(record.alpha) << ',' << csv_quote(record.bipartition)
        << ',' << criterion_name(record.criterion) << ','
        << (record.verdict ? "true" : "false") << ','
        << format_real(record.margin) << ',' << record.seed << ','
        << record.wall_time_ms << '\n';
  }
}

void write_json(std::ostream& out,
                const std::vector<CriterionReport>& records) {
  nlohmann::ordered_json array = nlohmann::ordered_json::array();
  for (const CriterionReport& record : records) {
    nlohmann::ordered_json item;
    item["run_id"] = record.run_id;
    item["n"] = record.n;
    item["alpha"] = record.alpha;
    item["bipartition"] = record.bipartition;
    item["criterion"] = criterion_name(record.criterion);
    item["verdict"] = record.verdict;
    item["margin"] = record.margin;
    item["seed"] = record.seed;
    item["wall_time_ms"] = record.wall_time_ms;
    array.push_back(std::move(item));
  }
  out << array.dump(2) << '\n';
}

}  // namespace dqc1
