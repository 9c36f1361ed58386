#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ionqaoa/ansatz.hpp"
#include "ionqaoa/ion_model.hpp"
#include "ionqaoa/sk.hpp"

namespace ionqaoa::opt {

// kLbfgs uses a supplied exact gradient and falls back to central
// differences when the caller has none; kLbfgsFd always differences.
enum class Method { kNelderMead, kLbfgsFd, kLbfgs };
std::string_view to_string(Method m);
Method parse_method(std::string_view s);

struct OptimizerConfig {
  int seeds_per_step = 10;
  int heuristic_repeats = 5;
  int max_depth = 20;
  Method method = Method::kNelderMead;
  double fd_step = 1e-5;
  double simplex_step = 0.1;  // Nelder-Mead initial edge length
  double tol = 1e-8;
  int max_iterations = 2000;  // per seed
  // Spread of the Gaussian restarts around the incumbent in joint steps.
  double joint_perturbation = 0.05;
  std::uint64_t rng_seed = 1;

  // Values used for the original large-scale runs.
  static OptimizerConfig paper();
  void validate() const;
};

using Objective = std::function<double(std::span<const double>)>;
// Returns f(x) and writes the gradient into the second argument.
using Gradient = std::function<double(std::span<const double>, std::span<double>)>;

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

struct MinimizeResult {
  std::vector<double> x;
  double value = 0.0;
  long evaluations = 0;
  int failed_seeds = 0;
  std::vector<std::string> log;
};

// One local descent from `start`.
MinimizeResult minimize_from(const Objective& f, std::span<const double> start,
                             const OptimizerConfig& cfg, const Gradient& grad = {});

/// Best of cfg.seeds_per_step local descents. Seed 0 starts at `start`;
/// the others start uniformly inside `ranges` (one per coordinate) or, when
/// `ranges` is empty, at `start` plus N(0, joint_perturbation) noise. The
/// returned value never exceeds f(start). `stream` selects the RNG stream.
MinimizeResult local_minimize(const Objective& f, std::span<const double> start,
                              std::span<const Range> ranges, const OptimizerConfig& cfg,
                              std::uint64_t stream = 0, const Gradient& grad = {});

struct TrainRecord {
  int depth = 0;
  AnsatzParams best_params;
  double best_energy = 0.0;
  bool solved = false;
  long evaluations = 0;
};

/// Layerwise heuristic: train p = 1, then repeatedly append a layer (older
/// angles frozen), train it, and jointly refine every angle. Stops at the
/// first solved depth or cfg.max_depth. Repeated cfg.heuristic_repeats
/// times; records hold the best energy per depth over all repeats.
std::vector<TrainRecord> layerwise_train(const sk::SKInstance& inst, const AnsatzModel& model,
                                         const OptimizerConfig& cfg, std::uint64_t stream = 0);

std::optional<int> first_solved_depth(const std::vector<TrainRecord>& records);

enum class CouplingConfig {
  kSymmetric,   // A_j = 1
  kAsymmetric,  // random A with A_j != A_{n+1-j}
  kSearch,      // best over `search_sets` random A assignments
  kStandard,    // textbook QAOA with the problem propagator
};
std::string_view to_string(CouplingConfig c);
CouplingConfig parse_coupling_config(std::string_view s);

// Random amplitudes in [-1, 1] with A_j != A_{n+1-j} for at least one j.
std::vector<double> random_asymmetric_amplitudes(int n, std::uint64_t seed);

class InstanceDB;

struct FractionOptions {
  CouplingConfig config = CouplingConfig::kSymmetric;
  int search_sets = 50;
  int threads = 0;  // 0 = hardware concurrency
  InstanceDB* db = nullptr;
};

struct InstanceOutcome {
  std::uint64_t mask = 0;
  std::optional<int> solved_depth;
  bool cache_hit = false;
  std::vector<TrainRecord> records;  // of the best run; empty on a cache hit
};

struct FractionCurve {
  std::vector<double> solved_fraction;  // index p-1, p = 1..max_depth
  std::vector<InstanceOutcome> outcomes;
};

// Trains one instance under the given coupling configuration.
InstanceOutcome train_instance(const sk::SKInstance& inst, CouplingConfig config,
                               const OptimizerConfig& cfg, int search_sets = 50);

FractionCurve fraction_curve(const std::vector<sk::SKInstance>& instances,
                             const OptimizerConfig& cfg, const FractionOptions& options);

}  // namespace ionqaoa::opt
