#pragma once

// Monte Carlo replication of estimator bias / MSE / failure rates.
//
// Replication r draws its sample from Rng(seed, r) and every estimator in the
// config is fitted to that same sample. Outcomes land in per-replication
// slots and are reduced in replication order, so results do not depend on
// the thread count.
//
// Config JSON:
//   {"params": {<models schema>}   or the model keys inline at top level,
//    "n": 100, "reps": 2000, "estimators": ["st", "ml"], "seed": 1,
//    "threads": 0}
// Missing "estimators" means every estimator of the family; threads 0 means
// hardware concurrency.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stein/io.hpp"
#include "stein/models.hpp"

namespace stein {

inline constexpr std::size_t kDefaultReps = 2000;

struct SimConfig {
  Params truth;
  std::size_t n = 100;
  std::size_t reps = kDefaultReps;
  std::vector<std::string> estimators;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

/// Lower-case estimator names valid for the family.
std::vector<std::string> estimator_names(Family f);

SimConfig sim_config_from_json(const Json& j);
Json sim_config_to_json(const SimConfig& c);
void validate(const SimConfig& c);

/// STEIN_THREADS when set, otherwise `requested`, otherwise hardware
/// concurrency. Never returns 0.
unsigned resolve_threads(unsigned requested);

struct Metric {
  double value = 0.0;
  double std_error = 0.0;
};

struct EstimatorSummary {
  std::string estimator;
  std::size_t fitted = 0;  // replications without NE
  std::size_t ne = 0;
  double ne_rate = 0.0;
  bool has_kappa = false;
  Metric kappa_bias;
  Metric kappa_mse;
  Metric mu_mse;        // mean ‖μ̂ - μ‖²  (Watson: up to the sign of μ̂)
  Metric mu_distance;   // mean ‖μ̂ - μ‖
  bool has_A = false;
  Metric A_mse;         // mean ‖Â - A‖₂²
  Metric A_distance;    // mean ‖Â - A‖₂
  std::vector<double> kappa_hats;  // per replication; NaN where NE
};

struct SimResult {
  SimConfig config;
  unsigned threads_used = 1;
  std::vector<EstimatorSummary> estimators;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
};

/// Throws on errors other than NotEligible / SingularSystem, naming the
/// replication and estimator.
SimResult run_simulation(const SimConfig& config);

struct RankedRow {
  EstimatorSummary summary;
  bool best_bias = false;
  bool best_mse = false;
};

/// Runs the simulation and flags the lowest |κ bias| and lowest MSE (κ when
/// the family has one, μ otherwise).
std::vector<RankedRow> rank_estimators(const SimResult& r);
std::vector<RankedRow> compare_estimators(const SimConfig& config);

/// Long format: estimator,block,metric,value,std_error,fitted,ne_rate.
/// Wall time is left out so output bytes are reproducible.
void write_result_csv(std::ostream& os, const SimResult& r);
void write_result_table(std::ostream& os, const SimResult& r);
Json result_to_json(const SimResult& r);

}  // namespace stein
