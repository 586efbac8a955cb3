#pragma once

#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ergoquench/app/config.hpp"
#include "ergoquench/channels.hpp"
#include "ergoquench/dynamics.hpp"
#include "ergoquench/ergotropy.hpp"
#include "ergoquench/model.hpp"

namespace ergoquench::app {

/// One Gibbs-state quench: model + channel + beta, propagated on a grid.
struct QuenchRun {
  double beta = 0.0;
  model::ModelSpec model;
  channels::ChannelSpec channel;
  dynamics::Trajectory trajectory;
  std::vector<ergotropy::ErgotropyRecord> series;
};

/// Runs a quench for every beta (in parallel) sharing one Liouvillian. Results
/// come back in the order of `betas`.
std::vector<QuenchRun> run_quenches(const model::ModelSpec& model, const channels::ChannelSpec& channel,
                                    std::span<const double> betas, const dynamics::TimeGrid& grid);

/// Ergotropy of the final state only (no series), for sweeps.
double steady_ergotropy(const model::ModelSpec& model, const channels::ChannelSpec& channel, double beta,
                        const dynamics::TimeGrid& grid);

struct RunReport {
  std::vector<std::filesystem::path> files;
  std::vector<std::string> summary;  // human-readable lines for stdout
};

struct ExperimentInfo {
  std::string name;
  std::string figure;
  std::string description;
  std::function<RunReport(const ExperimentConfig&)> run;
};

const std::vector<ExperimentInfo>& experiment_registry();

/// Looks up `config.experiment`, creates the output directory, and runs it.
/// Throws ConfigError for unknown experiments and InvariantViolation when
/// propagation breaks a state invariant.
RunReport run_experiment(const ExperimentConfig& config);

}  // namespace ergoquench::app
