#pragma once

#include <string>
#include <vector>

#include <cosparse/solvers.hpp>

#include "cosparse_cli/config.hpp"

namespace cosparse::cli {

/// CSV table with a single '#'-prefixed header line.
struct Table {
  std::string file;
  std::string header;
  std::vector<std::string> rows;

  std::string render() const;
};

/// One audited solve inside an experiment.
struct SolveRecord {
  int trial = 0;
  double sigma_rel = 0.0;
  /// ||D^* f||_1 of the true signal.
  double reference_l1 = 0.0;
  double rmse = 0.0;
  RecoveryReport report;
};

struct ExperimentResult {
  /// The first table is the primary output.
  std::vector<Table> tables;
  std::vector<SolveRecord> solves;
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Write every table into `dir` (created when missing).
void write_tables(const ExperimentResult& result, const std::string& dir);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y ~ slope * x + intercept.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace cosparse::cli
