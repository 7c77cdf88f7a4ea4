#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "flatpoly/report.hpp"

namespace flatpoly {

// Batch experiment configuration; field names match both the CLI flags and
// the JSON config file keys. Seeds are mandatory: there is no wall-clock
// default anywhere.
struct ExperimentConfig {
  std::string command;  // levy | flat | nikolskii | convex | baseline | report
  std::string manifold = "torus1";
  std::vector<int> n_list{33};
  std::vector<double> p_list{2.0};
  double q = 2.0;
  double epsilon = 0.5;
  long samples = 20000;
  int trials = 8;
  int restarts = 16;
  int iterations = 500;
  std::uint64_t seed = 0;
  bool seed_set = false;

  // convex
  std::string check = "santalo";
  std::string body = "l2";
  int section_dim = 0;  // 0: per-check default
  double c1 = 1.0;      // Urysohn constant in the volume lower bound
  double c2 = 0.5;      // Bourgain-Milman screen constant

  // baseline
  std::string task = "moment";
  int length = 256;   // N
  int attempts = 200;
  int rs_order = 12;  // rudin-shapiro k

  // io
  std::string in_path;
  std::string out_path;
  std::string format = "csv";
};

ExperimentConfig config_from_json_file(const std::string& path);

// Runs the configured experiment and assembles its report. Throws
// std::invalid_argument for bad configurations. exit_hint (when given)
// receives 3 if a Monte Carlo check came back inconclusive, else 0.
Report run_experiment(const ExperimentConfig& cfg, int* exit_hint = nullptr);

// Full driver: parse args (without the program name), run, write the
// report. Exit codes: 0 success, 2 invalid configuration, 3 inconclusive
// Monte Carlo, 1 internal error.
int run_cli(const std::vector<std::string>& args);

}  // namespace flatpoly
