#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace dowker {

enum ExitCode : int { ok = 0, parse_error = 1, invalid_config = 2, guarantee_violated = 3 };

struct RunConfig {
  std::string command;
  std::string input_path;
  std::string input2_path;
  std::string input_kind = "points";
  std::string metric = "euclidean";
  std::optional<double> epsilon;
  double c = 2.0;
  int max_dim = 2;
  std::string mode = "sparse-dowker";
  long start_index = 0;
  std::uint64_t seed = 0;
  std::string output_path;
  std::string diagram_path;
  std::string demo;
  long demo_points = 50;
  double noise = 0.05;
  unsigned threads = 1;
};

/// Runs one command; results go to config.output_path or `out`.
/// Throws sdn::ParseError and sdn::InvalidArgument.
int run(const RunConfig& config, std::ostream& out);

/// Parses argv, runs, and maps failures to exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dowker
