#pragma once

#include <string>
#include <vector>

#include "gdl/material.hpp"
#include "table.hpp"

namespace gdl::cli {

/// Malformed input from the command line or the config file.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RodParams {
  std::string variant = "i";
  double lambda = 0.4;
  double beta = 0.5;
  double E = 1.0;
  double L = 1.0;
  double sigma_c = 1.0;
  std::vector<double> stations{0.0, 0.25, 0.5, 0.75, 0.95};  ///< d_m

  MaterialSpec spec() const;
};

/// Defaults are the rigid-block data set (mm, N).
struct BlockParams {
  double L = 2.0;
  double k = 800.0;
  double G_c = 0.25;
  double G_0 = 0.025;
  double l_c = 6.0;
  /// "phase:value", value = alpha (elastic), l_m (nucleation, growth) or c (propagation).
  std::vector<std::string> stations{"elastic:0.002", "nucleation:1", "growth:4", "growth:6", "propagation:1"};

  MaterialSpec spec() const;
};

struct FemParams {
  int elements = 200;
  int steps = 63;
  double u_max = 0.0;  ///< 0: G_c/sigma_c + 0.01 sigma_c L/E
  double mesh_power = 1.5;
};

struct RunConfig {
  RodParams rod;
  BlockParams block;
  FemParams fem;
  int samples = 50;
  std::string out;  ///< empty: stdout
  Format format = Format::Csv;
  bool phase4_quoted = false;
  bool skip_fem = false;

  /// Throws UsageError.
  void validate() const;
};

/// Reads a JSON config over the defaults. Keys: samples, out, format and
/// the objects rod, block, fem with the field names of the flags.
RunConfig load_config(const std::string& path);
void apply_json(RunConfig& config, const std::string& text);

struct Station {
  std::string label;  ///< file-name friendly
  Table table;
};

Table cmd_rod_curve(const RunConfig& config);
std::vector<Station> cmd_rod_profile(const RunConfig& config);
Table cmd_block_curve(const RunConfig& config);
std::vector<Station> cmd_block_profile(const RunConfig& config);
Table cmd_fem_run(const RunConfig& config);

/// Entry point of the gdl executable.
int run(int argc, char** argv);

}  // namespace gdl::cli
