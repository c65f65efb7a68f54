#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "matgraph/eval.hpp"

namespace matgraph {

/// Settings shared by every command. Text configs hold one `key = value` per
/// line; `#` starts a comment. Unknown keys and unparsable values are input
/// errors.
struct RunConfig {
  int n = 256;
  int windows = 4;
  std::uint64_t seed = 1;
  Noise noise = Noise::gaussian;
  SynthConfig synth;
  FlipFlopConfig flipflop;  // lambda fields are ignored when auto_lambda is set
  bool auto_lambda = true;
  BicForm bic_form = BicForm::likelihood;
  int grid_points = 10;
  int runs = 20;
  Estimator estimator = Estimator::proposed;
  /// The i.i.d. estimator has no BIC; it falls back to oracle_f1 unless
  /// `select` was set explicitly.
  Selection selection = Selection::bic;
  bool selection_explicit = false;
  double oracle_low = 1e-2;
  double oracle_high = 1.0;
  int roc_points = 24;
  int threads = 1;

  void set(const std::string& key, const std::string& value);
  void validate() const;
  [[nodiscard]] Scenario scenario() const;
  /// Every key with its current value, in a fixed order.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> entries() const;

  [[nodiscard]] static const std::vector<std::string>& keys();
};

/// Applies every line of a config text to `config`.
void apply_config_text(RunConfig& config, std::istream& in);

/// Runs one command line (args excludes the program name). Returns the exit
/// code: 0 ok, 1 compute failure, 2 bad input.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matgraph
