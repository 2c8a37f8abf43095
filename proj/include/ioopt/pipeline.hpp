// Subcommand pipeline shared by the C API and the command-line tool.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ioopt/report.hpp"

namespace ioopt {

struct RunConfig {
  NumericMode mode = NumericMode::floating();
  SolverConfig solver;
  int horizon = kDefaultHorizon;
  double theta_weak = 0.05;
  double theta_pillar = 0.50;
  double crisis_threshold = 0.10;
  double determinant_floor = 1e-14;
  Space space = Space::a_space;
  std::string output_dir;

  // Command inputs, kept as text so exact values survive until the mode is known.
  std::optional<std::string> initial;
  std::optional<std::string> alpha;
  std::optional<std::string> delta;
  std::optional<std::string> planned;
  std::optional<std::string> state;
  std::optional<std::string> target;

  /// Throws ParseError for an unknown key or a malformed value.
  void set(std::string_view key, std::string_view value);
  /// "key = value" lines; '#' starts a comment. Errors carry the line number.
  void load_file(const std::filesystem::path& path);
  void load_text(std::string_view text);
  /// Throws DomainError for out-of-range settings.
  void validate() const;

  static const std::vector<std::string>& keys();
};

struct CommandResult {
  Json report;
  /// (file name, contents) to be written next to the JSON report.
  std::vector<std::pair<std::string, std::string>> artifacts;
  /// False only for check-invariants when some property failed.
  bool ok = true;
};

const std::vector<std::string>& command_names();

/// Throws ParseError for an unknown command; otherwise propagates the
/// library's typed errors.
CommandResult run_command(std::string_view command, const StructureMatrix& a, const RunConfig& cfg);

}  // namespace ioopt
