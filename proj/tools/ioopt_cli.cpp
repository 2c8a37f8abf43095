// ioopt command-line tool: a thin shell over the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ioopt/ioopt.h"

namespace {

struct Flag {
  const char* key;
  const char* help;
};

// Options every subcommand understands.
constexpr Flag kCommon[] = {
    {"mode", "numeric mode: rational or float"},
    {"tolerance", "eigen solver tolerance"},
    {"solver", "power or inverse_power"},
    {"preconditioning", "none, quasi_symmetrize or smooth"},
    {"max_iterations", "eigen solver iteration budget"},
    {"shift_margin", "inverse power shift margin"},
};

const std::map<std::string, std::vector<Flag>> kCommandFlags = {
    {"inspect", {}},
    {"eigen", {}},
    {"transform", {}},
    {"stability",
     {{"initial", "initial state, comma separated"},
      {"space", "A (structure matrix) or P (transformed chain)"},
      {"alpha", "consumption parameter applied before iterating"},
      {"horizon", "maximum number of steps"},
      {"crisis_threshold", "growth deviation that marks a crisis step"},
      {"det_floor", "float-mode singularity floor"}}},
    {"rank", {{"theta_weak", "weak class threshold"}, {"theta_pillar", "pillar class threshold"}}},
    {"classify", {{"theta_weak", "weak class threshold"}, {"theta_pillar", "pillar class threshold"}}},
    {"forecast",
     {{"alpha", "consumption parameter"},
      {"delta", "growth rate"},
      {"state", "current output x_n, comma separated (default: equilibrium)"},
      {"planned", "planned consumption, comma separated"}}},
    {"optimize",
     {{"target", "target equilibrium, comma separated"},
      {"alpha", "consumption parameter"},
      {"initial", "initial state for the shared stability check"},
      {"horizon", "maximum number of steps"}}},
    {"check-invariants", {{"horizon", "maximum number of steps"}}},
};

const char* kDescriptions[][2] = {
    {"inspect", "pattern properties: irreducibility, period, positivity exponent, bounds"},
    {"eigen", "maximal eigenvalue with left and right eigenvectors"},
    {"transform", "row-stochastic chain, stationary distribution and dual chain"},
    {"stability", "iterate from an initial state and report collapse"},
    {"rank", "rank products by the chain equilibrium"},
    {"classify", "weak / intermediate / pillar classification"},
    {"forecast", "consumption / growth-rate conversions and feasibility"},
    {"optimize", "structure matrix with a prescribed equilibrium"},
    {"check-invariants", "run the property sweep on the table"},
};

std::string flag_name(const char* key) {
  std::string name = "--";
  for (const char* c = key; *c; ++c) name += *c == '_' ? '-' : *c;
  return name;
}

int report_error(int status) {
  std::fprintf(stderr, "ioopt: %s\n", ioopt_last_error());
  return status;
}

struct Invocation {
  std::string table;
  std::string config;
  std::string out;
  std::map<std::string, std::string> values;
};

int run(const std::string& command, const Invocation& inv) {
  std::unique_ptr<ioopt_options, decltype(&ioopt_options_free)> opts(nullptr, ioopt_options_free);
  ioopt_options* raw_opts = nullptr;
  if (int s = ioopt_options_create(&raw_opts)) return report_error(s);
  opts.reset(raw_opts);
  if (!inv.config.empty())
    if (int s = ioopt_options_load_file(opts.get(), inv.config.c_str())) return report_error(s);
  for (const auto& [key, value] : inv.values)
    if (int s = ioopt_options_set(opts.get(), key.c_str(), value.c_str())) return report_error(s);

  ioopt_matrix* raw_m = nullptr;
  if (int s = ioopt_matrix_load_csv(inv.table.c_str(), &raw_m)) return report_error(s);
  std::unique_ptr<ioopt_matrix, decltype(&ioopt_matrix_free)> matrix(raw_m, ioopt_matrix_free);

  ioopt_result* raw_r = nullptr;
  const int status = ioopt_run(command.c_str(), matrix.get(), opts.get(), &raw_r);
  std::unique_ptr<ioopt_result, decltype(&ioopt_result_free)> result(raw_r, ioopt_result_free);
  if (!result) return report_error(status);
  const std::string failure = status ? ioopt_last_error() : "";

  std::fputs(ioopt_result_json(result.get()), stdout);
  std::fflush(stdout);

  std::string dir = inv.out;
  if (dir.empty())
    if (const char* configured = ioopt_options_output_dir(opts.get())) dir = configured;
  if (dir.empty())
    if (const char* env = std::getenv("IOOPT_OUTPUT_DIR")) dir = env;
  if (!dir.empty())
    if (int s = ioopt_result_write(result.get(), dir.c_str())) return report_error(s);

  if (status) std::fprintf(stderr, "ioopt: %s\n", failure.c_str());
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Input-output structure analysis: eigen data, stochastic transform, collapse, forecasting"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ioopt_version());

  std::map<std::string, Invocation> invocations;
  std::map<std::string, std::map<std::string, std::optional<std::string>>> raw;
  for (const auto& [name, description] : kDescriptions) {
    auto* sub = app.add_subcommand(name, description);
    auto& inv = invocations[name];
    auto& values = raw[name];
    sub->add_option("table", inv.table, "structure table (CSV)")->required();
    sub->add_option("--config", inv.config, "key = value file; flags override it");
    sub->add_option("--out", inv.out, "directory for the JSON report and artifacts (else $IOOPT_OUTPUT_DIR)");
    auto add = [&](const Flag& f) { sub->add_option(flag_name(f.key), values[f.key], f.help); };
    for (const auto& f : kCommon) add(f);
    for (const auto& f : kCommandFlags.at(name)) add(f);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return IOOPT_ERR_USAGE;
  }

  for (auto* sub : app.get_subcommands()) {
    const std::string name = sub->get_name();
    auto& inv = invocations[name];
    for (const auto& [key, value] : raw[name])
      if (value) inv.values[key] = *value;
    return run(name, inv);
  }
  return IOOPT_ERR_USAGE;
}
