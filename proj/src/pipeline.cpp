#include "ioopt/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "ioopt/svg.hpp"
#include "ioopt/table_io.hpp"

namespace ioopt {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view key, std::string_view value) {
  auto q = parse_exact(value);
  if (!q) throw ParseError("option '" + std::string(key) + "' expects a number, got '" + std::string(value) + "'", 0);
  return to_double(*q);
}

int parse_count(std::string_view key, std::string_view value) {
  int out = 0;
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || end != value.data() + value.size())
    throw ParseError("option '" + std::string(key) + "' expects an integer, got '" + std::string(value) + "'", 0);
  return out;
}

Rational exact_scalar(std::string_view key, const std::string& text) {
  auto q = parse_exact(text);
  if (!q) throw ParseError("option '" + std::string(key) + "' expects a number, got '" + text + "'", 0);
  return *q;
}

std::vector<Rational> exact_vector(std::string_view key, const std::string& text, std::size_t d) {
  auto v = parse_exact_list(text);
  if (v.size() != d)
    throw DomainError("option '" + std::string(key) + "' has " + std::to_string(v.size()) + " components, expected " +
                      std::to_string(d));
  return v;
}

std::vector<double> float_vector(std::string_view key, const std::string& text, std::size_t d) {
  return to_double(exact_vector(key, text, d));
}

const std::string& required(const std::optional<std::string>& v, const char* key, std::string_view command) {
  if (!v) throw DomainError(std::string(command) + " needs --" + key);
  return *v;
}

Json solver_json(const RunConfig& cfg) {
  const char* pre = cfg.solver.preconditioning == Preconditioning::none               ? "none"
                    : cfg.solver.preconditioning == Preconditioning::quasi_symmetrize ? "quasi_symmetrize"
                                                                                      : "smooth";
  return {{"method", cfg.solver.method == SolverMethod::power ? "power" : "inverse_power"},
          {"preconditioning", pre},
          {"tolerance", cfg.solver.tolerance}};
}

std::string float_table(const StructureMatrix& a) {
  std::string out = "product";
  for (const auto& l : a.labels()) out += "," + l;
  out += "\n";
  for (std::size_t i = 0; i < a.dim(); ++i) {
    out += a.labels()[i];
    for (std::size_t j = 0; j < a.dim(); ++j) out += "," + format_double(a.values()(i, j));
    out += "\n";
  }
  return out;
}

StructureMatrix with_alpha(const StructureMatrix& a, const RunConfig& cfg) {
  if (!cfg.alpha) return a;
  return chen_alpha_matrix(a, exact_scalar("alpha", *cfg.alpha));
}

// ---------------------------------------------------------------------------

CommandResult cmd_inspect(const StructureMatrix& a, const RunConfig&) {
  if (!is_irreducible(a))
    throw StructuralError("matrix is reducible: some product is not reachable from every other product");
  const std::size_t d = a.dim();
  const int per = period(a);
  std::vector<double> ones(d, 1.0);
  auto cw = cw_bounds(a, ones);
  auto qs = quasi_symmetrize(a);

  Json j;
  j["dim"] = d;
  j["labels"] = a.labels();
  j["irreducible"] = true;
  j["period"] = per;
  j["aperiodic"] = per == 1;
  j["min_positivity_exponent"] = per == 1 ? Json(min_positivity_exponent(a)) : Json(nullptr);
  j["positivity_bound"] = (d - 1) * (d - 1) + 1;
  j["amplitude"] = amplitude(a);
  j["cw_bounds_at_ones"] = {{"lower", cw.lower}, {"upper", cw.upper}};
  j["symmetrizable"] = is_symmetrizable(a.values(), qs.mu);
  return {j, {}};
}

CommandResult cmd_eigen(const StructureMatrix& a, const RunConfig& cfg) {
  auto t = eigentriple(a, cfg.solver);
  Json j = to_json(t, a.labels());
  j["solver"] = solver_json(cfg);
  return {j, {}};
}

CommandResult cmd_transform(const StructureMatrix& a, const RunConfig& cfg) {
  auto t = eigentriple(a, cfg.solver);
  auto chain = chen_transform(a, t);
  auto dual = dual_chain(a, t);
  auto pi_p = left_multiply(chain.pi, chain.p);
  double drift = 0.0;
  for (std::size_t k = 0; k < chain.dim(); ++k) drift = std::max(drift, std::abs(pi_p[k] - chain.pi[k]));
  return {{{"chain", to_json(chain, a.labels())},
           {"dual", to_json(dual)},
           {"rho", t.rho},
           {"stationary_drift", drift}},
          {}};
}

CommandResult cmd_stability(const StructureMatrix& a0, const RunConfig& cfg) {
  const auto& initial = required(cfg.initial, "initial", "stability");
  const auto a = with_alpha(a0, cfg);
  const std::size_t d = a.dim();
  auto triple = eigentriple(a, cfg.solver);
  IterateOptions it{cfg.determinant_floor, cfg.space};

  Trajectory traj;
  StabilityReport report;
  Json j;
  if (cfg.space == Space::a_space) {
    if (cfg.mode.is_exact()) {
      auto x0 = exact_vector("initial", initial, d);
      traj = iterate(a.exact(), x0, cfg.horizon, it);
      auto eq = equivalence_check(a, triple, x0, cfg.horizon);
      j["p_space"] = to_json(eq.p_space, a.labels());
      j["equivalent"] = eq.equivalent;
    } else {
      auto x0 = float_vector("initial", initial, d);
      traj = iterate(a.values(), x0, cfg.horizon, it);
    }
    report = collapse_report(traj, {triple.rho, cfg.crisis_threshold});
    j["rho"] = triple.rho;
  } else {
    if (cfg.mode.is_exact()) throw DomainError("the transformed chain is iterated in float mode only (use --mode float)");
    auto chain = chen_transform(a, triple);
    auto x0 = float_vector("initial", initial, d);
    traj = iterate(chain.p, x0, cfg.horizon, it);
    report = collapse_report(traj, {1.0, cfg.crisis_threshold});
    j["rho"] = 1.0;
  }
  Json s = to_json(report, a.labels());
  for (auto& [k, v] : s.items()) j[k] = v;
  j["space"] = to_string(cfg.space);
  j["mode"] = to_string(cfg.mode.kind);
  j["horizon"] = cfg.horizon;
  j["initial"] = initial;
  j["alpha"] = cfg.alpha ? Json(*cfg.alpha) : Json(nullptr);
  return {j,
          {{"trajectory.csv", trajectory_csv(traj, a.labels())},
           {"trajectory.svg", trajectory_svg(traj, report, a.labels())}}};
}

CommandResult cmd_rank(const StructureMatrix& a, const RunConfig& cfg) {
  auto chain = chen_transform(a, eigentriple(a, cfg.solver));
  auto ranking = rank_products(chain, a.labels());
  auto cls = classify(chain, cfg.theta_weak, cfg.theta_pillar);
  return {to_json(ranking), {{"cdf.svg", cdf_svg(cls, a.labels())}}};
}

CommandResult cmd_classify(const StructureMatrix& a, const RunConfig& cfg) {
  auto chain = chen_transform(a, eigentriple(a, cfg.solver));
  auto cls = classify(chain, cfg.theta_weak, cfg.theta_pillar);
  Json j = to_json(cls, a.labels());
  j["pi"] = chain.pi;
  return {j, {{"cdf.svg", cdf_svg(cls, a.labels())}}};
}

CommandResult cmd_forecast(const StructureMatrix& a, const RunConfig& cfg) {
  if (cfg.alpha.has_value() == cfg.delta.has_value()) throw DomainError("forecast needs exactly one of --alpha, --delta");
  const std::size_t d = a.dim();
  auto t = eigentriple(a, cfg.solver);
  auto plan = cfg.alpha ? ConsumptionPlan::from_alpha(to_double(exact_scalar("alpha", *cfg.alpha)), t.rho)
                        : ConsumptionPlan::from_delta(to_double(exact_scalar("delta", *cfg.delta)), t.rho);
  auto state = cfg.state ? float_vector("state", *cfg.state, d) : t.u;
  auto step = consumption_step(a, state, plan.alpha);

  Json j;
  j["plan"] = to_json(plan);
  j["state"] = state;
  j["next_state"] = step.next;
  j["consumption"] = step.consumption;
  j["max_growth_rate"] = max_growth_rate(t.rho);
  if (plan.alpha > 0.0) {
    auto by_rate = available_consumption(state, step.next, plan.delta, t.rho);
    double diff = 0.0;
    for (std::size_t k = 0; k < d; ++k) diff = std::max(diff, std::abs(by_rate[k] - step.consumption[k]));
    j["consumption_from_growth_rate"] = by_rate;
    j["consumption_identity_error"] = diff;
    j["consumption_multiple"] = (1.0 - (1.0 + plan.delta) * t.rho) / plan.delta;
  }
  if (cfg.planned) {
    auto planned = float_vector("planned", *cfg.planned, d);
    j["feasibility"] = to_json(max_feasible_alpha(planned, state, a, t.rho));
  }
  return {j, {}};
}

CommandResult cmd_optimize(const StructureMatrix& a0, const RunConfig& cfg) {
  const auto& target = required(cfg.target, "target", "optimize");
  const auto a = with_alpha(a0, cfg);
  auto t = eigentriple(a, cfg.solver);
  auto u_tilde = float_vector("target", target, a.dim());
  auto result = optimize_structure(a, t, u_tilde);
  auto inv = invariance_check(a, result, t);

  Json j = to_json(result);
  j["invariance"] = to_json(inv);
  j["eigen_residual"] = eigen_residual(result.a_tilde.values(), result.rho, result.u_tilde, result.v_tilde);
  j["alpha"] = cfg.alpha ? Json(*cfg.alpha) : Json(nullptr);
  bool ok = inv.holds;
  if (cfg.initial) {
    auto x0 = float_vector("initial", *cfg.initial, a.dim());
    auto shared = shared_stability_check(a, result, t, x0, cfg.horizon);
    j["shared_stability"] = to_json(shared, a.labels());
  }
  CommandResult r{j, {{"optimized.csv", float_table(result.a_tilde)}}};
  r.ok = ok;
  return r;
}

// --- check-invariants --------------------------------------------------------

struct Checks {
  Json items = Json::object();
  bool all = true;

  void add(const std::string& name, bool pass, double value, double tolerance) {
    items[name] = {{"pass", pass}, {"value", value}, {"tolerance", tolerance}};
    all = all && pass;
  }
  void add(const std::string& name, bool pass) {
    items[name] = {{"pass", pass}};
    all = all && pass;
  }
};

double relative_gap(const Matrix<double>& x, const Matrix<double>& y) {
  double gap = 0.0;
  const double scale = std::max(max_abs(y.data()), 1e-300);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) gap = std::max(gap, std::abs(x(i, j) - y(i, j)));
  return gap / scale;
}

CommandResult cmd_check_invariants(const StructureMatrix& a, const RunConfig& cfg) {
  Checks c;
  const std::size_t d = a.dim();
  if (!is_irreducible(a)) throw StructuralError("matrix is reducible: invariants are defined for irreducible input");
  const int per = period(a);
  c.add("pattern.aperiodic", per == 1);
  if (per != 1) return {{{"checks", c.items}, {"all_pass", false}}, {}, false};

  const int m = min_positivity_exponent(a);
  bool diag = true;
  for (std::size_t i = 0; i < d; ++i) diag = diag && a.positive(i, i);
  const double bound = diag ? std::max<double>(1, d - 1) : (d - 1) * (d - 1) + 1;
  c.add("pattern.positivity_exponent_bound", m <= bound, m, bound);

  auto t = eigentriple(a, cfg.solver);
  std::vector<double> ones(d, 1.0);
  auto cw = cw_bounds(a, ones);
  c.add("eigen.cw_bracket", cw.lower <= t.rho * (1 + 1e-12) && t.rho <= cw.upper * (1 + 1e-12));
  c.add("eigen.residual", t.residual <= 1e-10, t.residual, 1e-10);

  auto chain = chen_transform(a, t);
  c.add("chain.row_sums", stochastic_deviation(chain.p) <= 1e-12, stochastic_deviation(chain.p), 1e-12);
  auto pi_p = left_multiply(chain.pi, chain.p);
  double drift = 0.0;
  for (std::size_t k = 0; k < d; ++k) drift = std::max(drift, std::abs(pi_p[k] - chain.pi[k]));
  c.add("chain.stationary_drift", drift <= 1e-10, drift, 1e-10);
  auto dual = dual_chain(a, t);
  c.add("dual.column_sums", stochastic_deviation(dual.q, true) <= 1e-12, stochastic_deviation(dual.q, true), 1e-12);

  auto back = inverse_chen(chain.p, t.v, false);
  auto target = scaled(a.values(), 1.0 / t.rho);
  const double round_trip = relative_gap(back, target);
  c.add("chain.inverse_round_trip", round_trip <= 1e-10, round_trip, 1e-10);

  if (d > 1) {
    std::vector<double> w = t.v;
    w[0] *= 1.25;
    const double dev = stochastic_deviation(similarity_transform(a.values(), t.rho, w));
    c.add("chain.stochastic_only_for_eigenvector", dev > 1e-6, dev, 1e-6);
  }

  // Conversion identity: the converted A-space run obeys the chain recursion step by step.
  {
    std::vector<double> x0 = t.u;
    x0[0] *= 1.0 + 1e-6;
    const int steps = std::min(cfg.horizon, 30);
    auto at = iterate(a.values(), x0, steps, {cfg.determinant_floor, Space::a_space});
    const double worst = step_residual(convert(at, t, Direction::a_to_p, 1e-9));
    c.add("stability.conversion_identity", worst <= 1e-10, worst, 1e-10);
  }

  {
    auto cls = classify(chain, cfg.theta_weak, cfg.theta_pillar);
    c.add("classification.partition", cls.weak.size() + cls.intermediate.size() + cls.pillar.size() == d);
  }

  std::mt19937 rng(20240601u);
  std::uniform_real_distribution<double> unit(0.5, 2.0);
  {
    std::vector<double> u_tilde(d);
    for (auto& x : u_tilde) x = t.u[&x - u_tilde.data()] * unit(rng);
    auto opt = optimize_structure(a, t, u_tilde);
    auto inv = invariance_check(a, opt, t);
    c.add("optimize.chain_invariance", inv.holds, inv.max_chain_difference, 1e-10);
    const double res = eigen_residual(opt.a_tilde.values(), opt.rho, opt.u_tilde, opt.v_tilde);
    c.add("optimize.target_eigenvectors", res <= 1e-10, res, 1e-10);
  }

  if (t.rho < 1.0) {
    double worst = 0.0;
    const double top = max_growth_rate(t.rho);
    for (int k = 1; k < 20; ++k) {
      const double delta = top * k / 20.0;
      const double alpha = alpha_from_delta(delta, t.rho);
      worst = std::max(worst, std::abs(delta_from_alpha(alpha, t.rho) - delta));
      const double gamma = gamma_from_delta(delta, t.rho);
      worst = std::max(worst, std::abs(gamma - alpha / (1.0 - alpha)));
      worst = std::max(worst, std::abs((1.0 - (1.0 + delta) * t.rho) / delta - gamma));
    }
    c.add("forecast.rate_round_trip", worst <= 1e-12 * std::max(1.0, 1.0 / t.rho), worst, 1e-12);
  }

  Json j{{"checks", c.items}, {"all_pass", c.all}, {"rho", t.rho}};
  CommandResult r{j, {}};
  r.ok = c.all;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------

const std::vector<std::string>& RunConfig::keys() {
  static const std::vector<std::string> k{
      "alpha",   "crisis_threshold", "delta",       "det_floor",   "horizon", "initial",   "max_iterations",
      "mode",    "out",              "planned",     "preconditioning", "shift_margin", "solver", "space",
      "state",   "target",           "theta_pillar", "theta_weak", "tolerance"};
  return k;
}

void RunConfig::set(std::string_view key, std::string_view raw) {
  const std::string_view value = trim(raw);
  const std::string v(value);
  if (key == "mode") {
    if (value == "rational" || value == "exact")
      mode = NumericMode::exact();
    else if (value == "float")
      mode = NumericMode::floating(solver.tolerance);
    else
      throw ParseError("mode must be 'rational' or 'float', got '" + v + "'", 0);
  } else if (key == "tolerance") {
    solver.tolerance = parse_number(key, value);
    if (!mode.is_exact()) mode.tolerance = solver.tolerance;
  } else if (key == "solver") {
    if (value == "power")
      solver.method = SolverMethod::power;
    else if (value == "inverse_power" || value == "inverse")
      solver.method = SolverMethod::inverse_power;
    else
      throw ParseError("solver must be 'power' or 'inverse_power', got '" + v + "'", 0);
  } else if (key == "preconditioning") {
    if (value == "none")
      solver.preconditioning = Preconditioning::none;
    else if (value == "quasi_symmetrize")
      solver.preconditioning = Preconditioning::quasi_symmetrize;
    else if (value == "smooth")
      solver.preconditioning = Preconditioning::smooth_with_guess;
    else
      throw ParseError("preconditioning must be 'none', 'quasi_symmetrize' or 'smooth', got '" + v + "'", 0);
  } else if (key == "max_iterations") {
    solver.max_iterations = parse_count(key, value);
  } else if (key == "shift_margin") {
    solver.shift_margin = parse_number(key, value);
  } else if (key == "horizon") {
    horizon = parse_count(key, value);
  } else if (key == "theta_weak") {
    theta_weak = parse_number(key, value);
  } else if (key == "theta_pillar") {
    theta_pillar = parse_number(key, value);
  } else if (key == "crisis_threshold") {
    crisis_threshold = parse_number(key, value);
  } else if (key == "det_floor") {
    determinant_floor = parse_number(key, value);
  } else if (key == "space") {
    if (value == "A" || value == "a")
      space = Space::a_space;
    else if (value == "P" || value == "p")
      space = Space::p_space;
    else
      throw ParseError("space must be 'A' or 'P', got '" + v + "'", 0);
  } else if (key == "out") {
    output_dir = v;
  } else if (key == "initial") {
    initial = v;
  } else if (key == "alpha") {
    alpha = v;
  } else if (key == "delta") {
    delta = v;
  } else if (key == "planned") {
    planned = v;
  } else if (key == "state") {
    state = v;
  } else if (key == "target") {
    target = v;
  } else {
    throw ParseError("unknown option '" + std::string(key) + "'", 0);
  }
}

void RunConfig::load_text(std::string_view text) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto nl = text.find('\n', start);
    auto line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ParseError("config line is not 'key = value'", line_no);
      try {
        set(trim(line.substr(0, eq)), line.substr(eq + 1));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no);
      }
    }
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
}

void RunConfig::load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  load_text(buf.str());
}

void RunConfig::validate() const {
  solver.validate();
  if (horizon < 1) throw DomainError("horizon must be at least 1");
  if (!(theta_weak > 0.0 && theta_weak < theta_pillar && theta_pillar <= 1.0))
    throw DomainError("thresholds must satisfy 0 < theta_weak < theta_pillar <= 1");
  if (!(crisis_threshold > 0.0)) throw DomainError("crisis threshold must be positive");
  if (!(determinant_floor > 0.0)) throw DomainError("determinant floor must be positive");
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"inspect", "eigen",    "transform", "stability",       "rank",
                                              "classify", "forecast", "optimize",  "check-invariants"};
  return names;
}

CommandResult run_command(std::string_view command, const StructureMatrix& a, const RunConfig& cfg) {
  cfg.validate();
  CommandResult r;
  if (command == "inspect")
    r = cmd_inspect(a, cfg);
  else if (command == "eigen")
    r = cmd_eigen(a, cfg);
  else if (command == "transform")
    r = cmd_transform(a, cfg);
  else if (command == "stability")
    r = cmd_stability(a, cfg);
  else if (command == "rank")
    r = cmd_rank(a, cfg);
  else if (command == "classify")
    r = cmd_classify(a, cfg);
  else if (command == "forecast")
    r = cmd_forecast(a, cfg);
  else if (command == "optimize")
    r = cmd_optimize(a, cfg);
  else if (command == "check-invariants")
    r = cmd_check_invariants(a, cfg);
  else
    throw ParseError("unknown command '" + std::string(command) + "'", 0);
  r.report["command"] = std::string(command);
  return r;
}

}  // namespace ioopt
