#include "ioopt/stability.hpp"

#include <algorithm>
#include <cmath>

#include "ioopt/errors.hpp"

namespace ioopt {

const char* to_string(Space s) noexcept { return s == Space::a_space ? "A" : "P"; }

int Trajectory::sign(std::size_t n, std::size_t k) const {
  if (!exact_steps.empty()) return sgn(exact_steps[n][k]);
  const double x = steps[n][k];
  return (x > 0.0) - (x < 0.0);
}

namespace {

const char* kSingularMessage =
    "iterated matrix is singular: x_k = x_{k+1} M does not determine the next step";

void check_shapes(std::size_t rows, std::size_t cols, std::size_t x_len, int n_max) {
  if (rows != cols || rows == 0) throw DomainError("iterated matrix must be square");
  if (x_len != rows) throw DomainError("initial vector length does not match matrix dimension");
  if (n_max < 1) throw DomainError("horizon must be at least 1");
}

template <class T>
bool has_negative(const std::vector<T>& x) {
  return std::any_of(x.begin(), x.end(), [](const T& c) { return c < 0; });
}

}  // namespace

Trajectory iterate(const Matrix<double>& m, std::span<const double> x0, int n_max, const IterateOptions& opts) {
  check_shapes(m.rows(), m.cols(), x0.size(), n_max);
  for (double x : x0)
    if (!std::isfinite(x)) throw DomainError("initial vector must be finite");

  double row_norms = 1.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (double x : m.row(i)) s += x * x;
    row_norms *= std::sqrt(s);
  }
  LuFactor<double> lu(m);
  if (lu.singular() || row_norms == 0.0 || std::abs(lu.determinant()) / row_norms <= opts.determinant_floor)
    throw ModelError(kSingularMessage);

  Trajectory t;
  t.space = opts.space;
  t.matrix = m;
  t.mode = NumericMode::floating();
  t.steps.emplace_back(x0.begin(), x0.end());
  if (has_negative(t.steps.back())) {
    t.stopped_on_negative = true;
    return t;
  }
  for (int k = 1; k <= n_max; ++k) {
    auto next = lu.solve_left(t.steps.back());
    for (double c : next)
      if (!std::isfinite(c))
        throw NumericError("iteration overflowed at step " + std::to_string(k), t.steps.back(), k - 1);
    t.steps.push_back(std::move(next));
    if (has_negative(t.steps.back())) {
      t.stopped_on_negative = true;
      break;
    }
  }
  return t;
}

Trajectory iterate(const Matrix<Rational>& m, std::span<const Rational> x0, int n_max, const IterateOptions& opts) {
  check_shapes(m.rows(), m.cols(), x0.size(), n_max);
  LuFactor<Rational> lu(m);
  if (lu.singular()) throw ModelError(kSingularMessage);

  Trajectory t;
  t.space = opts.space;
  t.matrix = to_double(m);
  t.mode = NumericMode::exact();
  t.exact_steps.emplace_back(x0.begin(), x0.end());
  t.steps.push_back(to_double(x0));
  if (has_negative(t.exact_steps.back())) {
    t.stopped_on_negative = true;
    return t;
  }
  for (int k = 1; k <= n_max; ++k) {
    auto next = lu.solve_left(t.exact_steps.back());
    t.steps.push_back(to_double(next));
    t.exact_steps.push_back(std::move(next));
    if (has_negative(t.exact_steps.back())) {
      t.stopped_on_negative = true;
      break;
    }
  }
  return t;
}

namespace {

std::optional<double> nominal_rho(const Trajectory& t, const CollapseOptions& opts) {
  if (opts.rho) return opts.rho;
  if (t.space == Space::p_space) return 1.0;
  try {
    auto a = StructureMatrix::from_values(t.matrix);
    return power_eigenpair(a, Side::left).rho;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

StabilityReport collapse_report(const Trajectory& t, const CollapseOptions& opts) {
  StabilityReport r;
  if (t.steps.empty()) return r;
  const std::size_t d = t.steps.front().size();
  r.steps_run = static_cast<int>(t.steps.size()) - 1;

  for (std::size_t n = 0; n < t.steps.size() && !r.collapse_time; ++n)
    for (std::size_t k = 0; k < d; ++k)
      if (t.sign(n, k) < 0) {
        r.collapse_time = static_cast<int>(n);
        r.collapse_product = k;
        break;
      }

  const auto& last = t.steps.back();
  auto [lo, hi] = std::minmax_element(last.begin(), last.end());
  r.terminal_magnitudes = {*hi, *lo};

  if (r.collapse_time && *r.collapse_time >= 2) {
    if (auto rho = nominal_rho(t, opts)) {
      auto deviates = [&](int n) {
        double worst = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          const double prev = t.steps[n - 1][k];
          if (prev == 0.0) return true;
          worst = std::max(worst, std::abs(t.steps[n][k] / prev * *rho - 1.0));
        }
        return worst > opts.crisis_threshold;
      };
      const int end = *r.collapse_time - 1;
      int start = end + 1;
      while (start - 1 >= 1 && deviates(start - 1)) --start;
      if (start <= end) r.crisis_window = std::make_pair(start, end);
    }
  }
  return r;
}

Trajectory convert(const Trajectory& t, const EigenTriple& triple, Direction direction, double tolerance) {
  const std::size_t d = t.matrix.rows();
  if (triple.v.size() != d || triple.u.size() != d) throw DomainError("eigentriple dimension mismatch");

  Trajectory out;
  out.mode = NumericMode::floating();
  const double rho = triple.rho;

  if (direction == Direction::a_to_p) {
    if (t.space != Space::a_space) throw DomainError("A-to-P conversion needs an A-space trajectory");
    const double r = eigen_residual(t.matrix, rho, triple.u, triple.v);
    if (!(r <= tolerance)) throw DomainError("trajectory matrix and eigentriple are inconsistent");
    out.space = Space::p_space;
    out.matrix = chen_transform(t.matrix, triple, tolerance).p;
    for (std::size_t n = 0; n < t.steps.size(); ++n) {
      const double f = std::pow(rho, static_cast<double>(n));
      std::vector<double> mu(d);
      for (std::size_t k = 0; k < d; ++k) mu[k] = f * t.steps[n][k] * triple.v[k];
      out.steps.push_back(std::move(mu));
    }
  } else {
    if (t.space != Space::p_space) throw DomainError("P-to-A conversion needs a P-space trajectory");
    auto mu = hadamard<double>(triple.u, triple.v);
    auto mu_p = left_multiply(mu, t.matrix);
    double drift = 0.0;
    for (std::size_t k = 0; k < d; ++k) drift = std::max(drift, std::abs(mu_p[k] - mu[k]));
    if (stochastic_deviation(t.matrix) > tolerance || drift > tolerance * max_abs(mu))
      throw DomainError("trajectory chain and eigentriple are inconsistent");
    out.space = Space::a_space;
    std::vector<double> inv_v(d);
    for (std::size_t k = 0; k < d; ++k) inv_v[k] = 1.0 / triple.v[k];
    out.matrix = scaled(diagonal_similarity<double>(t.matrix, inv_v, inv_v), rho);
    for (std::size_t n = 0; n < t.steps.size(); ++n) {
      const double f = std::pow(rho, -static_cast<double>(n));
      std::vector<double> x(d);
      for (std::size_t k = 0; k < d; ++k) x[k] = f * t.steps[n][k] / triple.v[k];
      out.steps.push_back(std::move(x));
    }
  }
  out.stopped_on_negative = t.stopped_on_negative;
  return out;
}

double step_residual(const Trajectory& t) {
  if (t.space != Space::p_space) throw DomainError("step residual is defined for P-space trajectories");
  double worst = 0.0;
  for (std::size_t n = 0; n + 1 < t.steps.size(); ++n) {
    auto back = left_multiply(t.steps[n + 1], t.matrix);
    const double scale = std::max({max_abs(t.steps[n]), max_abs(t.steps[n + 1]), 1e-300});
    for (std::size_t k = 0; k < back.size(); ++k) worst = std::max(worst, std::abs(back[k] - t.steps[n][k]) / scale);
  }
  return worst;
}

EquivalenceResult equivalence_check(const StructureMatrix& a, const EigenTriple& triple,
                                    std::span<const Rational> x0, int n_max) {
  auto chain = chen_transform(a, triple);
  auto a_traj = iterate(a.exact(), x0, n_max);
  auto mu0 = hadamard<double>(to_double(x0), triple.v);
  auto p_traj = iterate(chain.p, mu0, n_max, {.space = Space::p_space});

  EquivalenceResult r;
  r.a_space = collapse_report(a_traj, {.rho = triple.rho});
  r.p_space = collapse_report(p_traj, {.rho = 1.0});
  r.equivalent = r.a_space.collapse_time == r.p_space.collapse_time &&
                 r.a_space.collapse_product == r.p_space.collapse_product;
  return r;
}

}  // namespace ioopt
