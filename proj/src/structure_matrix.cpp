#include "ioopt/structure_matrix.hpp"

#include <numeric>
#include <queue>
#include <set>

#include "ioopt/errors.hpp"

namespace ioopt {

NumericMode NumericMode::floating(double tolerance) {
  if (!(tolerance > 0.0)) throw DomainError("float mode needs a positive tolerance");
  return {Kind::binary_float, 53, tolerance};
}

const char* to_string(NumericMode::Kind kind) noexcept {
  return kind == NumericMode::Kind::exact_rational ? "rational" : "float";
}

std::vector<std::string> default_labels(std::size_t d) {
  std::vector<std::string> labels;
  labels.reserve(d);
  for (std::size_t i = 0; i < d; ++i) labels.push_back("p" + std::to_string(i + 1));
  return labels;
}

namespace {

std::vector<std::string> checked_labels(std::vector<std::string> labels, std::size_t d) {
  if (labels.empty()) return default_labels(d);
  if (labels.size() != d)
    throw DomainError("expected " + std::to_string(d) + " labels, got " + std::to_string(labels.size()));
  std::set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw DomainError("duplicate product label '" + l + "'");
  return labels;
}

std::vector<std::vector<std::size_t>> adjacency(const StructureMatrix& a) {
  const std::size_t d = a.dim();
  std::vector<std::vector<std::size_t>> out(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (a.positive(i, j)) out[i].push_back(j);
  return out;
}

std::vector<bool> reachable_from(const std::vector<std::vector<std::size_t>>& adj, std::size_t start) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::size_t> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    auto i = stack.back();
    stack.pop_back();
    for (auto j : adj[i])
      if (!seen[j]) {
        seen[j] = true;
        stack.push_back(j);
      }
  }
  return seen;
}

}  // namespace

StructureMatrix StructureMatrix::from_exact(Matrix<Rational> entries, std::vector<std::string> labels) {
  if (!entries.square() || entries.rows() == 0)
    throw DomainError("structure matrix must be a non-empty square grid");
  for (std::size_t i = 0; i < entries.rows(); ++i)
    for (std::size_t j = 0; j < entries.cols(); ++j)
      if (entries(i, j) < 0)
        throw DomainError("negative entry at (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")");
  auto values = to_double(entries);
  auto checked = checked_labels(std::move(labels), entries.rows());
  return StructureMatrix(std::move(entries), std::move(values), std::move(checked));
}

StructureMatrix StructureMatrix::from_values(const Matrix<double>& entries, std::vector<std::string> labels) {
  for (double x : entries.data())
    if (!std::isfinite(x)) throw DomainError("structure matrix entries must be finite");
  return from_exact(to_rational(entries), std::move(labels));
}

StructureMatrix StructureMatrix::transposed() const {
  return StructureMatrix(exact_.transpose(), values_.transpose(), labels_);
}

StructureMatrix StructureMatrix::with_values(const Matrix<double>& entries) const {
  return from_values(entries, labels_);
}

bool is_irreducible(const StructureMatrix& a) {
  const std::size_t d = a.dim();
  if (d == 1) return a.positive(0, 0);
  auto adj = adjacency(a);
  auto forward = reachable_from(adj, 0);
  if (std::find(forward.begin(), forward.end(), false) != forward.end()) return false;
  std::vector<std::vector<std::size_t>> reverse(d);
  for (std::size_t i = 0; i < d; ++i)
    for (auto j : adj[i]) reverse[j].push_back(i);
  auto backward = reachable_from(reverse, 0);
  return std::find(backward.begin(), backward.end(), false) == backward.end();
}

int period(const StructureMatrix& a) {
  if (!is_irreducible(a)) throw StructuralError("period is only defined for an irreducible matrix");
  const std::size_t d = a.dim();
  auto adj = adjacency(a);
  std::vector<long> level(d, -1);
  std::queue<std::size_t> queue;
  level[0] = 0;
  queue.push(0);
  while (!queue.empty()) {
    auto i = queue.front();
    queue.pop();
    for (auto j : adj[i])
      if (level[j] < 0) {
        level[j] = level[i] + 1;
        queue.push(j);
      }
  }
  long g = 0;
  for (std::size_t i = 0; i < d; ++i)
    for (auto j : adj[i]) g = std::gcd(g, std::abs(level[i] + 1 - level[j]));
  return static_cast<int>(g);
}

int min_positivity_exponent(const StructureMatrix& a) {
  if (!is_irreducible(a)) throw StructuralError("positivity exponent needs an irreducible matrix");
  if (period(a) != 1) throw StructuralError("positivity exponent needs an aperiodic matrix");

  const std::size_t d = a.dim();
  const int wielandt = static_cast<int>((d - 1) * (d - 1) + 1);
  std::vector<char> base(d * d), power(d * d);
  bool diagonal_positive = true;
  for (std::size_t i = 0; i < d; ++i) {
    diagonal_positive = diagonal_positive && a.positive(i, i);
    for (std::size_t j = 0; j < d; ++j) base[i * d + j] = power[i * d + j] = a.positive(i, j);
  }

  auto all_positive = [&] { return std::all_of(power.begin(), power.end(), [](char c) { return c != 0; }); };
  int m = 1;
  while (!all_positive()) {
    if (m >= wielandt) throw std::logic_error("positivity exponent exceeds the Wielandt bound");
    std::vector<char> next(d * d, 0);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t k = 0; k < d; ++k) {
        if (!power[i * d + k]) continue;
        for (std::size_t j = 0; j < d; ++j) next[i * d + j] |= base[k * d + j];
      }
    power = std::move(next);
    ++m;
  }
  if (diagonal_positive && m > std::max<int>(1, static_cast<int>(d) - 1))
    throw std::logic_error("positivity exponent exceeds the d-1 bound for a positive diagonal");
  return m;
}

CwBounds cw_quotients(const Matrix<double>& a, std::span<const double> x, bool right_side) {
  if (x.size() != a.rows()) throw DomainError("vector length does not match matrix dimension");
  for (double xi : x)
    if (!(xi > 0.0) || !std::isfinite(xi)) throw DomainError("Collatz-Wielandt vector must be strictly positive");
  auto y = right_side ? right_multiply(a, x) : left_multiply(x, a);
  CwBounds b;
  b.lower = std::numeric_limits<double>::infinity();
  b.upper = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double q = y[k] / x[k];
    b.lower = std::min(b.lower, q);
    b.upper = std::max(b.upper, q);
  }
  return b;
}

CwBounds cw_bounds(const StructureMatrix& a, std::span<const double> x) {
  auto b = cw_quotients(a.values(), x, false);
  b.reducible_warning = !is_irreducible(a);
  return b;
}

CwBounds cw_bounds_right(const Matrix<double>& a, std::span<const double> x) { return cw_quotients(a, x, true); }

double amplitude(const Matrix<double>& a) {
  if (a.data().empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(a.data().begin(), a.data().end());
  return *hi - *lo;
}

}  // namespace ioopt
