#include "paretolab/log_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "paretolab/closed_form.hpp"
#include "paretolab/error.hpp"

namespace paretolab {

double GridDistribution::x(std::size_t j) const { return std::exp(log_x(j)); }

std::int64_t GridDistribution::index_of(double x) const {
  return std::llround(std::log(x) / step());
}

GridDistribution make_grid(double lambda, const GridSpec& spec, std::size_t cell_cap) {
  if (spec.m < 1) throw Error(ErrorKind::OutOfRange, "m must be >= 1");
  if (!std::isfinite(spec.x_min) || !std::isfinite(spec.x_max)) {
    throw Error(ErrorKind::NonFinite, "grid bounds are not finite");
  }
  if (!(spec.x_min > 0.0) || !(spec.x_min < spec.x_max)) {
    throw Error(ErrorKind::OutOfRange, "grid bounds need 0 < x_min < x_max");
  }
  if (!(lambda > 0.0)) throw Error(ErrorKind::OutOfRange, "lambda must be > 0");
  GridDistribution g;
  g.m = spec.m;
  g.lambda = lambda;
  const double h = g.step();
  const auto first = std::llround(std::log(spec.x_min) / h);
  const auto last = std::llround(std::log(spec.x_max) / h);
  const auto count = last - first + 1;
  if (count < 1) throw Error(ErrorKind::OutOfRange, "grid bounds collapse to no cell");
  if (static_cast<std::size_t>(count) > cell_cap) {
    throw Error(ErrorKind::ResourceLimit,
                "grid needs " + std::to_string(count) + " cells, cap is " + std::to_string(cell_cap));
  }
  g.base_index = first;
  g.values.assign(static_cast<std::size_t>(count), 0.0);
  return g;
}

GridDistribution make_grid(const ModelParams& params, const GridSpec& spec,
                           std::size_t cell_cap) {
  return make_grid(derive_coefficients(params).lambda, spec, cell_cap);
}

double discrete_l1(const GridDistribution& g) {
  double sum = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (g.values[j] != 0.0) sum += std::abs(g.values[j]) * g.x(j);
  }
  return g.step() * sum;
}

int ShiftOperator::reach() const noexcept {
  int r = 0;
  for (const auto& t : terms) r = std::max(r, std::abs(t.shift));
  return r;
}

ShiftOperator make_operator(const ModelParams& params, int m) {
  if (m < 1) throw Error(ErrorKind::OutOfRange, "m must be >= 1");
  const auto c = derive_coefficients(params);
  ShiftOperator op;
  op.lambda = c.lambda;
  op.m = m;
  op.terms = {{m, c.b}, {-m, c.a}};
  return op;
}

ShiftOperator make_operator(const ClassMix& mix, double lambda_ref, int m) {
  if (m < 1) throw Error(ErrorKind::OutOfRange, "m must be >= 1");
  if (!(lambda_ref > 0.0)) throw Error(ErrorKind::OutOfRange, "lambda must be > 0");
  const double h = lambda_ref / m;
  const double k = mix.kappa();
  ShiftOperator op;
  op.lambda = lambda_ref;
  op.m = m;
  for (const auto& e : mix.entries()) {
    const double cells = std::log1p(e.gamma) / h;
    const double rounded = std::round(cells);
    if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * cells) {
      throw Error(ErrorKind::AlignmentMismatch,
                  "gamma = " + std::to_string(e.gamma) +
                      " is not commensurate with the grid step; use the root finder or "
                      "Monte Carlo for this mix");
    }
    const int s = static_cast<int>(rounded);
    op.terms.push_back({s, e.p / (k * (1.0 + e.gamma))});
    op.terms.push_back({-s, e.q * (1.0 + e.gamma) / k});
  }
  return op;
}

namespace {

void check_alignment(const GridDistribution& g, const ShiftOperator& op) {
  if (g.m != op.m || std::abs(g.lambda - op.lambda) > 1e-12 * op.lambda) {
    throw Error(ErrorKind::AlignmentMismatch, "grid lambda/m differ from the operator's");
  }
}

}  // namespace

GridDistribution apply_operator(const GridDistribution& g, const ShiftOperator& op) {
  check_alignment(g, op);
  const std::int64_t reach = op.reach();
  const auto n = static_cast<std::int64_t>(g.size());
  GridDistribution out;
  out.m = g.m;
  out.lambda = g.lambda;
  out.is_perturbation = g.is_perturbation;
  out.base_index = g.base_index - reach;
  out.values.assign(static_cast<std::size_t>(n + 2 * reach), 0.0);
  for (std::int64_t i = 0; i < n + 2 * reach; ++i) {
    double acc = 0.0;
    for (const auto& t : op.terms) {
      const std::int64_t j = i - reach - t.shift;
      if (j >= 0 && j < n) acc += t.weight * g.values[static_cast<std::size_t>(j)];
    }
    out.values[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

GridDistribution apply_operator(const GridDistribution& g, const ModelParams& params) {
  return apply_operator(g, make_operator(params, g.m));
}

GridDistribution pareto_fixed_point(const ModelParams& params, const GridSpec& spec,
                                    std::span<const double> modulation, double scale,
                                    Branch branch) {
  if (modulation.size() != static_cast<std::size_t>(spec.m)) {
    throw Error(ErrorKind::OutOfRange, "modulation needs exactly m entries");
  }
  for (double v : modulation) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::OutOfRange, "modulation entries must be positive");
    }
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::OutOfRange, "scale must be positive");
  }
  const auto report = pareto_exponent(params);
  const double rho = branch == Branch::Decaying ? report.rho0 : report.rho1;
  GridDistribution g = make_grid(report.coeffs.lambda, spec);
  const std::int64_t m = spec.m;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const std::int64_t k = g.base_index + static_cast<std::int64_t>(j);
    const auto phase = static_cast<std::size_t>(((k % m) + m) % m);
    g.values[j] = scale * std::exp(rho * g.log_x(j)) * modulation[phase];
  }
  return g;
}

double residual(const GridDistribution& g, const ShiftOperator& op) {
  check_alignment(g, op);
  const auto reach = static_cast<std::size_t>(op.reach());
  if (g.size() < 2 * reach + 1) {
    throw Error(ErrorKind::EmptyInterior, "support too small for an interior window");
  }
  const auto out = apply_operator(g, op);
  double diff = 0.0, norm = 0.0;
  for (std::size_t j = reach; j + reach < g.size(); ++j) {
    const double x = g.x(j);
    diff += std::abs(out.values[j + reach] - g.values[j]) * x;
    norm += std::abs(g.values[j]) * x;
  }
  if (norm == 0.0) return diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / norm;
}

double residual(const GridDistribution& g, const ModelParams& params) {
  return residual(g, make_operator(params, g.m));
}

namespace {

void check_cap(const GridDistribution& g, const ShiftOperator& op, std::size_t cell_cap) {
  if (g.size() + 2 * static_cast<std::size_t>(op.reach()) > cell_cap) {
    throw Error(ErrorKind::ResourceLimit,
                "iteration support would exceed the cap of " + std::to_string(cell_cap) + " cells");
  }
}

}  // namespace

IterationResult iterate(const GridDistribution& g0, const ShiftOperator& op, int n,
                        std::size_t cell_cap) {
  if (n < 0) throw Error(ErrorKind::OutOfRange, "step count must be >= 0");
  check_alignment(g0, op);
  IterationResult r{g0, {}};
  r.trace.distances.push_back(discrete_l1(g0));
  for (int k = 0; k < n; ++k) {
    check_cap(r.grid, op, cell_cap);
    r.grid = apply_operator(r.grid, op);
    const double prev = r.trace.distances.back();
    const double d = discrete_l1(r.grid);
    r.trace.distances.push_back(d);
    r.trace.ratios.push_back(prev > 0.0 ? d / prev : std::numeric_limits<double>::quiet_NaN());
  }
  r.trace.steps = n;
  return r;
}

IterationResult iterate(const GridDistribution& g0, const ModelParams& params, int n,
                        std::size_t cell_cap) {
  return iterate(g0, make_operator(params, g0.m), n, cell_cap);
}

GridDistribution iterate_with_source(const GridDistribution& source, const ShiftOperator& op,
                                     int n, std::size_t cell_cap) {
  if (n < 0) throw Error(ErrorKind::OutOfRange, "step count must be >= 0");
  check_alignment(source, op);
  GridDistribution g = source;
  for (int k = 0; k < n; ++k) {
    check_cap(g, op, cell_cap);
    g = linear_combination(1.0, apply_operator(g, op), 1.0, source);
  }
  return g;
}

GridDistribution linear_combination(double alpha, const GridDistribution& f, double beta,
                                    const GridDistribution& g) {
  if (f.m != g.m || std::abs(f.lambda - g.lambda) > 1e-12 * f.lambda) {
    throw Error(ErrorKind::AlignmentMismatch, "grids are not aligned to the same lattice");
  }
  const auto f_end = f.base_index + static_cast<std::int64_t>(f.size());
  const auto g_end = g.base_index + static_cast<std::int64_t>(g.size());
  GridDistribution out;
  out.m = f.m;
  out.lambda = f.lambda;
  out.base_index = std::min(f.base_index, g.base_index);
  out.values.assign(static_cast<std::size_t>(std::max(f_end, g_end) - out.base_index), 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) {
    out.values[static_cast<std::size_t>(f.base_index - out.base_index) + j] += alpha * f.values[j];
  }
  for (std::size_t j = 0; j < g.size(); ++j) {
    out.values[static_cast<std::size_t>(g.base_index - out.base_index) + j] += beta * g.values[j];
  }
  out.is_perturbation = f.is_perturbation || g.is_perturbation || alpha < 0.0 || beta < 0.0;
  return out;
}

}  // namespace paretolab
