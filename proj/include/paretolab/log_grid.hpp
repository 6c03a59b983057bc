#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "paretolab/dirichlet.hpp"
#include "paretolab/model.hpp"

namespace paretolab {

// Density samples on the logarithmic lattice log x = k h, h = lambda / m.
// Cell j of `values` sits at global index k = base_index + j. Aligning the
// lattice to lambda turns the operator's two rescalings x -> x (1+gamma)^{+-1}
// into integer shifts of m cells, so no interpolation is ever needed.
struct GridDistribution {
  std::int64_t base_index = 0;
  int m = 1;
  double lambda = 0.0;
  std::vector<double> values;
  // Perturbation grids may carry signed values; density grids are >= 0.
  bool is_perturbation = false;

  std::size_t size() const noexcept { return values.size(); }
  double step() const noexcept { return lambda / m; }
  double log_x_at(std::int64_t k) const noexcept {
    return static_cast<double>(k) * lambda / static_cast<double>(m);
  }
  double log_x(std::size_t j) const noexcept {
    return log_x_at(base_index + static_cast<std::int64_t>(j));
  }
  double x(std::size_t j) const;
  // Global index of the cell nearest to x.
  std::int64_t index_of(double x) const;
};

struct GridSpec {
  int m = 8;
  double x_min = 1.0;
  double x_max = 1e6;
};

inline constexpr std::size_t kDefaultCellCap = 1'000'000;

// Zero grid whose cells cover [x_min, x_max]; the lattice origin is log x = 0.
GridDistribution make_grid(double lambda, const GridSpec& spec,
                           std::size_t cell_cap = kDefaultCellCap);
GridDistribution make_grid(const ModelParams& params, const GridSpec& spec,
                           std::size_t cell_cap = kDefaultCellCap);

// h * sum_j |f_j| x_j, the midpoint rule for the integral of |f| in log x.
double discrete_l1(const GridDistribution& g);

// out_k = sum_t weight_t * f_{k - shift_t}. A positive shift moves density
// upward in wealth.
struct ShiftOperator {
  struct Term {
    int shift;
    double weight;
  };
  double lambda = 0.0;
  int m = 1;
  std::vector<Term> terms;

  int reach() const noexcept;
};

// One-class W_kappa: weight p/(kappa(1+g)) on shift +m, (1-p)(1+g)/kappa on -m.
ShiftOperator make_operator(const ModelParams& params, int m);

// Multi-class W_kappa on the lattice h = lambda_ref / m. Every log(1+g_i)/h
// must be an integer (within 1e-9), otherwise Error{AlignmentMismatch}.
ShiftOperator make_operator(const ClassMix& mix, double lambda_ref, int m);

// Support grows by op.reach() cells on each side; reads outside the support
// are zero. Throws Error{AlignmentMismatch} when lambda or m differ.
GridDistribution apply_operator(const GridDistribution& g, const ShiftOperator& op);
GridDistribution apply_operator(const GridDistribution& g, const ModelParams& params);

enum class Branch { Decaying, Growing };

// f_k = scale * x_k^rho * modulation[k mod m], with rho = rho0 (Decaying, the
// sound solution) or rho1 (Growing). Exact fixed point on interior cells.
GridDistribution pareto_fixed_point(const ModelParams& params, const GridSpec& spec,
                                    std::span<const double> modulation, double scale = 1.0,
                                    Branch branch = Branch::Decaying);

// L1 norm of W(g) - g over the interior window (support shrunk by the
// operator reach on both sides), relative to the L1 norm of g there.
// Throws Error{EmptyInterior} when fewer than 2*reach+1 cells exist.
double residual(const GridDistribution& g, const ShiftOperator& op);
double residual(const GridDistribution& g, const ModelParams& params);

struct ConvergenceTrace {
  std::vector<double> distances;  // d_0 .. d_n
  std::vector<double> ratios;     // d_{k+1} / d_k, NaN where d_k = 0
  int steps = 0;
  double epsilon = 0.0;  // bound on mass lost to the finite grid boundary
};

struct IterationResult {
  GridDistribution grid;
  ConvergenceTrace trace;
};

// Applies the operator n times, tracking d_k = discrete_l1(g_k).
// Throws Error{ResourceLimit} when the support would exceed cell_cap.
IterationResult iterate(const GridDistribution& g0, const ShiftOperator& op, int n,
                        std::size_t cell_cap = kDefaultCellCap);
IterationResult iterate(const GridDistribution& g0, const ModelParams& params, int n,
                        std::size_t cell_cap = kDefaultCellCap);

// g_{k+1} = W(g_k) + source, g_0 = source: the grid analogue of re-injecting
// removed mass at a fixed wealth.
GridDistribution iterate_with_source(const GridDistribution& source, const ShiftOperator& op,
                                     int n, std::size_t cell_cap = kDefaultCellCap);

// alpha * f + beta * g over the union of both supports.
GridDistribution linear_combination(double alpha, const GridDistribution& f, double beta,
                                    const GridDistribution& g);

}  // namespace paretolab
