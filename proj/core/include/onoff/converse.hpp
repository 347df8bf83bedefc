#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "onoff/markov.hpp"
#include "onoff/rational.hpp"
#include "onoff/scheme.hpp"

namespace onoff {

// Ingredients of the one-step converse at a given gap. Context priors use a
// uniform law on X_{F^-(t)}; the bound does not depend on that choice as
// long as every context has positive probability.
struct ConverseInstance {
  std::size_t gap = 0;
  std::array<Rational, 4> context_prior;                    // p(u), indexed by index(UContext)
  std::array<std::optional<BridgeDistribution>, 4> bridge;  // empty for zero-probability contexts
};

ConverseInstance converse_instance(const TransitionMatrix& m, std::size_t gap);

// p(u, x, q) indexed [index(u)][index(x)][index(q)].
using ContextJoint = std::array<std::array<QueryProbs, 2>, 4>;

// Joint law parameterized by z1 = P(Q={A} | u), z2 = P(Q={B} | u), identical
// for every u. Throws Error(kInfeasible) if any cell would be negative.
ContextJoint feasible_table(const TransitionMatrix& m, std::size_t gap, const Rational& z1,
                            const Rational& z2);
ContextJoint feasible_table(const ConverseInstance& inst, const Rational& z1, const Rational& z2);

struct LpSolution {
  Rational z1;
  Rational z2;
  Rational optimum;
};

// Minimizes E|Q| = 2 - z1 - z2 over the feasibility box. The objective is
// decreasing in both coordinates, so the optimum sits at the upper corner.
LpSolution lp_minimize(const TransitionMatrix& m, std::size_t gap);
LpSolution lp_minimize(const ConverseInstance& inst);

enum class GridMode {
  // grid_n equispaced points on [0,1] per axis, plus every bridge-table
  // entry of that axis's column, so the box corners are grid points.
  kCornerPinned,
  // Only cell midpoints (k + 1/2) / grid_n; never touches the box corner.
  kInterior,
};

// Exhaustive search of 2 - z1 - z2 over a grid, keeping points that
// feasible_table accepts. Independent of lp_minimize: it never computes the
// column minima, only tests cell non-negativity.
double brute_force_min(const TransitionMatrix& m, std::size_t gap, std::size_t grid_n,
                       GridMode mode = GridMode::kCornerPinned);

}  // namespace onoff
