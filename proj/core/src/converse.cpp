#include "onoff/converse.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "onoff/error.hpp"

namespace onoff {
namespace {

std::vector<Rational> axis_points(const ConverseInstance& inst, Source column, std::size_t grid_n,
                                  GridMode mode) {
  std::vector<Rational> points;
  const long n = static_cast<long>(grid_n);
  if (mode == GridMode::kInterior) {
    for (long k = 0; k < n; ++k) points.emplace_back(2 * k + 1, 2 * n);
    return points;
  }
  for (long k = 0; k < n; ++k) points.emplace_back(k, n - 1);
  for (const auto& b : inst.bridge) {
    if (b) points.push_back((*b)[column]);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

bool feasible(const ConverseInstance& inst, const Rational& z1, const Rational& z2) {
  if (z1.sign() < 0 || z2.sign() < 0) return false;
  for (const auto& b : inst.bridge) {
    if (!b) continue;
    if ((*b)[Source::kA] - z1 < Rational(0) || (*b)[Source::kB] - z2 < Rational(0)) return false;
  }
  return true;
}

}  // namespace

ConverseInstance converse_instance(const TransitionMatrix& m, std::size_t gap) {
  ConverseInstance inst;
  inst.gap = gap;
  const Matrix2 ahead = power(m, gap + 1);
  for (UContext u : kContexts) {
    inst.context_prior[index(u)] = Rational(1, 2) * ahead[index(u.last_on)][index(u.next)];
    if (!inst.context_prior[index(u)].is_zero()) inst.bridge[index(u)] = bridge(m, gap, u);
  }
  return inst;
}

ContextJoint feasible_table(const ConverseInstance& inst, const Rational& z1, const Rational& z2) {
  if (!feasible(inst, z1, z2)) {
    throw Error(ErrorCode::kInfeasible,
                "(z1, z2) = (" + z1.to_string() + ", " + z2.to_string() + ") outside the box");
  }
  ContextJoint joint;
  for (UContext u : kContexts) {
    const Rational& pu = inst.context_prior[index(u)];
    for (Source x : kSources) {
      auto& cell = joint[index(u)][index(x)];
      cell = {Rational(0), Rational(0), Rational(0)};
      if (pu.is_zero()) continue;
      const Rational& z = x == Source::kA ? z1 : z2;
      cell[index(singleton(x))] = z * pu;
      cell[index(QuerySymbol::kAB)] = pu * ((*inst.bridge[index(u)])[x] - z);
    }
  }
  return joint;
}

ContextJoint feasible_table(const TransitionMatrix& m, std::size_t gap, const Rational& z1,
                            const Rational& z2) {
  return feasible_table(converse_instance(m, gap), z1, z2);
}

LpSolution lp_minimize(const ConverseInstance& inst) {
  std::optional<Rational> hi_a;
  std::optional<Rational> hi_b;
  for (const auto& b : inst.bridge) {
    if (!b) continue;
    if (!hi_a || (*b)[Source::kA] < *hi_a) hi_a = (*b)[Source::kA];
    if (!hi_b || (*b)[Source::kB] < *hi_b) hi_b = (*b)[Source::kB];
  }
  return LpSolution{*hi_a, *hi_b, Rational(2) - *hi_a - *hi_b};
}

LpSolution lp_minimize(const TransitionMatrix& m, std::size_t gap) {
  return lp_minimize(converse_instance(m, gap));
}

double brute_force_min(const TransitionMatrix& m, std::size_t gap, std::size_t grid_n,
                       GridMode mode) {
  if (grid_n < 2) {
    throw Error(ErrorCode::kInvalidArgument, "grid_n must be at least 2");
  }
  const ConverseInstance inst = converse_instance(m, gap);
  const auto za = axis_points(inst, Source::kA, grid_n, mode);
  const auto zb = axis_points(inst, Source::kB, grid_n, mode);
  std::optional<Rational> best;
  for (const auto& z1 : za) {
    for (const auto& z2 : zb) {
      ContextJoint joint;
      try {
        joint = feasible_table(inst, z1, z2);
      } catch (const Error&) {
        continue;
      }
      Rational cost(0);
      for (const auto& by_x : joint) {
        for (const auto& cell : by_x) {
          for (QuerySymbol q : kQuerySymbols) {
            cost += cell[index(q)] * Rational(static_cast<long>(size(q)));
          }
        }
      }
      if (!best || cost < *best) best = cost;
    }
  }
  return best ? best->to_double() : std::numeric_limits<double>::infinity();
}

}  // namespace onoff
