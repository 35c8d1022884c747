#pragma once

// Budgeted Nelder-Mead minimization (GSL's nmsimplex2 underneath).

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sobolab {

struct NelderMeadOptions {
  std::size_t budget = 500;     // hard cap on objective evaluations
  double initial_step = 0.5;    // simplex edge length along every axis
  double size_tolerance = 1e-8;  // stop once the simplex is this small
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evals = 0;
  bool budget_exhausted = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Never calls `f` more than `budget` times. Once the budget is spent the
/// simplex is frozen and the best point seen so far is returned.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& options);

}  // namespace sobolab
