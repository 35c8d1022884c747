#include "sobolab/nelder_mead.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace sobolab {

namespace {

struct Budgeted {
  const Objective* f = nullptr;
  std::size_t budget = 0;
  std::size_t evals = 0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
};

double trampoline(const gsl_vector* v, void* params) {
  auto* b = static_cast<Budgeted*>(params);
  // Past the budget every trial point looks worse than anything seen, which
  // makes the current iteration a no-op; the outer loop then stops.
  if (b->evals >= b->budget) return std::numeric_limits<double>::max();
  ++b->evals;
  const std::span<const double> x(v->data, v->size);
  double y = (*b->f)(x);
  if (std::isnan(y)) y = std::numeric_limits<double>::max();
  if (y < b->best) {
    b->best = y;
    b->best_x.assign(x.begin(), x.end());
  }
  return y;
}

struct GslVectorFree {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct GslMinimizerFree {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& options) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw std::invalid_argument("nelder_mead: empty starting point");
  if (options.budget == 0) throw std::invalid_argument("nelder_mead: zero budget");

  Budgeted state;
  state.f = &f;
  state.budget = options.budget;
  state.best_x = x0;

  gsl_set_error_handler_off();
  std::unique_ptr<gsl_vector, GslVectorFree> start(gsl_vector_alloc(dim));
  std::unique_ptr<gsl_vector, GslVectorFree> step(gsl_vector_alloc(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    gsl_vector_set(start.get(), i, x0[i]);
    gsl_vector_set(step.get(), i, options.initial_step);
  }
  std::unique_ptr<gsl_multimin_fminimizer, GslMinimizerFree> minimizer(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));

  gsl_multimin_function fn;
  fn.n = dim;
  fn.f = &trampoline;
  fn.params = &state;
  if (gsl_multimin_fminimizer_set(minimizer.get(), &fn, start.get(), step.get()) != GSL_SUCCESS) {
    throw std::runtime_error("nelder_mead: could not initialise the simplex");
  }

  while (state.evals < state.budget) {
    if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(minimizer.get());
    if (gsl_multimin_test_size(size, options.size_tolerance) == GSL_SUCCESS) break;
  }

  NelderMeadResult r;
  r.x = state.best_x;
  r.value = state.best;
  r.evals = state.evals;
  r.budget_exhausted = state.evals >= state.budget;
  return r;
}

}  // namespace sobolab
