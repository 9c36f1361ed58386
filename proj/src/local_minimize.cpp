#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <random>

#include "ionqaoa/error.hpp"
#include "ionqaoa/optimizer.hpp"

namespace ionqaoa::opt {

namespace {

// Value handed back to GSL once the objective went non-finite; the seed is
// discarded afterwards.
constexpr double kPoison = 1e300;

void disable_gsl_abort() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct FMinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* s) const { gsl_multimin_fminimizer_free(s); }
};
struct FdfMinimizerDeleter {
  void operator()(gsl_multimin_fdfminimizer* s) const { gsl_multimin_fdfminimizer_free(s); }
};
using VectorPtr = std::unique_ptr<gsl_vector, VectorDeleter>;

VectorPtr make_vector(std::span<const double> x) {
  VectorPtr v(gsl_vector_alloc(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) gsl_vector_set(v.get(), i, x[i]);
  return v;
}

struct Context {
  const Objective* f = nullptr;
  const Gradient* grad = nullptr;  // null: central differences
  const OptimizerConfig* cfg = nullptr;
  std::vector<double> scratch;
  std::vector<double> grad_buf;
  long evaluations = 0;
  bool non_finite = false;

  double eval(const gsl_vector* x) {
    for (std::size_t i = 0; i < scratch.size(); ++i) scratch[i] = gsl_vector_get(x, i);
    return eval_scratch();
  }
  double eval_scratch() {
    ++evaluations;
    const double v = (*f)(scratch);
    if (!std::isfinite(v)) {
      non_finite = true;
      return kPoison;
    }
    return v;
  }
  // Exact gradient when available, else central differences around x.
  double value_and_gradient(const gsl_vector* x, gsl_vector* g) {
    for (std::size_t i = 0; i < scratch.size(); ++i) scratch[i] = gsl_vector_get(x, i);
    ++evaluations;
    grad_buf.resize(scratch.size());
    const double v = (*grad)(scratch, grad_buf);
    bool finite = std::isfinite(v);
    for (std::size_t i = 0; i < grad_buf.size(); ++i) {
      finite = finite && std::isfinite(grad_buf[i]);
      gsl_vector_set(g, i, grad_buf[i]);
    }
    if (!finite) {
      non_finite = true;
      gsl_vector_set_zero(g);
      return kPoison;
    }
    return v;
  }
  void gradient(const gsl_vector* x, gsl_vector* g) {
    if (grad) {
      value_and_gradient(x, g);
      return;
    }
    const double h = cfg->fd_step;
    for (std::size_t i = 0; i < scratch.size(); ++i) scratch[i] = gsl_vector_get(x, i);
    for (std::size_t i = 0; i < scratch.size(); ++i) {
      const double xi = scratch[i];
      scratch[i] = xi + h;
      const double up = eval_scratch();
      scratch[i] = xi - h;
      const double down = eval_scratch();
      scratch[i] = xi;
      gsl_vector_set(g, i, (up - down) / (2.0 * h));
    }
  }
};

double f_cb(const gsl_vector* x, void* p) { return static_cast<Context*>(p)->eval(x); }
void df_cb(const gsl_vector* x, void* p, gsl_vector* g) {
  static_cast<Context*>(p)->gradient(x, g);
}
void fdf_cb(const gsl_vector* x, void* p, double* f, gsl_vector* g) {
  auto* ctx = static_cast<Context*>(p);
  if (ctx->grad) {
    *f = ctx->value_and_gradient(x, g);
    return;
  }
  *f = ctx->eval(x);
  ctx->gradient(x, g);
}

MinimizeResult run_simplex(Context& ctx, std::span<const double> start) {
  const std::size_t n = start.size();
  gsl_multimin_function fn{&f_cb, n, &ctx};
  std::unique_ptr<gsl_multimin_fminimizer, FMinimizerDeleter> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  VectorPtr x = make_vector(start);
  VectorPtr step(gsl_vector_alloc(n));
  gsl_vector_set_all(step.get(), ctx.cfg->simplex_step);
  gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), step.get());
  for (int it = 0; it < ctx.cfg->max_iterations && !ctx.non_finite; ++it) {
    if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(s.get());
    if (gsl_multimin_test_size(size, ctx.cfg->tol) == GSL_SUCCESS) break;
  }
  MinimizeResult r;
  r.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.x[i] = gsl_vector_get(s->x, i);
  r.value = s->fval;
  return r;
}

MinimizeResult run_quasi_newton(Context& ctx, std::span<const double> start) {
  const std::size_t n = start.size();
  gsl_multimin_function_fdf fn{&f_cb, &df_cb, &fdf_cb, n, &ctx};
  std::unique_ptr<gsl_multimin_fdfminimizer, FdfMinimizerDeleter> s(
      gsl_multimin_fdfminimizer_alloc(gsl_multimin_fdfminimizer_vector_bfgs2, n));
  VectorPtr x = make_vector(start);
  gsl_multimin_fdfminimizer_set(s.get(), &fn, x.get(), 0.01, 0.1);
  for (int it = 0; it < ctx.cfg->max_iterations && !ctx.non_finite; ++it) {
    if (gsl_multimin_fdfminimizer_iterate(s.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_test_gradient(s->gradient, ctx.cfg->tol) == GSL_SUCCESS) break;
  }
  MinimizeResult r;
  r.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.x[i] = gsl_vector_get(s->x, i);
  r.value = s->f;
  return r;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kNelderMead: return "nelder-mead";
    case Method::kLbfgsFd: return "lbfgs-fd";
    case Method::kLbfgs: return "lbfgs";
  }
  return "?";
}

Method parse_method(std::string_view s) {
  if (s == "nelder-mead") return Method::kNelderMead;
  if (s == "lbfgs-fd") return Method::kLbfgsFd;
  if (s == "lbfgs") return Method::kLbfgs;
  fail(ErrorKind::kUsage, "unknown optimizer method '" + std::string(s) + "'");
}

OptimizerConfig OptimizerConfig::paper() {
  OptimizerConfig c;
  c.seeds_per_step = 25;
  c.heuristic_repeats = 50;
  c.max_depth = 20;
  c.method = Method::kLbfgsFd;
  return c;
}

void OptimizerConfig::validate() const {
  if (seeds_per_step < 1 || heuristic_repeats < 1 || max_depth < 1 || max_iterations < 1)
    fail(ErrorKind::kDomain, "optimizer counts must be positive");
  if (!(fd_step > 0.0 && fd_step < 1e-2)) fail(ErrorKind::kDomain, "fd_step must lie in (0, 1e-2)");
  if (!(tol > 0.0)) fail(ErrorKind::kDomain, "tol must be positive");
  if (!(simplex_step > 0.0)) fail(ErrorKind::kDomain, "simplex_step must be positive");
  if (!(joint_perturbation >= 0.0)) fail(ErrorKind::kDomain, "joint_perturbation must be >= 0");
}

MinimizeResult minimize_from(const Objective& f, std::span<const double> start,
                             const OptimizerConfig& cfg, const Gradient& grad) {
  disable_gsl_abort();
  if (start.empty()) fail(ErrorKind::kDimension, "cannot minimize over zero parameters");
  Context ctx;
  ctx.f = &f;
  ctx.cfg = &cfg;
  if (cfg.method == Method::kLbfgs && grad) ctx.grad = &grad;
  ctx.scratch.assign(start.begin(), start.end());
  MinimizeResult r = cfg.method == Method::kNelderMead ? run_simplex(ctx, start)
                                                       : run_quasi_newton(ctx, start);
  r.evaluations = ctx.evaluations;
  if (ctx.non_finite) {
    r.failed_seeds = 1;
    r.value = INFINITY;
    r.log.emplace_back("objective returned a non-finite value; seed aborted");
  }
  return r;
}

MinimizeResult local_minimize(const Objective& f, std::span<const double> start,
                              std::span<const Range> ranges, const OptimizerConfig& cfg,
                              std::uint64_t stream, const Gradient& grad) {
  cfg.validate();
  if (!ranges.empty() && ranges.size() != start.size())
    fail(ErrorKind::kDimension, "need one range per parameter");
  std::seed_seq seq{cfg.rng_seed, stream};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> noise(0.0, cfg.joint_perturbation);

  MinimizeResult best;
  best.x.assign(start.begin(), start.end());
  best.value = f(start);
  best.evaluations = 1;
  if (!std::isfinite(best.value)) {
    best.log.emplace_back("objective non-finite at the start point");
    best.value = INFINITY;
  }

  std::vector<double> x0(start.size());
  for (int seed = 0; seed < cfg.seeds_per_step; ++seed) {
    for (std::size_t i = 0; i < x0.size(); ++i) {
      if (seed == 0) {
        x0[i] = start[i];
      } else if (!ranges.empty()) {
        x0[i] = std::uniform_real_distribution<double>(ranges[i].lo, ranges[i].hi)(rng);
      } else {
        x0[i] = start[i] + noise(rng);
      }
    }
    MinimizeResult r = minimize_from(f, x0, cfg, grad);
    best.evaluations += r.evaluations;
    best.failed_seeds += r.failed_seeds;
    for (auto& line : r.log) best.log.push_back("seed " + std::to_string(seed) + ": " + line);
    // Strict improvement keeps the lowest-index seed on ties.
    if (r.failed_seeds == 0 && r.value < best.value) {
      best.value = r.value;
      best.x = std::move(r.x);
    }
  }
  return best;
}

}  // namespace ionqaoa::opt
