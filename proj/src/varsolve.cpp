#include "sharp/varsolve.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <vector>

#include "sharp/detail/exp_mean.hpp"
#include "sharp/error.hpp"
#include "sharp/extremals.hpp"

namespace sharp::varsolve {

using radial::Grid;
using radial::RadialFunction;

void SolveOptions::validate() const {
  require(epsilon_smooth >= 0.0, ErrorKind::InvalidParam,
          "epsilon_smooth must be >= 0");
  require(constraint_tol > 0.0 && grad_tol > 0.0, ErrorKind::InvalidParam,
          "solver tolerances must be positive");
  require(max_iters >= 1 && max_inner_iters >= 1, ErrorKind::InvalidParam,
          "iteration budgets must be >= 1");
  require(penalty_growth > 1.0 && initial_penalty > 0.0,
          ErrorKind::InvalidParam, "penalty must start positive and grow");
}

namespace {

// Discretized energy and mass as functions of the free values u_1..u_N.
// Index j of every vector below refers to grid node j + 1.
class Problem {
 public:
  Problem(double n, double a, double eps, const Grid& grid)
      : n_(n), a_(a), eps2_(eps * eps), r_(grid.nodes().begin(), grid.nodes().end()) {}

  std::size_t unknowns() const { return r_.size() - 1; }

  double energy(const std::vector<double>& u) const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < r_.size(); ++i) {
      const double h = r_[i + 1] - r_[i];
      const double s = (u[i + 1] - u[i]) / h;
      total += std::pow(s * s + eps2_, 0.5 * n_) * h;
    }
    return total;
  }

  double mass(const std::vector<double>& u) const {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < r_.size(); ++i) {
      const double h = r_[i + 1] - r_[i];
      total += h * detail::exp_divided_difference(n_ * (u[i] - r_[i]),
                                                  n_ * (u[i + 1] - r_[i + 1]));
    }
    total += std::exp(n_ * (u.back() - r_.back())) / n_;
    return total;
  }

  // Gradients and tridiagonal Hessians of E and M with respect to u_1..u_N.
  struct Derivatives {
    std::vector<double> grad_e, grad_m;
    std::vector<double> diag_e, off_e, diag_m, off_m;
  };

  void derivatives(const std::vector<double>& u, Derivatives& d) const {
    const std::size_t m = unknowns();
    for (auto* v : {&d.grad_e, &d.grad_m, &d.diag_e, &d.diag_m}) v->assign(m, 0.0);
    d.off_e.assign(m - 1, 0.0);
    d.off_m.assign(m - 1, 0.0);

    for (std::size_t i = 0; i + 1 < r_.size(); ++i) {
      const double h = r_[i + 1] - r_[i];
      const double s = (u[i + 1] - u[i]) / h;
      const double w = s * s + eps2_;
      const double wp = std::pow(w, 0.5 * n_ - 1.0);
      const double d1 = n_ * s * wp;
      const double d2 = n_ * wp + n_ * (n_ - 2.0) * s * s * wp / w;

      const double ea = std::exp(n_ * (u[i] - r_[i]));
      const auto mom = detail::exp_moments(n_ * (u[i + 1] - r_[i + 1]) -
                                           n_ * (u[i] - r_[i]));
      const double scale1 = n_ * h * ea;
      const double scale2 = n_ * n_ * h * ea;

      // Node i + 1 is unknown i; node i is unknown i - 1 when i >= 1.
      d.grad_e[i] += d1;
      d.diag_e[i] += d2 / h;
      d.grad_m[i] += scale1 * mom.g1;
      d.diag_m[i] += scale2 * mom.g2;
      if (i >= 1) {
        d.grad_e[i - 1] -= d1;
        d.diag_e[i - 1] += d2 / h;
        d.off_e[i - 1] -= d2 / h;
        d.grad_m[i - 1] += scale1 * (mom.g0 - mom.g1);
        d.diag_m[i - 1] += scale2 * (mom.g0 - 2.0 * mom.g1 + mom.g2);
        d.off_m[i - 1] += scale2 * (mom.g1 - mom.g2);
      }
    }
    const double eb = std::exp(n_ * (u.back() - r_.back()));
    d.grad_m[m - 1] += eb;
    d.diag_m[m - 1] += n_ * eb;
  }

  double n() const { return n_; }
  double a() const { return a_; }

 private:
  double n_;
  double a_;
  double eps2_;
  std::vector<double> r_;
};

// LDL^T of a symmetric tridiagonal matrix. Returns the number of negative
// pivots, or -1 when a pivot is numerically zero.
int factor_tridiagonal(const std::vector<double>& diag,
                       const std::vector<double>& off, std::vector<double>& pivots,
                       std::vector<double>& lower) {
  const std::size_t m = diag.size();
  pivots.resize(m);
  lower.resize(m - 1);
  int negatives = 0;
  auto check = [&](std::size_t j) {
    if (!(std::abs(pivots[j]) > 1e-13 * std::abs(diag[j]) &&
          std::abs(pivots[j]) > 1e-300)) {
      return false;
    }
    if (pivots[j] < 0.0) ++negatives;
    return true;
  };
  pivots[0] = diag[0];
  for (std::size_t j = 0; j + 1 < m; ++j) {
    if (!check(j)) return -1;
    lower[j] = off[j] / pivots[j];
    pivots[j + 1] = diag[j + 1] - lower[j] * off[j];
  }
  return check(m - 1) ? negatives : -1;
}

std::vector<double> solve_factored(const std::vector<double>& pivots,
                                   const std::vector<double>& lower,
                                   std::vector<double> rhs) {
  const std::size_t m = pivots.size();
  for (std::size_t j = 0; j + 1 < m; ++j) rhs[j + 1] -= lower[j] * rhs[j];
  rhs[m - 1] /= pivots[m - 1];
  for (std::size_t j = m - 1; j-- > 0;) rhs[j] = rhs[j] / pivots[j] - lower[j] * rhs[j + 1];
  return rhs;
}

double dot(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double max_abs(const std::vector<double>& x) {
  double s = 0.0;
  for (const double v : x) s = std::max(s, std::abs(v));
  return s;
}

struct InnerResult {
  int steps = 0;
  double grad_norm = 0.0;
};

// Minimizes E - lambda c + (mu/2) c^2 with c = M - a over u_1..u_N.
InnerResult solve_subproblem(const Problem& prob, std::vector<double>& u,
                             double lambda, double mu, const SolveOptions& opts) {
  const std::size_t m = prob.unknowns();
  Problem::Derivatives d;
  std::vector<double> grad(m), diag(m), off(m - 1), pivots, lower;
  auto merit = [&](const std::vector<double>& v) {
    const double c = prob.mass(v) - prob.a();
    return prob.energy(v) - lambda * c + 0.5 * mu * c * c;
  };

  InnerResult out;
  double value = merit(u);
  int stalled = 0;
  for (int it = 0; it < opts.max_inner_iters; ++it) {
    prob.derivatives(u, d);
    const double c = prob.mass(u) - prob.a();
    const double weight = lambda - mu * c;
    for (std::size_t j = 0; j < m; ++j) {
      grad[j] = d.grad_e[j] - weight * d.grad_m[j];
      diag[j] = d.diag_e[j] - weight * d.diag_m[j];
    }
    for (std::size_t j = 0; j + 1 < m; ++j) off[j] = d.off_e[j] - weight * d.off_m[j];
    out.grad_norm = max_abs(grad);
    if (out.grad_norm <= opts.grad_tol) break;

    // (T + shift I + mu g_M g_M^T) step = -grad via Sherman-Morrison. T may
    // have one negative eigenvalue as long as the rank-one penalty term lifts
    // it: with exactly one negative pivot the sum is positive definite iff
    // 1 + mu g_M^T T^{-1} g_M < 0.
    const double diag_scale = max_abs(diag);
    double shift = 0.0;
    std::vector<double> shifted = diag;
    std::vector<double> z;
    double denom = 0.0;
    for (;;) {
      const int negatives = factor_tridiagonal(shifted, off, pivots, lower);
      if (negatives == 0 || negatives == 1) {
        z = solve_factored(pivots, lower, d.grad_m);
        denom = 1.0 + mu * dot(d.grad_m, z);
        if (negatives == 0 ? denom > 0.0 : denom < 0.0) break;
      }
      shift = shift == 0.0 ? 1e-12 * diag_scale : shift * 10.0;
      if (shift > 1e6 * diag_scale) {
        fail(ErrorKind::NotConverged, "could not regularize the Newton system");
      }
      for (std::size_t j = 0; j < m; ++j) shifted[j] = diag[j] + shift;
    }
    std::vector<double> neg_grad(m);
    for (std::size_t j = 0; j < m; ++j) neg_grad[j] = -grad[j];
    const std::vector<double> y = solve_factored(pivots, lower, neg_grad);
    const double coef = mu * dot(d.grad_m, y) / denom;
    std::vector<double> step(m);
    for (std::size_t j = 0; j < m; ++j) step[j] = y[j] - coef * z[j];
    double slope = dot(grad, step);
    if (!(slope < 0.0)) {
      step = neg_grad;
      slope = -dot(grad, grad);
    }

    std::vector<double> trial(u.size());
    trial[0] = 0.0;
    double t = 1.0;
    double trial_value = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t j = 0; j < m; ++j) trial[j + 1] = u[j + 1] + t * step[j];
      trial_value = merit(trial);
      if (std::isfinite(trial_value) && trial_value <= value + 1e-4 * t * slope) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    // Predicted decrease lost in rounding: take the full Newton step if it
    // does not make things worse beyond rounding of the merit value.
    if (!accepted && std::abs(slope) < 1e-13 * (1.0 + std::abs(value))) {
      for (std::size_t j = 0; j < m; ++j) trial[j + 1] = u[j + 1] + step[j];
      trial_value = merit(trial);
      accepted = std::isfinite(trial_value) &&
                 trial_value <= value + 1e-12 * (1.0 + std::abs(value));
      if (accepted && ++stalled > 5) accepted = false;
    }
    ++out.steps;
    if (!accepted) break;
    u.swap(trial);
    value = trial_value;
  }
  return out;
}

}  // namespace

RadialFunction ramp_start(double n, double a, const Grid& grid) {
  const double top = std::log(n * a);
  return RadialFunction::sample(grid, [top](double r) { return std::min(r, top); });
}

SolveReport minimize(double n, double a, const SolveOptions& opts,
                     const std::optional<RadialFunction>& initial) {
  require(n > 1.0 && std::isfinite(n), ErrorKind::InvalidParam,
          "solver needs n > 1");
  if (!(n * a > 1.0) || !std::isfinite(a)) {
    std::ostringstream os;
    os << "mass a = " << a << " must exceed 1/n = " << 1.0 / n;
    fail(ErrorKind::InvalidParam, os.str());
  }
  opts.validate();

  const Problem prob(n, a, opts.epsilon_smooth, opts.grid);
  std::vector<double> u;
  if (initial) {
    require(initial->size() == opts.grid.size(), ErrorKind::InvalidParam,
            "initial guess must live on the solver grid");
    u.assign(initial->values().begin(), initial->values().end());
  } else {
    const auto ramp = ramp_start(n, a, opts.grid);
    u.assign(ramp.values().begin(), ramp.values().end());
  }

  // Least-squares multiplier estimate at the start point.
  Problem::Derivatives d;
  prob.derivatives(u, d);
  double lambda = std::max(0.0, dot(d.grad_e, d.grad_m) / dot(d.grad_m, d.grad_m));
  double mu = opts.initial_penalty;
  double previous_violation = std::abs(prob.mass(u) - a);

  SolveReport rep{RadialFunction::zero(opts.grid)};
  rep.n = n;
  rep.a = a;
  double grad_norm = 0.0;
  for (int outer = 0; outer < opts.max_iters; ++outer) {
    const InnerResult inner = solve_subproblem(prob, u, lambda, mu, opts);
    rep.iterations += inner.steps;
    rep.outer_iterations = outer + 1;
    grad_norm = inner.grad_norm;
    const double c = prob.mass(u) - a;
    const double violation = std::abs(c);
    if (violation <= opts.constraint_tol && grad_norm <= 100.0 * opts.grad_tol) {
      rep.converged = true;
      break;
    }
    lambda -= mu * c;
    if (violation > 0.25 * previous_violation) mu *= opts.penalty_growth;
    previous_violation = violation;
  }

  u[0] = 0.0;
  rep.multiplier = lambda;
  rep.u_star = RadialFunction(opts.grid, u);
  rep.xi_hat = radial::energy(rep.u_star, n);
  rep.constraint_residual = std::abs(radial::weighted_mass(rep.u_star, n).mass - a);
  if (rep.converged) {
    // The last subproblem stopped with c inside tolerance, so lambda - mu c is
    // the multiplier matching the final gradient balance.
    rep.multiplier = lambda - mu * (prob.mass(u) - a);
  }
  return rep;
}

double recommended_radius(double n, double a, double tol) {
  require(tol > 0.0 && tol < 1.0, ErrorKind::InvalidParam,
          "tail tolerance must lie in (0, 1)");
  const auto p = extremals::ExtremalParams::from_mass(n, a);
  // With beta0 = 1 the rough rate is -1 and the tail bound is exp(E - R).
  return std::max(1.0, extremals::closed_energy(p) - std::log(tol * a));
}

namespace {

// Dormand-Prince 5(4) tableau.
using Real = long double;
constexpr Real c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5, c5 = 8.0L / 9;
constexpr Real a21 = 1.0L / 5;
constexpr Real a31 = 3.0L / 40, a32 = 9.0L / 40;
constexpr Real a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
constexpr Real a51 = 19372.0L / 6561, a52 = -25360.0L / 2187,
               a53 = 64448.0L / 6561, a54 = -212.0L / 729;
constexpr Real a61 = 9017.0L / 3168, a62 = -355.0L / 33, a63 = 46732.0L / 5247,
               a64 = 49.0L / 176, a65 = -5103.0L / 18656;
constexpr Real b1 = 35.0L / 384, b3 = 500.0L / 1113, b4 = 125.0L / 192,
               b5 = -2187.0L / 6784, b6 = 11.0L / 84;
constexpr Real e1 = 71.0L / 57600, e3 = -71.0L / 16695, e4 = 71.0L / 1920,
               e5 = -17253.0L / 339200, e6 = 22.0L / 525, e7 = -1.0L / 40;

// (v, w) with w = v_r^{n-1}: w' = (n-1) v_r^{n-2} v_rr = -(n-1) tau e^{n v - n r}.
using State = std::array<Real, 2>;

State combine(const State& y, Real h,
              std::initializer_list<std::pair<Real, const State*>> terms) {
  State out = y;
  for (const auto& [w, k] : terms) {
    out[0] += h * w * (*k)[0];
    out[1] += h * w * (*k)[1];
  }
  return out;
}

}  // namespace

RadialFunction shoot(double n, double lambda0, const Grid& grid,
                     const ShootOptions& opts) {
  const auto p = extremals::ExtremalParams::from_lambda(n, lambda0);
  const Real nl = n;
  const Real tau = p.tau;
  const Real flux0 = std::pow(static_cast<Real>(p.rate()) / (lambda0 + 1.0L), nl - 1);
  // The flux of the extremal decays like e^{-n r}; forward integration keeps
  // it only to an absolute level of a few ulps of flux0, below which it is
  // clamped to zero. A flux clearly below zero means the slope really changed
  // sign.
  const Real flux_floor = 1e-12L * flux0;

  auto rhs = [&](Real r, const State& y) -> State {
    if (y[1] < -flux_floor || !std::isfinite(static_cast<double>(y[0]))) {
      std::ostringstream os;
      os << "slope v_r reached 0 and reversed near r = " << static_cast<double>(r);
      fail(ErrorKind::SlopeSingularity, os.str());
    }
    const Real slope = y[1] > 0 ? std::pow(y[1], 1 / (nl - 1)) : 0.0L;
    return {slope, -(nl - 1) * tau * std::exp(nl * (y[0] - r))};
  };

  const auto nodes = grid.nodes();
  std::vector<double> values(nodes.size(), 0.0);
  State y{0.0L, flux0};
  Real r = 0.0L;
  Real h_free = 1e-3L;
  int steps = 0;
  State k1 = rhs(r, y);

  for (std::size_t node = 1; node < nodes.size(); ++node) {
    const Real target = nodes[node];
    while (r < target) {
      if (++steps > opts.max_steps) {
        fail(ErrorKind::StepFailure, "step budget exhausted");
      }
      const bool clipped = r + h_free >= target;
      const Real h = clipped ? target - r : h_free;
      const State k2 = rhs(r + c2 * h, combine(y, h, {{a21, &k1}}));
      const State k3 = rhs(r + c3 * h, combine(y, h, {{a31, &k1}, {a32, &k2}}));
      const State k4 =
          rhs(r + c4 * h, combine(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
      const State k5 = rhs(r + c5 * h, combine(y, h,
                                               {{a51, &k1}, {a52, &k2}, {a53, &k3},
                                                {a54, &k4}}));
      const State k6 = rhs(r + h, combine(y, h,
                                          {{a61, &k1}, {a62, &k2}, {a63, &k3},
                                           {a64, &k4}, {a65, &k5}}));
      const State next = combine(
          y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
      const State k7 = rhs(r + h, next);

      Real err = 0.0L;
      for (int c = 0; c < 2; ++c) {
        const Real e = h * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] + e5 * k5[c] +
                            e6 * k6[c] + e7 * k7[c]);
        const Real scale =
            (c == 0 ? opts.abs_tol : opts.abs_tol * flux0 * 1e-6L) +
            opts.rel_tol * std::max(std::abs(y[c]), std::abs(next[c]));
        err = std::max(err, std::abs(e) / scale);
      }
      const Real factor =
          err == 0 ? 5.0L : std::clamp(0.9L * std::pow(err, -0.2L), 0.2L, 5.0L);
      if (err <= 1) {
        r = clipped ? target : r + h;
        y = next;
        k1 = k7;
        // A step shortened to land on a node says nothing about the scale.
        h_free = clipped ? std::max(h_free, h * factor) : h * factor;
      } else {
        h_free = h * factor;
      }
      if (h_free < opts.min_step) {
        fail(ErrorKind::StepFailure, "adaptive step size underflowed");
      }
    }
    values[node] = static_cast<double>(y[0]);
  }
  return RadialFunction(grid, std::move(values));
}

namespace {

// Fornberg weights for derivatives 0..2 at x0 from the given stencil.
template <std::size_t K>
std::array<std::array<double, K>, 3> fornberg(double x0, const std::array<double, K>& x) {
  std::array<std::array<double, K>, 3> c{};
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < K; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 2);
    double c2v = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3v = x[i] - x[j];
      c2v *= c3v;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2v;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2v;
      }
      for (std::size_t k = mn; k >= 1; --k) {
        c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3v;
      }
      c[0][j] = c4 * c[0][j] / c3v;
    }
    c1 = c2v;
  }
  return c;
}

}  // namespace

double el_residual(const RadialFunction& u, double n, double tau) {
  require(n > 1.0 && std::isfinite(n) && std::isfinite(tau),
          ErrorKind::InvalidParam, "residual needs n > 1 and finite tau");
  const auto r = u.grid().nodes();
  require(r.size() >= 4, ErrorKind::InvalidParam,
          "residual needs at least four nodes");
  const std::size_t last = r.size() - 1;
  double worst = 0.0;
  for (std::size_t i = 0; i <= last; ++i) {
    double d1 = 0.0;
    double d2 = 0.0;
    if (i == 0 || i == last) {
      const std::size_t s = i == 0 ? 0 : last - 3;
      const std::array<double, 4> xs{r[s], r[s + 1], r[s + 2], r[s + 3]};
      const auto w = fornberg(r[i], xs);
      for (std::size_t k = 0; k < 4; ++k) {
        d1 += w[1][k] * u[s + k];
        d2 += w[2][k] * u[s + k];
      }
    } else {
      const std::array<double, 3> xs{r[i - 1], r[i], r[i + 1]};
      const auto w = fornberg(r[i], xs);
      for (std::size_t k = 0; k < 3; ++k) {
        d1 += w[1][k] * u[i - 1 + k];
        d2 += w[2][k] * u[i - 1 + k];
      }
    }
    const double lhs = std::pow(std::abs(d1), n - 2.0) * d2;
    const double res = std::abs(lhs + tau * std::exp(n * (u[i] - r[i])));
    worst = std::max(worst, res);
  }
  return worst;
}

}  // namespace sharp::varsolve
