#include "phicalc/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace phicalc {

std::string mode_string(const HarmonicMode& m) { return "j=" + mode_string(m.base) + " m=" + mode_string(m.fiber); }

namespace {

constexpr double kInfD = std::numeric_limits<double>::infinity();

// Rows of the h^2-scaled system for u_1 .. u_{n-1}; u_0 is Dirichlet data.
struct Tridiag {
  std::vector<double> sub, diag, sup;  // sub[i] multiplies u_{i-1}, sup[i] multiplies u_{i+1}

  std::vector<double> solve(std::vector<double> rhs) const {
    const std::size_t n = diag.size();
    std::vector<double> c(n), d(n);
    double beta = diag[0];
    if (beta == 0.0) throw std::runtime_error("singular tridiagonal system");
    c[0] = sup[0] / beta;
    d[0] = rhs[0] / beta;
    for (std::size_t i = 1; i < n; ++i) {
      beta = diag[i] - sub[i] * c[i - 1];
      if (beta == 0.0) throw std::runtime_error("singular tridiagonal system");
      c[i] = sup[i] / beta;
      d[i] = (rhs[i] - sub[i] * d[i - 1]) / beta;
    }
    for (std::size_t i = n - 1; i-- > 0;) d[i] -= c[i] * d[i + 1];
    return d;
  }
  Tridiag transposed() const {
    const std::size_t n = diag.size();
    Tridiag T{std::vector<double>(n, 0.0), diag, std::vector<double>(n, 0.0)};
    for (std::size_t i = 0; i + 1 < n; ++i) {
      T.sup[i] = sub[i + 1];
      T.sub[i + 1] = sup[i];
    }
    return T;
  }
  double norm1() const {
    const std::size_t n = diag.size();
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double col = std::abs(diag[j]);
      if (j > 0) col += std::abs(sup[j - 1]);
      if (j + 1 < n) col += std::abs(sub[j + 1]);
      best = std::max(best, col);
    }
    return best;
  }
};

// Hager's estimate of ||A^{-1}||_1.
double inverse_norm1(const Tridiag& A) {
  const std::size_t n = A.diag.size();
  const Tridiag At = A.transposed();
  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  double est = 0.0;
  for (int it = 0; it < 5; ++it) {
    const std::vector<double> y = A.solve(x);
    est = 0.0;
    std::vector<double> xi(n);
    for (std::size_t i = 0; i < n; ++i) {
      est += std::abs(y[i]);
      xi[i] = y[i] >= 0.0 ? 1.0 : -1.0;
    }
    const std::vector<double> z = At.solve(xi);
    std::size_t jmax = 0;
    double ztx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      ztx += z[i] * x[i];
      if (std::abs(z[i]) > std::abs(z[jmax])) jmax = i;
    }
    if (std::abs(z[jmax]) <= ztx) break;
    std::fill(x.begin(), x.end(), 0.0);
    x[jmax] = 1.0;
  }
  return est;
}

struct Coefficients {
  double af = 0.0, kb2 = 0.0, kf2 = 0.0;
  int a = 1;
  double V(double t) const { return kb2 + (kf2 == 0.0 ? 0.0 : kf2 * std::exp(2.0 * a * t)); }
};

Coefficients coefficients(const ModelGeometry& g, const HarmonicMode& mode) {
  Coefficients c;
  c.a = g.a;
  c.af = static_cast<double>(g.a * g.f());
  c.kb2 = wavevector(g.base_L, mode.base).squaredNorm();
  c.kf2 = wavevector(g.fiber_L, mode.fiber).squaredNorm();
  return c;
}

Tridiag assemble(const Coefficients& c, double h, int n, double& r_out) {
  const int m = n - 1;
  Tridiag A{std::vector<double>(m), std::vector<double>(m), std::vector<double>(m)};
  const double lo = 1.0 + 0.5 * c.af * h, up = 1.0 - 0.5 * c.af * h;
  for (int i = 1; i <= m; ++i) {
    A.sub[i - 1] = lo;
    A.diag[i - 1] = -2.0 - c.V(i * h) * h * h;
    A.sup[i - 1] = up;
  }
  const double VT = c.V(m * h);
  const double r = 0.5 * (c.af - std::sqrt(c.af * c.af + 4.0 * VT));
  // ghost value u_n = u_{n-2} + 2 h r u_{n-1}
  A.sub[m - 1] = lo + up;
  A.diag[m - 1] += 2.0 * h * r * up;
  A.sup[m - 1] = 0.0;
  r_out = r;
  return A;
}

double slope(const std::vector<double>& X, const std::vector<double>& Y) {
  const std::size_t n = X.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += X[i];
    my += Y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (X[i] - mx) * (Y[i] - my);
    sxx += (X[i] - mx) * (X[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

}  // namespace

HarmonicSolution solve_harmonic(const ModelGeometry& g, int form_degree, const HarmonicMode& mode, double boundary_value,
                                const GridSpec& grid) {
  g.validate();
  const int top = 1 + g.b() + g.f();
  if (form_degree != 0 && form_degree != top)
    throw std::invalid_argument("solve_harmonic supports form degree 0 and " + std::to_string(top) + " only");
  if (static_cast<int>(mode.base.size()) != g.b() || static_cast<int>(mode.fiber.size()) != g.f())
    throw std::invalid_argument("mode does not match the model dimensions");
  if (grid.n_points < 3 || !(grid.T_max > 0.0)) throw std::invalid_argument("grid needs n >= 3 and T_max > 0");
  const Coefficients c = coefficients(g, mode);
  const int n = grid.n_points;
  const double h = grid.T_max / (n - 1);
  HarmonicSolution S;
  S.mode = mode;
  S.form_degree = form_degree;
  const Tridiag A = assemble(c, h, n, S.decay_rate);
  std::vector<double> rhs(n - 1, 0.0);
  rhs[0] = -A.sub[0] * boundary_value;
  const std::vector<double> v = A.solve(rhs);
  S.condition = A.norm1() * inverse_norm1(A);
  S.ill_conditioned = !(S.condition < 1e12);
  S.t.resize(n);
  S.x.resize(n);
  S.u.resize(n);
  for (int i = 0; i < n; ++i) {
    S.t[i] = i * h;
    S.x[i] = g.x_max * std::exp(-S.t[i]);
    S.u[i] = i == 0 ? boundary_value : v[i - 1];
  }
  return S;
}

double separated_exponent(const ModelGeometry& g, const Mode& base) {
  const double af = static_cast<double>(g.a * g.f());
  const double k2 = wavevector(g.base_L, base).squaredNorm();
  return 0.5 * (-af + std::sqrt(af * af + 4.0 * k2));
}

ConvergenceReport convergence_check(const ModelGeometry& g, const Mode& base, const GridSpec& grid) {
  ConvergenceReport R;
  R.exponent = separated_exponent(g, base);
  HarmonicMode mode{base, Mode(g.f(), 0)};
  const Coefficients c = coefficients(g, mode);
  int n = grid.n_points;
  for (int level = 0; level < 3; ++level, n = 2 * n - 1) {
    R.n_points.push_back(n);
    const double h = grid.T_max / (n - 1);
    double res = 0.0;
    for (int i = 1; i < n - 1; ++i) {
      const double um = std::exp(-R.exponent * (i - 1) * h), u0 = std::exp(-R.exponent * i * h),
                   up = std::exp(-R.exponent * (i + 1) * h);
      const double L = (up - 2.0 * u0 + um) / (h * h) - c.af * (up - um) / (2.0 * h) - c.V(i * h) * u0;
      res = std::max(res, std::abs(L));
    }
    R.residual.push_back(res);
    const HarmonicSolution S = solve_harmonic(g, 0, mode, 1.0, {grid.T_max, n});
    double err = 0.0;
    for (int i = 0; i < n; ++i) err = std::max(err, std::abs(S.u[i] - std::exp(-R.exponent * S.t[i])));
    R.solution_error.push_back(err);
  }
  R.residual_ratio_1 = R.residual[0] / R.residual[1];
  R.residual_ratio_2 = R.residual[1] / R.residual[2];
  R.error_ratio_1 = R.solution_error[0] / R.solution_error[1];
  R.error_ratio_2 = R.solution_error[1] / R.solution_error[2];
  auto in = [](double q) { return q >= 3.6 && q <= 4.4; };
  R.pass = in(R.residual_ratio_1) && in(R.residual_ratio_2) && in(R.error_ratio_1) && in(R.error_ratio_2);
  return R;
}

HarmonicFit fit_exponents(const std::vector<double>& x, const std::vector<double>& u, const FitOptions& opt) {
  if (x.size() != u.size()) throw std::invalid_argument("x and u differ in length");
  if (!(opt.x_lo > 0.0) || !(opt.x_lo < opt.x_hi) || opt.x_hi >= 1.0)
    throw std::invalid_argument("fit window must satisfy 0 < x_lo < x_hi < 1");
  HarmonicFit F;
  std::vector<std::pair<double, double>> win;  // (log x, |u|), ordered by increasing x
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] >= opt.x_lo && x[i] <= opt.x_hi) win.emplace_back(std::log(x[i]), std::abs(u[i]));
  std::sort(win.begin(), win.end());
  if (win.size() < 8 || win.back().first - win.front().first < std::log(10.0) * 0.99) {
    F.rejected = true;
    F.reason = "fewer than 8 samples or less than one decade in the fit window";
    return F;
  }
  std::vector<double> X, Y;
  for (const auto& [lx, au] : win)
    if (au > opt.tiny) {
      X.push_back(lx);
      Y.push_back(std::log(au));
    }
  const bool underflow = X.size() < win.size();
  const double trend = Y.empty() ? 0.0 : Y.back() - Y.front();
  for (std::size_t i = 1; i < Y.size(); ++i) {
    const double d = Y[i] - Y[i - 1];
    if (d * trend < 0.0 && std::abs(d) > 1e-12 * (1.0 + std::abs(Y[i]))) {
      F.rejected = true;
      F.reason = "|u| is not monotone in the fit window";
      return F;
    }
  }
  auto mark_superpoly = [&] {
    F.superpolynomial = true;
    F.fitted_exponent = kInfD;
    F.fitted_log_power = 0;
    // C from the outer end of the window, checked on every sample inside it
    double ux = 0.0, xbest = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] <= opt.x_hi && x[i] > xbest) {
        xbest = x[i];
        ux = std::abs(u[i]);
      }
    F.bound_C = xbest > 0.0 ? ux / std::pow(xbest, 10.0) * (1.0 + 1e-12) : 0.0;
    F.bound_holds = true;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] <= opt.x_hi && std::abs(u[i]) > F.bound_C * std::pow(x[i], 10.0)) F.bound_holds = false;
    return F;
  };
  if (X.size() < 4) return mark_superpoly();
  const std::size_t half = X.size() / 2;
  const double inner = slope({X.begin(), X.begin() + half}, {Y.begin(), Y.begin() + half});
  const double outer = slope({X.begin() + half, X.end()}, {Y.begin() + half, Y.end()});
  const double whole = slope(X, Y);
  if ((inner > opt.superpoly_slope && outer > opt.superpoly_slope && inner >= opt.superpoly_growth * outer) ||
      (underflow && whole > opt.superpoly_slope))
    return mark_superpoly();

  const Eigen::Index n = static_cast<Eigen::Index>(X.size());
  Eigen::MatrixXd D(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    D(i, 0) = X[i];
    D(i, 1) = std::log(std::abs(X[i]));
    D(i, 2) = 1.0;
    y(i) = Y[i];
  }
  const Eigen::Vector3d joint = D.colPivHouseholderQr().solve(y);
  F.fitted_log_power = static_cast<int>(std::lround(joint(1)));
  Eigen::MatrixXd D2(n, 2);
  Eigen::VectorXd y2(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    D2(i, 0) = X[i];
    D2(i, 1) = 1.0;
    y2(i) = Y[i] - F.fitted_log_power * D(i, 1);
  }
  const Eigen::Vector2d wc = D2.colPivHouseholderQr().solve(y2);
  F.fitted_exponent = wc(0);
  F.residual = std::sqrt((D2 * wc - y2).squaredNorm() / static_cast<double>(n));
  return F;
}

HarmonicFit fit_solution(const HarmonicSolution& s, const FitOptions& opt) {
  HarmonicFit F = fit_exponents(s.x, s.u, opt);
  F.mode = s.mode;
  return F;
}

bool check_L2(double re_w, double gamma) { return re_w > gamma; }

}  // namespace phicalc
