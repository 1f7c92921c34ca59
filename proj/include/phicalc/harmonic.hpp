#pragma once

#include <string>
#include <vector>

#include "phicalc/model.hpp"

namespace phicalc {

struct HarmonicMode {
  Mode base;   // j
  Mode fiber;  // m
};
std::string mode_string(const HarmonicMode& m);

struct GridSpec {
  double T_max = 12.0;  // t = -log x runs over [0, T_max]
  int n_points = 2048;
};

// Samples of one separated component of a harmonic form, on x = x_max e^{-t}.
struct HarmonicSolution {
  HarmonicMode mode;
  int form_degree = 0;
  std::vector<double> t, x, u;
  double decay_rate = 0.0;   // Robin coefficient at t = T_max
  double condition = 0.0;    // 1-norm condition estimate of the discrete system
  bool ill_conditioned = false;
};

// u'' - a f u' - (|k_j|^2 + |k_m|^2 e^{2 a t}) u = 0 with u(0) = boundary_value and the
// decaying branch selected at t = T_max. Degree 0 and top degree are supported.
HarmonicSolution solve_harmonic(const ModelGeometry& g, int form_degree, const HarmonicMode& mode,
                                double boundary_value = 1.0, const GridSpec& grid = {});

// Decaying root of s^2 + a f s - |k|^2 for a pure base mode.
double separated_exponent(const ModelGeometry& g, const Mode& base);

// Residual of the discrete operator on the exact e^{-s t} and the error of the solution,
// at n, 2n-1 and 4n-3 points; ratios of successive values.
struct ConvergenceReport {
  double exponent = 0.0;
  std::vector<int> n_points;
  std::vector<double> residual, solution_error;
  double residual_ratio_1 = 0.0, residual_ratio_2 = 0.0;
  double error_ratio_1 = 0.0, error_ratio_2 = 0.0;
  bool pass = false;
};
ConvergenceReport convergence_check(const ModelGeometry& g, const Mode& base, const GridSpec& grid = {});

struct FitOptions {
  double x_lo = 1e-4, x_hi = 1e-2;
  double superpoly_slope = 10.0;
  double superpoly_growth = 1.05;
  double tiny = 1e-280;
};

struct HarmonicFit {
  HarmonicMode mode;
  double fitted_exponent = 0.0;  // +inf when superpolynomial
  int fitted_log_power = 0;
  double residual = 0.0;
  bool superpolynomial = false;
  bool rejected = false;
  std::string reason;
  double bound_C = 0.0;        // |u| <= C x^10 on the window, when superpolynomial
  bool bound_holds = false;
};

HarmonicFit fit_exponents(const std::vector<double>& x, const std::vector<double>& u, const FitOptions& opt = {});
HarmonicFit fit_solution(const HarmonicSolution& s, const FitOptions& opt = {});

// x^w (log x)^k lies in x^gamma L^2(dvol_b) near x = 0 iff Re w > gamma.
bool check_L2(double re_w, double gamma = 0.0);

}  // namespace phicalc
