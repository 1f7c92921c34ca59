#pragma once

#include <string>
#include <vector>

#include "phicalc/harmonic.hpp"
#include "phicalc/imspec.hpp"
#include "phicalc/index_set.hpp"

namespace phicalc {

struct ModeVerdict {
  HarmonicFit fit;
  bool fibre_harmonic = true;
  double oracle_exponent = 0.0;    // decaying separated root, fibre-harmonic modes
  double nearest_predicted = 0.0;  // closest element of K
  double rel_err_oracle = 0.0, rel_err_predicted = 0.0;
  bool l2_fit = false;       // Re w > alpha for the fitted exponent
  bool l2_expected = false;  // from the separated root
  bool ill_conditioned = false;
  bool pass = true;
  std::string note;
};

struct VerifyOptions {
  double alpha = 0.0;
  int base_modes = 3;   // j = 0 .. base_modes along the first base direction
  int fiber_modes = 2;  // m = 1 .. fiber_modes along the first fibre direction
  double rel_tol = 0.02;
  double boundary_tol = 1e-6;
  GridSpec grid;
  FitOptions fit;
  ImspecOptions spectrum{-3.5, 3.5};
};

struct VerifyReport {
  double alpha = 0.0;
  ImspecResult spectrum;  // scalar component of the Laplace-Beltrami operator
  IndexSet K;
  std::vector<ModeVerdict> modes;
  ConvergenceReport convergence;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

VerifyReport verify_predictions(const ModelGeometry& g, const VerifyOptions& opt = {});

}  // namespace phicalc
