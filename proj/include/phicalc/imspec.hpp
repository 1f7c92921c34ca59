#pragma once

#include <string>
#include <vector>

#include "phicalc/model.hpp"

namespace phicalc {

// A root of det I(P, lambda) at lambda = -i s, reported by s = -Im lambda.
struct SpectrumPoint {
  double lambda_root = 0.0;
  Mode mode;
  int pole_order_k = 0;    // the inverse has a pole of order k+1
  int det_order = 0;       // vanishing order of det, for comparison
  int rank_drop = 0;       // singular values that vanish at the root
  double sigma_min = 0.0;  // smallest singular value after refinement
  bool order_mismatch = false;
  bool at_window_edge = false;
};

struct ImspecOptions {
  double lo = -2.5, hi = 2.5;
  double step = 1e-3;
  int mode_cutoff = -1;  // < 0: enough modes to cover the window
  double root_tol = 1e-8;
  double bracket_width = 1e-10;
};

struct ImspecResult {
  std::vector<SpectrumPoint> per_mode;  // every root found, sorted by (root, mode)
  std::vector<SpectrumPoint> merged;    // one entry per distinct root
  std::vector<std::string> warnings;
};

ImspecResult imspec(const ModelGeometry& g, IndicialKind kind, Frame frame, const ImspecOptions& opt);

// Smallest singular value of I(P, -i s).
double sigma_min_at(const ModelGeometry& g, IndicialKind kind, Frame frame, const Mode& j, double s);

}  // namespace phicalc
