#include "phicalc/imspec.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

#include "phicalc/parallel.hpp"

namespace phicalc {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Probe {
  const ModelGeometry& g;
  IndicialKind kind;
  Frame frame;
  const Mode& j;

  Eigen::MatrixXcd at(double s) const { return indicial_matrix(g, kind, frame, j, {0.0, -s}); }
  Eigen::VectorXd singular(double s) const {
    const Eigen::MatrixXcd M = at(s);
    if (M.rows() == 1) return Eigen::VectorXd::Constant(1, std::abs(M(0, 0)));
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(M).singularValues();
  }
  double sigma(double s) const { return singular(s).minCoeff(); }
  double absdet(double s) const { return std::abs(at(s).determinant()); }
};

// Vanishing order of h at r from the decay between two offsets, averaged over both sides.
int vanishing_order(const std::function<double(double)>& h, double r) {
  double acc = 0.0;
  int n = 0;
  for (double side : {-1.0, 1.0}) {
    const double far = h(r + side * 1e-3), nearv = h(r + side * 1e-4);
    if (!(far > 0.0) || !(nearv > 0.0)) continue;
    acc += std::log10(far / nearv);
    ++n;
  }
  return n == 0 ? 0 : static_cast<int>(std::lround(acc / n));
}

int default_cutoff(const ModelGeometry& g, const ImspecOptions& opt) {
  double Lmax = 0.0;
  for (double L : g.base_L) Lmax = std::max(Lmax, L);
  // |s| >= |k| - a f for every root of the families in use
  const double reach = std::max(std::abs(opt.lo), std::abs(opt.hi)) + g.a * g.f();
  return static_cast<int>(std::ceil(reach * Lmax / (2.0 * kPi))) + 1;
}

bool mode_less(const Mode& x, const Mode& y) { return x < y; }

}  // namespace

double sigma_min_at(const ModelGeometry& g, IndicialKind kind, Frame frame, const Mode& j, double s) {
  return Probe{g, kind, frame, j}.sigma(s);
}

ImspecResult imspec(const ModelGeometry& g, IndicialKind kind, Frame frame, const ImspecOptions& opt) {
  g.validate();
  if (!std::isfinite(opt.lo) || !std::isfinite(opt.hi) || !(opt.lo <= opt.hi))
    throw std::invalid_argument("imspec window must be finite with lo <= hi");
  if (!(opt.step > 0.0)) throw std::invalid_argument("imspec step must be positive");
  const int cutoff = opt.mode_cutoff >= 0 ? opt.mode_cutoff : default_cutoff(g, opt);
  const std::vector<Mode> modes = enumerate_modes(g.b(), cutoff);

  std::vector<std::vector<SpectrumPoint>> found(modes.size());
  std::vector<std::vector<std::string>> notes(modes.size());
  parallel_for(modes.size(), [&](std::size_t mi) {
    const Probe P{g, kind, frame, modes[mi]};
    const int n = std::max(2, static_cast<int>(std::ceil((opt.hi - opt.lo) / opt.step)) + 1);
    const double h = (opt.hi - opt.lo) / (n - 1);
    std::vector<double> sig(n);
    for (int i = 0; i < n; ++i) sig[i] = P.sigma(opt.lo + h * i);
    for (int i = 0; i < n; ++i) {
      const bool left_ok = i == 0 || sig[i] <= sig[i - 1];
      const bool right_ok = i == n - 1 || sig[i] < sig[i + 1];
      if (!left_ok || !right_ok) continue;
      double lo = opt.lo + h * std::max(0, i - 1), hi = opt.lo + h * std::min(n - 1, i + 1);
      if (n == 1) lo = hi = opt.lo;
      while (hi - lo > opt.bracket_width) {
        const double mid = 0.5 * (lo + hi), d = 0.125 * (hi - lo);
        if (P.sigma(mid + d) > P.sigma(mid - d))
          hi = mid + d;
        else
          lo = mid - d;
      }
      const double r = 0.5 * (lo + hi);
      const Eigen::VectorXd sv = P.singular(r);
      const double smin = sv.minCoeff();
      if (!(smin < opt.root_tol)) {
        if (smin < 1e-4)
          notes[mi].push_back("mode " + mode_string(modes[mi]) + ": near-root at " + std::to_string(r) +
                              " did not converge (sigma " + std::to_string(smin) + ")");
        continue;
      }
      if (r < opt.lo - opt.bracket_width || r > opt.hi + opt.bracket_width) continue;
      SpectrumPoint p;
      p.lambda_root = r;
      p.mode = modes[mi];
      p.sigma_min = smin;
      const int pole = vanishing_order([&](double s) { return P.sigma(s); }, r);
      p.pole_order_k = std::max(0, pole - 1);
      p.det_order = vanishing_order([&](double s) { return P.absdet(s); }, r);
      for (int q = 0; q < sv.size(); ++q) p.rank_drop += sv(q) < 1e-6 ? 1 : 0;
      p.order_mismatch = p.det_order != pole * p.rank_drop;
      p.at_window_edge = r - opt.lo < 2.0 * h || opt.hi - r < 2.0 * h;
      if (!found[mi].empty() && std::abs(found[mi].back().lambda_root - r) < opt.root_tol) continue;
      found[mi].push_back(p);
    }
  });

  ImspecResult out;
  for (std::size_t mi = 0; mi < modes.size(); ++mi) {
    out.per_mode.insert(out.per_mode.end(), found[mi].begin(), found[mi].end());
    out.warnings.insert(out.warnings.end(), notes[mi].begin(), notes[mi].end());
  }
  std::stable_sort(out.per_mode.begin(), out.per_mode.end(), [](const SpectrumPoint& x, const SpectrumPoint& y) {
    if (x.lambda_root != y.lambda_root) return x.lambda_root < y.lambda_root;
    return mode_less(x.mode, y.mode);
  });
  for (const auto& p : out.per_mode) {
    if (!out.merged.empty() && std::abs(out.merged.back().lambda_root - p.lambda_root) < 10.0 * opt.root_tol) {
      SpectrumPoint& q = out.merged.back();
      if (p.pole_order_k > q.pole_order_k || (p.pole_order_k == q.pole_order_k && mode_less(p.mode, q.mode))) {
        const double keep = q.lambda_root;
        q = p;
        q.lambda_root = keep;
      }
      continue;
    }
    out.merged.push_back(p);
  }
  for (const auto& p : out.merged) {
    if (p.at_window_edge) out.warnings.push_back("root " + std::to_string(p.lambda_root) + " lies at the window edge");
    if (p.order_mismatch)
      out.warnings.push_back("root " + std::to_string(p.lambda_root) + " in mode " + mode_string(p.mode) +
                             ": det order " + std::to_string(p.det_order) + " differs from pole order times rank drop");
  }
  return out;
}

}  // namespace phicalc
