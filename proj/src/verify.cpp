#include "phicalc/verify.hpp"

#include <cmath>
#include <limits>

#include "phicalc/parallel.hpp"
#include "phicalc/split_parametrix.hpp"

namespace phicalc {

namespace {

HarmonicMode along_first(const ModelGeometry& g, int j, int m) {
  HarmonicMode hm{Mode(g.b(), 0), Mode(g.f(), 0)};
  if (g.b() > 0) hm.base[0] = j;
  if (g.f() > 0) hm.fiber[0] = m;
  return hm;
}

}  // namespace

VerifyReport verify_predictions(const ModelGeometry& g, const VerifyOptions& opt) {
  g.validate();
  VerifyReport R;
  R.alpha = opt.alpha;
  R.spectrum = imspec(g, IndicialKind::scalar, Frame::laplace_beltrami, opt.spectrum);

  // K assembled from the computed Spec_b, for the scalar block as a second-order operator
  SplitOperator P = SplitOperator::standard(g.a, 2, g.b());
  for (const auto& p : R.spectrum.merged) {
    P.imspec.push_back(p.lambda_root);
    P.spec_b.push_back({cplx(p.lambda_root, 0.0), p.pole_order_k});
  }
  const RegularityPrediction pred = regularity_predict(P, opt.alpha, RegularityHypothesis::l2);
  R.K = pred.K;
  const std::vector<IndexPair> predicted = R.K.elements(10.0);

  std::vector<HarmonicMode> modes;
  for (int j = 0; j <= (g.b() > 0 ? opt.base_modes : 0); ++j) modes.push_back(along_first(g, j, 0));
  if (g.f() > 0)
    for (int j = 0; j <= std::min(1, g.b() > 0 ? opt.base_modes : 0); ++j)
      for (int m = 1; m <= opt.fiber_modes; ++m) modes.push_back(along_first(g, j, m));

  R.modes.resize(modes.size());
  parallel_for(modes.size(), [&](std::size_t i) {
    ModeVerdict& v = R.modes[i];
    const HarmonicSolution S = solve_harmonic(g, 0, modes[i], 1.0, opt.grid);
    v.fit = fit_solution(S, opt.fit);
    v.ill_conditioned = S.ill_conditioned;
    bool fibre_zero = true;
    for (int c : modes[i].fiber) fibre_zero = fibre_zero && c == 0;
    v.fibre_harmonic = fibre_zero;
    auto fail = [&](const std::string& s) {
      v.pass = false;
      v.note += (v.note.empty() ? "" : "; ") + s;
    };
    if (v.fit.rejected) fail("fit rejected: " + v.fit.reason);
    if (v.ill_conditioned) fail("solve ill-conditioned");
    if (v.fit.superpolynomial != !fibre_zero)
      fail(fibre_zero ? "fibre-harmonic mode classified superpolynomial" : "fibre mode not superpolynomial");
    if (!fibre_zero) {
      v.l2_fit = v.l2_expected = true;
      if (v.fit.superpolynomial && !v.fit.bound_holds) fail("|u| <= C x^10 fails");
      return;
    }
    v.oracle_exponent = separated_exponent(g, modes[i].base);
    v.l2_expected = check_L2(v.oracle_exponent, opt.alpha);
    // a fitted exponent within fit accuracy of the weight sits on the boundary, which is not L^2
    v.l2_fit = !v.fit.rejected && check_L2(v.fit.fitted_exponent, opt.alpha + opt.boundary_tol);
    if (v.l2_fit != v.l2_expected) fail("L2 membership of the fit differs from the separated root");
    if (!v.l2_expected) return;
    if (!(v.fit.fitted_exponent > opt.alpha)) fail("fitted exponent not above the weight");
    v.rel_err_oracle = std::abs(v.fit.fitted_exponent - v.oracle_exponent) / std::abs(v.oracle_exponent);
    if (!(v.rel_err_oracle <= opt.rel_tol)) fail("fitted exponent off the separated root");
    v.rel_err_predicted = std::numeric_limits<double>::infinity();
    for (const auto& e : predicted) {
      const double d = std::abs(v.fit.fitted_exponent - e.z.real()) / std::max(std::abs(e.z.real()), 1e-300);
      if (d < v.rel_err_predicted) {
        v.rel_err_predicted = d;
        v.nearest_predicted = e.z.real();
      }
    }
    if (!(v.rel_err_predicted <= opt.rel_tol)) fail("fitted exponent not near the predicted index set");
  });
  for (const auto& v : R.modes)
    if (!v.pass) R.failures.push_back(mode_string(v.fit.mode) + ": " + v.note);

  if (g.b() > 0) {
    R.convergence = convergence_check(g, along_first(g, 1, 0).base, opt.grid);
    if (!R.convergence.pass) R.failures.push_back("convergence ratios outside [3.6, 4.4]");
  }
  return R;
}

}  // namespace phicalc
