// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracle/brute_index.hpp"
#include "oracle/display_composition.hpp"
#include "oracle/display_tables.hpp"
#include "phicalc/compose.hpp"
#include "phicalc/imspec.hpp"
#include "phicalc/split_parametrix.hpp"
#include "phicalc/verify.hpp"

using namespace phicalc;

namespace {

constexpr double kCut = 8.0;
constexpr double kWork = 20.0;

struct Outcome {
  bool pass = true;
  std::ostringstream note;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) note << what;
    pass = pass && ok;
  }
};

int failures = 0;

void criterion(int n, const std::string& name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt >= limit_s) o.require(false, "runtime " + std::to_string(dt) + " s over the limit");
  if (!o.pass) ++failures;
  std::printf("%s %d %s (%.2f s / %.0f s)%s%s\n", o.pass ? "PASS" : "FAIL", n, name.c_str(), dt, limit_s,
              o.pass ? "" : ": ", o.note.str().c_str());
  std::fflush(stdout);
}

IndexSet S(std::vector<IndexPair> g) { return IndexSet::make(std::move(g)); }

IndexFamily random_phi(std::mt19937& rng) {
  auto r = [&] { return S(oracle::random_generators(rng, -0.5, 3, 3, 0.25)); };
  return {FamilyKind::phi, r(), r(), r(), r()};
}

ModelGeometry torus11() { return torus_model(1, 1, 1); }

// -Im spec of the scalar component by exact Fourier reduction: +-|j| for every base mode.
std::set<long> exact_integer_roots(double lo, double hi) {
  std::set<long> s;
  for (long j = 0; j <= static_cast<long>(std::ceil(std::max(std::abs(lo), std::abs(hi)))); ++j)
    for (long r : {j, -j})
      if (r >= lo && r <= hi) s.insert(r);
  return s;
}

std::vector<double> computed_spectrum(double lo, double hi, IndicialKind kind = IndicialKind::scalar) {
  ImspecOptions o;
  o.lo = lo;
  o.hi = hi;
  std::vector<double> v;
  for (const auto& p : imspec(torus11(), kind, Frame::dirac_vertical, o).merged)
    v.push_back(p.lambda_root);
  return v;
}

}  // namespace

int main() {
  criterion(1, "index algebra: empty-set identities and closure oracle on 1000 random sets", 10, [](Outcome& o) {
    std::mt19937 rng(1);
    const IndexSet E = IndexSet::empty();
    for (int t = 0; t < 1000; ++t) {
      const auto gens = oracle::random_generators(rng, -2, 6, 4, 0.1);
      const IndexSet I = S(gens);
      o.require(extended_union(I, E) == I && extended_union(E, I) == I, "I u-bar empty != I");
      o.require(add(I, E).is_empty() && add(E, I).is_empty(), "I + empty != empty");
      o.require(add(E, IndexSet::real(0.5 * (t % 7))).is_empty(), "empty + r != empty");
      o.require(add(I, IndexSet::real(0)) == I, "I + 0 != I");
      const oracle::Brute B = oracle::closure(gens, kCut);
      o.require(oracle::agrees(B, I, kCut), "closure oracle disagrees with " + I.to_string(kCut));
      for (int re2 = -6; re2 <= 16; ++re2)
        for (int im : {0, 1})
          for (int k = 0; k <= 4; ++k) {
            const cplx z(re2 / 2.0, im);
            o.require(B.contains(z, k) == I.contains(z, k), "membership differs in " + I.to_string(kCut));
          }
    }
  });

  criterion(2, "composition: 200 random phi-family pairs x (a,b) in {1,2}^2 against the displayed formulas", 30,
            [](Outcome& o) {
              std::mt19937 rng(2);
              int pairs = 0, compared = 0;
              while (pairs < 200) {
                const IndexFamily I = random_phi(rng), J = random_phi(rng);
                if (is_small(I) || is_small(J) || !composable(I, J)) continue;
                ++pairs;
                for (int a : {1, 2})
                  for (int b : {1, 2}) {
                    const GeometryConstants geo{a, b};
                    const ComposeResult r = compose(OpClass::full(Kind::phi, -1, I), OpClass::full(Kind::phi, -1, J), geo);
                    o.require(r.terms.size() == 1, "composition returned a sum");
                    const auto& K = std::get<IndexFamily>(r.terms.at(0).spec);
                    const auto D = oracle::compose_by_display(I, J, geo.A(), kWork);
                    const bool ok = oracle::agrees(D.lf, K.lf, kCut) && oracle::agrees(D.rf, K.rf, kCut) &&
                                    oracle::agrees(D.bf, K.bf, kCut) && oracle::agrees(D.ff, K.ff, kCut);
                    o.require(ok, "mismatch for " + to_string(I) + " o " + to_string(J));
                    ++compared;
                  }
              }
              o.require(compared == 800, "expected 800 comparisons");
            });

  criterion(3, "parametrix replay on (a,m) in {1,2}^2 and admissible weights", 5, [](Outcome& o) {
    const std::vector<double> spectrum = computed_spectrum(-8.5, 8.5);
    int runs = 0;
    for (int a : {1, 2})
      for (int m : {1, 2})
        for (double alpha : {-0.5, 0.0, 0.5, 1.3}) {
          SplitOperator P = SplitOperator::standard(a, m, 1);
          P.imspec = spectrum;
          if (!check_weight(P, alpha) || !check_weight(P.adjoint(), P.am() - alpha)) continue;
          ++runs;
          const std::string at = " at a=" + std::to_string(a) + " m=" + std::to_string(m) + " alpha=" + std::to_string(alpha);
          const FoldContext ctx = P.geometry().fold_context(true);
          auto eq = [&](const ClassMatrix& A, const ClassMatrix& B, const std::string& what) {
            o.require(all_pass(check_equal(A, B, ctx)), what + at);
          };
          auto in = [&](const ClassMatrix& A, const ClassMatrix& B, const std::string& what) {
            o.require(all_pass(check_contained(A, B, ctx)), what + at);
          };
          const oracle::Tables T(a, m, alpha);
          const ParametrixReport r = full_parametrix(P, alpha);
          for (const auto& c : r.checks) o.require(c.pass, c.step + ": " + c.label + at);
          eq(r.s1.Qd, T.Qd(), "Q_d");
          eq(r.s1.Rd, T.Rd(), "R_d");
          in(r.s2.PoQd, T.PoQd(), "P_o Q_d");
          in(r.s2.Qo, T.Qo(), "Q_o");
          in(r.s2.Ro, T.Ro(), "R_o");
          in(r.s2.PoQd2, T.PoQd_sq(), "(P_o Q_d)^2");
          in(r.s3.R3, T.PsiR(), "R_3 in Psi_R");
          in(r.s4.R3sq, T.R3_sq(), "R_3^2");
          ClassMatrix power = r.s4.R3sq;
          for (int N = 1; N <= 3; ++N) {
            if (N > 1) power = simplify(multiply(power, r.s4.R3sq, P.geometry()), ctx);
            in(power, T.R3_pow(N), "R_3^{2N}, N=" + std::to_string(N));
          }
          in(r.s4.Q3R3diag, T.Q3R3_diag(), "Q_3 R_3 diagonal");
          in(r.s4.Q3R3off, T.Q3R3_off(), "Q_3 R_3 off-diagonal");
          eq(r.s3.Qprime, T.Qprime(), "Q'");
          in(r.s4.QprimeR3, T.QprimeR3(), "Q' R_3");
          eq(r.s4.Rpartial, T.Rpartial(), "R_partial");
          in(r.s5.QsigmaRpartial, T.QsigmaRpartial(), "Q^sigma R_partial");
          eq(r.s5.Rr, T.Rright(), "R_r");
          eq(r.Rl, T.Rleft(), "R_l");
          eq(r.s5.Qr, T.Q(), "Q_r");
          eq(r.Ql, T.Q(), "Q_l");
        }
    o.require(runs == 12, "expected 12 admissible (a, m, alpha) runs, got " + std::to_string(runs));

    // Gauss-Bonnet (m=1) and Laplacian (m=2) instances on the torus model
    for (auto [kind, m] : {std::pair{IndicialKind::gauss_bonnet, 1}, std::pair{IndicialKind::laplacian, 2}}) {
      SplitOperator P = SplitOperator::standard(1, m, 1);
      P.imspec = computed_spectrum(-3.5, 3.5, kind);
      o.require(!P.imspec.empty(), std::string(indicial_kind_name(kind)) + " spectrum is empty");
      const double alpha = 0.5;
      o.require(check_weight(P, alpha), std::string(indicial_kind_name(kind)) + ": weight 0.5 inadmissible");
      const ParametrixReport r = full_parametrix(P, alpha);
      o.require(r.pass(), std::string(indicial_kind_name(kind)) + ": a step check failed");
      o.require(all_pass(check_equal(r.s5.Rr, oracle::Tables(1, m, alpha).Rright(), P.geometry().fold_context(true))),
                std::string(indicial_kind_name(kind)) + ": R_r outside x^inf Psi^{-inf,alpha}(Pi + x^am Pi_perp)");
    }
  });

  criterion(4, "model spectrum: scalar roots {-2,...,2} within 1e-8, k=1 at the mode-0 root", 60, [](Outcome& o) {
    const ImspecResult r = imspec(torus11(), IndicialKind::scalar, Frame::dirac_vertical, {});
    const std::set<long> exact = exact_integer_roots(-2.5, 2.5);
    o.require(r.merged.size() == exact.size(), "root count " + std::to_string(r.merged.size()));
    auto it = exact.begin();
    for (std::size_t i = 0; i < r.merged.size() && it != exact.end(); ++i, ++it) {
      const SpectrumPoint& p = r.merged[i];
      o.require(std::abs(p.lambda_root - static_cast<double>(*it)) < 1e-8, "root " + std::to_string(p.lambda_root));
      const bool zero = *it == 0;
      o.require(p.pole_order_k == (zero ? 1 : 0), "pole order at " + std::to_string(*it));
      if (zero) o.require(p.mode == Mode{0}, "zero root not from mode 0");
    }
  });

  criterion(5, "normal family gap on a 21x21 grid over [-5,5]^2", 30, [](Outcome& o) {
    const ModelGeometry g = torus11();
    double lambda1 = std::numeric_limits<double>::infinity();
    for (int m = 1; m <= 3; ++m) lambda1 = std::min(lambda1, std::pow(2 * std::numbers::pi * m / g.fiber_L[0], 2));
    const GapReport rep = gap_grid(g, -5, 5, 21, 3);
    o.require(rep.points.size() == 441, "grid size");
    o.require(rep.invertible, "normal family flagged non-invertible");
    for (const auto& p : rep.points) {
      const double expect = std::sqrt(lambda1 + p.tau * p.tau + p.eta[0] * p.eta[0]);
      o.require(std::abs(p.gap - expect) <= 1e-6, "gap off at tau=" + std::to_string(p.tau));
    }
  });

  criterion(6, "decay: fitted exponents, superpolynomial fibre modes, second-order convergence", 300, [](Outcome& o) {
    const ModelGeometry g = torus11();
    const VerifyReport r = verify_predictions(g);
    for (const auto& f : r.failures) o.require(false, f + "; ");
    int l2_modes = 0, fibre_modes = 0;
    const double af = g.a * g.f();
    for (const auto& v : r.modes) {
      if (!v.fibre_harmonic) {
        ++fibre_modes;
        o.require(v.fit.superpolynomial && v.fit.bound_holds, "fibre mode " + mode_string(v.fit.mode));
        continue;
      }
      const double k = wavevector(g.base_L, v.fit.mode.base).norm();
      const double w = (-af + std::sqrt(af * af + 4 * k * k)) / 2;
      if (!(w > 0)) continue;
      ++l2_modes;
      o.require(v.fit.fitted_exponent > 0, "exponent not positive for " + mode_string(v.fit.mode));
      o.require(std::abs(v.fit.fitted_exponent - w) <= 0.02 * w, "exponent off for " + mode_string(v.fit.mode));
    }
    o.require(l2_modes >= 3 && fibre_modes >= 2, "too few modes checked");
    const ConvergenceReport& c = r.convergence;
    for (double q : {c.residual_ratio_1, c.residual_ratio_2, c.error_ratio_1, c.error_ratio_2})
      o.require(q >= 3.6 && q <= 4.4, "convergence ratio " + std::to_string(q));
  });

  criterion(7, "Fredholm gates on the 0.1-spaced sweep of [-3,3]", 5, [](Outcome& o) {
    const std::vector<double> spectrum = computed_spectrum(-6.5, 6.5);
    const std::set<long> exact = exact_integer_roots(-6.5, 6.5);
    o.require(spectrum.size() == exact.size(), "spectrum size");
    for (int m : {1, 2}) {
      SplitOperator P = SplitOperator::standard(1, m, 1);
      P.imspec = spectrum;
      for (int i = -30; i <= 30; ++i) {
        const double alpha = i / 10.0;
        const FredholmReport f = fredholm_report(P, alpha);
        // alpha - am and alpha hit the integer spectrum exactly when i is a multiple of 10
        const bool on = i % 10 == 0 && exact.count(i / 10 - m) == 1;
        const bool on_dual = i % 10 == 0 && exact.count(i / 10) == 1;
        o.require(f.split_to_l2 == !on, "H^m_split -> L^2 gate at alpha=" + std::to_string(alpha));
        o.require(f.l2_to_split == !on_dual, "L^2 -> H^-m_split gate at alpha=" + std::to_string(alpha));
      }
    }
  });

  return failures == 0 ? 0 : 1;
}
