#include "phicalc/split_parametrix.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace phicalc {

namespace {

constexpr double kWeightTol = 1e-9;

OpClass W(double order, double alpha) { return OpClass::weighted(Kind::phi_ext, order, alpha); }
OpClass Wb(double order, double alpha) { return OpClass::weighted(Kind::b, order, alpha); }
OpClass small_phi(double order) { return OpClass::small(Kind::phi_ext, order); }

FoldContext ctx_for(const SplitOperator& P) { return P.geometry().fold_context(true); }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

void record(std::vector<Check>* log, const std::string& step, const std::string& label, const ClassMatrix& target,
            const std::vector<EntryVerdict>& v) {
  if (!log) return;
  Check c{step, label, to_string(target), all_pass(v), ""};
  for (const auto& e : v)
    if (!e.pass) c.detail += "(" + std::to_string(e.i) + "," + std::to_string(e.j) + "): " + e.detail + "; ";
  log->push_back(c);
}

void record_flag(std::vector<Check>* log, const std::string& step, const std::string& label, bool pass,
                 const std::string& detail = "") {
  if (log) log->push_back({step, label, "", pass, detail});
}

ClassMatrix pick(const ClassMatrix& M, bool diagonal) {
  ClassMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if ((i == j) == diagonal) r.e[i][j] = M.e[i][j];
  return r;
}

ClassMatrix left_power(const ClassMatrix& M, double c) {
  ClassMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (const auto& t : M.e[i][j]) r.e[i][j].push_back(given(t->cls.left(c)));
  return r;
}

ClassMatrix map_terms(const ClassMatrix& M, const std::string& rule, OpClass (*f)(const OpClass&)) {
  ClassMatrix r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (const auto& t : M.e[i][j]) r.e[i][j].push_back(unary(f(t->cls), rule, t));
  return r;
}

OpClass vanish_lf(const OpClass& c) { return c.vanishing_lf(); }

double min_face(const ClassMatrix& M, Face f, int col = -1) {
  double v = kInf;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (col >= 0 && j != col) continue;
      for (const auto& t : M.e[i][j]) {
        const Folded fd = fold(t->cls);
        if (f == Face::ff && !fd.bounds.has_ff()) continue;
        v = std::min(v, fd.bounds.at(f).v);
      }
    }
  return v;
}

}  // namespace

SplitOperator SplitOperator::standard(int a, int m, int b_dim) {
  if (a < 1 || m < 1) throw std::invalid_argument("split operator needs a >= 1 and m >= 1");
  SplitOperator P;
  P.a = a;
  P.m = m;
  P.b_dim = b_dim;
  P.P00 = OpClass::small(Kind::b, m);
  P.P01 = P.P10 = P.P11 = small_phi(m);
  return P;
}

SplitOperator SplitOperator::adjoint() const {
  SplitOperator Q = *this;
  Q.P00 = adjoint_class(P00);
  Q.P01 = adjoint_class(P10);
  Q.P10 = adjoint_class(P01);
  Q.P11 = adjoint_class(P11);
  Q.imspec.clear();
  for (double s : imspec) Q.imspec.push_back(-s - am());
  Q.spec_b.clear();
  return Q;
}

bool check_weight(const SplitOperator& P, double alpha) {
  if (P.imspec.empty()) throw MissingHypothesis("spectrum of P00 not supplied: weight condition unverifiable");
  const double w = alpha - P.am();
  for (double s : P.imspec)
    if (std::abs(w - s) <= kWeightTol) return false;
  return true;
}

ClassMatrix theorem_Q_class(int a, int m, double alpha) {
  const double c = static_cast<double>(a) * m;
  return ClassMatrix::of({Wb(-m, alpha).left(-c), OpClass::bphi(-m)}, {W(-m, alpha).left(-c).right(c)},
                         {W(-m, alpha)}, {small_phi(-m), W(-m, alpha).right(c)});
}

ClassMatrix right_remainder_class(int a, int m, double alpha) {
  OpClass R = OpClass::weighted(Kind::phi, -kInf, alpha).left(kInf);
  R.proj = ProjDecoration{ProjDecoration::Side::right, static_cast<double>(a) * m};
  return ClassMatrix::expand(R);
}

ClassMatrix left_remainder_class(int a, int m, double alpha) {
  const double c = static_cast<double>(a) * m;
  OpClass R = OpClass::weighted(Kind::phi, -kInf, alpha).left(-c).right(kInf);
  R.proj = ProjDecoration{ProjDecoration::Side::left, c};
  return ClassMatrix::expand(R);
}

ClassMatrix remainder_space(int a, int m, double alpha) {
  const double c = static_cast<double>(a) * m;
  const OpClass L = W(0, alpha).vanishing_lf();
  return ClassMatrix::of({L.left(c)}, {L.right(c)}, {L}, {L.right(c)});
}

Step1 step1_diagonal(const SplitOperator& P, double alpha, std::vector<Check>* log) {
  if (!check_weight(P, alpha))
    throw WeightConditionError("weight condition fails: alpha - am = " + fmt(alpha - P.am()) +
                               " lies in -Im spec(P00)");
  if (!P.normal_invertible) throw MissingHypothesis("normal operator of P11 is not invertible");
  const double c = P.am();
  const int m = P.m;
  // primitives: b-parametrix of x^{am} P00 x^{-am} and the suspended inverse of N(P11)
  const TermPtr Q00 = given(Wb(-m, alpha), "b-parametrix");
  const TermPtr R00b = given(Wb(0, alpha).left(kInf), "b-parametrix");
  const TermPtr R00 = unary(apply_infinite_power_rule(R00b->cls), "e", R00b);
  const TermPtr Q11 = given(small_phi(-m), "normal-inverse");
  const TermPtr R11 = given(small_phi(0).left(kInf), "normal-inverse");
  Step1 s;
  s.Qd.e[0][0].push_back(given(Q00->cls.left(-c), "x-power"));
  s.Qd.e[1][1].push_back(Q11);
  s.Rd.e[0][0].push_back(R00);
  s.Rd.e[1][1].push_back(R11);
  const FoldContext ctx = ctx_for(P);
  const ClassMatrix Qd_t = ClassMatrix::diag(Wb(-m, alpha).left(-c), small_phi(-m));
  const ClassMatrix Rd_t = ClassMatrix::diag(W(0, alpha).left(kInf), small_phi(0).left(kInf));
  record(log, "step1", "Q_d equals its display", Qd_t, check_equal(s.Qd, Qd_t, ctx));
  record(log, "step1", "R_d equals its display", Rd_t, check_equal(s.Rd, Rd_t, ctx));
  return s;
}

Step2 step2_offdiagonal(const SplitOperator& P, double alpha, const Step1& s1, std::vector<Check>* log) {
  const double c = P.am();
  const int m = P.m;
  const GeometryConstants geo = P.geometry();
  const FoldContext ctx = ctx_for(P);
  Step2 s;
  s.Po = ClassMatrix::offdiag(P.P01.is_zero() ? OpClass::zero() : P.P01.left(c),
                              P.P10.is_zero() ? OpClass::zero() : P.P10.left(c));
  s.PoQd = multiply(s.Po, s1.Qd, geo);
  s.Qo = multiply(s1.Qd, s.PoQd, geo);
  s.Ro = multiply(s1.Rd, s.PoQd, geo);
  s.PoQd2 = multiply(s.PoQd, s.PoQd, geo);
  s.Q2 = sum(s1.Qd, s.Qo);
  s.R2 = sum(sum(s1.Rd, s.Ro), s.PoQd2);

  const ClassMatrix PoQd_t = ClassMatrix::offdiag(small_phi(0).right(c), W(0, alpha));
  const ClassMatrix Qo_t = ClassMatrix::offdiag(W(-m, alpha).left(-c).right(c), W(-m, alpha));
  const ClassMatrix Ro_t = ClassMatrix::offdiag(W(0, alpha).left(kInf).right(c), W(0, alpha).left(kInf));
  const ClassMatrix Sq_t = ClassMatrix::diag(W(0, alpha).left(c), W(0, alpha).right(c));
  record(log, "step2", "P_o Q_d in its display", PoQd_t, check_contained(s.PoQd, PoQd_t, ctx));
  record(log, "step2", "Q_o = Q_d P_o Q_d in its display", Qo_t, check_contained(s.Qo, Qo_t, ctx));
  record(log, "step2", "R_o = R_d P_o Q_d in its display", Ro_t, check_contained(s.Ro, Ro_t, ctx));
  record(log, "step2", "(P_o Q_d)^2 in its display", Sq_t, check_contained(s.PoQd2, Sq_t, ctx));
  return s;
}

Step3 step3_lf_correction(const SplitOperator& P, double alpha, const ClassMatrix& R2, const ClassMatrix& Q2,
                          std::vector<Check>* log) {
  const double c = P.am();
  const FoldContext ctx = ctx_for(P);
  Step3 s;
  s.Rcut = map_terms(R2, "cut-lf", cut_near_lf);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (const auto& t : s.Rcut.e[i][j]) {
        const Folded f = fold(t->cls);
        const double lf_floor = i == 0 ? alpha + c : alpha;
        const bool ok = implies(f.bounds.lf, IndexBound::gt(lf_floor)) && implies(f.bounds.bf, IndexBound::ge(c));
        if (!ok) {
          const std::string what = "lf-correction hypothesis fails at (" + std::to_string(i) + "," +
                                   std::to_string(j) + "): " + to_string(t->cls) + " needs lf > " + fmt(lf_floor) +
                                   ", bf >= " + fmt(c);
          record_flag(log, "step3", "hypothesis rows of the lf correction", false, what);
          throw HypothesisViolation(what, i, j);
        }
      }
  record_flag(log, "step3", "hypothesis rows of the lf correction", true);

  const OpClass Lb = OpClass::weighted(Kind::b_ext, -kInf, alpha).vanishing_rf();
  s.Qprime = ClassMatrix::of({Lb}, {Lb}, {Lb.right(c)}, {Lb.right(c)});
  BoundFamily Bpp;
  Bpp.kind = FamilyKind::b;
  Bpp.bf = IndexBound::ge(c);
  s.Rpp = ClassMatrix::uniform(OpClass::bounded(Kind::b_ext, -kInf, Bpp));
  s.R3 = sum(map_terms(R2, "vanish-lf", vanish_lf), s.Rpp);
  s.Q3 = sum(Q2, s.Qprime);

  const ClassMatrix PsiR = remainder_space(P.a, P.m, alpha);
  record(log, "step3", "R_3 in Psi_R", PsiR, check_contained(s.R3, PsiR, ctx));
  return s;
}

Step4 step4_neumann(const SplitOperator& P, double alpha, const Step1& s1, const Step2& s2, const Step3& s3,
                    int max_power, std::vector<Check>* log) {
  const double c = P.am();
  const int m = P.m;
  const GeometryConstants geo = P.geometry();
  const FoldContext ctx = ctx_for(P);
  const ClassMatrix PsiR = remainder_space(P.a, m, alpha);
  const OpClass L = W(0, alpha).vanishing_lf();
  Step4 s;

  record_flag(log, "step4", "Psi_{phi,lf} x^am inside x^am Psi_{phi,lf}", contained(L.right(c), L.left(c), ctx));

  s.R3sq = simplify(multiply(PsiR, PsiR, geo), ctx);
  const ClassMatrix sq_t = ClassMatrix::of({L.left(c)}, {L.left(c).right(c)}, {L.left(c)}, {L.right(c)});
  record(log, "step4", "R_3^2 in its display", sq_t, check_contained(s.R3sq, sq_t, ctx));

  ClassMatrix power = s.R3sq;
  std::vector<double> rf_col0, rf_col1;
  for (int N = 1; N <= max_power; ++N) {
    if (N > 1) power = simplify(multiply(power, s.R3sq, geo), ctx);
    const ClassMatrix target = left_power(PsiR, (N - 1) * c);
    record(log, "step4", "R_3^{2N} in x^{(N-1)am} Psi_R, N=" + std::to_string(N), target,
           check_contained(power, target, ctx));
    s.bf_floor.push_back(min_face(power, Face::bf));
    rf_col0.push_back(min_face(power, Face::rf, 0));
    rf_col1.push_back(min_face(power, Face::rf, 1));
  }
  bool grows = true, stable = true;
  for (std::size_t n = 0; n < s.bf_floor.size(); ++n) {
    if (s.bf_floor[n] < static_cast<double>(n) * c - kWeightTol) grows = false;
    if (n > 0 && !(s.bf_floor[n] > s.bf_floor[n - 1])) grows = false;
    if (n > 0 && (std::abs(rf_col0[n] - rf_col0[0]) > kWeightTol || std::abs(rf_col1[n] - rf_col1[0]) > kWeightTol))
      stable = false;
  }
  std::string floors;
  for (double v : s.bf_floor) floors += fmt(v) + " ";
  record_flag(log, "step4", "bf exponents of R_3^{2N} grow like (N-1)am", grows, "bf floors: " + floors);
  record_flag(log, "step4", "rf exponents of R_3^N stabilize", stable);

  // R_3' = sum of R_3^N lies in Psi_R; split it into diagonal and off-diagonal parts
  const ClassMatrix Rtd = pick(PsiR, true), Rto = pick(PsiR, false);
  s.Q3R3diag = sum(multiply(s1.Qd, Rtd, geo), multiply(s2.Qo, Rto, geo));
  s.Q3R3off = sum(multiply(s1.Qd, Rto, geo), multiply(s2.Qo, Rtd, geo));
  s.QprimeR3 = multiply(s3.Qprime, PsiR, geo);

  const ClassMatrix diag_t = ClassMatrix::of({Wb(-kInf, alpha).left(-c), OpClass::bphi(-m)}, {}, {},
                                                {W(-m, alpha).right(c)});
  const ClassMatrix off_t = ClassMatrix::offdiag(W(-m, alpha).left(-c).right(c), W(-m, alpha));
  const OpClass Lbr = OpClass::weighted(Kind::b_ext, -kInf, alpha).vanishing_rf();
  const ClassMatrix qp_t = ClassMatrix::of({Lbr}, {Lbr}, {Lbr.right(c)}, {Lbr.right(c)});
  OpClass qr3 = W(-kInf, alpha);
  qr3.proj = ProjDecoration{ProjDecoration::Side::right, c};
  const ClassMatrix qr3_t = ClassMatrix::expand(qr3);
  record(log, "step4", "Q_d R~_d + Q_o R~_o in its display", diag_t, check_contained(s.Q3R3diag, diag_t, ctx));
  record(log, "step4", "Q_d R~_o + Q_o R~_d in its display", off_t, check_contained(s.Q3R3off, off_t, ctx));
  record(log, "step4", "Q' in its display", qp_t, check_equal(s3.Qprime, qp_t, ctx));
  record(log, "step4", "Q' R_3' in its display", qr3_t, check_contained(s.QprimeR3, qr3_t, ctx));

  s.Qpartial = sum(sum(s3.Q3, sum(s.Q3R3diag, s.Q3R3off)), s.QprimeR3);
  OpClass rp = W(0, alpha).left(kInf);
  rp.proj = ProjDecoration{ProjDecoration::Side::right, c};
  s.Rpartial = ClassMatrix::expand(rp);
  record(log, "step4", "Q_partial in the parametrix class", theorem_Q_class(P.a, m, alpha),
         check_contained(s.Qpartial, theorem_Q_class(P.a, m, alpha), ctx));
  return s;
}

Step5 step5_interior(const SplitOperator& P, double alpha, const Step4& s4, std::vector<Check>* log) {
  if (!P.elliptic) throw MissingHypothesis("P is not phi-elliptic: no small parametrix");
  const double c = P.am();
  const int m = P.m;
  const GeometryConstants geo = P.geometry();
  const FoldContext ctx = ctx_for(P);
  Step5 s;
  const ClassMatrix Qsigma = ClassMatrix::uniform(small_phi(-m));
  const ClassMatrix Rsigma = ClassMatrix::uniform(small_phi(-kInf));
  s.QsigmaRpartial = multiply(Qsigma, s4.Rpartial, geo);
  s.Rr = multiply(Rsigma, s4.Rpartial, geo);
  s.Qr = sum(s4.Qpartial, s.QsigmaRpartial);

  OpClass qs = W(-m, alpha).left(kInf);
  qs.proj = ProjDecoration{ProjDecoration::Side::right, c};
  const ClassMatrix qs_t = ClassMatrix::expand(qs);
  record(log, "step5", "Q^sigma R_partial in its display", qs_t, check_contained(s.QsigmaRpartial, qs_t, ctx));
  const ClassMatrix Rr_t = right_remainder_class(P.a, m, alpha);
  record(log, "step5", "R_r equals the right remainder class", Rr_t, check_equal(s.Rr, Rr_t, ctx));
  const ClassMatrix Q_t = theorem_Q_class(P.a, m, alpha);
  record(log, "step5", "Q_r equals the parametrix class", Q_t, check_equal(s.Qr, Q_t, ctx));
  record_flag(log, "step5", "every derivation chain replays", replay(s.Qr, geo) && replay(s.Rr, geo));
  return s;
}

bool ParametrixReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

ParametrixReport right_parametrix(const SplitOperator& P, double alpha) {
  ParametrixReport r;
  r.a = P.a;
  r.m = P.m;
  r.alpha = alpha;
  r.s1 = step1_diagonal(P, alpha, &r.checks);
  try {
    r.s2 = step2_offdiagonal(P, alpha, r.s1, &r.checks);
    r.s3 = step3_lf_correction(P, alpha, r.s2.R2, r.s2.Q2, &r.checks);
    r.s4 = step4_neumann(P, alpha, r.s1, r.s2, r.s3, 3, &r.checks);
    r.s5 = step5_interior(P, alpha, r.s4, &r.checks);
  } catch (const HypothesisViolation&) {
    throw;
  } catch (const MissingHypothesis&) {
    throw;
  } catch (const std::exception& e) {
    r.checks.push_back({"construction", "composition rules apply", "", false, e.what()});
  }
  return r;
}

ParametrixReport full_parametrix(const SplitOperator& P, double alpha) {
  ParametrixReport r = right_parametrix(P, alpha);
  const double alpha_adj = P.am() - alpha;
  const ParametrixReport ra = right_parametrix(P.adjoint(), alpha_adj);
  for (auto c : ra.checks) {
    c.step = "adjoint " + c.step;
    r.checks.push_back(c);
  }
  const FoldContext ctx = ctx_for(P);
  r.Ql = adjoint(ra.s5.Qr);
  r.Rl = adjoint(ra.s5.Rr);
  const ClassMatrix Rl_t = left_remainder_class(P.a, P.m, alpha);
  const ClassMatrix Q_t = theorem_Q_class(P.a, P.m, alpha);
  record(&r.checks, "left", "R_l equals the left remainder class", Rl_t, check_equal(r.Rl, Rl_t, ctx));
  record(&r.checks, "left", "Q_l equals the parametrix class", Q_t, check_equal(r.Ql, Q_t, ctx));
  record(&r.checks, "left", "adjoint of the right remainder class at am - alpha", Rl_t,
         check_equal(adjoint(right_remainder_class(P.a, P.m, alpha_adj)), Rl_t, ctx));
  record_flag(&r.checks, "left", "every derivation chain replays",
              replay(r.Ql, P.geometry()) && replay(r.Rl, P.geometry()));
  return r;
}

FredholmReport fredholm_report(const SplitOperator& P, double alpha) {
  if (P.imspec.empty()) throw MissingHypothesis("spectrum of P00 not supplied: weight condition unverifiable");
  FredholmReport f;
  f.alpha = alpha;
  auto dist = [&](double w) {
    double d = kInf;
    for (double s : P.imspec) d = std::min(d, std::abs(w - s));
    return d;
  };
  f.split_to_l2_distance = dist(alpha - P.am());
  f.l2_to_split_distance = dist(alpha);
  f.split_to_l2 = f.split_to_l2_distance > kWeightTol;
  f.l2_to_split = f.l2_to_split_distance > kWeightTol;
  const std::string a = fmt(alpha);
  f.statements.push_back(std::string(f.split_to_l2 ? "Fredholm" : "not certified") + ": x^" + a +
                         " H^m_split -> x^" + a + " L^2 (alpha - am = " + fmt(alpha - P.am()) +
                         (f.split_to_l2 ? " avoids" : " lies in") + " -Im spec P00)");
  f.statements.push_back(std::string(f.l2_to_split ? "Fredholm" : "not certified") + ": x^" + a + " L^2 -> x^" + a +
                         " H^{-m}_split (alpha" + (f.l2_to_split ? " avoids" : " lies in") + " -Im spec P00)");
  return f;
}

RegularityPrediction regularity_predict(const SplitOperator& P, double alpha, RegularityHypothesis h) {
  RegularityPrediction r;
  std::vector<IndexPair> gens;
  bool missing = false;
  if (P.spec_b.empty()) {
    for (double s : P.imspec)
      if (s > alpha + kWeightTol) gens.push_back({cplx(s, 0.0), 0});
    missing = true;
  } else {
    for (const auto& p : P.spec_b) {
      if (!(p.exponent.real() > alpha + kWeightTol)) continue;
      if (p.pole_order_k < 0) missing = true;
      gens.push_back({p.exponent, std::max(p.pole_order_k, 0)});
    }
  }
  if (missing) r.warnings.push_back("pole orders not supplied: log powers set to 0, exponents only");
  r.K = IndexSet::make(gens);
  if (h == RegularityHypothesis::split_sobolev) {
    r.pi_power = -P.am();
    r.perp_power = 0.0;
  } else {
    r.pi_power = 0.0;
    r.perp_power = P.am();
  }
  r.pi_set = shift(r.K, r.pi_power);
  r.perp_set = shift(r.K, r.perp_power);
  return r;
}

}  // namespace phicalc
