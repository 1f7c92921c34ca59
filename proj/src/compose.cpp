#include "phicalc/compose.hpp"

#include <algorithm>
#include <cmath>

namespace phicalc {

namespace {

constexpr double kTol = 1e-9;

Kind merged_kind(bool phi, bool ext) {
  if (phi) return ext ? Kind::phi_ext : Kind::phi;
  return ext ? Kind::b_ext : Kind::b;
}

bool either_ext(const OpClass& P, const OpClass& Q) { return is_ext(P.kind) || is_ext(Q.kind); }

double sum_orders(double k, double l) {
  if (k == -kInf || l == -kInf) return -kInf;
  return k + l;
}

ComposeResult single(OpClass c, std::string rule) {
  ComposeResult r;
  r.terms.push_back(std::move(c));
  r.rules.push_back(std::move(rule));
  return r;
}

OpClass strip_powers(OpClass c) {
  c.xl = c.xr = 0.0;
  return c;
}

// Range of weights a weighted class also belongs to: vanishing at rf lets the
// weight decrease, vanishing at lf lets it increase.
struct WeightRange {
  double lo, hi;
};

WeightRange weight_range(const OpClass& W) {
  const double a = W.weight();
  return {W.rf_vanish ? -kInf : a, W.lf_vanish ? kInf : a};
}

std::optional<double> unify(double a1, WeightRange r1, double a2, WeightRange r2, bool lfv, bool rfv) {
  const double lo = std::max(r1.lo, r2.lo), hi = std::min(r1.hi, r2.hi);
  if (lo > hi + kTol) return std::nullopt;
  auto inside = [&](double v) { return v >= lo - kTol && v <= hi + kTol; };
  if (rfv && !lfv && std::isfinite(hi)) return hi;
  if (lfv && !rfv && std::isfinite(lo)) return lo;
  if (inside(a1)) return a1;
  if (inside(a2)) return a2;
  return std::isfinite(lo) ? lo : hi;
}

OpClass as_phi(OpClass c) {
  c.kind = is_ext(c.kind) ? Kind::phi_ext : Kind::phi;
  return c;
}

// Weighted classes with no middle power: rules a), b), g), and c) for mixed calculi.
std::optional<ComposeResult> compose_weighted_core(const OpClass& P, const OpClass& Q) {
  const bool lfv = P.lf_vanish && Q.lf_vanish;
  const bool rfv = P.rf_vanish && Q.rf_vanish;
  const auto alpha = unify(P.weight(), weight_range(P), Q.weight(), weight_range(Q), lfv, rfv);
  if (!alpha) return std::nullopt;
  const bool ext = either_ext(P, Q);
  const double order = sum_orders(P.order, Q.order);
  const bool pb = is_b_calculus(P.kind), qb = is_b_calculus(Q.kind);
  OpClass r = OpClass::weighted(merged_kind(!(pb && qb), ext), order, *alpha);
  r.xl = P.xl;
  r.xr = Q.xr;
  r.lf_vanish = lfv;
  r.rf_vanish = rfv;
  if (pb && qb) return single(r, "a");
  if (!pb && !qb) return single(r, ext ? "b,g" : "b");
  const OpClass& bpart = pb ? P : Q;
  if (bpart.order < 0.0) return single(r, "c,b");
  return std::nullopt;
}

// Rule f) and its adjoint form; c is the middle power.
std::optional<ComposeResult> rule_f(const OpClass& P, const OpClass& Q, double c) {
  if (!(c >= 0.0)) return std::nullopt;
  const auto alpha = unify(P.weight(), weight_range(P), Q.weight(), weight_range(Q), false, false);
  if (!alpha) return std::nullopt;
  const double order = sum_orders(P.order, Q.order);
  const bool direct = P.order <= 0.0 && is_phi_calculus(Q.kind);
  const bool mirrored = Q.order <= 0.0 && is_phi_calculus(P.kind);
  if (!direct && !mirrored) return std::nullopt;
  OpClass bext = OpClass::weighted(Kind::b_ext, -kInf, *alpha);
  bext.xl = P.xl;
  bext.xr = Q.xr;
  bext.lf_vanish = P.lf_vanish && Q.lf_vanish;
  bext.rf_vanish = P.rf_vanish && Q.rf_vanish;
  OpClass bp = OpClass::bphi(order);
  bp.xl = P.xl;
  bp.xr = Q.xr;
  if (direct)
    bp.xl = P.xl + c;
  else
    bp.xr = Q.xr + c;
  ComposeResult r;
  r.terms = {apply_infinite_power_rule(bext), bp};
  const std::string name = direct ? "f" : "f*";
  r.rules = {name, name};
  return r;
}

bool is_bphi(const OpClass& c) { return c.kind == Kind::bphi && std::holds_alternative<std::monostate>(c.spec); }

// Factors that commute with powers of x.
bool commutes_with_x(const OpClass& c) { return c.is_small() || is_bphi(c); }

ComposeResult compose_weight_tier(OpClass P, OpClass Q) {
  const double c = P.xr + Q.xl;
  if (std::isnan(c)) throw std::invalid_argument("middle power x^inf * x^-inf");
  if (commutes_with_x(P)) {
    P.xl += c;
    P.xr = 0.0;
    Q.xl = 0.0;
  } else if (commutes_with_x(Q)) {
    Q.xr += c;
    Q.xl = 0.0;
    P.xr = 0.0;
  }
  const double mid = P.xr + Q.xl;

  if (P.is_small() || Q.is_small()) {
    const bool left = P.is_small();
    OpClass S = left ? P : Q;
    OpClass W = left ? Q : P;
    if (is_b_calculus(S.kind) && is_phi_calculus(W.kind) && (W.has_weight() || is_bphi(W))) {
      // a small b class lies in every weighted b class
      OpClass Sw = OpClass::weighted(S.kind, S.order, W.has_weight() ? W.weight() : 0.0);
      Sw.lf_vanish = Sw.rf_vanish = true;
      Sw.xl = S.xl;
      Sw.xr = S.xr;
      (left ? P : Q) = Sw;
    } else {
      if (is_b_calculus(S.kind) && is_phi_calculus(W.kind))
        throw NoRule("small b factor with a phi family class");
      if (is_phi_calculus(S.kind) && is_b_calculus(W.kind)) {
        if (!(W.order < 0.0))
          throw NoRule("small phi factor with a b-class of order >= 0: no lifting available");
        W = as_phi(W);
      }
      W.order = sum_orders(S.order, W.order);
      if (is_ext(S.kind) && W.kind != Kind::bphi) W.kind = merged_kind(is_phi_calculus(W.kind), true);
      if (left)
        W.xl = P.xl;
      else
        W.xr = Q.xr;
      return single(apply_infinite_power_rule(W), "small");
    }
  }

  if (is_bphi(P) && is_bphi(Q)) {
    OpClass r = OpClass::bphi(sum_orders(P.order, Q.order));
    r.xl = P.xl;
    r.xr = Q.xr;
    return single(r, "bphi");
  }
  if (is_bphi(P) || is_bphi(Q)) {
    const bool left = is_bphi(P);
    const OpClass& B = left ? P : Q;
    OpClass W = left ? Q : P;
    if (!W.has_weight()) throw NoRule("bphi factor with a non-weighted class");
    if (is_b_calculus(W.kind)) {
      if (W.order < 0.0) {
        W = as_phi(W);
      } else {
        OpClass Bw = B;
        Bw.spec = Weight{W.weight()};
        Bw.lf_vanish = Bw.rf_vanish = true;
        auto f = left ? rule_f(Bw, W, 0.0) : rule_f(W, Bw, 0.0);
        if (f) return *f;
        throw NoRule("bphi factor with a b-class of positive order");
      }
    }
    W.order = sum_orders(B.order, W.order);
    W.kind = merged_kind(true, is_ext(W.kind));
    if (left)
      W.xl = P.xl;
    else
      W.xr = Q.xr;
    return single(W, "bphi");
  }

  if (!P.has_weight() || !Q.has_weight()) throw NoRule("weight tier needs weighted classes");

  if (std::abs(mid) <= kTol) {
    if (auto r = compose_weighted_core(P, Q)) return *r;
    if (auto r = rule_f(P, Q, 0.0)) return *r;
    throw NoRule("weights cannot be matched: " + to_string(P) + " o " + to_string(Q));
  }

  if (std::isfinite(mid)) {
    // move x^mid to the far left through P
    {
      OpClass P2 = conjugate_by_power(P, mid);
      P2.xr = 0.0;
      P2.xl = P.xl + mid;
      OpClass Q2 = Q;
      Q2.xl = 0.0;
      if (auto r = compose_weighted_core(P2, Q2)) {
        for (auto& rule : r->rules) rule = "d," + rule;
        return *r;
      }
    }
    // move x^mid to the far right through Q
    {
      OpClass Q2 = conjugate_by_power(Q, -mid);
      Q2.xl = 0.0;
      Q2.xr = Q.xr + mid;
      OpClass P2 = P;
      P2.xr = 0.0;
      if (auto r = compose_weighted_core(P2, Q2)) {
        for (auto& rule : r->rules) rule = "d," + rule;
        return *r;
      }
    }
  }
  {
    OpClass P2 = P, Q2 = Q;
    P2.xr = Q2.xl = 0.0;
    if (auto r = rule_f(P2, Q2, mid)) return *r;
  }
  throw NoRule("no composition rule applies to " + to_string(P) + " o " + to_string(Q));
}

IndexFamily folded_family(const OpClass& c) {
  IndexFamily F = std::get<IndexFamily>(c.spec);
  if (c.lf_vanish) F.lf = IndexSet::empty();
  if (c.rf_vanish) F.rf = IndexSet::empty();
  return fold_right_power(fold_left_power(F, c.xl), c.xr);
}

ComposeResult compose_full(const OpClass& P, const OpClass& Q, const GeometryConstants& geo) {
  const bool ext = either_ext(P, Q);
  std::vector<std::pair<OpClass, std::string>> lp, lq;
  auto lifted = [&](const OpClass& c, std::vector<std::pair<OpClass, std::string>>& out) {
    if (is_phi_calculus(c.kind)) {
      OpClass f = strip_powers(c);
      f.spec = folded_family(c);
      f.lf_vanish = f.rf_vanish = false;
      out.emplace_back(f, "");
      return;
    }
    if (!(c.order < 0.0)) throw NoRule("b-class of order >= 0 cannot enter the phi composition theorem");
    const LiftResult L = lift_b_to_phi(c, geo.a, geo.b_dim);
    out.emplace_back(L.main, "lift,");
    out.emplace_back(L.remainder, "lift,");
  };
  lifted(P, lp);
  lifted(Q, lq);
  ComposeResult r;
  for (const auto& [p, rp] : lp)
    for (const auto& [q, rq] : lq) {
      const auto& I = std::get<IndexFamily>(p.spec);
      const auto& J = std::get<IndexFamily>(q.spec);
      if (!composable(I, J))
        throw NonIntegrable("integrability condition I_rf + J_lf > 0 fails: " + to_string(I) + " o " + to_string(J));
      r.terms.push_back(OpClass::full(merged_kind(true, ext), sum_orders(p.order, q.order),
                                      compose_phi_families(I, J, geo.A())));
      r.rules.push_back(rp + rq + "thm");
    }
  return r;
}

ComposeResult compose_bounds(const OpClass& P, const OpClass& Q, const GeometryConstants& geo) {
  const FoldContext ctx = geo.fold_context();
  std::vector<Folded> fp, fq;
  try {
    fp = fold_as_phi(P, ctx);
    fq = fold_as_phi(Q, ctx);
  } catch (const UnsupportedOperation& e) {
    throw NoRule(e.what());
  }
  const bool ext = either_ext(P, Q);
  ComposeResult r;
  for (const auto& p : fp)
    for (const auto& q : fq) {
      if (!composable(p.bounds, q.bounds))
        throw NonIntegrable("integrability condition I_rf + J_lf > 0 fails: " + to_string(p.bounds) + " o " +
                            to_string(q.bounds));
      r.terms.push_back(OpClass::bounded(merged_kind(true, ext), sum_orders(p.order, q.order),
                                         compose_phi_families(p.bounds, q.bounds, geo.A())));
      r.rules.push_back("thm-bounds");
    }
  return r;
}

bool is_full_nonsmall(const OpClass& c) { return std::holds_alternative<IndexFamily>(c.spec) && !c.is_small(); }

}  // namespace

OpClass apply_infinite_power_rule(const OpClass& c) {
  if (is_b_calculus(c.kind) && c.has_weight() && (c.xl == kInf || c.xr == kInf)) return as_phi(c);
  return c;
}

ComposeResult compose(const OpClass& P0, const OpClass& Q0, const std::optional<GeometryConstants>& geo) {
  if (P0.is_zero() || Q0.is_zero()) return single(OpClass::zero(), "zero");
  if (P0.proj || Q0.proj) throw std::invalid_argument("expand projector decorations before composing");
  const OpClass P = apply_infinite_power_rule(P0), Q = apply_infinite_power_rule(Q0);

  const bool pf = std::holds_alternative<IndexFamily>(P.spec), qf = std::holds_alternative<IndexFamily>(Q.spec);
  if (pf && qf && !P.is_small() && !Q.is_small()) {
    if (is_b_calculus(P.kind) && is_b_calculus(Q.kind))
      throw UnsupportedOperation("composition of full b-families is not available");
    if (!geo) throw std::invalid_argument("phi composition needs the geometry constants a, b");
    return compose_full(P, Q, *geo);
  }
  if (pf && qf && P.is_small() && Q.is_small()) {
    if (P.kind != Q.kind && is_b_calculus(P.kind) != is_b_calculus(Q.kind))
      throw NoRule("small b and small phi factors do not compose within one calculus");
  }

  const bool bounds_needed = std::holds_alternative<BoundFamily>(P.spec) ||
                             std::holds_alternative<BoundFamily>(Q.spec) ||
                             ((is_full_nonsmall(P) || is_full_nonsmall(Q)) && !P.is_small() && !Q.is_small());
  if (bounds_needed) {
    if (!geo) throw std::invalid_argument("phi composition needs the geometry constants a, b");
    return compose_bounds(P, Q, *geo);
  }
  ComposeResult r = compose_weight_tier(P, Q);
  for (auto& t : r.terms) t = apply_infinite_power_rule(t);
  return r;
}

ComposeResult compose_sums(const std::vector<OpClass>& P, const std::vector<OpClass>& Q,
                           const std::optional<GeometryConstants>& geo) {
  ComposeResult out;
  for (const auto& p : P)
    for (const auto& q : Q) {
      ComposeResult r = compose(p, q, geo);
      for (std::size_t i = 0; i < r.terms.size(); ++i) {
        if (r.terms[i].is_zero()) continue;
        out.terms.push_back(r.terms[i]);
        out.rules.push_back(r.rules[i]);
      }
    }
  if (out.terms.empty()) {
    out.terms.push_back(OpClass::zero());
    out.rules.push_back("zero");
  }
  return out;
}

}  // namespace phicalc
