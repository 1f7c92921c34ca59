#include "phicalc/op_class.hpp"

#include <cmath>
#include <sstream>

namespace phicalc {

namespace {

constexpr double kTol = 1e-9;

bool near(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= kTol;
}

double add_power(double a, double b) {
  const double s = a + b;
  if (std::isnan(s)) throw std::invalid_argument("x-power arithmetic inf - inf");
  if (s == -kInf) throw std::invalid_argument("x^-inf factor is not a class");
  return s;
}

bool spec_equal(const ClassSpec& a, const ClassSpec& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<Weight>(a)) return near(std::get<Weight>(a).alpha, std::get<Weight>(b).alpha);
  if (std::holds_alternative<IndexFamily>(a)) return std::get<IndexFamily>(a) == std::get<IndexFamily>(b);
  if (std::holds_alternative<BoundFamily>(a)) return std::get<BoundFamily>(a) == std::get<BoundFamily>(b);
  return true;
}

std::string num(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  if (std::abs(v) < kTol) v = 0.0;
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

FamilyKind family_kind_for(Kind k) { return is_b_calculus(k) ? FamilyKind::b : FamilyKind::phi; }

}  // namespace

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::b: return "b";
    case Kind::b_ext: return "b_ext";
    case Kind::phi: return "phi";
    case Kind::phi_ext: return "phi_ext";
    case Kind::bphi: return "bphi";
    case Kind::smoothing: return "smoothing";
    case Kind::zero: return "zero";
  }
  return "?";
}

Kind parse_kind(const std::string& s) {
  for (Kind k : {Kind::b, Kind::b_ext, Kind::phi, Kind::phi_ext, Kind::bphi, Kind::smoothing, Kind::zero})
    if (s == kind_name(k)) return k;
  throw std::invalid_argument("unknown class kind '" + s + "'");
}

bool is_b_calculus(Kind k) { return k == Kind::b || k == Kind::b_ext; }
bool is_phi_calculus(Kind k) {
  return k == Kind::phi || k == Kind::phi_ext || k == Kind::bphi || k == Kind::smoothing;
}
bool is_ext(Kind k) { return k == Kind::b_ext || k == Kind::phi_ext; }

OpClass OpClass::zero() {
  OpClass c;
  c.kind = Kind::zero;
  c.order = -kInf;
  return c;
}

OpClass OpClass::weighted(Kind k, double order, double alpha) {
  OpClass c;
  c.kind = k;
  c.order = order;
  c.spec = Weight{alpha};
  return c;
}

OpClass OpClass::small(Kind k, double order) {
  OpClass c;
  c.kind = k;
  c.order = order;
  c.spec = small_family(family_kind_for(k));
  return c;
}

OpClass OpClass::bphi(double order) {
  OpClass c;
  c.kind = Kind::bphi;
  c.order = order;
  return c;
}

OpClass OpClass::full(Kind k, double order, IndexFamily F) {
  if (F.kind != family_kind_for(k)) throw std::invalid_argument("index family type does not match class kind");
  OpClass c;
  c.kind = k;
  c.order = order;
  c.spec = std::move(F);
  return c;
}

OpClass OpClass::bounded(Kind k, double order, BoundFamily F) {
  if (F.kind != family_kind_for(k)) throw std::invalid_argument("bound family type does not match class kind");
  OpClass c;
  c.kind = k;
  c.order = order;
  c.spec = std::move(F);
  return c;
}

OpClass OpClass::left(double c) const {
  OpClass r = *this;
  r.xl = add_power(xl, c);
  return r;
}

OpClass OpClass::right(double c) const {
  OpClass r = *this;
  r.xr = add_power(xr, c);
  return r;
}

OpClass OpClass::vanishing_lf() const {
  OpClass r = *this;
  r.lf_vanish = true;
  return r;
}

OpClass OpClass::vanishing_rf() const {
  OpClass r = *this;
  r.rf_vanish = true;
  return r;
}

bool OpClass::is_small() const {
  return std::holds_alternative<IndexFamily>(spec) && phicalc::is_small(std::get<IndexFamily>(spec));
}

bool operator==(const OpClass& a, const OpClass& b) {
  return a.kind == b.kind && near(a.order, b.order) && spec_equal(a.spec, b.spec) && near(a.xl, b.xl) &&
         near(a.xr, b.xr) && a.lf_vanish == b.lf_vanish && a.rf_vanish == b.rf_vanish && a.proj == b.proj;
}

std::string to_string(const OpClass& c) {
  if (c.is_zero()) return "0";
  std::string s;
  if (c.proj && c.proj->side == ProjDecoration::Side::left) s += "(Pi + x^{" + num(c.proj->c) + "}Pi_perp)";
  if (c.xl != 0.0) s += "x^{" + num(c.xl) + "}";
  s += "Psi_" + std::string(kind_name(c.kind));
  if (c.lf_vanish) s += ",lf";
  if (c.rf_vanish) s += ",rf";
  s += "^{" + num(c.order);
  if (c.has_weight())
    s += "," + num(c.weight());
  else if (std::holds_alternative<IndexFamily>(c.spec))
    s += "," + (c.is_small() ? std::string("small") : to_string(std::get<IndexFamily>(c.spec)));
  else if (std::holds_alternative<BoundFamily>(c.spec))
    s += "," + to_string(std::get<BoundFamily>(c.spec));
  s += "}";
  if (c.xr != 0.0) s += "x^{" + num(c.xr) + "}";
  if (c.proj && c.proj->side == ProjDecoration::Side::right) s += "(Pi + x^{" + num(c.proj->c) + "}Pi_perp)";
  return s;
}

Folded fold(const OpClass& c) {
  Folded f;
  f.phi_calculus = !is_b_calculus(c.kind);
  f.ext = is_ext(c.kind);
  f.order = c.order;
  BoundFamily B;
  B.kind = f.phi_calculus ? FamilyKind::phi : FamilyKind::b;
  if (c.proj) throw std::invalid_argument("expand the projector decoration before folding");
  if (c.is_zero()) {
    f.bounds = B;
    return f;
  }
  if (std::holds_alternative<std::monostate>(c.spec)) {
    if (c.kind != Kind::bphi) throw std::invalid_argument("class without spec must be bphi or zero");
    B.bf = IndexBound::ge(0.0);
    B.ff = IndexBound::gt(0.0);
  } else if (std::holds_alternative<Weight>(c.spec)) {
    const double a = c.weight();
    B.lf = IndexBound::gt(a);
    B.rf = IndexBound::gt(-a);
    B.bf = IndexBound::ge(0.0);
    if (B.has_ff()) B.ff = IndexBound::gt(0.0);
  } else if (std::holds_alternative<IndexFamily>(c.spec)) {
    const auto& F = std::get<IndexFamily>(c.spec);
    if (F.kind != B.kind) throw std::invalid_argument("index family type does not match class kind");
    B = abstract_family(F);
  } else {
    const auto& F = std::get<BoundFamily>(c.spec);
    if (F.kind != B.kind) throw std::invalid_argument("bound family type does not match class kind");
    B = F;
  }
  if (c.lf_vanish) B.lf = IndexBound::none();
  if (c.rf_vanish) B.rf = IndexBound::none();
  if (c.xl == -kInf || c.xr == -kInf) throw std::invalid_argument("x^-inf factor is not a class");
  B = fold_left_power(B, c.xl);
  B = fold_right_power(B, c.xr);
  f.bounds = B;
  return f;
}

std::vector<Folded> fold_as_phi(const OpClass& c, const FoldContext& ctx) {
  if (!is_b_calculus(c.kind)) return {fold(c)};
  if (!(c.order < 0.0)) throw UnsupportedOperation("b-class of order >= 0 cannot be lifted to the phi calculus");
  if (c.has_weight()) {
    OpClass p = c;
    p.kind = is_ext(c.kind) ? Kind::phi_ext : Kind::phi;
    return {fold(p)};
  }
  const Folded fb = fold(c);
  const double m = c.order;
  const IndexBound am = std::isinf(m) ? IndexBound::none() : IndexBound::ge(-m * ctx.a);
  const IndexBound rem = scale(extended_union(std::isinf(m) ? IndexBound::none() : IndexBound::ge(-m),
                                              IndexBound::ge(ctx.b_dim + 1.0)),
                               ctx.a);
  Folded main = fb, tail = fb;
  main.phi_calculus = tail.phi_calculus = true;
  main.bounds.kind = tail.bounds.kind = FamilyKind::phi;
  main.bounds.ff = add(fb.bounds.bf, am);
  tail.bounds.ff = add(fb.bounds.bf, rem);
  tail.order = -kInf;
  return {main, tail};
}

bool contained(const OpClass& A, const OpClass& B, const FoldContext& ctx) {
  if (B.is_zero()) return A.is_zero();
  if (A.is_zero()) return true;
  if (A.order > B.order + kTol) return false;
  const Folded fb = fold(B);
  if (!fb.phi_calculus) {
    if (!is_b_calculus(A.kind)) return false;
    const Folded fa = fold(A);
    if (fa.ext && !fb.ext && !ctx.ignore_ext) return false;
    return implies(fa.bounds, fb.bounds);
  }
  if (is_ext(A.kind) && !fb.ext && !ctx.ignore_ext) return false;
  std::vector<Folded> pieces;
  try {
    pieces = fold_as_phi(A, ctx);
  } catch (const UnsupportedOperation&) {
    return false;
  }
  for (const auto& p : pieces)
    if (p.order > B.order + kTol || !implies(p.bounds, fb.bounds)) return false;
  return true;
}

bool equal_folded(const OpClass& A, const OpClass& B, const FoldContext& ctx) {
  if (A.is_zero() || B.is_zero()) return A.is_zero() && B.is_zero();
  const Folded fa = fold(A), fb = fold(B);
  if (fa.phi_calculus != fb.phi_calculus) return false;
  if (fa.ext != fb.ext && !ctx.ignore_ext) return false;
  if (!near(fa.order, fb.order)) return false;
  return implies(fa.bounds, fb.bounds) && implies(fb.bounds, fa.bounds);
}

OpClass adjoint_class(const OpClass& P) {
  OpClass r = P;
  std::swap(r.xl, r.xr);
  std::swap(r.lf_vanish, r.rf_vanish);
  if (std::holds_alternative<Weight>(r.spec))
    r.spec = Weight{-P.weight()};
  else if (std::holds_alternative<IndexFamily>(r.spec))
    r.spec = swap_sides(std::get<IndexFamily>(r.spec));
  else if (std::holds_alternative<BoundFamily>(r.spec))
    r.spec = swap_sides(std::get<BoundFamily>(r.spec));
  if (r.proj)
    r.proj->side =
        r.proj->side == ProjDecoration::Side::left ? ProjDecoration::Side::right : ProjDecoration::Side::left;
  return r;
}

OpClass conjugate_by_power(const OpClass& P, double c) {
  if (c == 0.0 || P.is_zero()) return P;
  OpClass r = P;
  if (std::holds_alternative<Weight>(P.spec)) {
    r.spec = Weight{P.weight() - c};
  } else if (P.kind == Kind::bphi && std::holds_alternative<std::monostate>(P.spec)) {
    // bphi commutes with powers of x
  } else if (std::holds_alternative<IndexFamily>(P.spec)) {
    if (!P.is_small()) r.spec = fold_right_power(fold_left_power(std::get<IndexFamily>(P.spec), -c), c);
  } else if (std::holds_alternative<BoundFamily>(P.spec)) {
    r.spec = fold_right_power(fold_left_power(std::get<BoundFamily>(P.spec), -c), c);
  }
  return r;
}

OpClass multiply_x_power(const OpClass& P, double c, Side side) {
  if (P.is_zero()) return P;
  return side == Side::left ? P.left(c) : P.right(c);
}

std::pair<OpClass, OpClass> decompose_near_ff(const OpClass& S) {
  if (!is_phi_calculus(S.kind)) throw std::invalid_argument("decompose_near_ff needs a phi-kind class");
  if (S.kind == Kind::bphi) return {OpClass::zero(), S};
  OpClass bpart = S, cpart = S;
  bpart.kind = Kind::b_ext;
  bpart.order = -kInf;
  cpart.kind = Kind::bphi;
  cpart.lf_vanish = cpart.rf_vanish = false;
  if (std::holds_alternative<Weight>(S.spec)) {
    cpart.spec = std::monostate{};
  } else if (std::holds_alternative<IndexFamily>(S.spec)) {
    const auto& F = std::get<IndexFamily>(S.spec);
    IndexFamily Fb;
    Fb.kind = FamilyKind::b;
    Fb.lf = F.lf;
    Fb.rf = F.rf;
    Fb.bf = F.bf;
    bpart.spec = Fb;
    IndexFamily Fc = F;
    Fc.lf = Fc.rf = IndexSet::empty();
    cpart.spec = Fc;
  } else if (std::holds_alternative<BoundFamily>(S.spec)) {
    const auto& F = std::get<BoundFamily>(S.spec);
    BoundFamily Fb;
    Fb.kind = FamilyKind::b;
    Fb.lf = F.lf;
    Fb.rf = F.rf;
    Fb.bf = F.bf;
    bpart.spec = Fb;
    BoundFamily Fc = F;
    Fc.lf = Fc.rf = IndexBound::none();
    cpart.spec = Fc;
  } else {
    throw std::invalid_argument("phi class without spec");
  }
  return {bpart, cpart};
}

IndexFamily lift_family(const IndexFamily& I, double m, int a, int b_dim, bool remainder) {
  if (I.kind != FamilyKind::b) throw std::invalid_argument("lifting needs a b-type family");
  IndexFamily J;
  J.kind = FamilyKind::phi;
  J.lf = I.lf;
  J.rf = I.rf;
  J.bf = I.bf;
  const IndexSet minus_m = std::isinf(m) ? IndexSet::empty() : IndexSet::real(-m);
  if (!remainder)
    J.ff = add(I.bf, scale(minus_m, a));
  else
    J.ff = add(I.bf, scale(extended_union(minus_m, IndexSet::real(b_dim + 1.0)), a));
  return J;
}

LiftResult lift_b_to_phi(const OpClass& T, int a, int b_dim) {
  if (!is_b_calculus(T.kind) || !std::holds_alternative<IndexFamily>(T.spec))
    throw std::invalid_argument("lift_b_to_phi needs a b-kind class with a full index family");
  if (T.proj) throw std::invalid_argument("expand the projector decoration before lifting");
  if (a < 1 || b_dim < 0) throw std::invalid_argument("lift_b_to_phi needs a >= 1 and b_dim >= 0");
  IndexFamily I = std::get<IndexFamily>(T.spec);
  if (T.lf_vanish) I.lf = IndexSet::empty();
  if (T.rf_vanish) I.rf = IndexSet::empty();
  I = fold_right_power(fold_left_power(I, T.xl), T.xr);
  LiftResult r;
  if (!(T.order < 0.0)) r.warnings.push_back("lifting stated for negative order only; order is " + num(T.order));
  const Kind k = is_ext(T.kind) ? Kind::phi_ext : Kind::phi;
  r.main = OpClass::full(k, T.order, lift_family(I, T.order, a, b_dim, false));
  r.remainder = OpClass::full(k, -kInf, lift_family(I, T.order, a, b_dim, true));
  return r;
}

namespace {

bool bounded_family(const Folded& f, double alpha, double beta) {
  const BoundFamily& B = f.bounds;
  const double d = beta - alpha;
  if (!implies(B.lf, IndexBound::gt(beta)) || !implies(B.rf, IndexBound::gt(-alpha)) ||
      !implies(B.bf, IndexBound::ge(d)))
    return false;
  if (!B.has_ff()) return true;
  if (!implies(B.ff, IndexBound::ge(d))) return false;
  return implies(B.bf, IndexBound::gt(d)) || implies(B.ff, IndexBound::gt(d));
}

bool compact_family(const Folded& f, double alpha, double beta) {
  const BoundFamily& B = f.bounds;
  const double d = beta - alpha;
  if (!(f.order < 0.0)) return false;
  if (!implies(B.lf, IndexBound::gt(beta)) || !implies(B.rf, IndexBound::gt(-alpha)) ||
      !implies(B.bf, IndexBound::gt(d)))
    return false;
  return !B.has_ff() || implies(B.ff, IndexBound::gt(d));
}

}  // namespace

bool is_bounded(const OpClass& P, double alpha, double beta, double /*k*/) {
  if (P.is_zero()) return true;
  return bounded_family(fold(P), alpha, beta);
}

bool is_compact(const OpClass& P, double alpha, double beta, double /*k*/) {
  if (P.is_zero()) return true;
  return compact_family(fold(P), alpha, beta);
}

bool is_bounded(const std::vector<OpClass>& sum, double alpha, double beta, double k) {
  for (const auto& c : sum)
    if (!is_bounded(c, alpha, beta, k)) return false;
  return true;
}

bool is_compact(const std::vector<OpClass>& sum, double alpha, double beta, double k) {
  for (const auto& c : sum)
    if (!is_compact(c, alpha, beta, k)) return false;
  return true;
}

IndexSet map_phg(const OpClass& P, const IndexSet& I) {
  if (!std::holds_alternative<IndexFamily>(P.spec))
    throw std::invalid_argument("map_phg needs a class with a full index family");
  if (P.proj) throw std::invalid_argument("expand the projector decoration before map_phg");
  IndexFamily J = std::get<IndexFamily>(P.spec);
  if (P.lf_vanish) J.lf = IndexSet::empty();
  if (P.rf_vanish) J.rf = IndexSet::empty();
  J = fold_right_power(fold_left_power(J, P.xl), P.xr);
  if (!greater_than(add(J.rf, I), 0.0))
    throw NonIntegrable("non-integrable pairing: J_rf + I > 0 fails");
  IndexSet K = extended_union(J.lf, add(J.bf, I));
  if (J.has_ff()) K = extended_union(K, add(J.ff, I));
  return K;
}

}  // namespace phicalc
