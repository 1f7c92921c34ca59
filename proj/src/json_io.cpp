#include "phicalc/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace phicalc::io {

namespace {

void only(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw InputError(where + ": unknown field '" + it.key() + "'");
  }
}

const json& need(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

int get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw InputError(where + ": expected an integer");
  return j.get<int>();
}

bool get_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) throw InputError(where + ": expected true or false");
  return j.get<bool>();
}

std::string get_str(const json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

std::vector<double> get_num_list(const json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_num(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

template <class F>
auto wrap(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(where + ": " + e.what());
  }
}

std::string g17(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* rel_name(IndexBound::Rel r) {
  switch (r) {
    case IndexBound::Rel::Strict: return "strict";
    case IndexBound::Rel::Geq: return "geq";
    case IndexBound::Rel::Weak: return "weak";
  }
  return "?";
}

json modes_json(const Mode& m) {
  json a = json::array();
  for (int v : m) a.push_back(v);
  return a;
}

json entry_json(const Entry& e) {
  json a = json::array();
  for (const auto& t : e) a.push_back({{"class", to_json(t->cls)}, {"text", to_string(t->cls)}, {"rule", t->rule}});
  return a;
}

}  // namespace

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    std::string msg = e.what();
    const auto cut = msg.find("parse error");
    if (cut != std::string::npos) msg = msg.substr(cut);
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot write");
  out << text;
}

json num(double v) {
  if (std::isnan(v)) throw std::invalid_argument("NaN cannot be serialized");
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double get_num(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw InputError(where + ": expected a number, \"inf\" or \"-inf\"");
}

// ---- index sets and families

json to_json(const IndexSet& I) {
  json g = json::array();
  for (const auto& p : I.generators()) g.push_back({{"re", num(p.z.real())}, {"im", num(p.z.imag())}, {"k", p.k}});
  return {{"empty", I.is_empty()}, {"generators", g}};
}

IndexSet index_set_from(const json& j) {
  const std::string w = "index set";
  only(j, {"empty", "generators"}, w);
  const bool empty = j.contains("empty") ? get_bool(j["empty"], w + ".empty") : false;
  const json& g = need(j, "generators", w);
  if (!g.is_array()) throw InputError(w + ".generators: expected an array");
  std::vector<IndexPair> gens;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const std::string wi = w + ".generators[" + std::to_string(i) + "]";
    only(g[i], {"re", "im", "k"}, wi);
    const double re = get_num(need(g[i], "re", wi), wi + ".re");
    const double im = g[i].contains("im") ? get_num(g[i]["im"], wi + ".im") : 0.0;
    const int k = g[i].contains("k") ? get_int(g[i]["k"], wi + ".k") : 0;
    if (k < 0) throw InputError(wi + ".k: log power must be nonnegative");
    gens.push_back({cplx(re, im), k});
  }
  if (empty && !gens.empty()) throw InputError(w + ": marked empty but has generators");
  return wrap(w, [&] { return IndexSet::make(gens); });
}

json to_json(const IndexBound& b) { return {{"v", num(b.v)}, {"rel", rel_name(b.rel)}}; }

IndexBound index_bound_from(const json& j) {
  const std::string w = "index bound";
  only(j, {"v", "rel"}, w);
  IndexBound b;
  b.v = get_num(need(j, "v", w), w + ".v");
  const std::string r = get_str(need(j, "rel", w), w + ".rel");
  if (r == "strict")
    b.rel = IndexBound::Rel::Strict;
  else if (r == "geq")
    b.rel = IndexBound::Rel::Geq;
  else if (r == "weak")
    b.rel = IndexBound::Rel::Weak;
  else
    throw InputError(w + ".rel: expected strict, geq or weak");
  return b;
}

namespace {

template <class S, class To>
json family_to(const FaceFamily<S>& F, To to) {
  json j = {{"type", F.kind == FamilyKind::b ? "b" : "phi"}, {"lf", to(F.lf)}, {"rf", to(F.rf)}, {"bf", to(F.bf)}};
  if (F.has_ff()) j["ff"] = to(F.ff);
  return j;
}

template <class S, class From>
FaceFamily<S> family_from(const json& j, From from, const std::string& w) {
  only(j, {"type", "lf", "rf", "bf", "ff"}, w);
  FaceFamily<S> F;
  const std::string t = get_str(need(j, "type", w), w + ".type");
  if (t == "b")
    F.kind = FamilyKind::b;
  else if (t == "phi")
    F.kind = FamilyKind::phi;
  else
    throw InputError(w + ".type: expected b or phi");
  F.lf = from(need(j, "lf", w));
  F.rf = from(need(j, "rf", w));
  F.bf = from(need(j, "bf", w));
  if (F.has_ff())
    F.ff = from(need(j, "ff", w));
  else if (j.contains("ff"))
    throw InputError(w + ": b-type family has no ff entry");
  return F;
}

}  // namespace

json to_json(const IndexFamily& F) {
  return family_to(F, [](const IndexSet& s) { return to_json(s); });
}
IndexFamily index_family_from(const json& j) { return family_from<IndexSet>(j, index_set_from, "index family"); }
json to_json(const BoundFamily& F) {
  return family_to(F, [](const IndexBound& s) { return to_json(s); });
}
BoundFamily bound_family_from(const json& j) { return family_from<IndexBound>(j, index_bound_from, "bound family"); }

// ---- operator classes

json to_json(const OpClass& c) {
  json j;
  j["kind"] = kind_name(c.kind);
  j["order"] = num(c.order);
  j["xl"] = num(c.xl);
  j["xr"] = num(c.xr);
  if (std::holds_alternative<Weight>(c.spec))
    j["spec"] = {{"weight", num(std::get<Weight>(c.spec).alpha)}};
  else if (std::holds_alternative<IndexFamily>(c.spec))
    j["spec"] = {{"family", to_json(std::get<IndexFamily>(c.spec))}};
  else if (std::holds_alternative<BoundFamily>(c.spec))
    j["spec"] = {{"bounds", to_json(std::get<BoundFamily>(c.spec))}};
  else
    j["spec"] = nullptr;
  j["proj"] = c.proj ? json{{"side", c.proj->side == ProjDecoration::Side::left ? "left" : "right"}, {"c", num(c.proj->c)}}
                     : json(nullptr);
  j["lf_vanish"] = c.lf_vanish;
  j["rf_vanish"] = c.rf_vanish;
  return j;
}

OpClass op_class_from(const json& j) {
  const std::string w = "operator class";
  only(j, {"kind", "order", "spec", "xl", "xr", "proj", "lf_vanish", "rf_vanish"}, w);
  OpClass c;
  c.kind = wrap(w + ".kind", [&] { return parse_kind(get_str(need(j, "kind", w), w + ".kind")); });
  c.order = c.kind == Kind::zero && !j.contains("order") ? 0.0 : get_num(need(j, "order", w), w + ".order");
  if (j.contains("xl")) c.xl = get_num(j["xl"], w + ".xl");
  if (j.contains("xr")) c.xr = get_num(j["xr"], w + ".xr");
  if (j.contains("lf_vanish")) c.lf_vanish = get_bool(j["lf_vanish"], w + ".lf_vanish");
  if (j.contains("rf_vanish")) c.rf_vanish = get_bool(j["rf_vanish"], w + ".rf_vanish");
  const json spec = j.contains("spec") ? j["spec"] : json(nullptr);
  if (!spec.is_null()) {
    only(spec, {"weight", "family", "bounds"}, w + ".spec");
    if (spec.size() != 1) throw InputError(w + ".spec: exactly one of weight, family, bounds");
    if (spec.contains("weight"))
      c.spec = Weight{get_num(spec["weight"], w + ".spec.weight")};
    else if (spec.contains("family"))
      c.spec = index_family_from(spec["family"]);
    else
      c.spec = bound_family_from(spec["bounds"]);
  } else if (c.kind != Kind::bphi && c.kind != Kind::zero) {
    throw InputError(w + ".spec: only bphi and zero classes may omit the spec");
  }
  if (j.contains("proj") && !j["proj"].is_null()) {
    const json& p = j["proj"];
    only(p, {"side", "c"}, w + ".proj");
    ProjDecoration d;
    const std::string side = get_str(need(p, "side", w + ".proj"), w + ".proj.side");
    if (side != "left" && side != "right") throw InputError(w + ".proj.side: expected left or right");
    d.side = side == "left" ? ProjDecoration::Side::left : ProjDecoration::Side::right;
    d.c = get_num(need(p, "c", w + ".proj"), w + ".proj.c");
    c.proj = d;
  }
  return c;
}

json to_json(const ClassMatrix& M) {
  json rows = json::array();
  for (int i = 0; i < 2; ++i) {
    json row = json::array();
    for (int k = 0; k < 2; ++k) row.push_back(entry_json(M.e[i][k]));
    rows.push_back(row);
  }
  return {{"entries", rows}, {"text", to_string(M)}};
}

// ---- split operators and reports

json to_json(const SplitOperator& P) {
  json sb = json::array();
  for (const auto& p : P.spec_b) sb.push_back({{"re", num(p.exponent.real())}, {"im", num(p.exponent.imag())}, {"k", p.pole_order_k}});
  json im = json::array();
  for (double s : P.imspec) im.push_back(num(s));
  return {{"a", P.a},
          {"m", P.m},
          {"b_dim", P.b_dim},
          {"blocks", {{"P00", to_json(P.P00)}, {"P01", to_json(P.P01)}, {"P10", to_json(P.P10)}, {"P11", to_json(P.P11)}}},
          {"imspec", im},
          {"spec_b", sb},
          {"normal_invertible", P.normal_invertible},
          {"elliptic", P.elliptic}};
}

SplitOperator split_operator_from(const json& j) {
  const std::string w = "split operator";
  only(j, {"a", "m", "b_dim", "blocks", "imspec", "spec_b", "normal_invertible", "elliptic"}, w);
  const int a = get_int(need(j, "a", w), w + ".a");
  const int m = get_int(need(j, "m", w), w + ".m");
  const int b = j.contains("b_dim") ? get_int(j["b_dim"], w + ".b_dim") : 1;
  SplitOperator P = wrap(w, [&] { return SplitOperator::standard(a, m, b); });
  if (j.contains("blocks")) {
    const json& B = j["blocks"];
    only(B, {"P00", "P01", "P10", "P11"}, w + ".blocks");
    if (B.contains("P00")) P.P00 = op_class_from(B["P00"]);
    if (B.contains("P01")) P.P01 = op_class_from(B["P01"]);
    if (B.contains("P10")) P.P10 = op_class_from(B["P10"]);
    if (B.contains("P11")) P.P11 = op_class_from(B["P11"]);
  }
  if (j.contains("imspec")) P.imspec = get_num_list(j["imspec"], w + ".imspec");
  if (j.contains("spec_b")) {
    const json& s = j["spec_b"];
    if (!s.is_array()) throw InputError(w + ".spec_b: expected an array");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string wi = w + ".spec_b[" + std::to_string(i) + "]";
      only(s[i], {"re", "im", "k"}, wi);
      SpecBPoint p;
      p.exponent = cplx(get_num(need(s[i], "re", wi), wi + ".re"), s[i].contains("im") ? get_num(s[i]["im"], wi + ".im") : 0.0);
      p.pole_order_k = s[i].contains("k") ? get_int(s[i]["k"], wi + ".k") : -1;
      P.spec_b.push_back(p);
    }
  }
  if (j.contains("normal_invertible")) P.normal_invertible = get_bool(j["normal_invertible"], w + ".normal_invertible");
  if (j.contains("elliptic")) P.elliptic = get_bool(j["elliptic"], w + ".elliptic");
  return P;
}

json to_json(const Check& c) {
  return {{"step", c.step}, {"label", c.label}, {"target", c.target}, {"verdict", c.pass ? "PASS" : "FAIL"}, {"detail", c.detail}};
}

json to_json(const ParametrixReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  json floors = json::array();
  for (double f : r.s4.bf_floor) floors.push_back(num(f));
  return {{"a", r.a},
          {"m", r.m},
          {"alpha", num(r.alpha)},
          {"verdict", r.pass() ? "PASS" : "FAIL"},
          {"checks", checks},
          {"Q_right", to_json(r.s5.Qr)},
          {"R_right", to_json(r.s5.Rr)},
          {"Q_left", to_json(r.Ql)},
          {"R_left", to_json(r.Rl)},
          {"bf_floor", floors}};
}

json to_json(const FredholmReport& f) {
  return {{"alpha", num(f.alpha)},
          {"split_to_l2", f.split_to_l2},
          {"l2_to_split", f.l2_to_split},
          {"split_to_l2_distance", num(f.split_to_l2_distance)},
          {"l2_to_split_distance", num(f.l2_to_split_distance)},
          {"statements", f.statements}};
}

json to_json(const RegularityPrediction& r) {
  return {{"K", to_json(r.K)},
          {"K_text", r.K.to_string()},
          {"pi_power", num(r.pi_power)},
          {"perp_power", num(r.perp_power)},
          {"pi_set", to_json(r.pi_set)},
          {"perp_set", to_json(r.perp_set)},
          {"warnings", r.warnings}};
}

// ---- model numerics

json to_json(const ModelGeometry& g) {
  json b = json::array(), f = json::array();
  for (double L : g.base_L) b.push_back(num(L));
  for (double L : g.fiber_L) f.push_back(num(L));
  return {{"a", g.a}, {"base", {{"circumferences", b}}}, {"fiber", {{"circumferences", f}}}, {"x_max", num(g.x_max)}, {"dvol_b", g.dvol_b}};
}

ModelGeometry model_from(const json& j) {
  const std::string w = "model";
  only(j, {"a", "base", "fiber", "x_max", "dvol_b"}, w);
  ModelGeometry g;
  g.a = get_int(need(j, "a", w), w + ".a");
  for (const char* part : {"base", "fiber"}) {
    if (!j.contains(part)) continue;
    const json& p = j[part];
    const std::string wp = w + "." + part;
    only(p, {"circumferences"}, wp);
    auto L = get_num_list(need(p, "circumferences", wp), wp + ".circumferences");
    (std::string(part) == "base" ? g.base_L : g.fiber_L) = std::move(L);
  }
  if (j.contains("x_max")) g.x_max = get_num(j["x_max"], w + ".x_max");
  if (j.contains("dvol_b")) g.dvol_b = get_bool(j["dvol_b"], w + ".dvol_b");
  wrap(w, [&] {
    g.validate();
    return 0;
  });
  return g;
}

json to_json(const SpectrumPoint& p) {
  return {{"lambda_root", num(p.lambda_root)}, {"mode", modes_json(p.mode)},  {"pole_order_k", p.pole_order_k},
          {"det_order", p.det_order},          {"rank_drop", p.rank_drop},    {"sigma_min", num(p.sigma_min)},
          {"order_mismatch", p.order_mismatch}, {"at_window_edge", p.at_window_edge}};
}

json to_json(const ImspecResult& r) {
  json pm = json::array(), mg = json::array();
  for (const auto& p : r.per_mode) pm.push_back(to_json(p));
  for (const auto& p : r.merged) mg.push_back(to_json(p));
  return {{"per_mode", pm}, {"roots", mg}, {"warnings", r.warnings}};
}

json to_json(const GapReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    json eta = json::array();
    for (double e : p.eta) eta.push_back(num(e));
    pts.push_back({{"tau", num(p.tau)}, {"eta", eta}, {"gap", num(p.gap)}});
  }
  return {{"min_gap", num(r.min_gap)},
          {"lambda1", num(r.lambda1)},
          {"max_oracle_deviation", num(r.max_oracle_deviation)},
          {"invertible", r.invertible},
          {"points", pts}};
}

json to_json(const HarmonicFit& f) {
  return {{"mode", {{"base", modes_json(f.mode.base)}, {"fiber", modes_json(f.mode.fiber)}}},
          {"fitted_exponent", num(f.fitted_exponent)},
          {"fitted_log_power", f.fitted_log_power},
          {"residual", num(f.residual)},
          {"superpolynomial", f.superpolynomial},
          {"rejected", f.rejected},
          {"reason", f.reason},
          {"bound_C", num(f.bound_C)},
          {"bound_holds", f.bound_holds}};
}

json to_json(const ConvergenceReport& c) {
  json res = json::array(), err = json::array();
  for (double v : c.residual) res.push_back(num(v));
  for (double v : c.solution_error) err.push_back(num(v));
  return {{"exponent", num(c.exponent)},
          {"n_points", c.n_points},
          {"residual", res},
          {"solution_error", err},
          {"residual_ratios", {num(c.residual_ratio_1), num(c.residual_ratio_2)}},
          {"error_ratios", {num(c.error_ratio_1), num(c.error_ratio_2)}},
          {"verdict", c.pass ? "PASS" : "FAIL"}};
}

json to_json(const VerifyReport& r) {
  json modes = json::array();
  for (const auto& v : r.modes) {
    json m = to_json(v.fit);
    m["fibre_harmonic"] = v.fibre_harmonic;
    m["oracle_exponent"] = num(v.oracle_exponent);
    m["nearest_predicted"] = num(v.nearest_predicted);
    m["rel_err_oracle"] = num(v.rel_err_oracle);
    m["rel_err_predicted"] = num(v.rel_err_predicted);
    m["l2_fit"] = v.l2_fit;
    m["l2_expected"] = v.l2_expected;
    m["verdict"] = v.pass ? "PASS" : "FAIL";
    m["note"] = v.note;
    modes.push_back(m);
  }
  return {{"alpha", num(r.alpha)},
          {"spectrum", to_json(r.spectrum)},
          {"K", to_json(r.K)},
          {"K_text", r.K.to_string()},
          {"modes", modes},
          {"convergence", to_json(r.convergence)},
          {"failures", r.failures},
          {"verdict", r.pass() ? "PASS" : "FAIL"}};
}

std::string spectra_csv(const std::vector<SpectrumPoint>& pts) {
  std::string s = "mode,lambda_root,pole_order_k\n";
  for (const auto& p : pts) s += "\"" + mode_string(p.mode) + "\"," + g17(p.lambda_root) + "," + std::to_string(p.pole_order_k) + "\n";
  return s;
}

std::string fits_csv(const std::vector<HarmonicFit>& fits) {
  std::string s = "mode,exponent,log_power,residual,superpoly\n";
  for (const auto& f : fits)
    s += "\"" + mode_string(f.mode) + "\"," + g17(f.fitted_exponent) + "," + std::to_string(f.fitted_log_power) + "," +
         g17(f.residual) + "," + (f.superpolynomial ? "1" : "0") + "\n";
  return s;
}

std::string solution_csv(const HarmonicSolution& sol) {
  std::string s = "t,x,u\n";
  for (std::size_t i = 0; i < sol.t.size(); ++i) s += g17(sol.t[i]) + "," + g17(sol.x[i]) + "," + g17(sol.u[i]) + "\n";
  return s;
}

}  // namespace phicalc::io
