#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <sstream>

#include "phicalc/compose.hpp"
#include "phicalc/json_io.hpp"

using namespace phicalc;
using io::json;

namespace {

// Exit codes: 0 success or PASS, 1 verification FAIL or domain failure, 2 usage or input error.
constexpr int kOk = 0, kFail = 1, kUsage = 2;

struct Options {
  std::string out;
  double tol = 1e-6;
  std::vector<double> window;
  int modes = -1;
  std::string grid;
  double alpha = 0.0;
  bool alpha_set = false;
};

void emit_text(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    io::write_text(out, text);
}

void emit(const std::string& out, const json& j) { emit_text(out, io::dump(j)); }

bool ends_with(const std::string& s, const std::string& suf) {
  return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  if (s.empty()) return g;
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw io::InputError("--grid expects T,N");
  try {
    std::size_t used = 0;
    g.T_max = std::stod(s.substr(0, comma), &used);
    const std::string rest = s.substr(comma + 1);
    std::size_t used2 = 0;
    g.n_points = std::stoi(rest, &used2);
    if (used != comma || used2 != rest.size()) throw std::invalid_argument("trailing text");
  } catch (const std::exception&) {
    throw io::InputError("--grid expects T,N with a real T and an integer N");
  }
  if (!(g.T_max > 0.0) || g.n_points < 3) throw io::InputError("--grid needs T > 0 and N >= 3");
  return g;
}

Mode parse_mode(const std::string& s, int dims, const char* what) {
  Mode m;
  if (!s.empty()) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        m.push_back(std::stoi(item, &used));
        if (used != item.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw io::InputError(std::string(what) + ": expected comma-separated integers");
      }
    }
  }
  if (m.empty()) m.assign(dims, 0);
  if (static_cast<int>(m.size()) != dims)
    throw io::InputError(std::string(what) + ": expected " + std::to_string(dims) + " entries");
  return m;
}

// ---- idx

int run_idx(const std::string& op, const std::vector<std::string>& files, double by, bool by_set, const Options& o) {
  auto need_files = [&](std::size_t n) {
    if (files.size() != n) throw io::InputError("idx " + op + " expects " + std::to_string(n) + " file(s)");
  };
  auto need_by = [&] {
    if (!by_set) throw io::InputError("idx " + op + " needs --by");
  };
  auto load = [&](std::size_t i) { return io::index_set_from(io::read_file(files[i])); };
  if (op == "add" || op == "union") {
    need_files(2);
    const IndexSet I = load(0), J = load(1);
    emit(o.out, io::to_json(op == "add" ? add(I, J) : extended_union(I, J)));
    return kOk;
  }
  if (op == "shift") {
    need_files(1);
    need_by();
    emit(o.out, io::to_json(shift(load(0), by)));
    return kOk;
  }
  if (op == "scale") {
    need_files(1);
    need_by();
    if (by != std::floor(by) || by < 1) throw io::InputError("idx scale needs a positive integer --by");
    emit(o.out, io::to_json(scale(load(0), static_cast<int>(by))));
    return kOk;
  }
  if (op == "gt" || op == "geq") {
    need_files(1);
    need_by();
    const IndexSet I = load(0);
    const bool v = op == "gt" ? greater_than(I, by) : geq(I, by);
    emit(o.out, json{{"relation", op}, {"alpha", io::num(by)}, {"result", v}});
    return kOk;
  }
  if (op == "canon") {
    need_files(1);
    const IndexSet I = load(0);
    emit(o.out, json{{"set", io::to_json(I)}, {"text", I.to_string()}});
    return kOk;
  }
  throw io::InputError("unknown idx operation '" + op + "' (add, union, shift, scale, gt, geq, canon)");
}

// ---- classes

int run_compose(const std::vector<std::string>& files, int a, int b_dim, const Options& o) {
  if (files.size() != 2) throw io::InputError("compose expects two class files");
  const OpClass P = io::op_class_from(io::read_file(files[0]));
  const OpClass Q = io::op_class_from(io::read_file(files[1]));
  try {
    const ComposeResult r = compose(P, Q, GeometryConstants{a, b_dim});
    json terms = json::array();
    for (std::size_t i = 0; i < r.terms.size(); ++i)
      terms.push_back({{"class", io::to_json(r.terms[i])}, {"text", to_string(r.terms[i])}, {"rule", r.rules[i]}});
    emit(o.out, json{{"terms", terms}});
    return kOk;
  } catch (const NonIntegrable& e) {
    std::cerr << "compose: not integrable: " << e.what() << "\n";
  } catch (const NoRule& e) {
    std::cerr << "compose: no rule applies: " << e.what() << "\n";
  } catch (const UnsupportedOperation& e) {
    std::cerr << "compose: unsupported: " << e.what() << "\n";
  }
  return kFail;
}

int run_lift(const std::string& file, int a, int b_dim, const Options& o) {
  const OpClass T = io::op_class_from(io::read_file(file));
  try {
    const LiftResult r = lift_b_to_phi(T, a, b_dim);
    emit(o.out, json{{"main", io::to_json(r.main)},
                     {"main_text", to_string(r.main)},
                     {"remainder", io::to_json(r.remainder)},
                     {"remainder_text", to_string(r.remainder)},
                     {"warnings", r.warnings}});
    return kOk;
  } catch (const UnsupportedOperation& e) {
    std::cerr << "lift: unsupported: " << e.what() << "\n";
    return kFail;
  }
}

int run_parametrix(const std::string& op_file, const std::string& report, const Options& o) {
  if (!o.alpha_set) throw io::InputError("parametrix needs --alpha");
  const SplitOperator P = io::split_operator_from(io::read_file(op_file));
  json rep;
  bool ok = false;
  try {
    const ParametrixReport r = full_parametrix(P, o.alpha);
    rep = io::to_json(r);
    ok = r.pass();
  } catch (const WeightConditionError& e) {
    rep = {{"alpha", io::num(o.alpha)}, {"verdict", "FAIL"}, {"error", std::string("weight condition: ") + e.what()}};
  } catch (const MissingHypothesis& e) {
    rep = {{"alpha", io::num(o.alpha)}, {"verdict", "FAIL"}, {"error", std::string("missing hypothesis: ") + e.what()}};
  } catch (const HypothesisViolation& e) {
    rep = {{"alpha", io::num(o.alpha)},
           {"verdict", "FAIL"},
           {"error", std::string("hypothesis violated at entry (") + std::to_string(e.row) + "," + std::to_string(e.col) +
                         "): " + e.what()}};
  }
  if (!P.imspec.empty()) {
    rep["fredholm"] = io::to_json(fredholm_report(P, o.alpha));
    rep["regularity_l2"] = io::to_json(regularity_predict(P, o.alpha, RegularityHypothesis::l2));
    rep["regularity_split"] = io::to_json(regularity_predict(P, o.alpha, RegularityHypothesis::split_sobolev));
  }
  emit(report.empty() ? o.out : report, rep);
  std::cerr << "parametrix a=" << P.a << " m=" << P.m << " alpha=" << o.alpha << ": " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kOk : kFail;
}

// ---- numerics

ImspecOptions imspec_options(const Options& o) {
  ImspecOptions opt;
  if (!o.window.empty()) {
    opt.lo = o.window[0];
    opt.hi = o.window[1];
  }
  opt.mode_cutoff = o.modes;
  return opt;
}

int run_imspec(const std::string& model, const std::string& kind, const std::string& frame, double step,
               const Options& o) {
  const ModelGeometry g = io::model_from(io::read_file(model));
  ImspecOptions opt = imspec_options(o);
  if (step > 0.0) opt.step = step;
  IndicialKind k;
  Frame f;
  try {
    k = parse_indicial_kind(kind);
    f = parse_frame(frame);
  } catch (const std::invalid_argument& e) {
    throw io::InputError(e.what());
  }
  const ImspecResult r = imspec(g, k, f, opt);
  for (const auto& w : r.warnings) std::cerr << "imspec: " << w << "\n";
  if (ends_with(o.out, ".csv"))
    emit_text(o.out, io::spectra_csv(r.merged));
  else
    emit(o.out, io::to_json(r));
  return kOk;
}

int run_gap(const std::string& model, int n, const Options& o) {
  const ModelGeometry g = io::model_from(io::read_file(model));
  double lo = -5.0, hi = 5.0;
  if (!o.window.empty()) {
    lo = o.window[0];
    hi = o.window[1];
  }
  const GapReport r = gap_grid(g, lo, hi, n, o.modes < 0 ? 3 : o.modes, o.tol);
  json j = io::to_json(r);
  j["tolerance"] = io::num(o.tol);
  const bool oracle_ok = !(r.max_oracle_deviation > o.tol);
  j["oracle_agrees"] = oracle_ok;
  emit(o.out, j);
  std::cerr << "gap: min " << r.min_gap << ", oracle deviation " << r.max_oracle_deviation << ": "
            << (r.invertible && oracle_ok ? "PASS" : "FAIL") << "\n";
  return r.invertible && oracle_ok ? kOk : kFail;
}

int run_solve(const std::string& model, int degree, const std::string& base, const std::string& fiber,
              const Options& o) {
  const ModelGeometry g = io::model_from(io::read_file(model));
  const HarmonicMode mode{parse_mode(base, g.b(), "--base"), parse_mode(fiber, g.f(), "--fiber")};
  const HarmonicSolution s = solve_harmonic(g, degree, mode, 1.0, parse_grid(o.grid));
  const HarmonicFit fit = fit_solution(s);
  if (ends_with(o.out, ".csv")) {
    emit_text(o.out, io::solution_csv(s));
  } else {
    json u = json::array(), x = json::array();
    for (std::size_t i = 0; i < s.u.size(); ++i) {
      x.push_back(io::num(s.x[i]));
      u.push_back(io::num(s.u[i]));
    }
    emit(o.out, json{{"mode", mode_string(mode)},
                     {"form_degree", s.form_degree},
                     {"x", x},
                     {"u", u},
                     {"decay_rate", io::num(s.decay_rate)},
                     {"condition", io::num(s.condition)},
                     {"ill_conditioned", s.ill_conditioned},
                     {"fit", io::to_json(fit)}});
  }
  if (s.ill_conditioned) std::cerr << "solve: ill-conditioned system (estimate " << s.condition << ")\n";
  return s.ill_conditioned ? kFail : kOk;
}

int run_verify(const std::string& model, const std::string& fits_csv, const Options& o) {
  const ModelGeometry g = io::model_from(io::read_file(model));
  VerifyOptions opt;
  opt.alpha = o.alpha;
  opt.grid = parse_grid(o.grid);
  if (!o.window.empty()) {
    opt.spectrum.lo = o.window[0];
    opt.spectrum.hi = o.window[1];
  }
  opt.spectrum.mode_cutoff = o.modes;
  const VerifyReport r = verify_predictions(g, opt);
  emit(o.out, io::to_json(r));
  if (!fits_csv.empty()) {
    std::vector<HarmonicFit> fits;
    for (const auto& v : r.modes) fits.push_back(v.fit);
    io::write_text(fits_csv, io::fits_csv(fits));
  }
  for (const auto& f : r.failures) std::cerr << "verify: " << f << "\n";
  std::cerr << "verify: " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return r.pass() ? kOk : kFail;
}

// Composite run on one model: spectrum, gap, decay, parametrix grid, Fredholm sweep.
int run_composite(const std::string& model, const Options& o) {
  const ModelGeometry g = io::model_from(io::read_file(model));
  json rep;
  bool all = true;
  auto line = [&](const std::string& name, bool pass, const std::string& detail) {
    std::printf("%s %s: %s\n", pass ? "PASS" : "FAIL", name.c_str(), detail.c_str());
    rep[name] = {{"verdict", pass ? "PASS" : "FAIL"}, {"detail", detail}};
    all = all && pass;
  };

  // spectrum of the scalar component against the Fourier reduction, roots +-|k_j|
  ImspecOptions so{-2.5, 2.5};
  if (!o.window.empty()) {
    so.lo = o.window[0];
    so.hi = o.window[1];
  }
  so.mode_cutoff = o.modes;
  const ImspecResult spec = imspec(g, IndicialKind::scalar, Frame::dirac_vertical, so);
  {
    std::vector<double> expect;
    const int cut = static_cast<int>(std::ceil(std::max(std::abs(so.lo), std::abs(so.hi)) *
                                                *std::max_element(g.base_L.begin(), g.base_L.end()) / (2.0 * std::numbers::pi))) + 1;
    for (const Mode& j : enumerate_modes(g.b(), cut)) {
      const double k = wavevector(g.base_L, j).norm();
      for (double s : {-k, k})
        if (s >= so.lo && s <= so.hi) expect.push_back(s);
    }
    std::sort(expect.begin(), expect.end());
    expect.erase(std::unique(expect.begin(), expect.end(), [](double x, double y) { return std::abs(x - y) < 1e-9; }),
                 expect.end());
    bool ok = expect.size() == spec.merged.size();
    double worst = 0.0;
    for (std::size_t i = 0; ok && i < expect.size(); ++i) worst = std::max(worst, std::abs(expect[i] - spec.merged[i].lambda_root));
    ok = ok && worst < 1e-8;
    for (const auto& p : spec.merged)
      if (std::abs(p.lambda_root) < 1e-8) ok = ok && p.pole_order_k == 1;
    line("spectrum", ok, std::to_string(spec.merged.size()) + " roots, max deviation " + std::to_string(worst));
  }

  if (g.f() > 0) {
    const GapReport gr = gap_grid(g, -5.0, 5.0, 21, 3, o.tol);
    line("gap", gr.invertible && gr.max_oracle_deviation <= 1e-6,
         "min " + std::to_string(gr.min_gap) + ", oracle deviation " + std::to_string(gr.max_oracle_deviation));
  }

  VerifyOptions vo;
  vo.alpha = o.alpha;
  vo.grid = parse_grid(o.grid);
  const VerifyReport vr = verify_predictions(g, vo);
  std::string vd = std::to_string(vr.modes.size()) + " modes";
  for (const auto& f : vr.failures) vd += "; " + f;
  line("decay", vr.pass(), vd);

  std::vector<double> roots;
  for (const auto& p : spec.merged) roots.push_back(p.lambda_root);
  {
    bool ok = true;
    int ran = 0, skipped = 0;
    std::string detail;
    for (int m : {1, 2})
      for (double alpha : {-0.5, 0.0, 0.5, 1.3}) {
        SplitOperator P = SplitOperator::standard(g.a, m, g.b());
        P.imspec = roots;
        if (!check_weight(P, alpha)) {
          ++skipped;
          continue;
        }
        ++ran;
        const ParametrixReport r = full_parametrix(P, alpha);
        if (!r.pass()) {
          ok = false;
          detail += " fail at m=" + std::to_string(m) + " alpha=" + std::to_string(alpha);
        }
      }
    line("parametrix", ok && ran > 0, std::to_string(ran) + " admissible weights, " + std::to_string(skipped) + " on the spectrum" + detail);
  }

  {
    SplitOperator P = SplitOperator::standard(g.a, 1, g.b());
    P.imspec = roots;
    bool ok = true;
    for (int k = -30; k <= 30; ++k) {
      const double alpha = k / 10.0;
      const FredholmReport f = fredholm_report(P, alpha);
      auto near_root = [&](double w) {
        for (double s : roots)
          if (std::abs(w - s) <= 1e-9) return true;
        return false;
      };
      ok = ok && f.split_to_l2 == !near_root(alpha - P.am()) && f.l2_to_split == !near_root(alpha);
    }
    line("fredholm", ok, "61 weights on [-3, 3]");
  }
  rep["verdict"] = all ? "PASS" : "FAIL";
  if (!o.out.empty()) emit(o.out, rep);
  return all ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phicalc: index sets, operator classes, split parametrices and fibred-cusp model numerics"};
  app.require_subcommand(1);
  Options o;
  auto common = [&](CLI::App* s) {
    s->add_option("--out", o.out, "output path (stdout when absent)");
    s->add_option("--tol", o.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  };

  std::string idx_op;
  std::vector<std::string> files;
  double by = 0.0;
  auto* idx = app.add_subcommand("idx", "index set algebra on JSON files");
  idx->add_option("op", idx_op, "add | union | shift | scale | gt | geq | canon")->required();
  idx->add_option("files", files, "index set files")->required();
  auto* by_opt = idx->add_option("--by", by, "shift amount, scale factor or comparison weight");
  common(idx);

  int a = 1, b_dim = 1;
  auto* comp = app.add_subcommand("compose", "compose two operator classes");
  std::vector<std::string> cfiles;
  comp->add_option("files", cfiles, "two class files")->required()->expected(2);
  comp->add_option("--a", a, "degeneracy order")->check(CLI::PositiveNumber);
  comp->add_option("--b-dim", b_dim, "base dimension")->check(CLI::NonNegativeNumber);
  common(comp);

  std::string lift_file;
  auto* lift = app.add_subcommand("lift", "lift a b-class into the phi calculus");
  lift->add_option("file", lift_file, "class file")->required();
  lift->add_option("--a", a, "degeneracy order")->check(CLI::PositiveNumber);
  lift->add_option("--b-dim", b_dim, "base dimension")->check(CLI::NonNegativeNumber);
  common(lift);

  std::string op_file, report;
  auto* par = app.add_subcommand("parametrix", "replay the split parametrix construction");
  par->add_option("--op", op_file, "split operator file")->required();
  par->add_option("--alpha", o.alpha, "weight")->required();
  par->add_option("--report", report, "report path");
  common(par);

  std::string model, kind = "scalar", frame = "dirac_vertical";
  double step = 0.0;
  auto* ims = app.add_subcommand("imspec", "indicial roots and pole orders of the model");
  ims->add_option("--model", model, "model file")->required();
  ims->add_option("--window", o.window, "LO HI")->expected(2);
  ims->add_option("--modes", o.modes, "Fourier mode cutoff")->check(CLI::NonNegativeNumber);
  ims->add_option("--operator", kind, "scalar | gauss_bonnet | laplacian");
  ims->add_option("--frame", frame, "dirac_vertical | laplace_beltrami");
  ims->add_option("--step", step, "scan step")->check(CLI::PositiveNumber);
  common(ims);

  int gap_n = 21;
  auto* gap = app.add_subcommand("gap", "normal family gap on a (tau, eta) grid");
  gap->add_option("--model", model, "model file")->required();
  gap->add_option("--window", o.window, "LO HI")->expected(2);
  gap->add_option("--n", gap_n, "grid points per axis")->check(CLI::PositiveNumber);
  gap->add_option("--modes", o.modes, "fibre mode cutoff")->check(CLI::NonNegativeNumber);
  common(gap);

  int degree = 0;
  std::string base, fiber;
  auto* sol = app.add_subcommand("solve", "solve the separated harmonic equation for one mode");
  sol->add_option("--model", model, "model file")->required();
  sol->add_option("--degree", degree, "form degree (0 or top)");
  sol->add_option("--base", base, "base mode j, comma separated");
  sol->add_option("--fiber", fiber, "fibre mode m, comma separated");
  sol->add_option("--grid", o.grid, "T,N");
  common(sol);

  std::string fits;
  auto* ver = app.add_subcommand("verify", "check fitted decay against the predicted index sets");
  ver->add_option("--model", model, "model file")->required();
  ver->add_option("--alpha", o.alpha, "weight");
  ver->add_option("--grid", o.grid, "T,N");
  ver->add_option("--window", o.window, "LO HI")->expected(2);
  ver->add_option("--modes", o.modes, "Fourier mode cutoff")->check(CLI::NonNegativeNumber);
  ver->add_option("--fits", fits, "fits CSV path");
  common(ver);

  auto* vp = app.add_subcommand("verify-paper", "composite run on a model: spectrum, gap, decay, parametrix, Fredholm");
  vp->add_option("--model", model, "model file")->required();
  vp->add_option("--alpha", o.alpha, "weight for the decay check");
  vp->add_option("--grid", o.grid, "T,N");
  vp->add_option("--window", o.window, "LO HI")->expected(2);
  vp->add_option("--modes", o.modes, "Fourier mode cutoff")->check(CLI::NonNegativeNumber);
  common(vp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  o.alpha_set = par->parsed();
  if (!o.window.empty() && !(o.window[0] <= o.window[1])) {
    std::cerr << "error: --window needs LO <= HI\n";
    return kUsage;
  }

  try {
    if (idx->parsed()) return run_idx(idx_op, files, by, by_opt->count() > 0, o);
    if (comp->parsed()) return run_compose(cfiles, a, b_dim, o);
    if (lift->parsed()) return run_lift(lift_file, a, b_dim, o);
    if (par->parsed()) return run_parametrix(op_file, report, o);
    if (ims->parsed()) return run_imspec(model, kind, frame, step, o);
    if (gap->parsed()) return run_gap(model, gap_n, o);
    if (sol->parsed()) return run_solve(model, degree, base, fiber, o);
    if (ver->parsed()) return run_verify(model, fits, o);
    if (vp->parsed()) return run_composite(model, o);
  } catch (const io::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kFail;
  }
  return kUsage;
}
