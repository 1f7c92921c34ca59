#include "phicalc/class_matrix.hpp"

#include <sstream>

namespace phicalc {

TermPtr given(OpClass c, std::string rule) {
  auto t = std::make_shared<DerivedTerm>();
  t->cls = std::move(c);
  t->rule = std::move(rule);
  return t;
}

TermPtr unary(OpClass c, std::string rule, TermPtr from) {
  auto t = std::make_shared<DerivedTerm>();
  t->cls = std::move(c);
  t->rule = std::move(rule);
  t->lhs = std::move(from);
  return t;
}

namespace {

void push(Entry& e, const OpClass& c, const std::string& rule = "given") {
  if (!c.is_zero()) e.push_back(given(c, rule));
}

}  // namespace

ClassMatrix ClassMatrix::diag(const std::optional<OpClass>& d0, const std::optional<OpClass>& d1) {
  ClassMatrix M;
  if (d0) push(M.e[0][0], *d0);
  if (d1) push(M.e[1][1], *d1);
  return M;
}

ClassMatrix ClassMatrix::offdiag(const std::optional<OpClass>& o01, const std::optional<OpClass>& o10) {
  ClassMatrix M;
  if (o01) push(M.e[0][1], *o01);
  if (o10) push(M.e[1][0], *o10);
  return M;
}

ClassMatrix ClassMatrix::of(const std::vector<OpClass>& e00, const std::vector<OpClass>& e01,
                            const std::vector<OpClass>& e10, const std::vector<OpClass>& e11) {
  const std::vector<OpClass>* cls[2][2] = {{&e00, &e01}, {&e10, &e11}};
  ClassMatrix M;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (const auto& c : *cls[i][j]) push(M.e[i][j], c);
  return M;
}

ClassMatrix ClassMatrix::uniform(const OpClass& c) {
  ClassMatrix M;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) push(M.e[i][j], c);
  return M;
}

ClassMatrix ClassMatrix::expand(const OpClass& c) {
  if (!c.proj) return uniform(c);
  OpClass core = c;
  core.proj.reset();
  ClassMatrix M;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const bool perp = c.proj->side == ProjDecoration::Side::right ? j == 1 : i == 1;
      OpClass t = core;
      if (perp) t = c.proj->side == ProjDecoration::Side::right ? core.right(c.proj->c) : core.left(c.proj->c);
      push(M.e[i][j], t, "expand");
    }
  return M;
}

bool ClassMatrix::is_zero() const { return term_count() == 0; }

std::size_t ClassMatrix::term_count() const {
  std::size_t n = 0;
  for (const auto& row : e)
    for (const auto& x : row) n += x.size();
  return n;
}

ClassMatrix sum(const ClassMatrix& A, const ClassMatrix& B) {
  ClassMatrix C = A;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) C.e[i][j].insert(C.e[i][j].end(), B.e[i][j].begin(), B.e[i][j].end());
  return C;
}

ClassMatrix multiply(const ClassMatrix& A, const ClassMatrix& B, const GeometryConstants& geo) {
  ClassMatrix C;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (const auto& a : A.e[i][k])
          for (const auto& b : B.e[k][j]) {
            const ComposeResult r = compose(a->cls, b->cls, geo);
            for (std::size_t n = 0; n < r.terms.size(); ++n) {
              if (r.terms[n].is_zero()) continue;
              auto t = std::make_shared<DerivedTerm>();
              t->cls = r.terms[n];
              t->rule = r.rules[n];
              t->lhs = a;
              t->rhs = b;
              C.e[i][j].push_back(t);
            }
          }
  return C;
}

ClassMatrix adjoint(const ClassMatrix& A) {
  ClassMatrix C;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (const auto& t : A.e[j][i]) C.e[i][j].push_back(unary(adjoint_class(t->cls), "adjoint", t));
  return C;
}

ClassMatrix simplify(const ClassMatrix& A, const FoldContext& ctx) {
  ClassMatrix C;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Entry& src = A.e[i][j];
      std::vector<bool> drop(src.size(), false);
      for (std::size_t p = 0; p < src.size(); ++p)
        for (std::size_t q = 0; q < src.size() && !drop[p]; ++q) {
          if (p == q || drop[q]) continue;
          if (!contained(src[p]->cls, src[q]->cls, ctx)) continue;
          // keep the earlier of two equal classes
          if (contained(src[q]->cls, src[p]->cls, ctx) && q > p) continue;
          drop[p] = true;
        }
      for (std::size_t p = 0; p < src.size(); ++p)
        if (!drop[p]) C.e[i][j].push_back(src[p]);
    }
  return C;
}

bool term_in_sum(const OpClass& t, const std::vector<OpClass>& target, const FoldContext& ctx) {
  if (t.is_zero()) return true;
  for (const auto& u : target)
    if (contained(t, u, ctx)) return true;
  if (!is_phi_calculus(t.kind) || t.kind == Kind::bphi) return false;
  const auto [near_b, near_ff] = decompose_near_ff(t);
  auto in_some = [&](const OpClass& piece) {
    if (piece.is_zero()) return true;
    for (const auto& u : target)
      if (contained(piece, u, ctx)) return true;
    return false;
  };
  return in_some(near_b) && in_some(near_ff);
}

namespace {

std::vector<OpClass> classes(const Entry& e) {
  std::vector<OpClass> out;
  for (const auto& t : e) out.push_back(t->cls);
  return out;
}

}  // namespace

std::vector<EntryVerdict> check_contained(const ClassMatrix& A, const ClassMatrix& target, const FoldContext& ctx) {
  std::vector<EntryVerdict> out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      EntryVerdict v{i, j, true, ""};
      const auto tgt = classes(target.e[i][j]);
      for (const auto& t : A.e[i][j]) {
        if (term_in_sum(t->cls, tgt, ctx)) continue;
        v.pass = false;
        v.detail = to_string(t->cls) + " not in " + to_string(target.e[i][j]);
        break;
      }
      out.push_back(v);
    }
  return out;
}

std::vector<EntryVerdict> check_equal(const ClassMatrix& A, const ClassMatrix& target, const FoldContext& ctx) {
  auto fwd = check_contained(A, target, ctx);
  const auto bwd = check_contained(target, A, ctx);
  for (std::size_t n = 0; n < fwd.size(); ++n)
    if (!bwd[n].pass) {
      fwd[n].pass = false;
      fwd[n].detail += (fwd[n].detail.empty() ? "" : "; ") + std::string("reverse: ") + bwd[n].detail;
    }
  return fwd;
}

bool all_pass(const std::vector<EntryVerdict>& v) {
  for (const auto& x : v)
    if (!x.pass) return false;
  return true;
}

OpClass cut_near_lf(const OpClass& t) {
  if (t.is_zero()) return t;
  const Folded f = fold(t);
  BoundFamily B;
  B.kind = FamilyKind::b;
  B.lf = f.bounds.lf;
  B.rf = IndexBound::none();
  B.bf = f.bounds.bf;
  return OpClass::bounded(Kind::b_ext, -kInf, B);
}

bool replay(const DerivedTerm& t, const GeometryConstants& geo) {
  if (!t.lhs) return true;
  if (!replay(*t.lhs, geo)) return false;
  if (t.rhs) {
    if (!replay(*t.rhs, geo)) return false;
    const ComposeResult r = compose(t.lhs->cls, t.rhs->cls, geo);
    for (std::size_t n = 0; n < r.terms.size(); ++n)
      if (r.terms[n] == t.cls && r.rules[n] == t.rule) return true;
    return false;
  }
  const OpClass& src = t.lhs->cls;
  if (t.rule == "adjoint") return adjoint_class(src) == t.cls;
  if (t.rule == "vanish-lf") return src.vanishing_lf() == t.cls;
  if (t.rule == "cut-lf") return cut_near_lf(src) == t.cls;
  if (t.rule == "e") return apply_infinite_power_rule(src) == t.cls;
  return false;
}

bool replay(const ClassMatrix& A, const GeometryConstants& geo) {
  for (const auto& row : A.e)
    for (const auto& entry : row)
      for (const auto& t : entry)
        if (!replay(*t, geo)) return false;
  return true;
}

std::string to_string(const Entry& e) {
  if (e.empty()) return "0";
  std::string s;
  for (std::size_t n = 0; n < e.size(); ++n) {
    if (n) s += " + ";
    s += to_string(e[n]->cls);
  }
  return s;
}

std::string to_string(const ClassMatrix& M) {
  std::ostringstream os;
  os << "[[" << to_string(M.e[0][0]) << " | " << to_string(M.e[0][1]) << "], [" << to_string(M.e[1][0]) << " | "
     << to_string(M.e[1][1]) << "]]";
  return os.str();
}

}  // namespace phicalc
