#include "phicalc/index_family.hpp"

namespace phicalc {

const char* face_name(Face f) {
  switch (f) {
    case Face::lf: return "lf";
    case Face::rf: return "rf";
    case Face::bf: return "bf";
    case Face::ff: return "ff";
  }
  return "?";
}

Face parse_face(const std::string& s) {
  if (s == "lf") return Face::lf;
  if (s == "rf") return Face::rf;
  if (s == "bf") return Face::bf;
  if (s == "ff") return Face::ff;
  throw std::invalid_argument("unknown face label '" + s + "'");
}

IndexFamily small_family(FamilyKind kind) {
  IndexFamily F;
  F.kind = kind;
  if (kind == FamilyKind::b)
    F.bf = IndexSet::real(0.0);
  else
    F.ff = IndexSet::real(0.0);
  return F;
}

bool is_small(const IndexFamily& F) { return F == small_family(F.kind); }

BoundFamily abstract_family(const IndexFamily& F) {
  BoundFamily B;
  B.kind = F.kind;
  B.lf = abstract_bound(F.lf);
  B.rf = abstract_bound(F.rf);
  B.bf = abstract_bound(F.bf);
  if (F.has_ff()) B.ff = abstract_bound(F.ff);
  return B;
}

bool implies(const BoundFamily& a, const BoundFamily& b) {
  if (!implies(a.lf, b.lf) || !implies(a.rf, b.rf) || !implies(a.bf, b.bf)) return false;
  if (b.has_ff()) {
    if (!a.has_ff()) return false;
    return implies(a.ff, b.ff);
  }
  return true;
}

bool composable(const IndexFamily& I, const IndexFamily& J) { return greater_than(add(I.rf, J.lf), 0.0); }

bool composable(const BoundFamily& I, const BoundFamily& J) {
  return implies(add(I.rf, J.lf), IndexBound::gt(0.0));
}

std::string to_string(const IndexFamily& F) {
  std::string s = "(lf=" + F.lf.to_string() + ", rf=" + F.rf.to_string() + ", bf=" + F.bf.to_string();
  if (F.has_ff()) s += ", ff=" + F.ff.to_string();
  return s + ")";
}

std::string to_string(const BoundFamily& F) {
  std::string s = "(lf:" + F.lf.to_string() + ", rf:" + F.rf.to_string() + ", bf:" + F.bf.to_string();
  if (F.has_ff()) s += ", ff:" + F.ff.to_string();
  return s + ")";
}

}  // namespace phicalc
