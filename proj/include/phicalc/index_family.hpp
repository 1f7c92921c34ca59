#pragma once

#include <stdexcept>
#include <string>

#include "phicalc/index_bound.hpp"
#include "phicalc/index_set.hpp"

namespace phicalc {

enum class Face { lf, rf, bf, ff };
enum class FamilyKind { b, phi };

const char* face_name(Face f);
Face parse_face(const std::string& s);

// One index set (or bound) per boundary hypersurface of the double space.
// b-type families carry lf, rf, bf; phi-type families also carry ff.
template <class S>
struct FaceFamily {
  FamilyKind kind = FamilyKind::phi;
  S lf, rf, bf, ff;

  bool has_ff() const { return kind == FamilyKind::phi; }

  const S& at(Face f) const {
    switch (f) {
      case Face::lf: return lf;
      case Face::rf: return rf;
      case Face::bf: return bf;
      case Face::ff:
        if (!has_ff()) throw std::invalid_argument("b-type family has no ff entry");
        return ff;
    }
    throw std::invalid_argument("bad face");
  }
  S& at(Face f) { return const_cast<S&>(static_cast<const FaceFamily&>(*this).at(f)); }

  friend bool operator==(const FaceFamily& a, const FaceFamily& b) {
    if (a.kind != b.kind) return false;
    if (!(a.lf == b.lf && a.rf == b.rf && a.bf == b.bf)) return false;
    return !a.has_ff() || a.ff == b.ff;
  }
};

using IndexFamily = FaceFamily<IndexSet>;
using BoundFamily = FaceFamily<IndexBound>;

IndexFamily small_family(FamilyKind kind);
bool is_small(const IndexFamily& F);

BoundFamily abstract_family(const IndexFamily& F);
// Facewise implication; a b-type family is compared on its three faces only.
bool implies(const BoundFamily& a, const BoundFamily& b);

// Multiplying by x^c on the left shifts lf, bf, ff; on the right rf, bf, ff.
template <class S>
FaceFamily<S> fold_left_power(FaceFamily<S> F, double c) {
  if (c == 0.0) return F;
  F.lf = shift(F.lf, c);
  F.bf = shift(F.bf, c);
  if (F.has_ff()) F.ff = shift(F.ff, c);
  return F;
}

template <class S>
FaceFamily<S> fold_right_power(FaceFamily<S> F, double c) {
  if (c == 0.0) return F;
  F.rf = shift(F.rf, c);
  F.bf = shift(F.bf, c);
  if (F.has_ff()) F.ff = shift(F.ff, c);
  return F;
}

template <class S>
FaceFamily<S> swap_sides(FaceFamily<S> F) {
  std::swap(F.lf, F.rf);
  return F;
}

// Full phi-calculus composition, A = a(b+1). Works on concrete sets and on bounds.
template <class S>
FaceFamily<S> compose_phi_families(const FaceFamily<S>& I, const FaceFamily<S>& J, double A) {
  if (!I.has_ff() || !J.has_ff()) throw std::invalid_argument("phi composition needs phi-type families");
  FaceFamily<S> K;
  K.kind = FamilyKind::phi;
  K.lf = extended_union(extended_union(I.lf, add(I.bf, J.lf)), add(I.ff, J.lf));
  K.rf = extended_union(extended_union(J.rf, add(I.rf, J.bf)), add(I.rf, J.ff));
  K.bf = extended_union(extended_union(extended_union(add(I.lf, J.rf), add(I.bf, J.bf)), add(I.ff, J.bf)),
                        add(I.bf, J.ff));
  K.ff = extended_union(extended_union(shift(add(I.lf, J.rf), A), shift(add(I.bf, J.bf), A)), add(I.ff, J.ff));
  return K;
}

// Integrability condition I_rf + J_lf > 0 of the composition theorem.
bool composable(const IndexFamily& I, const IndexFamily& J);
bool composable(const BoundFamily& I, const BoundFamily& J);

std::string to_string(const IndexFamily& F);
std::string to_string(const BoundFamily& F);

}  // namespace phicalc
