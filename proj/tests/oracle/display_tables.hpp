#pragma once

// Class matrices of the split construction, written out entry by entry from the
// displayed formulas with c = am. Independent of the engine's own target builders.

#include <limits>
#include <string>
#include <vector>

#include "phicalc/class_matrix.hpp"

namespace oracle {

using phicalc::ClassMatrix;
using phicalc::Kind;
using phicalc::OpClass;

struct Tables {
  int a, m;
  double alpha, c;
  static constexpr double inf = std::numeric_limits<double>::infinity();

  Tables(int a_, int m_, double alpha_) : a(a_), m(m_), alpha(alpha_), c(static_cast<double>(a_) * m_) {}

  OpClass psi(double order) const { return OpClass::weighted(Kind::phi_ext, order, alpha); }
  OpClass psi_b(double order) const { return OpClass::weighted(Kind::b, order, alpha); }
  OpClass small(double order) const { return OpClass::small(Kind::phi_ext, order); }
  OpClass psi_lf() const { return psi(0).vanishing_lf(); }
  OpClass psi_b_rf() const { return OpClass::weighted(Kind::b_ext, -inf, alpha).vanishing_rf(); }
  static ClassMatrix Z() { return ClassMatrix::of({}, {}, {}, {}); }

  // X (Pi + x^c Pi_perp)
  ClassMatrix right_split(const OpClass& X) const { return ClassMatrix::of({X}, {X.right(c)}, {X}, {X.right(c)}); }
  // (x^{-c} Pi + Pi_perp) X
  ClassMatrix left_split(const OpClass& X) const { return ClassMatrix::of({X.left(-c)}, {X.left(-c)}, {X}, {X}); }

  ClassMatrix Qd() const { return ClassMatrix::of({psi_b(-m).left(-c)}, {}, {}, {small(-m)}); }
  ClassMatrix Rd() const { return ClassMatrix::of({psi(0).left(inf)}, {}, {}, {small(0).left(inf)}); }
  ClassMatrix PoQd() const { return ClassMatrix::of({}, {small(0).right(c)}, {psi(0)}, {}); }
  ClassMatrix Qo() const { return ClassMatrix::of({}, {psi(-m).left(-c).right(c)}, {psi(-m)}, {}); }
  ClassMatrix Ro() const { return ClassMatrix::of({}, {psi(0).left(inf).right(c)}, {psi(0).left(inf)}, {}); }
  ClassMatrix PoQd_sq() const { return ClassMatrix::of({psi(0).left(c)}, {}, {}, {psi(0).right(c)}); }
  ClassMatrix PsiR() const {
    const OpClass L = psi_lf();
    return ClassMatrix::of({L.left(c)}, {L.right(c)}, {L}, {L.right(c)});
  }
  ClassMatrix R3_sq() const {
    const OpClass L = psi_lf();
    return ClassMatrix::of({L.left(c)}, {L.left(c).right(c)}, {L.left(c)}, {L.right(c)});
  }
  ClassMatrix R3_pow(int N) const {
    const OpClass L = psi_lf().left((N - 1) * c);
    return ClassMatrix::of({L.left(c)}, {L.right(c)}, {L}, {L.right(c)});
  }
  ClassMatrix Q3R3_diag() const {
    return ClassMatrix::of({psi_b(-inf).left(-c), OpClass::bphi(-m)}, {}, {}, {psi(-m).right(c)});
  }
  ClassMatrix Q3R3_off() const { return Qo(); }
  ClassMatrix Qprime() const {
    const OpClass L = psi_b_rf();
    return ClassMatrix::of({L}, {L}, {L.right(c)}, {L.right(c)});
  }
  ClassMatrix QprimeR3() const { return right_split(psi(-inf)); }
  ClassMatrix Rpartial() const { return right_split(psi(0).left(inf)); }
  ClassMatrix QsigmaRpartial() const { return right_split(psi(-m).left(inf)); }
  ClassMatrix Rright() const { return right_split(OpClass::weighted(Kind::phi, -inf, alpha).left(inf)); }
  ClassMatrix Rleft() const { return left_split(OpClass::weighted(Kind::phi, -inf, alpha).right(inf)); }
  ClassMatrix Q() const {
    return ClassMatrix::of({psi_b(-m).left(-c), OpClass::bphi(-m)}, {psi(-m).left(-c).right(c)}, {psi(-m)},
                           {small(-m), psi(-m).right(c)});
  }
};

}  // namespace oracle
