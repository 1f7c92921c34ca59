#pragma once

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "phicalc/index_family.hpp"

namespace phicalc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Kind { b, b_ext, phi, phi_ext, bphi, smoothing, zero };

const char* kind_name(Kind k);
Kind parse_kind(const std::string& s);
bool is_b_calculus(Kind k);
bool is_phi_calculus(Kind k);
bool is_ext(Kind k);

struct Weight {
  double alpha = 0.0;
  friend bool operator==(const Weight& a, const Weight& b) { return a.alpha == b.alpha; }
};

// monostate: the class is determined by its kind (bphi, zero).
using ClassSpec = std::variant<std::monostate, Weight, IndexFamily, BoundFamily>;

// A factor (Pi + x^c Pi_perp) standing to the right or to the left of the class.
struct ProjDecoration {
  enum class Side { left, right };
  Side side = Side::right;
  double c = 0.0;
  friend bool operator==(const ProjDecoration& a, const ProjDecoration& b) {
    return a.side == b.side && a.c == b.c;
  }
};

// x^xl * Psi * x^xr, with optional infinite-order vanishing at lf / rf.
struct OpClass {
  Kind kind = Kind::phi;
  double order = 0.0;
  ClassSpec spec;
  double xl = 0.0;
  double xr = 0.0;
  bool lf_vanish = false;
  bool rf_vanish = false;
  std::optional<ProjDecoration> proj;

  static OpClass zero();
  static OpClass weighted(Kind k, double order, double alpha);
  static OpClass small(Kind k, double order);
  static OpClass bphi(double order);
  static OpClass full(Kind k, double order, IndexFamily F);
  static OpClass bounded(Kind k, double order, BoundFamily F);

  OpClass left(double c) const;
  OpClass right(double c) const;
  OpClass vanishing_lf() const;
  OpClass vanishing_rf() const;

  bool is_zero() const { return kind == Kind::zero; }
  bool has_weight() const { return std::holds_alternative<Weight>(spec); }
  double weight() const { return std::get<Weight>(spec).alpha; }
  bool is_small() const;

  friend bool operator==(const OpClass& a, const OpClass& b);
  friend bool operator!=(const OpClass& a, const OpClass& b) { return !(a == b); }
};

std::string to_string(const OpClass& c);

// Index-bound picture of a class after absorbing the x-power factors.
struct Folded {
  bool phi_calculus = true;
  bool ext = false;
  double order = 0.0;
  BoundFamily bounds;
};

struct FoldContext {
  int a = 1;
  int b_dim = 1;
  // Treat Psi and Psi_ext as the same space.
  bool ignore_ext = false;
};

Folded fold(const OpClass& c);
// b-classes are carried into the phi calculus by lifting (needs negative order).
std::vector<Folded> fold_as_phi(const OpClass& c, const FoldContext& ctx);

bool contained(const OpClass& A, const OpClass& B, const FoldContext& ctx);
bool equal_folded(const OpClass& A, const OpClass& B, const FoldContext& ctx);

OpClass adjoint_class(const OpClass& P);
OpClass conjugate_by_power(const OpClass& P, double c);
enum class Side { left, right };
OpClass multiply_x_power(const OpClass& P, double c, Side side);

// Splits a phi class into a part vanishing near ff and a part vanishing at lf, rf.
std::pair<OpClass, OpClass> decompose_near_ff(const OpClass& S);

struct LiftResult {
  OpClass main;       // order m, ff = I_bf + a(-m)
  OpClass remainder;  // order -inf, ff = I_bf + a((-m) extended-union (b+1))
  std::vector<std::string> warnings;
};
LiftResult lift_b_to_phi(const OpClass& T, int a, int b_dim);
IndexFamily lift_family(const IndexFamily& I, double m, int a, int b_dim, bool remainder);

// Weighted Sobolev boundedness x^alpha H^{k+m} -> x^beta H^k, and compactness.
bool is_bounded(const OpClass& P, double alpha, double beta, double k);
bool is_compact(const OpClass& P, double alpha, double beta, double k);
bool is_bounded(const std::vector<OpClass>& sum, double alpha, double beta, double k);
bool is_compact(const std::vector<OpClass>& sum, double alpha, double beta, double k);

class NonIntegrable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class UnsupportedOperation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

IndexSet map_phg(const OpClass& P, const IndexSet& I);

}  // namespace phicalc
