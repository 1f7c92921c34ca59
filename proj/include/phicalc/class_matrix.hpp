#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "phicalc/compose.hpp"

namespace phicalc {

// A class together with the rule application that produced it.
struct DerivedTerm {
  OpClass cls;
  std::string rule;  // "given", a composition rule list, or a unary step
  std::shared_ptr<const DerivedTerm> lhs, rhs;
};
using TermPtr = std::shared_ptr<const DerivedTerm>;

TermPtr given(OpClass c, std::string rule = "given");
TermPtr unary(OpClass c, std::string rule, TermPtr from);

// A sum of classes; empty means the zero operator.
using Entry = std::vector<TermPtr>;

// Block operator with respect to Pi, Pi_perp.
struct ClassMatrix {
  std::array<std::array<Entry, 2>, 2> e;

  Entry& at(int i, int j) { return e[i][j]; }
  const Entry& at(int i, int j) const { return e[i][j]; }

  static ClassMatrix diag(const std::optional<OpClass>& d0, const std::optional<OpClass>& d1);
  static ClassMatrix offdiag(const std::optional<OpClass>& o01, const std::optional<OpClass>& o10);
  static ClassMatrix of(const std::vector<OpClass>& e00, const std::vector<OpClass>& e01,
                        const std::vector<OpClass>& e10, const std::vector<OpClass>& e11);
  // Every entry holds the same class.
  static ClassMatrix uniform(const OpClass& c);
  // Spreads a class with a projector decoration over the four entries.
  static ClassMatrix expand(const OpClass& c);

  bool is_zero() const;
  std::size_t term_count() const;
};

ClassMatrix sum(const ClassMatrix& A, const ClassMatrix& B);
ClassMatrix multiply(const ClassMatrix& A, const ClassMatrix& B, const GeometryConstants& geo);
// Entrywise adjoint with the blocks transposed.
ClassMatrix adjoint(const ClassMatrix& A);
// Drops terms already contained in another term of the same entry.
ClassMatrix simplify(const ClassMatrix& A, const FoldContext& ctx);

// A single class is in a sum if it sits in one summand, or if its two pieces
// near and away from ff each sit in a summand.
bool term_in_sum(const OpClass& t, const std::vector<OpClass>& target, const FoldContext& ctx);

struct EntryVerdict {
  int i = 0, j = 0;
  bool pass = true;
  std::string detail;
};

// Containment of every term of A in the corresponding entry of the target.
std::vector<EntryVerdict> check_contained(const ClassMatrix& A, const ClassMatrix& target, const FoldContext& ctx);
// Mutual containment.
std::vector<EntryVerdict> check_equal(const ClassMatrix& A, const ClassMatrix& target, const FoldContext& ctx);
bool all_pass(const std::vector<EntryVerdict>& v);

// The part of a kernel supported near lf, read as a b-operator of order -inf vanishing at rf.
OpClass cut_near_lf(const OpClass& t);

// Recomputes every derivation chain below the term; true if each step reproduces its class.
bool replay(const DerivedTerm& t, const GeometryConstants& geo);
bool replay(const ClassMatrix& A, const GeometryConstants& geo);

std::string to_string(const Entry& e);
std::string to_string(const ClassMatrix& M);

}  // namespace phicalc
