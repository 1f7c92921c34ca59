#pragma once

#include <limits>
#include <string>

#include "phicalc/index_set.hpp"

namespace phicalc {

// Abstract index set: all that is known is a lower bound on the real parts.
//   Strict: Re z > v
//   Geq:    Re z >= v, log power 0 where Re z = v
//   Weak:   Re z >= v, logs allowed where Re z = v
// v = +inf stands for the empty set.
struct IndexBound {
  enum class Rel { Strict, Geq, Weak };
  double v = std::numeric_limits<double>::infinity();
  Rel rel = Rel::Strict;

  static IndexBound none() { return {}; }
  static IndexBound gt(double v) { return {v, Rel::Strict}; }
  static IndexBound ge(double v) { return {v, Rel::Geq}; }
  static IndexBound weak(double v) { return {v, Rel::Weak}; }

  bool is_empty() const { return v == std::numeric_limits<double>::infinity(); }
  std::string to_string() const;
};

bool operator==(const IndexBound& a, const IndexBound& b);
inline bool operator!=(const IndexBound& a, const IndexBound& b) { return !(a == b); }

// Every index set satisfying a also satisfies b.
bool implies(const IndexBound& a, const IndexBound& b);

// Tightest bound satisfied by a concrete set.
IndexBound abstract_bound(const IndexSet& I);
// Whether a concrete set satisfies a bound.
bool satisfies(const IndexSet& I, const IndexBound& b);

// Sound over-approximations of the concrete operations.
IndexBound add(const IndexBound& a, const IndexBound& b);
IndexBound extended_union(const IndexBound& a, const IndexBound& b);
IndexBound shift(const IndexBound& a, double r);
IndexBound scale(const IndexBound& a, int f);

}  // namespace phicalc
