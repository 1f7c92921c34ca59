#include "phicalc/index_bound.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace phicalc {

namespace {

int rank(IndexBound::Rel r) {
  switch (r) {
    case IndexBound::Rel::Strict: return 0;
    case IndexBound::Rel::Geq: return 1;
    case IndexBound::Rel::Weak: return 2;
  }
  return 2;
}

bool near(double a, double b) { return std::abs(a - b) <= kExponentTol; }

}  // namespace

std::string IndexBound::to_string() const {
  if (is_empty()) return "empty";
  std::ostringstream os;
  os.precision(12);
  double w = std::abs(v) < kExponentTol ? 0.0 : v;
  switch (rel) {
    case Rel::Strict: os << ">" << w; break;
    case Rel::Geq: os << ">=" << w; break;
    case Rel::Weak: os << ">=" << w << "(log)"; break;
  }
  return os.str();
}

bool operator==(const IndexBound& a, const IndexBound& b) {
  if (a.is_empty() || b.is_empty()) return a.is_empty() == b.is_empty();
  return near(a.v, b.v) && a.rel == b.rel;
}

bool implies(const IndexBound& a, const IndexBound& b) {
  if (a.is_empty()) return true;
  if (b.is_empty()) return false;
  if (a.v > b.v + kExponentTol) return true;
  if (a.v < b.v - kExponentTol) return false;
  return rank(a.rel) <= rank(b.rel);
}

IndexBound abstract_bound(const IndexSet& I) {
  if (I.is_empty()) return IndexBound::none();
  const double v = I.min_re();
  bool logs = false;
  for (const auto& g : I.generators())
    if (near(g.z.real(), v) && g.k > 0) logs = true;
  return logs ? IndexBound::weak(v) : IndexBound::ge(v);
}

bool satisfies(const IndexSet& I, const IndexBound& b) { return implies(abstract_bound(I), b); }

IndexBound add(const IndexBound& a, const IndexBound& b) {
  if (a.is_empty() || b.is_empty()) return IndexBound::none();
  IndexBound r;
  r.v = a.v + b.v;
  if (a.rel == IndexBound::Rel::Strict || b.rel == IndexBound::Rel::Strict)
    r.rel = IndexBound::Rel::Strict;
  else if (a.rel == IndexBound::Rel::Geq && b.rel == IndexBound::Rel::Geq)
    r.rel = IndexBound::Rel::Geq;
  else
    r.rel = IndexBound::Rel::Weak;
  return r;
}

IndexBound extended_union(const IndexBound& a, const IndexBound& b) {
  if (a.is_empty()) return b;
  if (b.is_empty()) return a;
  if (a.v < b.v - kExponentTol) return a;
  if (b.v < a.v - kExponentTol) return b;
  // Same bound: a log boost at Re z = v needs elements of both sets there.
  if (a.rel == IndexBound::Rel::Strict) return b;
  if (b.rel == IndexBound::Rel::Strict) return a;
  return IndexBound::weak(a.v);
}

IndexBound shift(const IndexBound& a, double r) {
  if (a.is_empty()) return a;
  if (std::isinf(r)) {
    if (r > 0) return IndexBound::none();
    throw std::invalid_argument("shift of a nonempty index bound by -inf");
  }
  return {a.v + r, a.rel};
}

IndexBound scale(const IndexBound& a, int f) {
  if (f < 1) throw std::invalid_argument("scale factor must be a positive integer");
  if (a.is_empty()) return a;
  return {a.v * f, a.rel};
}

}  // namespace phicalc
