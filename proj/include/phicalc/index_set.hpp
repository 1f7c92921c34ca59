#pragma once

#include <complex>
#include <string>
#include <vector>

namespace phicalc {

using cplx = std::complex<double>;

// Exponents closer than this are treated as equal.
inline constexpr double kExponentTol = 1e-9;
// Default truncation for display and enumeration.
inline constexpr double kDisplayCutoff = 10.0;

struct IndexPair {
  cplx z;
  int k = 0;
};

bool same_exponent(cplx a, cplx b);
// True when a - b is a nonnegative integer (within tolerance).
bool differs_by_natural(cplx a, cplx b);

// A polyhomogeneous index set: closure of finitely many generators under
// (z,k) -> (z+1,k) and (z,k) -> (z,k-1). Always kept in canonical form.
class IndexSet {
 public:
  IndexSet() = default;
  static IndexSet make(std::vector<IndexPair> generators);
  static IndexSet empty() { return {}; }
  // The real set "r" = closure of (r,0).
  static IndexSet real(double r) { return make({{cplx(r, 0.0), 0}}); }

  bool is_empty() const { return gens_.empty(); }
  const std::vector<IndexPair>& generators() const { return gens_; }

  bool contains(cplx z, int k) const;
  // Largest log power at exponent z, or -1 if z is not an exponent of the set.
  int max_log(cplx z) const;
  // Smallest real part, +inf for the empty set.
  double min_re() const;

  // Closure elements with Re z <= cutoff, one entry per exponent with its max log power.
  std::vector<IndexPair> elements(double cutoff = kDisplayCutoff) const;

  std::string to_string(double cutoff = kDisplayCutoff) const;

  friend bool operator==(const IndexSet& a, const IndexSet& b);
  friend bool operator!=(const IndexSet& a, const IndexSet& b) { return !(a == b); }

 private:
  std::vector<IndexPair> gens_;
};

IndexSet add(const IndexSet& I, const IndexSet& J);
IndexSet extended_union(const IndexSet& I, const IndexSet& J);
IndexSet shift(const IndexSet& I, double r);
IndexSet scale(const IndexSet& I, int a);
bool greater_than(const IndexSet& I, double alpha);
bool geq(const IndexSet& I, double alpha);

}  // namespace phicalc
