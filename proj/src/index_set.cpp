#include "phicalc/index_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace phicalc {

bool same_exponent(cplx a, cplx b) {
  return std::abs(a.real() - b.real()) <= kExponentTol && std::abs(a.imag() - b.imag()) <= kExponentTol;
}

bool differs_by_natural(cplx a, cplx b) {
  const cplx d = a - b;
  if (std::abs(d.imag()) > kExponentTol) return false;
  const double n = std::round(d.real());
  return n >= 0.0 && std::abs(d.real() - n) <= kExponentTol;
}

namespace {

bool pair_less(const IndexPair& p, const IndexPair& q) {
  if (p.z.real() != q.z.real()) return p.z.real() < q.z.real();
  if (p.z.imag() != q.z.imag()) return p.z.imag() < q.z.imag();
  return p.k < q.k;
}

std::string fmt_num(double v) {
  if (std::abs(v) < kExponentTol) v = 0.0;
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

std::string fmt_exponent(cplx z) {
  if (std::abs(z.imag()) <= kExponentTol) return fmt_num(z.real());
  std::string s = fmt_num(z.real());
  s += z.imag() < 0 ? "-" : "+";
  s += fmt_num(std::abs(z.imag())) + "i";
  return s;
}

}  // namespace

IndexSet IndexSet::make(std::vector<IndexPair> gens) {
  for (const auto& g : gens) {
    if (g.k < 0) throw std::invalid_argument("index set generator with negative log power");
    if (!std::isfinite(g.z.real()) || !std::isfinite(g.z.imag()))
      throw std::invalid_argument("index set generator with non-finite exponent");
  }
  std::vector<IndexPair> kept;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < gens.size() && !dominated; ++j) {
      if (i == j) continue;
      if (!differs_by_natural(gens[i].z, gens[j].z) || gens[i].k > gens[j].k) continue;
      const bool identical = same_exponent(gens[i].z, gens[j].z) && gens[i].k == gens[j].k;
      // among identical copies only the first survives
      dominated = !identical || j < i;
    }
    if (!dominated) kept.push_back(gens[i]);
  }
  std::sort(kept.begin(), kept.end(), pair_less);
  IndexSet s;
  s.gens_ = std::move(kept);
  return s;
}

int IndexSet::max_log(cplx z) const {
  int best = -1;
  for (const auto& g : gens_)
    if (differs_by_natural(z, g.z)) best = std::max(best, g.k);
  return best;
}

bool IndexSet::contains(cplx z, int k) const { return k >= 0 && max_log(z) >= k; }

double IndexSet::min_re() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& g : gens_) m = std::min(m, g.z.real());
  return m;
}

std::vector<IndexPair> IndexSet::elements(double cutoff) const {
  std::vector<IndexPair> out;
  for (const auto& g : gens_) {
    for (int n = 0; g.z.real() + n <= cutoff + kExponentTol; ++n) {
      const cplx z = g.z + static_cast<double>(n);
      bool seen = false;
      for (const auto& e : out) seen = seen || same_exponent(e.z, z);
      if (!seen) out.push_back({z, max_log(z)});
    }
  }
  std::sort(out.begin(), out.end(), pair_less);
  return out;
}

std::string IndexSet::to_string(double cutoff) const {
  if (is_empty()) return "empty";
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& g : gens_) {
    if (g.z.real() > cutoff + kExponentTol) continue;
    if (!first) os << ",";
    os << "(" << fmt_exponent(g.z) << "," << g.k << ")";
    first = false;
  }
  os << "}";
  return os.str();
}

bool operator==(const IndexSet& a, const IndexSet& b) {
  if (a.gens_.size() != b.gens_.size()) return false;
  for (std::size_t i = 0; i < a.gens_.size(); ++i)
    if (!same_exponent(a.gens_[i].z, b.gens_[i].z) || a.gens_[i].k != b.gens_[i].k) return false;
  return true;
}

IndexSet add(const IndexSet& I, const IndexSet& J) {
  std::vector<IndexPair> g;
  for (const auto& p : I.generators())
    for (const auto& q : J.generators()) g.push_back({p.z + q.z, p.k + q.k});
  return IndexSet::make(std::move(g));
}

IndexSet extended_union(const IndexSet& I, const IndexSet& J) {
  std::vector<IndexPair> g = I.generators();
  g.insert(g.end(), J.generators().begin(), J.generators().end());
  // The combined log power at a shared exponent can only change where one of the
  // two max-log profiles jumps, i.e. at a generator exponent.
  const std::size_t n = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    const int ki = I.max_log(g[i].z);
    const int kj = J.max_log(g[i].z);
    if (ki >= 0 && kj >= 0) g.push_back({g[i].z, ki + kj + 1});
  }
  return IndexSet::make(std::move(g));
}

IndexSet shift(const IndexSet& I, double r) {
  if (I.is_empty()) return I;
  if (std::isinf(r)) {
    if (r > 0) return IndexSet::empty();
    throw std::invalid_argument("shift of a nonempty index set by -inf");
  }
  std::vector<IndexPair> g = I.generators();
  for (auto& p : g) p.z += r;
  return IndexSet::make(std::move(g));
}

IndexSet scale(const IndexSet& I, int a) {
  if (a < 1) throw std::invalid_argument("scale factor must be a positive integer");
  std::vector<IndexPair> g = I.generators();
  for (auto& p : g) p.z *= static_cast<double>(a);
  return IndexSet::make(std::move(g));
}

bool greater_than(const IndexSet& I, double alpha) {
  for (const auto& g : I.generators())
    if (g.z.real() <= alpha + kExponentTol) return false;
  return true;
}

bool geq(const IndexSet& I, double alpha) {
  for (const auto& g : I.generators()) {
    if (g.z.real() < alpha - kExponentTol) return false;
    if (std::abs(g.z.real() - alpha) <= kExponentTol && g.k > 0) return false;
  }
  return true;
}

}  // namespace phicalc
