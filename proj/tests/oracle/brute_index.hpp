#pragma once

// Brute-force index sets: every element (z, k) with Re z below a cutoff is listed.
// Exponents live on the half-integer lattice so that equality is exact.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "phicalc/index_set.hpp"

namespace oracle {

using Key = std::pair<long, long>;  // (2 Re z, 2 Im z)

inline Key key_of(std::complex<double> z) { return {std::lround(2.0 * z.real()), std::lround(2.0 * z.imag())}; }
inline std::complex<double> z_of(const Key& k) { return {k.first / 2.0, k.second / 2.0}; }

struct Brute {
  double cutoff = 0.0;
  std::map<Key, int> top;  // exponent -> largest log power present

  int at(const Key& k) const {
    auto it = top.find(k);
    return it == top.end() ? -1 : it->second;
  }
  bool contains(std::complex<double> z, int k) const { return at(key_of(z)) >= k; }
  void put(const Key& k, int v) {
    if (k.first > std::lround(2.0 * cutoff)) return;
    int& slot = top.try_emplace(k, -1).first->second;
    slot = std::max(slot, v);
  }
};

// Closure of the generators under z -> z+1 and k -> k-1, listed up to the cutoff.
inline Brute closure(const std::vector<phicalc::IndexPair>& gens, double cutoff) {
  Brute B;
  B.cutoff = cutoff;
  for (const auto& g : gens)
    for (int n = 0; g.z.real() + n <= cutoff + 1e-12; ++n) B.put(key_of(g.z + static_cast<double>(n)), g.k);
  return B;
}

inline Brute add(const Brute& I, const Brute& J, double cutoff) {
  Brute K;
  K.cutoff = cutoff;
  for (const auto& [a, ka] : I.top)
    for (const auto& [b, kb] : J.top) K.put({a.first + b.first, a.second + b.second}, ka + kb);
  return K;
}

// I u J u {(z, l1+l2+1)} over common exponents of the closed sets.
inline Brute extended_union(const Brute& I, const Brute& J, double cutoff) {
  Brute K;
  K.cutoff = cutoff;
  for (const auto& [a, ka] : I.top) K.put(a, ka);
  for (const auto& [b, kb] : J.top) K.put(b, kb);
  for (const auto& [a, ka] : I.top) {
    const int kb = J.at(a);
    if (kb >= 0) K.put(a, ka + kb + 1);
  }
  return K;
}

inline Brute shift(const Brute& I, double r, double cutoff) {
  Brute K;
  K.cutoff = cutoff;
  const long dr = std::lround(2.0 * r);
  for (const auto& [a, ka] : I.top) K.put({a.first + dr, a.second}, ka);
  return K;
}

// Minimal elements (those not reached from z-1 with the same log power) scaled, then closed.
inline Brute scale(const Brute& I, int f, double cutoff) {
  std::vector<phicalc::IndexPair> mins;
  for (const auto& [a, ka] : I.top) {
    const int below = I.at({a.first - 2, a.second});
    if (ka > below) mins.push_back({static_cast<double>(f) * z_of(a), ka});
  }
  return closure(mins, cutoff);
}

inline bool greater_than(const Brute& I, double alpha) {
  for (const auto& [a, ka] : I.top)
    if (a.first / 2.0 <= alpha) return false;
  return true;
}

inline bool geq(const Brute& I, double alpha) {
  for (const auto& [a, ka] : I.top) {
    if (a.first / 2.0 < alpha) return false;
    if (a.first / 2.0 == alpha && ka > 0) return false;
  }
  return true;
}

// Agreement with a canonical set on every exponent with Re z <= cutoff.
inline bool agrees(const Brute& B, const phicalc::IndexSet& I, double cutoff) {
  for (const auto& [a, ka] : B.top) {
    if (a.first / 2.0 > cutoff) continue;
    if (I.max_log(z_of(a)) != ka) return false;
  }
  for (const auto& e : I.elements(cutoff))
    if (B.at(key_of(e.z)) != e.k) return false;
  return true;
}

inline bool same(const Brute& A, const Brute& B, double cutoff) {
  auto trimmed = [&](const Brute& X) {
    std::map<Key, int> t;
    for (const auto& [a, ka] : X.top)
      if (a.first / 2.0 <= cutoff) t[a] = ka;
    return t;
  };
  return trimmed(A) == trimmed(B);
}

// Generators with half-integer real parts in [lo, hi], imaginary part 0 or 1, log power <= 2.
inline std::vector<phicalc::IndexPair> random_generators(std::mt19937& rng, double lo, double hi, int max_count = 3,
                                                         double p_empty = 0.15) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) < p_empty) return {};
  std::uniform_int_distribution<int> count(1, max_count), re(static_cast<int>(std::lround(2 * lo)),
                                                             static_cast<int>(std::lround(2 * hi))),
      logp(0, 2);
  std::vector<phicalc::IndexPair> g;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) g.push_back({{re(rng) / 2.0, u(rng) < 0.2 ? 1.0 : 0.0}, logp(rng)});
  return g;
}

}  // namespace oracle
