#include "phicalc/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "phicalc/exterior.hpp"
#include "phicalc/parallel.hpp"

namespace phicalc {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;

}  // namespace

void ModelGeometry::validate() const {
  if (a < 1) throw std::invalid_argument("model needs a >= 1");
  if (b() + f() > 10) throw std::invalid_argument("model dimension too large");
  for (double L : base_L)
    if (!(L > 0.0)) throw std::invalid_argument("base circumferences must be positive");
  for (double L : fiber_L)
    if (!(L > 0.0)) throw std::invalid_argument("fibre circumferences must be positive");
  if (!(x_max > 0.0)) throw std::invalid_argument("x_max must be positive");
}

ModelGeometry torus_model(int a, int b, int f, double L) {
  ModelGeometry g;
  g.a = a;
  g.base_L.assign(b, L);
  g.fiber_L.assign(f, L);
  return g;
}

FibreHarmonicBasis fibre_harmonic_basis(const ModelGeometry& g) {
  FibreHarmonicBasis B;
  const int f = g.f();
  B.dim = 1 << f;
  for (unsigned s = 0; s < static_cast<unsigned>(B.dim); ++s) {
    std::string label;
    for (int i = 0; i < f; ++i)
      if (s & (1u << i)) label += (label.empty() ? "" : "^") + std::string("dz") + std::to_string(i + 1);
    B.labels.push_back(label.empty() ? "1" : label);
    B.degrees.push_back(popcount(s));
    B.rescale_power.push_back(g.a * popcount(s));
  }
  return B;
}

std::vector<Mode> enumerate_modes(int dims, int cutoff) {
  std::vector<Mode> out;
  Mode cur(dims, -cutoff);
  if (dims == 0) return {Mode{}};
  while (true) {
    out.push_back(cur);
    int d = dims - 1;
    while (d >= 0 && cur[d] == cutoff) cur[d--] = -cutoff;
    if (d < 0) break;
    ++cur[d];
  }
  return out;
}

Eigen::VectorXd wavevector(const std::vector<double>& L, const Mode& j) {
  if (j.size() != L.size()) throw std::invalid_argument("mode length does not match torus dimension");
  Eigen::VectorXd k(L.size());
  for (std::size_t i = 0; i < L.size(); ++i) k(i) = kTwoPi * j[i] / L[i];
  return k;
}

std::string mode_string(const Mode& j) {
  std::string s = "(";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + std::to_string(j[i]);
  return s + ")";
}

IndicialKind parse_indicial_kind(const std::string& s) {
  if (s == "scalar") return IndicialKind::scalar;
  if (s == "gauss_bonnet") return IndicialKind::gauss_bonnet;
  if (s == "laplacian") return IndicialKind::laplacian;
  throw std::invalid_argument("unknown operator '" + s + "' (scalar, gauss_bonnet, laplacian)");
}

const char* indicial_kind_name(IndicialKind k) {
  switch (k) {
    case IndicialKind::scalar: return "scalar";
    case IndicialKind::gauss_bonnet: return "gauss_bonnet";
    case IndicialKind::laplacian: return "laplacian";
  }
  return "?";
}

Frame parse_frame(const std::string& s) {
  if (s == "dirac_vertical") return Frame::dirac_vertical;
  if (s == "laplace_beltrami") return Frame::laplace_beltrami;
  throw std::invalid_argument("unknown frame '" + s + "' (dirac_vertical, laplace_beltrami)");
}

const char* frame_name(Frame f) { return f == Frame::dirac_vertical ? "dirac_vertical" : "laplace_beltrami"; }

int indicial_size(const ModelGeometry& g, IndicialKind k) {
  if (k == IndicialKind::scalar) return 1;
  return (1 << (1 + g.b())) * (1 << g.f());
}

Eigen::MatrixXcd indicial_matrix(const ModelGeometry& g, IndicialKind k, Frame fr, const Mode& j,
                                 std::complex<double> lambda) {
  const Eigen::VectorXd kv = wavevector(g.base_L, j);
  const double k2 = kv.squaredNorm();
  const std::complex<double> I(0.0, 1.0);
  if (fr == Frame::laplace_beltrami && k != IndicialKind::scalar)
    throw std::invalid_argument("the Laplace-Beltrami frame is available for the scalar component only");
  if (k == IndicialKind::scalar) {
    Eigen::MatrixXcd M(1, 1);
    std::complex<double> v = lambda * lambda + k2;
    if (fr == Frame::laplace_beltrami) v -= I * static_cast<double>(g.a * g.f()) * lambda;
    M(0, 0) = v;
    return M;
  }
  const int n = indicial_size(g, k);
  if (k == IndicialKind::laplacian) return (lambda * lambda + k2) * Eigen::MatrixXcd::Identity(n, n);
  // i (lambda c(dx/x) + sum k_i c(dy_i)) on forms over V, tensored with the fibre-harmonic forms
  const Exterior E(1 + g.b());
  Eigen::MatrixXcd D = lambda * E.clifford(0).cast<std::complex<double>>();
  for (int i = 0; i < g.b(); ++i) D += kv(i) * E.clifford(1 + i).cast<std::complex<double>>();
  D *= I;
  const int fdim = 1 << g.f();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
  for (int r = 0; r < D.rows(); ++r)
    for (int c = 0; c < D.cols(); ++c)
      if (D(r, c) != 0.0) M.block(r * fdim, c * fdim, fdim, fdim) = D(r, c) * Eigen::MatrixXcd::Identity(fdim, fdim);
  return M;
}

double normal_family_gap(const ModelGeometry& g, double tau, const std::vector<double>& eta, int mode_cutoff) {
  if (g.f() == 0) return std::numeric_limits<double>::infinity();
  if (static_cast<int>(eta.size()) > g.b()) throw std::invalid_argument("eta has more entries than the base dimension");
  const int n = 1 + g.b() + g.f();
  const Exterior E(n);
  Eigen::MatrixXd base = tau * E.clifford(0);
  for (std::size_t i = 0; i < eta.size(); ++i) base += eta[i] * E.clifford(1 + static_cast<int>(i));
  double best = std::numeric_limits<double>::infinity();
  for (const Mode& m : enumerate_modes(g.f(), std::max(1, mode_cutoff))) {
    bool zero = true;
    for (int v : m) zero = zero && v == 0;
    if (zero) continue;
    const Eigen::VectorXd km = wavevector(g.fiber_L, m);
    Eigen::MatrixXd N = base;
    for (int l = 0; l < g.f(); ++l) N += km(l) * E.clifford(1 + g.b() + l);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(N);
    best = std::min(best, svd.singularValues().minCoeff());
  }
  return best;
}

double first_fibre_eigenvalue(const ModelGeometry& g) {
  double lam = std::numeric_limits<double>::infinity();
  for (double L : g.fiber_L) lam = std::min(lam, (kTwoPi / L) * (kTwoPi / L));
  return lam;
}

GapReport gap_grid(const ModelGeometry& g, double lo, double hi, int n, int mode_cutoff, double tol) {
  if (n < 1) throw std::invalid_argument("gap grid needs n >= 1");
  GapReport r;
  r.lambda1 = first_fibre_eigenvalue(g);
  const int ne = g.b() > 0 ? n : 1;
  r.points.resize(static_cast<std::size_t>(n) * ne);
  auto coord = [&](int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };
  parallel_for(r.points.size(), [&](std::size_t idx) {
    GapPoint& p = r.points[idx];
    p.tau = coord(static_cast<int>(idx) / ne);
    if (g.b() > 0) {
      p.eta.assign(g.b(), 0.0);
      p.eta[0] = coord(static_cast<int>(idx) % ne);
    }
    p.gap = normal_family_gap(g, p.tau, p.eta, mode_cutoff);
  });
  r.min_gap = std::numeric_limits<double>::infinity();
  for (const auto& p : r.points) {
    r.min_gap = std::min(r.min_gap, p.gap);
    double e2 = 0.0;
    for (double e : p.eta) e2 += e * e;
    const double oracle = std::sqrt(r.lambda1 + p.tau * p.tau + e2);
    if (std::isfinite(oracle)) r.max_oracle_deviation = std::max(r.max_oracle_deviation, std::abs(p.gap - oracle));
  }
  r.invertible = r.min_gap > tol;
  return r;
}

}  // namespace phicalc
