#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace phicalc {

// Product model near the boundary: g = dx^2/x^2 + g_B + x^{2a} g_F with flat tori B, F.
struct ModelGeometry {
  int a = 1;
  std::vector<double> base_L;   // circumferences of the base torus
  std::vector<double> fiber_L;  // circumferences of the fibre torus
  double x_max = 1.0;
  bool dvol_b = true;  // volume dx/x dvol_B dvol_F

  int b() const { return static_cast<int>(base_L.size()); }
  int f() const { return static_cast<int>(fiber_L.size()); }
  void validate() const;
};

ModelGeometry torus_model(int a, int b, int f, double L = 2.0 * 3.14159265358979323846);

// Constant-coefficient forms on the fibre torus; the unit forms of the rescaled
// bundle carry the factor x^{a p} in degree p.
struct FibreHarmonicBasis {
  int dim = 1;
  std::vector<std::string> labels;
  std::vector<int> degrees;
  std::vector<int> rescale_power;
};
FibreHarmonicBasis fibre_harmonic_basis(const ModelGeometry& g);

using Mode = std::vector<int>;
// All integer tuples of the given length with entries in [-cutoff, cutoff], lexicographic.
std::vector<Mode> enumerate_modes(int dims, int cutoff);
// 2 pi j_i / L_i
Eigen::VectorXd wavevector(const std::vector<double>& L, const Mode& j);
std::string mode_string(const Mode& j);

enum class IndicialKind { scalar, gauss_bonnet, laplacian };
// dirac_vertical: the indicial family of D_V (no volume term);
// laplace_beltrami: the scalar Laplacian of g with the fibre-volume first-order term.
enum class Frame { dirac_vertical, laplace_beltrami };

IndicialKind parse_indicial_kind(const std::string& s);
const char* indicial_kind_name(IndicialKind k);
Frame parse_frame(const std::string& s);
const char* frame_name(Frame f);

int indicial_size(const ModelGeometry& g, IndicialKind k);
// I(P, lambda) for base Fourier mode j.
Eigen::MatrixXcd indicial_matrix(const ModelGeometry& g, IndicialKind k, Frame fr, const Mode& j,
                                 std::complex<double> lambda);

// Normal family on fibre-perpendicular modes at (tau, eta).
struct GapPoint {
  double tau = 0.0;
  std::vector<double> eta;
  double gap = 0.0;
};
double normal_family_gap(const ModelGeometry& g, double tau, const std::vector<double>& eta, int mode_cutoff);
// Smallest positive eigenvalue of the fibre Laplacian on functions.
double first_fibre_eigenvalue(const ModelGeometry& g);

struct GapReport {
  double min_gap = 0.0;
  double lambda1 = 0.0;
  double max_oracle_deviation = 0.0;
  bool invertible = false;
  std::vector<GapPoint> points;
};
// Square grid of side n over [lo, hi] in tau and the first eta coordinate.
GapReport gap_grid(const ModelGeometry& g, double lo, double hi, int n, int mode_cutoff, double tol = 1e-6);

}  // namespace phicalc
