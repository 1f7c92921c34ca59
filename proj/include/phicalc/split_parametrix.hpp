#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "phicalc/class_matrix.hpp"

namespace phicalc {

// A point of Spec_b: exponent -Im(lambda) + i Re(lambda) and pole order k+1.
// pole_order_k < 0 means the pole order is unknown.
struct SpecBPoint {
  cplx exponent;
  int pole_order_k = -1;
};

// Block operator
//   [ x^{am} P00   x^{am} P01 ]
//   [ x^{am} P10   P11        ]
struct SplitOperator {
  int a = 1;
  int m = 1;
  int b_dim = 1;
  OpClass P00, P01, P10, P11;
  std::vector<double> imspec;  // the set -Im spec(P00)
  bool normal_invertible = true;
  bool elliptic = true;
  std::vector<SpecBPoint> spec_b;

  // P00 in Diff_b^m, the other blocks in the small extended phi calculus of order m.
  static SplitOperator standard(int a, int m, int b_dim = 1);
  double am() const { return static_cast<double>(a) * m; }
  GeometryConstants geometry() const { return {a, b_dim}; }
  // Transposed blocks, adjoint entries, spectrum moved to that of the adjoint.
  SplitOperator adjoint() const;
};

class WeightConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class MissingHypothesis : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class HypothesisViolation : public std::runtime_error {
 public:
  HypothesisViolation(const std::string& what, int i, int j) : std::runtime_error(what), row(i), col(j) {}
  int row, col;
};

// True iff alpha - am keeps a distance > 1e-9 from the listed spectrum. Empty list throws.
bool check_weight(const SplitOperator& P, double alpha);

struct Check {
  std::string step;
  std::string label;
  std::string target;
  bool pass = true;
  std::string detail;
};

struct Step1 {
  ClassMatrix Qd, Rd;
};
struct Step2 {
  ClassMatrix Po, PoQd, Qo, Ro, PoQd2, Q2, R2;
};
struct Step3 {
  ClassMatrix Rcut, Qprime, Rpp, R3, Q3;
};
struct Step4 {
  ClassMatrix R3sq, Q3R3diag, Q3R3off, QprimeR3, Qpartial, Rpartial;
  std::vector<double> bf_floor;  // lowest bf exponent of R_3^{2N}, N = 1, 2, ...
};
struct Step5 {
  ClassMatrix QsigmaRpartial, Qr, Rr;
};

// Statement classes at weight alpha with c = am.
ClassMatrix theorem_Q_class(int a, int m, double alpha);
ClassMatrix right_remainder_class(int a, int m, double alpha);
ClassMatrix left_remainder_class(int a, int m, double alpha);
// The space of R_3.
ClassMatrix remainder_space(int a, int m, double alpha);

Step1 step1_diagonal(const SplitOperator& P, double alpha, std::vector<Check>* log = nullptr);
Step2 step2_offdiagonal(const SplitOperator& P, double alpha, const Step1& s1, std::vector<Check>* log = nullptr);
Step3 step3_lf_correction(const SplitOperator& P, double alpha, const ClassMatrix& R2, const ClassMatrix& Q2,
                          std::vector<Check>* log = nullptr);
Step4 step4_neumann(const SplitOperator& P, double alpha, const Step1& s1, const Step2& s2, const Step3& s3,
                    int max_power = 3, std::vector<Check>* log = nullptr);
Step5 step5_interior(const SplitOperator& P, double alpha, const Step4& s4, std::vector<Check>* log = nullptr);

struct ParametrixReport {
  int a = 1, m = 1;
  double alpha = 0.0;
  Step1 s1;
  Step2 s2;
  Step3 s3;
  Step4 s4;
  Step5 s5;
  ClassMatrix Ql, Rl;
  std::vector<Check> checks;
  bool pass() const;
};

// Steps 1-5 at weight alpha.
ParametrixReport right_parametrix(const SplitOperator& P, double alpha);
// Right construction for the adjoint at weight am - alpha, then adjoints; also the right one.
ParametrixReport full_parametrix(const SplitOperator& P, double alpha);

struct FredholmReport {
  double alpha = 0.0;
  bool split_to_l2 = false;    // x^a H^m_split -> x^a L^2, gate alpha - am
  bool l2_to_split = false;    // x^a L^2 -> x^a H^{-m}_split, gate alpha
  double split_to_l2_distance = 0.0;
  double l2_to_split_distance = 0.0;
  std::vector<std::string> statements;
};
FredholmReport fredholm_report(const SplitOperator& P, double alpha);

enum class RegularityHypothesis { split_sobolev, l2 };

struct RegularityPrediction {
  IndexSet K;
  double pi_power = 0.0;      // Pi u in x^{pi_power} A^K
  double perp_power = 0.0;    // Pi_perp u in x^{perp_power} A^K
  IndexSet pi_set, perp_set;  // the same, with the powers absorbed
  std::vector<std::string> warnings;
};
RegularityPrediction regularity_predict(const SplitOperator& P, double alpha, RegularityHypothesis h);

}  // namespace phicalc
