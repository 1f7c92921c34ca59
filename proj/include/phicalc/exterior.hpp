#pragma once

#include <Eigen/Dense>

namespace phicalc {

// Exterior algebra of R^n in the basis e_S, S a bitmask of {0..n-1}.
class Exterior {
 public:
  explicit Exterior(int n);
  int n() const { return n_; }
  int dim() const { return 1 << n_; }

  Eigen::MatrixXd wedge(int i) const;
  Eigen::MatrixXd interior(int i) const;
  // c(e_i) = e_i wedge - interior(e_i); c(e_i)^2 = -1.
  Eigen::MatrixXd clifford(int i) const;
  // Projection onto forms of one degree.
  Eigen::MatrixXd degree_projection(int p) const;

 private:
  int n_;
};

int popcount(unsigned s);

}  // namespace phicalc
