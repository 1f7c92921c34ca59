#include "phicalc/exterior.hpp"

#include <bit>
#include <stdexcept>

namespace phicalc {

int popcount(unsigned s) { return std::popcount(s); }

Exterior::Exterior(int n) : n_(n) {
  if (n < 0 || n > 12) throw std::invalid_argument("exterior algebra dimension out of range");
}

Eigen::MatrixXd Exterior::wedge(int i) const {
  const int d = dim();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
  const unsigned bit = 1u << i;
  for (unsigned s = 0; s < static_cast<unsigned>(d); ++s) {
    if (s & bit) continue;
    const int sign = (popcount(s & (bit - 1)) % 2) ? -1 : 1;
    M(s | bit, s) = sign;
  }
  return M;
}

Eigen::MatrixXd Exterior::interior(int i) const { return wedge(i).transpose(); }

Eigen::MatrixXd Exterior::clifford(int i) const { return wedge(i) - interior(i); }

Eigen::MatrixXd Exterior::degree_projection(int p) const {
  const int d = dim();
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(d, d);
  for (int s = 0; s < d; ++s)
    if (popcount(static_cast<unsigned>(s)) == p) M(s, s) = 1.0;
  return M;
}

}  // namespace phicalc
