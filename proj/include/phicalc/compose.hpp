#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "phicalc/op_class.hpp"

namespace phicalc {

struct GeometryConstants {
  int a = 1;
  int b_dim = 1;
  double A() const { return static_cast<double>(a) * (b_dim + 1); }
  FoldContext fold_context(bool ignore_ext = false) const { return {a, b_dim, ignore_ext}; }
};

// The result of a composition is a sum of classes; each term names the rule that produced it.
struct ComposeResult {
  std::vector<OpClass> terms;
  std::vector<std::string> rules;
};

class NoRule : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

ComposeResult compose(const OpClass& P, const OpClass& Q, const std::optional<GeometryConstants>& geo = {});

// Distributes over sums.
ComposeResult compose_sums(const std::vector<OpClass>& P, const std::vector<OpClass>& Q,
                           const std::optional<GeometryConstants>& geo = {});

// x^inf Psi_b = x^inf Psi_phi on weighted classes; other classes pass through.
OpClass apply_infinite_power_rule(const OpClass& c);

}  // namespace phicalc
