#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "phicalc/class_matrix.hpp"
#include "phicalc/harmonic.hpp"
#include "phicalc/imspec.hpp"
#include "phicalc/model.hpp"
#include "phicalc/split_parametrix.hpp"
#include "phicalc/verify.hpp"

namespace phicalc::io {

using json = nlohmann::json;

// Malformed text (with position) or a document that does not match the schema.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json parse_text(const std::string& text, const std::string& source = "<input>");
json read_file(const std::string& path);
// Sorted keys, two-space indent, trailing newline.
std::string dump(const json& j);
void write_text(const std::string& path, const std::string& text);

// Infinities travel as the strings "inf" and "-inf".
json num(double v);
double get_num(const json& j, const std::string& where);

json to_json(const IndexSet& I);
IndexSet index_set_from(const json& j);
json to_json(const IndexBound& b);
IndexBound index_bound_from(const json& j);
json to_json(const IndexFamily& F);
IndexFamily index_family_from(const json& j);
json to_json(const BoundFamily& F);
BoundFamily bound_family_from(const json& j);
json to_json(const OpClass& c);
OpClass op_class_from(const json& j);
json to_json(const ClassMatrix& M);

json to_json(const SplitOperator& P);
SplitOperator split_operator_from(const json& j);
json to_json(const Check& c);
json to_json(const ParametrixReport& r);
json to_json(const FredholmReport& f);
json to_json(const RegularityPrediction& r);

json to_json(const ModelGeometry& g);
ModelGeometry model_from(const json& j);
json to_json(const SpectrumPoint& p);
json to_json(const ImspecResult& r);
json to_json(const GapReport& r);
json to_json(const HarmonicFit& f);
json to_json(const ConvergenceReport& c);
json to_json(const VerifyReport& r);

std::string spectra_csv(const std::vector<SpectrumPoint>& pts);
std::string fits_csv(const std::vector<HarmonicFit>& fits);
std::string solution_csv(const HarmonicSolution& s);

}  // namespace phicalc::io
