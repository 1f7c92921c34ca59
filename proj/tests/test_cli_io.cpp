#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "phicalc/json_io.hpp"

using namespace phicalc;
namespace io = phicalc::io;

namespace {

template <class T, class From>
void round_trip(const T& value, From from) {
  const io::json j = io::to_json(value);
  const std::string text = io::dump(j);
  const io::json back = io::parse_text(text);
  CHECK(from(back) == value);
  CHECK(io::dump(io::to_json(from(back))) == text);
}

IndexSet S(std::vector<IndexPair> g) { return IndexSet::make(std::move(g)); }

}  // namespace

TEST_CASE("index sets, bounds and families round-trip") {
  round_trip(IndexSet::empty(), io::index_set_from);
  round_trip(S({{{0.5, -1}, 2}, {1.0 / 3.0, 0}}), io::index_set_from);
  round_trip(IndexBound::ge(1.5), io::index_bound_from);
  round_trip(IndexBound::none(), io::index_bound_from);
  IndexFamily F{FamilyKind::phi, IndexSet::real(1), IndexSet::empty(), S({{0, 1}}), IndexSet::real(2)};
  round_trip(F, io::index_family_from);
  IndexFamily B{FamilyKind::b, IndexSet::real(1), IndexSet::real(0.5), IndexSet::real(0), IndexSet::empty()};
  round_trip(B, io::index_family_from);
  round_trip(abstract_family(F), io::bound_family_from);
}

TEST_CASE("operator classes round-trip") {
  round_trip(OpClass::weighted(Kind::phi, -1, 0.25).right(1), io::op_class_from);
  round_trip(OpClass::weighted(Kind::b_ext, -kInf, 0).left(kInf).vanishing_rf(), io::op_class_from);
  round_trip(OpClass::bphi(-2), io::op_class_from);
  round_trip(OpClass::zero(), io::op_class_from);
  round_trip(OpClass::small(Kind::phi_ext, -1), io::op_class_from);
  OpClass d = OpClass::weighted(Kind::phi, -kInf, 0.5).left(-2);
  d.proj = ProjDecoration{ProjDecoration::Side::left, 2};
  round_trip(d, io::op_class_from);

  const OpClass c = io::op_class_from(io::parse_text(
      R"({"kind":"phi","order":-1,"spec":{"weight":0.0},"xl":0,"xr":1,"proj":null})"));
  CHECK(c == OpClass::weighted(Kind::phi, -1, 0).right(1));
}

TEST_CASE("split operators and models") {
  SplitOperator P = SplitOperator::standard(2, 1, 1);
  P.imspec = {-1, 0, 1};
  P.spec_b = {{cplx(0, 0), 1}, {cplx(1, 0), 0}};
  const SplitOperator Q = io::split_operator_from(io::parse_text(io::dump(io::to_json(P))));
  CHECK(Q.a == 2);
  CHECK(Q.m == 1);
  CHECK(Q.P00 == P.P00);
  CHECK(Q.P11 == P.P11);
  CHECK(Q.imspec == P.imspec);
  REQUIRE(Q.spec_b.size() == 2);
  CHECK(Q.spec_b[0].pole_order_k == 1);
  CHECK(io::dump(io::to_json(Q)) == io::dump(io::to_json(P)));

  const ModelGeometry g = io::model_from(
      io::parse_text(R"({"a":1,"base":{"circumferences":[6.283185307179586]},"fiber":{"circumferences":[6.283185307179586]}})"));
  CHECK(g.a == 1);
  CHECK(g.b() == 1);
  CHECK(g.f() == 1);
  CHECK(g.x_max == 1.0);
  CHECK(g.dvol_b);
  CHECK(io::dump(io::to_json(io::model_from(io::to_json(g)))) == io::dump(io::to_json(g)));
}

TEST_CASE("strict parsing") {
  CHECK_THROWS_AS(io::index_set_from(io::parse_text(R"({"empty":false,"generators":[],"extra":1})")), io::InputError);
  CHECK_THROWS_AS(io::index_set_from(io::parse_text(R"({"empty":false,"generators":[{"re":0,"im":0,"k":-1}]})")),
                  std::exception);
  CHECK_THROWS_AS(io::op_class_from(io::parse_text(R"({"kind":"psi","order":0,"spec":null,"xl":0,"xr":0,"proj":null})")),
                  std::exception);
  CHECK_THROWS_AS(io::model_from(io::parse_text(R"({"a":1,"base":{"circumferences":[1]},"fibre":{}})")),
                  io::InputError);
  CHECK_THROWS_AS(io::get_num(io::json("nan"), "x"), io::InputError);
}

TEST_CASE("malformed text reports line and column") {
  try {
    io::parse_text("{\n  \"a\": 1,\n}", "src.json");
    FAIL("expected a parse error");
  } catch (const io::InputError& e) {
    const std::string w = e.what();
    CHECK(w.rfind("src.json:3:1:", 0) == 0);
  }
  try {
    io::parse_text("[1, 2,, 3]", "inline");
    FAIL("expected a parse error");
  } catch (const io::InputError& e) {
    CHECK(std::string(e.what()).rfind("inline:1:7:", 0) == 0);
  }
}

TEST_CASE("numbers") {
  CHECK(io::num(kInf) == "inf");
  CHECK(io::num(-kInf) == "-inf");
  CHECK(std::isinf(io::get_num(io::json("inf"), "x")));
  CHECK(io::get_num(io::json(0.1), "x") == 0.1);
  CHECK_THROWS(io::num(std::numeric_limits<double>::quiet_NaN()));
  // shortest round-trip text
  CHECK(io::parse_text(io::dump(io::num(0.1))).get<double>() == 0.1);
}

TEST_CASE("csv columns") {
  SpectrumPoint p;
  p.mode = {0};
  p.pole_order_k = 1;
  CHECK(io::spectra_csv({p}).rfind("mode,lambda_root,pole_order_k\n", 0) == 0);
  HarmonicFit f;
  CHECK(io::fits_csv({f}).rfind("mode,exponent,log_power,residual,superpoly\n", 0) == 0);
}

TEST_CASE("sorted keys") {
  const std::string s = io::dump(io::parse_text(R"({"b":1,"a":2})"));
  CHECK(s.find("\"a\"") < s.find("\"b\""));
}
