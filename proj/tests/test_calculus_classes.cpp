#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracle/brute_index.hpp"
#include "phicalc/compose.hpp"
#include "phicalc/op_class.hpp"

using namespace phicalc;

namespace {

IndexSet S(std::vector<IndexPair> g) { return IndexSet::make(std::move(g)); }
const IndexSet E = IndexSet::empty();

IndexFamily phi_family(IndexSet lf, IndexSet rf, IndexSet bf, IndexSet ff) {
  return {FamilyKind::phi, std::move(lf), std::move(rf), std::move(bf), std::move(ff)};
}
IndexFamily b_family(IndexSet lf, IndexSet rf, IndexSet bf) {
  return {FamilyKind::b, std::move(lf), std::move(rf), std::move(bf), E};
}

IndexFamily random_phi(std::mt19937& rng) {
  auto r = [&] { return S(oracle::random_generators(rng, 0.5, 3, 2, 0.3)); };
  return phi_family(r(), r(), r(), r());
}

const GeometryConstants G11{1, 1};
const FoldContext C11 = G11.fold_context();

}  // namespace

TEST_CASE("composition with the small calculus keeps the full family") {
  const IndexFamily I = phi_family(S({{1, 0}}), S({{0.5, 1}}), S({{0, 0}}), S({{2, 0}}));
  const OpClass full = OpClass::full(Kind::phi, -1, I);
  const OpClass sm = OpClass::small(Kind::phi, 0);
  for (const ComposeResult& r : {compose(sm, full, G11), compose(full, sm, G11)}) {
    REQUIRE(r.terms.size() == 1);
    CHECK(std::get<IndexFamily>(r.terms[0].spec) == I);
    CHECK(r.terms[0].order == -1);
  }
  const ComposeResult ss = compose(sm, sm, G11);
  REQUIRE(ss.terms.size() == 1);
  CHECK(ss.terms[0].is_small());

  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    const IndexFamily F = random_phi(rng);
    const ComposeResult r = compose(sm, OpClass::full(Kind::phi, 0, F), GeometryConstants{2, 1});
    CHECK(std::get<IndexFamily>(r.terms[0].spec) == F);
  }
}

TEST_CASE("full phi composition on a bf/ff-only pair") {
  const IndexFamily I = phi_family(E, E, IndexSet::real(0), IndexSet::real(1));
  const ComposeResult r = compose(OpClass::full(Kind::phi, 0, I), OpClass::full(Kind::phi, 0, I), G11);
  REQUIRE(r.terms.size() == 1);
  const auto& K = std::get<IndexFamily>(r.terms[0].spec);
  CHECK(K.lf.is_empty());
  CHECK(K.rf.is_empty());
  CHECK(K.bf == S({{0, 0}, {1, 2}}));
  CHECK(K.ff == S({{2, 1}}));
}

TEST_CASE("composition errors") {
  const IndexFamily bad = phi_family(S({{0, 0}}), S({{0, 0}}), IndexSet::real(0), IndexSet::real(1));
  CHECK_THROWS_AS(compose(OpClass::full(Kind::phi, 0, bad), OpClass::full(Kind::phi, 0, bad), G11), NonIntegrable);
  const IndexFamily good = phi_family(E, E, IndexSet::real(0), IndexSet::real(1));
  CHECK_THROWS_AS(compose(OpClass::full(Kind::phi, 0, good), OpClass::full(Kind::phi, 0, good)),
                  std::invalid_argument);
  const IndexFamily b = b_family(IndexSet::real(1), IndexSet::real(1), IndexSet::real(0));
  CHECK_THROWS_AS(compose(OpClass::full(Kind::b, -1, b), OpClass::full(Kind::b, -1, b), G11), UnsupportedOperation);
  // rule f) is not extrapolated to a negative middle power
  CHECK_THROWS_AS(compose(OpClass::weighted(Kind::b, -1, 0).right(-1), OpClass::weighted(Kind::phi, -1, 0)), NoRule);
}

TEST_CASE("weight tier rules") {
  const ComposeResult a = compose(OpClass::weighted(Kind::b, -1, 0.5), OpClass::weighted(Kind::b, -2, 0.5));
  REQUIRE(a.terms.size() == 1);
  CHECK(a.terms[0] == OpClass::weighted(Kind::b, -3, 0.5));
  CHECK(a.rules[0] == "a");

  const ComposeResult g = compose(OpClass::weighted(Kind::phi, 1, 0), OpClass::weighted(Kind::phi_ext, -1, 0));
  CHECK(g.terms[0] == OpClass::weighted(Kind::phi_ext, 0, 0));

  // rule f): b-class of order <= 0 with a middle power c >= 0 against a phi class
  const ComposeResult f = compose(OpClass::weighted(Kind::b, -1, 0).right(1), OpClass::weighted(Kind::phi, -2, 0));
  REQUIRE(f.terms.size() == 2);
  CHECK(f.terms[0].kind == Kind::b_ext);
  CHECK(f.terms[0].order == -kInf);
  CHECK(f.terms[1].kind == Kind::bphi);
  CHECK(f.terms[1].order == -3);
  CHECK(f.terms[1].xl == 1);
}

TEST_CASE("weight tier composition is associative and commutes with outer powers") {
  const Kind kinds[] = {Kind::b, Kind::phi, Kind::phi_ext};
  int checked = 0;
  for (double alpha : {-0.5, 0.0, 1.3})
    for (Kind k1 : kinds)
      for (Kind k2 : kinds)
        for (Kind k3 : kinds)
          for (double o : {-1.0, -2.0}) {
            const OpClass P = OpClass::weighted(k1, o, alpha), Q = OpClass::weighted(k2, -1, alpha),
                          R = OpClass::weighted(k3, o - 1, alpha);
            const auto PQ = compose(P, Q), QR = compose(Q, R);
            REQUIRE(PQ.terms.size() == 1);
            REQUIRE(QR.terms.size() == 1);
            const auto left = compose(PQ.terms[0], R), right = compose(P, QR.terms[0]);
            REQUIRE(left.terms.size() == 1);
            REQUIRE(right.terms.size() == 1);
            CHECK(equal_folded(left.terms[0], right.terms[0], C11));
            for (double c : {-1.0, 0.5, 2.0}) {
              const auto outer = compose(P.left(c), Q.right(-c));
              REQUIRE(outer.terms.size() == 1);
              CHECK(equal_folded(outer.terms[0], PQ.terms[0].left(c).right(-c), C11));
            }
            ++checked;
          }
  CHECK(checked == 162);
}

TEST_CASE("lifting b-classes into the phi calculus") {
  const IndexFamily I = b_family(IndexSet::real(1), IndexSet::real(1), IndexSet::real(0));
  const LiftResult L1 = lift_b_to_phi(OpClass::full(Kind::b, -1, I), 1, 1);
  CHECK(std::get<IndexFamily>(L1.main.spec).ff == IndexSet::real(1));
  CHECK(L1.warnings.empty());
  const LiftResult L2 = lift_b_to_phi(OpClass::full(Kind::b, -1, I), 2, 1);
  CHECK(std::get<IndexFamily>(L2.remainder.spec).ff == S({{2, 0}, {4, 1}}));
  CHECK(L2.remainder.order == -kInf);
  const auto& J = std::get<IndexFamily>(L2.main.spec);
  CHECK(J.lf == I.lf);
  CHECK(J.rf == I.rf);
  CHECK(J.bf == I.bf);

  const LiftResult L3 = lift_b_to_phi(OpClass::full(Kind::b, -1, b_family(IndexSet::real(1), IndexSet::real(1), E)), 1, 1);
  CHECK(std::get<IndexFamily>(L3.main.spec).ff.is_empty());
  CHECK(std::get<IndexFamily>(L3.remainder.spec).ff.is_empty());

  CHECK_FALSE(lift_b_to_phi(OpClass::full(Kind::b, 1, I), 1, 1).warnings.empty());
}

TEST_CASE("lifting preserves b-level boundedness") {
  std::mt19937 rng(17);
  for (int t = 0; t < 300; ++t) {
    auto r = [&] { return S(oracle::random_generators(rng, -1, 2, 2, 0.2)); };
    const OpClass T = OpClass::full(Kind::b, -1.0 - (t % 3), b_family(r(), r(), r()));
    const LiftResult L = lift_b_to_phi(T, 1 + t % 2, 1 + t % 3);
    for (double alpha : {-1.0, 0.0, 0.5})
      for (double beta : {-0.5, 0.0, 1.0})
        CHECK(is_bounded(T, alpha, beta, 0) == (is_bounded(L.main, alpha, beta, 0) && is_bounded(L.remainder, alpha, beta, 0)));
  }
}

TEST_CASE("conjugation and x-powers") {
  const OpClass P = OpClass::weighted(Kind::b, -1, 0);
  CHECK(conjugate_by_power(P, 1) == OpClass::weighted(Kind::b, -1, -1));
  CHECK(conjugate_by_power(P, 0) == P);
  CHECK(conjugate_by_power(conjugate_by_power(P, 0.7), -0.7) == P);

  const Folded inf = fold(multiply_x_power(OpClass::weighted(Kind::b, 0, 0.5), kInf, Side::left));
  CHECK(inf.bounds.lf.is_empty());
  CHECK(inf.bounds.bf.is_empty());
  CHECK_FALSE(inf.bounds.rf.is_empty());

  CHECK(multiply_x_power(P, 0, Side::left) == P);
  for (double c : {-2.0, 0.5, 1.0, 3.0})
    for (Kind k : {Kind::b, Kind::phi}) {
      const OpClass Q = OpClass::weighted(k, -1, 0.3);
      CHECK(equal_folded(multiply_x_power(multiply_x_power(Q, c, Side::right), -c, Side::left),
                         conjugate_by_power(Q, c), C11));
    }
}

TEST_CASE("adjoints") {
  CHECK(adjoint_class(OpClass::weighted(Kind::phi, -1, 0.4)) == OpClass::weighted(Kind::phi, -1, -0.4));
  for (double am : {1.0, 2.0, 4.0})
    for (double alpha : {-0.5, 0.0, 1.3}) {
      const OpClass X = OpClass::weighted(Kind::b, -2, am - alpha).left(-am);
      CHECK(equal_folded(adjoint_class(X), OpClass::weighted(Kind::b, -2, alpha).left(-am), C11));
    }
  std::mt19937 rng(3);
  std::vector<OpClass> reps = {OpClass::zero(), OpClass::bphi(-1).left(2), OpClass::small(Kind::phi_ext, -1),
                               OpClass::weighted(Kind::b_ext, -kInf, 0.5).right(kInf).vanishing_lf()};
  OpClass dec = OpClass::weighted(Kind::phi, 0, 1).left(kInf);
  dec.proj = ProjDecoration{ProjDecoration::Side::right, 2};
  reps.push_back(dec);
  for (int t = 0; t < 20; ++t) reps.push_back(OpClass::full(Kind::phi, -t, random_phi(rng)).left(t * 0.5));
  reps.push_back(OpClass::bounded(Kind::phi, -1, abstract_family(random_phi(rng))));
  for (const auto& c : reps) CHECK(adjoint_class(adjoint_class(c)) == c);
  const auto& F = std::get<IndexFamily>(reps[5].spec);
  const OpClass adj = adjoint_class(reps[5]);
  const auto& Fa = std::get<IndexFamily>(adj.spec);
  CHECK(Fa.lf == F.rf);
  CHECK(Fa.rf == F.lf);
}

TEST_CASE("boundedness and compactness") {
  CHECK(is_bounded(OpClass::small(Kind::phi, 0), 0, 0, 0));
  const OpClass corner = OpClass::full(Kind::phi, 0, phi_family(E, E, IndexSet::real(0), IndexSet::real(0)));
  CHECK_FALSE(is_bounded(corner, 0, 0, 0));
  const OpClass strict =
      OpClass::full(Kind::phi, -1, phi_family(IndexSet::real(1), IndexSet::real(1), IndexSet::real(1), IndexSet::real(1)));
  CHECK(is_compact(strict, 0, 0, 0));
  CHECK_FALSE(is_compact(OpClass::full(Kind::phi, 0, std::get<IndexFamily>(strict.spec)), 0, 0, 0));
  CHECK(is_bounded(std::vector<OpClass>{strict, OpClass::small(Kind::phi, 0)}, 0, 0, 0));
  CHECK_FALSE(is_bounded(std::vector<OpClass>{strict, corner}, 0, 0, 0));

  // conjugation equivariance
  std::mt19937 rng(23);
  for (int t = 0; t < 200; ++t) {
    auto r = [&] { return S(oracle::random_generators(rng, -1.5, 1.5, 2, 0.2)); };
    const OpClass P = t % 2 ? OpClass::full(Kind::phi, -1, phi_family(r(), r(), r(), r()))
                            : OpClass::weighted(t % 4 ? Kind::b : Kind::phi, -1, (t % 7) * 0.25 - 0.75);
    for (double c : {-1.0, 0.5, 2.0})
      for (double alpha : {-0.5, 0.0, 0.5})
        for (double beta : {-0.5, 0.0, 1.0}) {
          CHECK(is_bounded(P, alpha, beta, 0) == is_bounded(conjugate_by_power(P, c), alpha - c, beta - c, 0));
          CHECK(is_compact(P, alpha, beta, 0) == is_compact(conjugate_by_power(P, c), alpha - c, beta - c, 0));
        }
  }
}

TEST_CASE("mapping of polyhomogeneous functions") {
  const OpClass J1 = OpClass::full(Kind::b, 0, b_family(E, E, IndexSet::real(0)));
  CHECK(map_phg(J1, IndexSet::real(1)) == IndexSet::real(1));
  const OpClass J2 = OpClass::full(Kind::b, 0, b_family(IndexSet::real(0), E, IndexSet::real(0)));
  CHECK(map_phg(J2, IndexSet::real(0)) == S({{0, 1}}));
  const OpClass J3 = OpClass::full(Kind::b, 0, b_family(E, IndexSet::real(0), IndexSet::real(0)));
  CHECK_THROWS_AS(map_phg(J3, IndexSet::real(0)), NonIntegrable);
  const OpClass J4 = OpClass::full(Kind::phi, 0, phi_family(E, E, IndexSet::real(0), IndexSet::real(1)));
  CHECK(map_phg(J4, IndexSet::real(0)) == S({{0, 0}, {1, 1}}));
}

TEST_CASE("decomposition near the front face") {
  const auto [b, c] = decompose_near_ff(OpClass::weighted(Kind::phi, -1, 0.5));
  CHECK(b == OpClass::weighted(Kind::b_ext, -kInf, 0.5));
  CHECK(c == OpClass::bphi(-1));
  const auto [b2, c2] = decompose_near_ff(OpClass::weighted(Kind::phi, -kInf, 0));
  CHECK(b2.order == -kInf);
  CHECK(c2.order == -kInf);
  CHECK(c2.kind == Kind::bphi);
  const auto [b3, c3] = decompose_near_ff(OpClass::bphi(-2));
  CHECK(b3.is_zero());
  CHECK(c3 == OpClass::bphi(-2));
  CHECK_THROWS(decompose_near_ff(OpClass::weighted(Kind::b, -1, 0)));
}

TEST_CASE("folding and containment") {
  const Folded w = fold(OpClass::weighted(Kind::phi, 0, 0.5));
  CHECK(w.bounds.lf == IndexBound::gt(0.5));
  CHECK(w.bounds.rf == IndexBound::gt(-0.5));
  CHECK(w.bounds.bf == IndexBound::ge(0));
  CHECK(w.bounds.ff == IndexBound::gt(0));
  const Folded bp = fold(OpClass::bphi(0));
  CHECK(bp.bounds.lf.is_empty());
  CHECK(bp.bounds.rf.is_empty());
  CHECK(contained(OpClass::weighted(Kind::phi, -2, 0.5).left(1), OpClass::weighted(Kind::phi, -1, 0.5), C11));
  CHECK_FALSE(contained(OpClass::weighted(Kind::phi, -1, 0.5), OpClass::weighted(Kind::phi, -2, 0.5), C11));
  CHECK_FALSE(contained(OpClass::weighted(Kind::phi_ext, -1, 0), OpClass::weighted(Kind::phi, -1, 0), C11));
  CHECK(contained(OpClass::weighted(Kind::phi_ext, -1, 0), OpClass::weighted(Kind::phi, -1, 0), G11.fold_context(true)));
  CHECK(contained(OpClass::weighted(Kind::b, -1, 0), OpClass::weighted(Kind::phi, -1, 0), C11));
  CHECK_FALSE(contained(OpClass::weighted(Kind::b, 1, 0), OpClass::weighted(Kind::phi, 1, 0), C11));
}
