#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdiss/qdiss.hpp"

using namespace qdiss;

namespace {

std::vector<Element> E(const Quantale& Q, std::initializer_list<const char*> labels) {
  std::vector<Element> out;
  for (const char* l : labels) out.push_back(Q.find(l));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(C3Homs, HAndKMatchTheWorkedExample) {
  auto C = share(make_c3());
  auto H = build_HQ(C), K = build_KQ(C);
  const Quantale& Q = *C;
  Element bot = Q.find("bot"), k = Q.find("k"), top = Q.find("top");
  for (Element q : {bot, k, top}) {
    EXPECT_EQ(H.hom(bot, q), E(Q, {"bot"}));
    EXPECT_EQ(H.hom(q, bot), E(Q, {"bot"}));
    EXPECT_EQ(K.hom(top, q), E(Q, {"top"}));
    EXPECT_EQ(K.hom(q, top), E(Q, {"top"}));
  }
  EXPECT_EQ(H.hom(k, top), E(Q, {"bot"}));
  EXPECT_EQ(H.hom(top, k), E(Q, {"bot"}));
  EXPECT_EQ(H.hom(top, top), E(Q, {"bot", "top"}));
  EXPECT_EQ(H.hom(k, k), E(Q, {"bot", "k"}));
  EXPECT_EQ(K.hom(k, bot), E(Q, {"top"}));
  EXPECT_EQ(K.hom(bot, k), E(Q, {"top"}));
  EXPECT_EQ(K.hom(bot, bot), E(Q, {"bot", "top"}));
  EXPECT_EQ(K.hom(k, k), E(Q, {"k", "top"}));

  auto D = diagonals(Q, top, top);
  EXPECT_EQ(D.elements(), E(Q, {"bot", "top"}));
  // top is a diagonal from k to top in D, but not below k ∧ top
  EXPECT_EQ(diagonals(Q, k, top).elements(), E(Q, {"bot", "top"}));
  EXPECT_EQ(build_DQ(C).hom(k, top), E(Q, {"bot", "top"}));
}

TEST(Diagonals, MembershipAgreesWithDefinitionOracle) {
  for (const auto& name : zoo_names(16)) {
    Quantale Q = quantale_by_name(name);
    for (Element p = 0; p < Q.size(); ++p)
      for (Element q = 0; q < Q.size(); ++q)
        for (Element v = 0; v < Q.size(); ++v) {
          EXPECT_EQ(is_diagonal(Q, p, q, v), oracle::diagonal(Q, p, q, v)) << name;
          EXPECT_EQ(is_back_diagonal(Q, p, q, v), oracle::back_diagonal(Q, p, q, v)) << name;
        }
  }
}

TEST(Diagonals, DivisibleQuantaleHasAllLowerElements) {
  for (const char* name : {"lukasiewicz:5", "godel:4", "boolean:2"}) {
    Quantale Q = quantale_by_name(name);
    ASSERT_TRUE(is_divisible(Q));
    for (Element p = 0; p < Q.size(); ++p)
      for (Element q = 0; q < Q.size(); ++q)
        EXPECT_EQ(diagonals(Q, p, q).elements(), downset(Q.lattice(), Q.meet(p, q)).elements()) << name;
  }
}

TEST(Diagonals, BackDiagonalsAtBottomAreRegularElements) {
  for (const char* name : {"godel:3", "lukasiewicz:4", "c3", "nm:5"}) {
    Quantale Q = quantale_by_name(name);
    EXPECT_TRUE(back_diagonals(Q, Q.top(), Q.top()).contains(Q.top()));
    EXPECT_EQ(back_diagonals(Q, Q.bottom(), Q.bottom()).elements(), regular_elements(Q).elements()) << name;
  }
}

TEST(Composition, BothExpressionsAgreeAndIdentitiesHold) {
  for (const auto& name : zoo_names(16)) {
    auto Q = share(quantale_by_name(name));
    for (auto kind : {QuantaloidKind::D, QuantaloidKind::B}) {
      auto K = SmallQuantaloid::build(Q, kind);
      EXPECT_TRUE(validate_quantaloid(K).ok()) << name << " " << to_string(kind);
      for (Element p = 0; p < Q->size(); ++p)
        for (Element q = 0; q < Q->size(); ++q)
          for (Element r = 0; r < Q->size(); ++r)
            for (Element u : K.hom(p, q))
              for (Element v : K.hom(q, r)) EXPECT_EQ(K.compose(q, u, v), K.compose_alt(q, u, v)) << name;
    }
  }
}

TEST(Composition, LawvereClosedForms) {
  LawvereQuantale L;
  EXPECT_EQ(L.implies(3, 5), ExtRational(2));
  EXPECT_EQ(L.implies(ExtRational::infinity(), 3), ExtRational(0));
  EXPECT_EQ(L.implies(3, ExtRational::infinity()), ExtRational::infinity());
  EXPECT_EQ(L.tensor(3, 4), ExtRational(7));

  Diagonal<ExtRational> d{2, 3, 4}, e{3, 7, 7};
  EXPECT_EQ(compose_diagonal(L, d, e).value, ExtRational(8));
  EXPECT_EQ(diamond_alt(L, ExtRational(3), ExtRational(4), ExtRational(7)), ExtRational(8));

  BackDiagonal<ExtRational> b{1, 2, 1}, c{2, 3, 2};
  EXPECT_EQ(compose_back_diagonal(L, b, c).value, ExtRational(1));

  Diagonal<ExtRational> wrong{5, 6, 6};
  EXPECT_THROW(compose_diagonal(L, d, wrong), Error);
}

TEST(Composition, IdentityArrowsAreUnits) {
  auto Q = share(make_c3());
  auto D = build_DQ(Q);
  for (Element p = 0; p < Q->size(); ++p)
    for (Element q = 0; q < Q->size(); ++q)
      for (Element d : D.hom(p, q)) {
        EXPECT_EQ(D.compose(p, D.identity(p), d), d);
        EXPECT_EQ(D.compose(q, d, D.identity(q)), d);
      }
}

TEST(EndoQuantales, UnitEndoOfDIsTheBase) {
  for (const char* name : {"c3", "lukasiewicz:4", "rel:2", "nm:4"}) {
    auto Q = share(quantale_by_name(name));
    Quantale E = endo_quantale(build_DQ(Q), Q->unit());
    ASSERT_EQ(E.size(), Q->size()) << name;
    EXPECT_TRUE(check_quantale_isomorphism(E, *Q, E.origin()).ok()) << name;
  }
}

TEST(EndoQuantales, BottomEndoOfBOnGodelIsBoolean) {
  auto Q = share(quantale_by_name("godel:3"));
  Quantale E = endo_quantale(build_BQ(Q), Q->bottom());
  EXPECT_EQ(E.size(), 2u);
  EXPECT_TRUE(validate_quantale_data(E.data()).ok());
}

TEST(Involution, HermitianObjectsOfRel) {
  auto Q = share(make_rel(2));
  auto D = lift_involution(build_DQ(Q));
  ASSERT_TRUE(D.has_involution());
  for (Element q : hermitian_objects(D)) EXPECT_EQ(Q->involute(q), q);
  EXPECT_EQ(hermitian_objects(D).size(), 8u);  // symmetric relations on two points
}

TEST(Involution, CommutativeInvolutionIsIdentityOnObjects) {
  auto Q = share(quantale_by_name("lukasiewicz:4"));
  auto H = lift_involution(build_HQ(Q));
  for (Element q = 0; q < Q->size(); ++q) EXPECT_EQ(H.object_involution(q), q);
}
