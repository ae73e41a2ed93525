#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdiss/qdiss.hpp"

using namespace qdiss;

namespace {

Matrix<Element> from_bits(std::size_t n, std::uint32_t bits) {
  Matrix<Element> m(n, Element{0});
  for (std::size_t i = 0; i < n * n; ++i) m(i / n, i % n) = bits >> i & 1u;
  return m;
}

// symmetric and transitive, i.e. an equivalence relation on its support
bool partial_equivalence(const Matrix<Element>& m) {
  const std::size_t n = m.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (m(x, y) != m(y, x)) return false;
      for (std::size_t z = 0; z < n; ++z)
        if (m(x, y) && m(y, z) && !m(x, z)) return false;
    }
  return true;
}

}  // namespace

TEST(Similarity, TwoValuedSimilaritiesArePartialEquivalences) {
  Quantale Two = make_boolean(1);
  for (std::uint32_t bits = 0; bits < (1u << 9); ++bits) {
    auto m = from_bits(3, bits);
    EXPECT_EQ(check_similarity(Two, m).ok(), partial_equivalence(m)) << bits;
  }
}

TEST(Dissimilarity, TwoValuedDissimilaritiesAreComplementsOfPartialEquivalences) {
  Quantale Two = make_boolean(1);
  for (std::uint32_t bits = 0; bits < (1u << 9); ++bits) {
    auto m = from_bits(3, bits);
    auto comp = m.map([](Element e) { return Element(1 - e); });
    EXPECT_EQ(check_dissimilarity(Two, m).ok(), partial_equivalence(comp)) << bits;
  }
}

TEST(Similarity, SingletonAtUnitAndMeetOnBoolean) {
  for (const char* name : {"c3", "rel:2", "nm:4", "lukasiewicz:3"}) {
    Quantale Q = quantale_by_name(name);
    EXPECT_TRUE(check_similarity(Q, Matrix<Element>(1, Q.unit())).ok()) << name;
  }
  Quantale B = make_boolean(2);
  Matrix<Element> a(4, Element{0});
  for (Element p = 0; p < 4; ++p)
    for (Element q = 0; q < 4; ++q) a(p, q) = B.meet(p, q);
  EXPECT_TRUE(check_similarity(B, a).ok());
}

TEST(Similarity, WitnessNamesTheOffendingPair) {
  Quantale Two = make_boolean(1);
  Matrix<Element> m(2, Element{1});
  m(1, 0) = 0;
  auto r = check_similarity(Two, m, SimilarityMode::Full, {"a", "b"});
  ASSERT_TRUE(r.violates("S2-symmetry"));
  EXPECT_EQ(r.violations.front().witness, (std::vector<std::string>{"a", "b"}));
}

TEST(Similarity, ModePreconditions) {
  Quantale L = quantale_by_name("lukasiewicz:4");
  Matrix<Element> m(1, L.top());
  EXPECT_THROW(check_similarity(L, m, SimilarityMode::Frame), Error);
  EXPECT_NO_THROW(check_similarity(L, m, SimilarityMode::Divisible));
  EXPECT_THROW(check_similarity(make_c3(), Matrix<Element>(1, Element{1}), SimilarityMode::Divisible), Error);
}

TEST(Dissimilarity, RigidFlagAndConstantTop) {
  Quantale Two = make_boolean(1);
  Matrix<Element> b(2, Element{1});
  b(0, 0) = b(1, 1) = 0;
  auto r = check_dissimilarity(Two, b);
  EXPECT_TRUE(r.ok());
  EXPECT_TRUE(r.rigid);

  // constant ⊤: D3 at ⊤ decides it; in C3 ⊤ is regular
  Quantale C = make_c3();
  EXPECT_EQ(check_dissimilarity(C, Matrix<Element>(2, C.top())).ok(),
            back_diagonals(C, C.top(), C.top()).contains(C.top()));
}

TEST(Pcx, SimilarityAndNegatedDissimilarityOnSmallSpaces) {
  for (const auto& X : {sierpinski(), discrete_space(3), discrete_space(2)}) {
    auto S = pcx_similarity(X, 2);
    auto D = pcx_dissimilarity(X, 2);
    EXPECT_TRUE(check_similarity(S, SimilarityMode::Frame).ok()) << X.name;
    EXPECT_TRUE(check_dissimilarity(D).ok()) << X.name;
    const Quantale& O = *S.base;
    for (std::size_t i = 0; i < S.size(); ++i)
      for (std::size_t j = 0; j < S.size(); ++j) EXPECT_EQ(D.values(i, j), neg_right(O, S.values(i, j)));
  }
}

TEST(Pcx, AgreementOnOwnDomainAndTotalDisagreement) {
  auto X = discrete_space(2);
  auto S = pcx_similarity(X, 2);
  const Quantale& O = *S.base;
  auto maps = enumerate_partial_maps(X, 2);
  for (std::size_t i = 0; i < maps.size(); ++i) {
    EXPECT_EQ(S.values(i, i), static_cast<Element>(X.index_of(maps[i].domain)));
    for (std::size_t j = 0; j < maps.size(); ++j) {
      bool total = maps[i].domain == X.whole() && maps[j].domain == X.whole();
      bool disjoint = maps[i].values[0] != maps[j].values[0] && maps[i].values[1] != maps[j].values[1];
      if (total && disjoint) EXPECT_EQ(S.values(i, j), O.bottom());
    }
  }
}

TEST(Intervals, FormulaValues) {
  auto I = [](std::int64_t a, std::int64_t b) { return make_interval(Rational(a), ExtRational(b)); };
  auto Iinf = [](std::int64_t a) { return make_interval(Rational(a), ExtRational::infinity()); };
  EXPECT_EQ(interval_alpha(I(1, 2), I(1, 2)), ExtRational(1));
  EXPECT_EQ(interval_alpha(I(1, 2), I(3, 4)), ExtRational(3));
  EXPECT_EQ(interval_beta(I(1, 2), Iinf(5)), ExtRational(0));
  EXPECT_EQ(interval_beta(I(1, 3), I(2, 4)), ExtRational(1));
  EXPECT_EQ(interval_beta(I(1, 2), I(3, 4)), ExtRational(0));
  EXPECT_THROW(make_interval(Rational(3), ExtRational(2)), Error);
}

TEST(Intervals, SampledAxiomsHold) {
  auto xs = random_intervals(7, 60);
  auto S = interval_similarity(xs);
  auto D = interval_dissimilarity(xs);
  auto rs = check_similarity(S);
  EXPECT_TRUE(rs.ok()) << rs.str();
  EXPECT_EQ(rs.scope, Scope::Sampled);
  EXPECT_TRUE(check_dissimilarity(D).ok());
}

TEST(Apartness, TrivialAndRigidCases) {
  Quantale B = make_boolean(2);
  std::vector<Element> E = {1, 3, 2};
  EXPECT_TRUE(check_apartness(B, E, Matrix<Element>(3, B.bottom())).ok());

  // E = ⊤ and γ a rigid two-valued-style dissimilarity
  std::vector<Element> full(3, B.top());
  Matrix<Element> g(3, B.top());
  for (std::size_t x = 0; x < 3; ++x) g(x, x) = B.bottom();
  ASSERT_TRUE(check_dissimilarity(B, g).ok());
  EXPECT_TRUE(check_apartness(B, full, g).ok());
  // α = ¬γ in that case
  auto a = apartness_to_similarity(B, full, g);
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) EXPECT_EQ(a(x, y), neg_right(B, g(x, y)));

  EXPECT_THROW(check_apartness(make_c3(), E, Matrix<Element>(3, Element{0})), Error);
  EXPECT_THROW(check_apartness(B, {1, 2}, Matrix<Element>(3, Element{0})), Error);
}

TEST(Apartness, MeetSimilarityGivesValidApartness) {
  Quantale B = make_boolean(2);
  Matrix<Element> a(4, Element{0});
  for (Element p = 0; p < 4; ++p)
    for (Element q = 0; q < 4; ++q) a(p, q) = B.meet(p, q);
  auto [E, g] = similarity_to_apartness(B, a);
  EXPECT_TRUE(check_apartness(B, E, g).ok());
  EXPECT_TRUE(check_complement_in_downset(B, E, a, g).ok());
  EXPECT_EQ(apartness_to_similarity(B, E, g), a);
  EXPECT_THROW(similarity_to_apartness(quantale_by_name("godel:3"), Matrix<Element>(1, Element{0})), Error);
}

TEST(Categories, SimilarityIsSymmetricHCategory) {
  auto Dq = derive_all(share(quantale_by_name("lukasiewicz:4")));
  const Quantale& Q = *Dq.base;
  std::size_t checked = 0;
  for_each_symmetric_matrix(Q, 2, [&](const Matrix<Element>& a) {
    std::vector<Element> types = {a(0, 0), a(1, 1)};
    bool sim = check_similarity(Q, a).ok();
    bool cat = check_qcategory(*Dq.H, types, a).ok() && check_symmetric(*Dq.H, types, a).ok();
    EXPECT_EQ(sim, cat);
    bool dis = check_dissimilarity(Q, a).ok();
    bool kcat = check_qcategory(*Dq.K, types, a).ok() && check_symmetric(*Dq.K, types, a).ok();
    EXPECT_EQ(dis, kcat);
    ++checked;
    return true;
  });
  EXPECT_EQ(checked, 4u * 4u * 4u);
}

TEST(Categories, ConversionsRoundTripAndRejectWrongBase) {
  auto Dq = derive_all(share(make_c3()));
  SimilaritySpace<Quantale> S;
  S.base = Dq.base;
  S.carrier = {"x", "y"};
  S.values = Matrix<Element>(2, Element{0});
  S.values(0, 0) = S.values(1, 1) = Dq.base->find("k");
  auto C = similarity_to_category(S, Dq.H);
  EXPECT_TRUE(check_qcategory(C).ok());
  EXPECT_TRUE(check_symmetric(C).ok());
  EXPECT_EQ(category_to_similarity(C).values, S.values);
  EXPECT_THROW(similarity_to_category(S, Dq.K), Error);

  std::vector<std::size_t> id = {0, 1};
  EXPECT_TRUE(check_qfunctor(id, C, C));
  std::vector<std::size_t> swap_to_bot = {0, 0};
  EXPECT_TRUE(check_qfunctor(swap_to_bot, C, C) == (C.types[0] == C.types[1]));
}
