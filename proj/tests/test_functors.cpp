#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdiss/qdiss.hpp"

using namespace qdiss;

namespace {

// Lax functor laws spelled out directly over hom-sets.
bool naive_lax(const LaxFunctor& F) {
  const auto& A = F.source();
  const auto& B = F.target();
  const std::size_t n = A.object_count();
  for (Element p = 0; p < n; ++p) {
    if (!B.local_leq(B.identity(F.object(p)), F.arrow(p, p, A.identity(p)))) return false;
    for (Element q = 0; q < n; ++q) {
      for (Element u : A.hom(p, q)) {
        if (!B.in_hom(F.object(p), F.object(q), F.arrow(p, q, u))) return false;
        for (Element u2 : A.hom(p, q))
          if (A.local_leq(u, u2) && !B.local_leq(F.arrow(p, q, u), F.arrow(p, q, u2))) return false;
      }
      for (Element r = 0; r < n; ++r)
        for (Element u : A.hom(p, q))
          for (Element v : A.hom(q, r)) {
            Element lhs = B.compose(F.object(q), F.arrow(p, q, u), F.arrow(q, r, v));
            if (!B.local_leq(lhs, F.arrow(p, r, A.compose(q, u, v)))) return false;
          }
    }
  }
  return true;
}

}  // namespace

TEST(Grade, IdentityFunctorIsInvolutiveIsomorphism) {
  for (const char* name : {"c3", "rel:2", "godel:3"}) {
    auto Dq = derive_all(share(quantale_by_name(name)));
    for (auto k : {QuantaloidKind::D, QuantaloidKind::H, QuantaloidKind::B, QuantaloidKind::K}) {
      auto g = grade_functor(identity_functor(Dq.get(k)));
      EXPECT_TRUE(g.is_isomorphism && g.preserves_involution) << name;
    }
  }
}

TEST(Grade, DroppingUnitalityIsNotLax) {
  auto Dq = derive_all(share(quantale_by_name("lukasiewicz:3")));
  auto F = identity_functor(Dq.H);
  Element top = Dq.base->top();
  F.set_arrow(top, top, top, Dq.base->bottom());
  auto g = grade_functor(F);
  EXPECT_FALSE(g.is_lax);
  EXPECT_FALSE(g.witnesses.empty());
}

TEST(Grade, IllTypedArrowThrowsInStrictMode) {
  auto Dq = derive_all(share(make_c3()));
  auto F = identity_functor(Dq.H);
  Element k = Dq.base->find("k");
  F.set_arrow(k, k, k, Dq.base->top());  // top is not in H(k,k)
  EXPECT_THROW(grade_functor(F, true), Error);
  auto g = grade_functor(F, false);
  EXPECT_FALSE(g.well_typed);
  EXPECT_FALSE(g.is_lax);
}

TEST(Grade, LaxFlagAgreesWithNaiveLaws) {
  for (const auto& name : zoo_names(8)) {
    auto Dq = derive_all(share(quantale_by_name(name)));
    auto [l, r] = negation_candidates(Dq);
    for (const auto* F : {&l, &r}) {
      auto g = grade_functor(*F, false);
      EXPECT_EQ(g.is_lax, g.well_typed && naive_lax(*F)) << name << " " << F->name();
    }
  }
}

TEST(Negation, DivisibleNegationsAreLax) {
  for (const char* name : {"lukasiewicz:5", "godel:4", "boolean:2"}) {
    auto Dq = derive_all(share(quantale_by_name(name)));
    auto [l, r] = neg_functors_divisible(Dq);
    EXPECT_TRUE(grade_functor(l).is_lax) << name;
    EXPECT_TRUE(grade_functor(r).is_lax) << name;
  }
  EXPECT_THROW(neg_functors_divisible(derive_all(share(make_c3()))), Error);
}

TEST(Negation, C3NegationIsHomomorphismBothWays) {
  auto Dq = derive_all(share(make_c3()));
  auto [kh, hk] = frame_negation_candidates(Dq);
  EXPECT_TRUE(grade_functor(kh).is_homomorphism);
  EXPECT_TRUE(grade_functor(hk).is_homomorphism);
  EXPECT_THROW(neg_homomorphisms_frame(Dq), Error);
}

TEST(Negation, FrameNegationsAreHomomorphisms) {
  for (const char* name : {"godel:4", "sierpinski", "boolean:2"}) {
    auto Dq = derive_all(share(quantale_by_name(name)));
    auto [kh, hk] = neg_homomorphisms_frame(Dq);
    EXPECT_TRUE(grade_functor(kh).is_homomorphism) << name;
    EXPECT_TRUE(grade_functor(hk).is_homomorphism) << name;
  }
}

TEST(LinearNegation, C3MapsKkkOntoHkk) {
  auto Dq = derive_all(share(make_c3()));
  const Quantale& Q = *Dq.base;
  Element k = Q.find("k");
  auto L = linear_negation_functors(Dq, k);
  EXPECT_EQ(L.KH.object(k), k);
  std::vector<Element> image;
  for (Element v : Dq.K->hom(k, k)) image.push_back(L.KH.arrow(k, k, v));
  std::sort(image.begin(), image.end());
  EXPECT_EQ(image, Dq.H->hom(k, k));
  EXPECT_TRUE(grade_functor(L.KH).is_isomorphism);
  EXPECT_TRUE(is_identity_functor(compose_functors(L.KH, L.HK)));
  EXPECT_TRUE(is_identity_functor(compose_functors(L.BD, L.DB)));
  EXPECT_THROW(linear_negation_functors(Dq, Q.top()), Error);
}

TEST(LinearNegation, RelTwoIsomorphismsPreserveInvolution) {
  auto Dq = derive_all(share(make_rel(2)));
  auto L = linear_negation_functors(Dq, 0b0110);
  for (const auto* F : {&L.KH, &L.HK, &L.BD, &L.DB}) {
    auto g = grade_functor(*F);
    EXPECT_TRUE(g.is_isomorphism) << F->name();
    EXPECT_TRUE(g.preserves_involution) << F->name();
  }
}

TEST(Transport, NegatedDissimilarityIsSimilarity) {
  auto Dq = derive_all(share(quantale_by_name("lukasiewicz:4")));
  const Quantale& Q = *Dq.base;
  std::size_t checked = 0;
  auto [l, r] = neg_functors_divisible(Dq);
  for_each_symmetric_matrix(Q, 2, [&](const Matrix<Element>& b) {
    if (!check_dissimilarity(Q, b).ok()) return true;
    DissimilaritySpace<Quantale> D;
    D.base = Dq.base;
    D.carrier = {"x", "y"};
    D.values = b;
    auto C = transport_category(r, dissimilarity_to_category(D, Dq.K));
    EXPECT_TRUE(check_similarity(category_to_similarity(C)).ok());
    ++checked;
    return true;
  });
  EXPECT_GT(checked, 0u);
}

TEST(Transport, FrameNegationTurnsPcxAlphaIntoBeta) {
  auto X = sierpinski();
  auto S = pcx_similarity(X, 2);
  auto D = pcx_dissimilarity(X, 2);
  auto Dq = derive_all(S.base);
  auto [kh, hk] = neg_homomorphisms_frame(Dq);
  auto C = transport_category(hk, similarity_to_category(S, Dq.H));
  EXPECT_EQ(C.hom, D.values);
}

TEST(IsoSearch, IdentityAndConverseExamples) {
  auto Dq = derive_all(share(make_c3()));
  auto same = iso_search(Dq.H, Dq.H);
  ASSERT_EQ(same.verdict, IsoVerdict::Found);
  EXPECT_TRUE(grade_functor(*same.iso, false).is_isomorphism);

  auto G = derive_all(share(quantale_by_name("godel:3")));
  EXPECT_EQ(iso_search(G.D, G.B).verdict, IsoVerdict::None);

  auto L = derive_all(share(quantale_by_name("lukasiewicz:4")));
  auto found = iso_search(L.D, L.B);
  ASSERT_EQ(found.verdict, IsoVerdict::Found);
  EXPECT_TRUE(grade_functor(*found.iso, false).is_isomorphism);
}

TEST(IsoSearch, TinyBudgetIsReportedSeparately) {
  auto L = derive_all(share(quantale_by_name("lukasiewicz:6")));
  EXPECT_EQ(iso_search(L.D, L.B, 1).verdict, IsoVerdict::BudgetExceeded);
}

TEST(Suites, AllPassOnSmallZoo) {
  for (const char* name : {"c3", "godel:3", "lukasiewicz:4", "nm:4", "boolean:2", "rel:2"}) {
    auto Dq = derive_all(share(quantale_by_name(name)));
    for (const auto& s : suite_names()) {
      auto r = run_suite(s, Dq, 2);
      EXPECT_TRUE(r.passed()) << name << " " << s;
    }
  }
  EXPECT_THROW(run_suite("no-such-suite", share(make_c3())), Error);
}

TEST(Suites, SampledSuitesAreMarkedSampled) {
  for (const auto& s : sampled_suite_names()) {
    auto r = run_sampled_suite(s, 3, 40);
    EXPECT_EQ(r.verdict, Verdict::Sampled) << s;
  }
}
