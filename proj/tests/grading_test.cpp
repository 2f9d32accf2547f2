#include <gtest/gtest.h>

#include "corpus.hpp"
#include "examples.hpp"
#include "multiproj/grading.hpp"

namespace multiproj {
namespace {

using testing::v;
using testing::vs;

TEST(DegreeOf, Examples) {
    EXPECT_EQ(degree_of(testing::standard_z2(), Monomial::from({1, 1})).free, v({1, 1}));
    EXPECT_EQ(degree_of(testing::total_degree(), Monomial::from({2, 1})).free, v({3}));
    EXPECT_EQ(degree_of(testing::difference_grading(), Monomial::from({1, 1})).free, v({0}));
    EXPECT_THROW(degree_of(testing::standard_z2(), Monomial::from({1})), InputError);
    EXPECT_THROW(degree_of(testing::standard_z2(), Monomial::from({1, -1})), InputError);
}

TEST(DegreeOf, TorsionCoordinatesAreReduced) {
    FgAbelianGroup d(1, v({3}));
    std::vector<DegreeVector> degs = {{v({1}), v({2})}, {v({1}), v({0})}};
    GradedPolyRing ring(DegreeMap::from_degrees(d, degs));
    DegreeVector deg = degree_of(ring, Monomial::from({2, 1}));
    EXPECT_EQ(deg.free, v({3}));
    EXPECT_EQ(deg.torsion, v({1}));
}

TEST(ConeOfMonomial, ThreeVariableExample) {
    GradedPolyRing ring = testing::three_variable();
    // oracle: degrees of all divisors T1^a T2^b of (T1 T2)^2
    std::vector<IntVector> divisor_degrees;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) divisor_degrees.push_back(degree_of(ring, Monomial::from({a, b, 0})).free);
    RationalCone oracle = RationalCone::from_generators(2, divisor_degrees);
    RationalCone c = cone_of_monomial(ring, Monomial::from({1, 1, 0}));
    EXPECT_EQ(c, oracle);
    EXPECT_EQ(c.rays(), vs({{1, 0}, {1, 1}}));
}

TEST(ConeOfMonomial, UnitAndFullCone) {
    EXPECT_TRUE(cone_of_monomial(testing::three_variable(), Monomial::from({0, 0, 0})).is_zero());
    RationalCone c = cone_of_monomial(testing::standard_z2(), Monomial::from({1, 1}));
    EXPECT_TRUE(c.is_full_dimensional());
    EXPECT_EQ(c.rays(), vs({{0, 1}, {1, 0}}));
}

TEST(IsRelevant, Examples) {
    EXPECT_FALSE(is_relevant(testing::standard_z2(), Monomial::from({2, 0})));
    EXPECT_TRUE(is_relevant(testing::standard_z2(), Monomial::from({1, 3})));
    GradedPolyRing axis = testing::axis_regrading();
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b) EXPECT_FALSE(is_relevant(axis, Monomial::from({a, b})));
}

TEST(RelevantSquarefree, Examples) {
    auto three = relevant_squarefree_monomials(testing::three_variable());
    std::vector<Support> expected = {Support::of({0, 1}), Support::of({0, 2}), Support::of({1, 2}),
                                     Support::of({0, 1, 2})};
    EXPECT_EQ(three, expected);
    EXPECT_EQ(relevant_squarefree_monomials(testing::standard_z2()), std::vector<Support>{Support::of({0, 1})});
    EXPECT_TRUE(relevant_squarefree_monomials(testing::axis_regrading()).empty());
}

TEST(RelevantSquarefree, VariableLimit) {
    Limits limits;
    limits.max_vars = 3;
    EXPECT_THROW(relevant_squarefree_monomials(testing::total_degree(4), limits), LimitExceeded);
    EXPECT_NO_THROW(relevant_squarefree_monomials(testing::total_degree(3), limits));
}

TEST(RelevantSquarefree, FiniteGroupMakesEverythingRelevant) {
    FgAbelianGroup z2(0, v({2}));
    std::vector<DegreeVector> degs = {{{}, v({1})}};
    GradedPolyRing ring(DegreeMap::from_degrees(z2, degs));
    EXPECT_EQ(relevant_squarefree_monomials(ring), (std::vector<Support>{Support{}, Support::of({0})}));
}

TEST(Regrade, Examples) {
    GradedPolyRing p1 = regrade(testing::standard_z2(), testing::coordinate_sum(2));
    EXPECT_EQ(p1.free_degrees(), vs({{1}, {1}}));
    EXPECT_EQ(relevant_squarefree_monomials(p1).size(), 3u);

    GradedPolyRing same = regrade(testing::three_variable(), GroupHom::identity(FgAbelianGroup::free(2)));
    EXPECT_EQ(same, testing::three_variable());

    GradedPolyRing pr = regrade(testing::standard_zr(4), testing::coordinate_sum(4));
    EXPECT_EQ(pr.free_degrees(), std::vector<IntVector>(4, v({1})));

    EXPECT_THROW(regrade(testing::total_degree(), testing::coordinate_sum(2)), InputError);
}

TEST(RelevanceProperties, RandomCorpus) {
    std::mt19937 rng(101);
    for (const auto& ring : testing::random_corpus(60, 3)) {
        const std::size_t k = ring.num_vars();
        for (int trial = 0; trial < 10; ++trial) {
            Monomial f = testing::random_monomial(rng, k);
            Monomial g = testing::random_monomial(rng, k);
            bool rf = is_relevant(ring, f);
            ASSERT_EQ(rf, is_relevant(ring, Monomial::squarefree(f.support(), k)));
            if (rf) ASSERT_TRUE(cone_of_monomial(ring, f).relative_interior_contains(degree_of(ring, f).free));
            if (rf && is_relevant(ring, g)) ASSERT_TRUE(is_relevant(ring, Monomial{f.exponents + g.exponents}));
        }
    }
}

TEST(RelevanceProperties, ProductOfBasisDegreesIsRelevant) {
    // monomials whose degrees form a Q-basis multiply to a relevant monomial
    std::mt19937 rng(103);
    for (const auto& ring : testing::random_corpus(40, 4)) {
        const std::size_t k = ring.num_vars(), r = ring.rank();
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<Monomial> fs;
            std::vector<IntVector> degs;
            for (std::size_t i = 0; i < r; ++i) {
                fs.push_back(testing::random_monomial(rng, k, 2));
                degs.push_back(degree_of(ring, fs.back()).free);
            }
            if (rank(degs) != r) continue;
            IntVector prod(k);
            for (const auto& f : fs) prod = prod + f.exponents;
            ASSERT_TRUE(is_relevant(ring, Monomial{prod}));
        }
    }
}

TEST(RelevanceProperties, SurjectiveRegrading) {
    std::mt19937 rng(107);
    for (const auto& ring : testing::random_corpus(60, 5)) {
        GroupHom delta = testing::random_surjection(rng, ring.rank());
        GradedPolyRing regraded = regrade(ring, delta);
        for (Support s : relevant_squarefree_monomials(ring)) {
            ASSERT_TRUE(is_relevant(regraded, s));
            RationalCone c = cone_of_support(ring, s);
            std::vector<IntVector> image;
            for (const auto& g : c.generators()) image.push_back(delta.free_matrix() * g);
            ASSERT_EQ(RationalCone::from_generators(delta.target().free_rank(), image), cone_of_support(regraded, s));
        }
    }
}

}  // namespace
}  // namespace multiproj
