#include <gtest/gtest.h>

#include "hilbert_oracle.hpp"
#include "multiproj/cones.hpp"
#include "test_util.hpp"

namespace multiproj {
namespace {

using testing::brute_force_hilbert_basis;
using testing::random_pointed_cone;
using testing::v;
using testing::vs;

RationalCone cone(std::size_t n, std::initializer_list<std::initializer_list<long long>> gens) {
    return RationalCone::from_generators(n, vs(gens));
}

TEST(ConeFromGenerators, Examples) {
    EXPECT_EQ(cone(2, {{1, 0}, {1, 1}, {0, 1}}).rays(), vs({{0, 1}, {1, 0}}));
    EXPECT_TRUE(RationalCone::from_generators(2, std::vector<IntVector>{}).is_zero());
    EXPECT_EQ(cone(2, {{2, 4}}).rays(), vs({{1, 2}}));
    EXPECT_EQ(cone(2, {{0, 0}, {3, 0}}).rays(), vs({{1, 0}}));
    EXPECT_THROW(cone(2, {{1, 0, 0}}), InputError);

    std::vector<RatVector> rat = {{Rational(1, 2), Rational(1, 3)}};
    EXPECT_EQ(RationalCone::from_generators(2, rat).rays(), vs({{3, 2}}));
}

TEST(ConeFromGenerators, LinealityIsCanonical) {
    RationalCone line = cone(2, {{1, -1}, {-1, 1}, {1, 0}});
    EXPECT_EQ(line.lineality(), vs({{1, -1}}));
    EXPECT_EQ(line.rays(), vs({{1, 1}}));
    EXPECT_EQ(line.dimension(), 2u);
    EXPECT_FALSE(line.is_pointed());
    EXPECT_EQ(line, cone(2, {{2, -2}, {-1, 1}, {0, 1}}));
    EXPECT_EQ(cone(1, {{1}, {-1}}), RationalCone::full(1));
}

TEST(Dimension, Examples) {
    EXPECT_EQ(cone(2, {{1, 0}, {1, 1}}).dimension(), 2u);
    EXPECT_EQ(cone(2, {{1, 1}}).dimension(), 1u);
    EXPECT_EQ(RationalCone::zero(2).dimension(), 0u);
}

TEST(Intersect, Examples) {
    RationalCone a = cone(2, {{1, 0}, {1, 1}});
    RationalCone b = cone(2, {{1, 1}, {0, 1}});
    EXPECT_EQ(intersect(a, b), cone(2, {{1, 1}}));
    EXPECT_EQ(intersect(a, a), a);
    EXPECT_TRUE(intersect(cone(2, {{1, 0}}), cone(2, {{0, 1}})).is_zero());
}

TEST(HasFullDimIntersection, Examples) {
    RationalCone c12 = cone(2, {{1, 0}, {1, 1}});
    RationalCone c23 = cone(2, {{1, 1}, {0, 1}});
    RationalCone c13 = cone(2, {{1, 0}, {0, 1}});
    EXPECT_FALSE(has_full_dim_intersection(c12, c23));
    EXPECT_TRUE(has_full_dim_intersection(c12, c13));
    EXPECT_EQ(intersect(c12, c13), c12);
    EXPECT_TRUE(has_full_dim_intersection(c13, c13));
}

TEST(RelativeInterior, Examples) {
    RationalCone quadrant = cone(2, {{1, 0}, {0, 1}});
    EXPECT_TRUE(quadrant.relative_interior_contains(v({1, 1})));
    EXPECT_FALSE(quadrant.relative_interior_contains(v({1, 0})));
    EXPECT_TRUE(cone(2, {{1, 1}}).relative_interior_contains(v({2, 2})));
    EXPECT_FALSE(cone(2, {{1, 1}}).relative_interior_contains(v({2, 1})));
    EXPECT_TRUE(RationalCone::zero(2).relative_interior_contains(v({0, 0})));
}

TEST(IsFace, Examples) {
    RationalCone quadrant = cone(2, {{1, 0}, {0, 1}});
    EXPECT_TRUE(is_face(cone(2, {{1, 0}}), quadrant));
    EXPECT_FALSE(is_face(cone(2, {{1, 1}}), quadrant));
    EXPECT_TRUE(is_face(RationalCone::zero(2), quadrant));
    EXPECT_TRUE(is_face(quadrant, quadrant));
    EXPECT_FALSE(is_face(cone(2, {{1, 0}}), cone(2, {{1, 1}})));
    // the zero cone is not a face of a cone with lineality
    EXPECT_FALSE(is_face(RationalCone::zero(2), cone(2, {{1, 0}, {-1, 0}, {0, 1}})));
}

TEST(HilbertBasis, Examples) {
    EXPECT_EQ(hilbert_basis(cone(2, {{1, 0}, {0, 1}})), vs({{0, 1}, {1, 0}}));
    // brute force: lattice points of cone{(1,0),(1,2)} with first coordinate <= 2, reduced
    RationalCone c = cone(2, {{1, 0}, {1, 2}});
    EXPECT_EQ(brute_force_hilbert_basis(c), vs({{1, 0}, {1, 1}, {1, 2}}));
    EXPECT_EQ(hilbert_basis(c), vs({{1, 0}, {1, 1}, {1, 2}}));
    EXPECT_EQ(hilbert_basis(cone(2, {{1, 1}})), vs({{1, 1}}));
    EXPECT_THROW(hilbert_basis(cone(2, {{1, 0}, {-1, 0}})), InputError);
    EXPECT_TRUE(hilbert_basis(RationalCone::zero(3)).empty());
}

TEST(HilbertBasis, LowerDimensionalConeInHigherSpace) {
    // a 2-dimensional cone inside the plane x + y + z = 0 direction sums
    RationalCone c = cone(3, {{1, 0, 1}, {1, 3, 1}});
    EXPECT_EQ(hilbert_basis(c), brute_force_hilbert_basis(c));
}

TEST(HilbertBasis, MatchesBruteForceOnRandomCones) {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2 + trial % 2;
        RationalCone c = random_pointed_cone(rng, n, 2 + rng() % 3);
        ASSERT_EQ(hilbert_basis(c), brute_force_hilbert_basis(c));
    }
}

TEST(HilbertBasis, GeneratesSmallLatticePoints) {
    std::mt19937 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 2 + trial % 2;
        RationalCone c = random_pointed_cone(rng, n, 2 + rng() % 3);
        ASSERT_TRUE(testing::generates_small_points(c, hilbert_basis(c), 10));
    }
}

TEST(DoubleDescription, RandomConesAreConsistent) {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 150; ++trial) {
        std::size_t n = 1 + rng() % 4;
        std::size_t count = rng() % 7;
        std::vector<IntVector> gens;
        for (std::size_t i = 0; i < count; ++i) gens.push_back(testing::random_vector(rng, n, -3, 3));
        RationalCone c = RationalCone::from_generators(n, gens);
        for (const auto& g : gens) ASSERT_TRUE(c.contains(g));
        const std::size_t d = c.dimension();
        ASSERT_EQ(rank(c.generators()), d);
        for (const auto& f : c.facets()) {
            std::vector<IntVector> tight = c.lineality();
            for (const auto& g : gens)
                if (dot(f, g) == 0) tight.push_back(g);
            ASSERT_GE(rank(tight), d - 1);
            bool strict = false;
            for (const auto& g : gens) strict = strict || dot(f, g) > 0;
            ASSERT_TRUE(strict);
        }
        // round trip through the inequality description
        ASSERT_EQ(RationalCone::from_inequalities(n, c.facets(), c.equations()), c);
        if (c.is_pointed()) {
            for (const auto& r : c.rays()) {
                bool found = false;
                for (const auto& g : gens) found = found || primitive(g) == r;
                ASSERT_TRUE(found);
            }
            if (!c.is_zero()) ASSERT_TRUE(c.relative_interior_contains(c.relative_interior_point()));
        }
    }
}

TEST(Intersect, AlgebraicLaws) {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t n = 2 + rng() % 2;
        auto make = [&] {
            std::vector<IntVector> gens;
            for (std::size_t i = 0; i < 2 + rng() % 3; ++i) gens.push_back(testing::random_vector(rng, n, -2, 3));
            return RationalCone::from_generators(n, gens);
        };
        RationalCone a = make(), b = make(), c = make();
        ASSERT_EQ(intersect(a, b), intersect(b, a));
        ASSERT_EQ(intersect(intersect(a, b), c), intersect(a, intersect(b, c)));
        ASSERT_EQ(intersect(a, a), a);
        RationalCone ab = intersect(a, b);
        ASSERT_TRUE(a.contains(ab) && b.contains(ab));
    }
}

TEST(IsFace, FacesOfRandomSimplicialCones) {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 30; ++trial) {
        RationalCone c = random_pointed_cone(rng, 3, 3);
        if (!c.is_simplicial()) continue;
        // every subset of rays spans a face; a ray sum across a facet does not
        for (unsigned mask = 0; mask < (1u << c.rays().size()); ++mask) {
            std::vector<IntVector> sub;
            for (std::size_t i = 0; i < c.rays().size(); ++i)
                if (mask & (1u << i)) sub.push_back(c.rays()[i]);
            ASSERT_TRUE(is_face(RationalCone::from_generators(3, sub), c));
        }
        if (c.rays().size() >= 2) {
            std::vector<IntVector> mid = {c.rays()[0] + c.rays()[1]};
            ASSERT_FALSE(is_face(RationalCone::from_generators(3, mid), c));
        }
    }
}

}  // namespace
}  // namespace multiproj
