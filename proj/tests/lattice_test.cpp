#include <gtest/gtest.h>

#include "multiproj/lattice.hpp"
#include "test_util.hpp"

namespace multiproj {
namespace {

using testing::mat;
using testing::v;
using testing::vs;

bool is_diagonal_chain(const SmithForm& snf) {
    const auto& s = snf.diagonal;
    for (std::size_t i = 0; i < s.rows(); ++i)
        for (std::size_t j = 0; j < s.cols(); ++j) {
            if (i != j && s(i, j) != 0) return false;
            if (i == j && s(i, i) < 0) return false;
        }
    auto f = snf.invariant_factors();
    for (std::size_t i = 1; i < f.size(); ++i)
        if (f[i] % f[i - 1] != 0) return false;
    for (std::size_t i = snf.rank; i < std::min(s.rows(), s.cols()); ++i)
        if (s(i, i) != 0) return false;
    return true;
}

TEST(SmithNormalForm, TwoByTwoExample) {
    // gcd of the entries is 2 and |det| = 8, so the invariant factors are 2, 4
    IntegerMatrix m = mat({{2, 4}, {6, 8}});
    SmithForm snf = smith_normal_form(m);
    EXPECT_EQ(snf.diagonal, mat({{2, 0}, {0, 4}}));
    EXPECT_EQ(snf.left * m * snf.right, snf.diagonal);
}

TEST(SmithNormalForm, IdentityAndZero) {
    SmithForm id = smith_normal_form(IntegerMatrix::identity(2));
    EXPECT_EQ(id.diagonal, IntegerMatrix::identity(2));
    SmithForm z = smith_normal_form(IntegerMatrix(2, 3));
    EXPECT_TRUE(z.diagonal.is_zero());
    EXPECT_EQ(z.rank, 0u);
}

TEST(SmithNormalForm, RandomMatricesAreUnimodularlyEquivalent) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        IntegerMatrix m = testing::random_matrix(rng, r, c, -9, 9);
        SmithForm snf = smith_normal_form(m);
        ASSERT_EQ(snf.left * m * snf.right, snf.diagonal) << m;
        ASSERT_EQ(abs(determinant(snf.left)), 1);
        ASSERT_EQ(abs(determinant(snf.right)), 1);
        ASSERT_EQ(snf.left * snf.left_inverse, IntegerMatrix::identity(r));
        ASSERT_TRUE(is_diagonal_chain(snf)) << m;
        ASSERT_EQ(snf.rank, rank(m));
    }
}

TEST(KernelBasis, Examples) {
    EXPECT_EQ(kernel_basis(mat({{1, 1}})), vs({{1, -1}}));
    EXPECT_EQ(kernel_basis(mat({{1, -1}})), vs({{1, 1}}));
    EXPECT_TRUE(kernel_basis(IntegerMatrix::identity(2)).empty());
}

TEST(KernelBasis, RandomKernelsAreAnnihilatedAndHaveFullRank) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 6;
        IntegerMatrix m = testing::random_matrix(rng, r, c, -4, 4);
        auto k = kernel_basis(m);
        ASSERT_EQ(k.size(), c - rank(m));
        for (const auto& x : k) ASSERT_TRUE(is_zero(m * x));
        ASSERT_EQ(rank(k), k.size());
        // saturated: the basis is primitive as a lattice (gcd of maximal minors is 1)
        if (!k.empty()) {
            SmithForm s = smith_normal_form(IntegerMatrix::from_rows(k, c));
            for (auto f : s.invariant_factors()) ASSERT_EQ(f, 1);
        }
    }
}

TEST(Cokernel, Examples) {
    // columns (1,1) and (1,-1): SNF diag(1,2)
    Cokernel c = cokernel(mat({{1, 1}, {1, -1}}));
    EXPECT_EQ(c.group, FgAbelianGroup(0, v({2})));
    EXPECT_EQ(cokernel(IntegerMatrix(2, 0)).group, FgAbelianGroup::free(2));
    EXPECT_TRUE(cokernel(IntegerMatrix::identity(3)).group.is_trivial());
}

TEST(Cokernel, RandomProjectionKillsImage) {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        IntegerMatrix m = testing::random_matrix(rng, r, c, -6, 6);
        Cokernel ck = cokernel(m);
        for (std::size_t j = 0; j < c; ++j) {
            GroupElement img = ck.projection.apply(GroupElement{m.column(j), {}});
            ASSERT_EQ(img, GroupElement::zero(ck.group));
        }
        Integer expected = 1;
        for (auto f : smith_normal_form(m).invariant_factors()) expected *= f;
        ASSERT_EQ(ck.group.torsion_order(), expected);
        ASSERT_TRUE(ck.projection.is_surjective());
    }
}

TEST(FiniteIndex, Examples) {
    EXPECT_TRUE(is_finite_index_subgroup(vs({{1, 0}, {1, 1}}), FgAbelianGroup::free(2)));
    EXPECT_FALSE(is_finite_index_subgroup(vs({{1, 0}}), FgAbelianGroup::free(2)));
    EXPECT_TRUE(is_finite_index_subgroup({}, FgAbelianGroup{}));
    EXPECT_THROW(is_finite_index_subgroup(vs({{1}}), FgAbelianGroup::free(2)), InputError);
}

TEST(FgAbelianGroup, RejectsBadInvariantFactors) {
    EXPECT_THROW(FgAbelianGroup(1, v({1})), InputError);
    EXPECT_THROW(FgAbelianGroup(1, v({4, 6})), InputError);
    EXPECT_NO_THROW(FgAbelianGroup(1, v({2, 6})));
}

TEST(GroupHom, TorsionWellDefinedness) {
    FgAbelianGroup z2(0, v({2})), z4(0, v({4}));
    // generator of Z/2 -> 2 in Z/4 is fine, -> 1 is not
    EXPECT_NO_THROW(GroupHom(z2, z4, IntegerMatrix(0, 1), mat({{2}})));
    EXPECT_THROW(GroupHom(z2, z4, IntegerMatrix(0, 1), mat({{1}})), InputError);
    EXPECT_THROW(GroupHom(z2, FgAbelianGroup::free(1), mat({{1}}), IntegerMatrix(0, 1)), InputError);
}

TEST(GroupHom, KernelWithTorsionTarget) {
    // Z^2 -> Z/2, (a, b) -> a + b mod 2: kernel spanned by (1, 1), (2, 0)... Hermite form (1, 1), (0, 2)
    FgAbelianGroup z2(0, v({2}));
    std::vector<GroupElement> imgs = {{{}, v({1})}, {{}, v({1})}};
    GroupHom h = GroupHom::from_images(2, z2, imgs);
    EXPECT_EQ(kernel_basis(h), vs({{1, 1}, {0, 2}}));
}

TEST(GroupHom, Surjectivity) {
    FgAbelianGroup z2 = FgAbelianGroup::free(2);
    GroupHom sum(z2, FgAbelianGroup::free(1), mat({{1, 1}}), IntegerMatrix(0, 2));
    EXPECT_TRUE(sum.is_surjective());
    GroupHom axis(z2, z2, mat({{1, 1}, {0, 0}}), IntegerMatrix(0, 2));
    EXPECT_FALSE(axis.is_surjective());
    GroupHom doubled(z2, FgAbelianGroup::free(1), mat({{2, 2}}), IntegerMatrix(0, 2));
    EXPECT_FALSE(doubled.is_surjective());
    EXPECT_TRUE(doubled.is_rationally_surjective());
}

TEST(HermiteBasis, CanonicalForSameLattice) {
    auto a = hermite_basis(vs({{2, 1}, {0, 3}}), 2);
    auto b = hermite_basis(vs({{2, 4}, {2, 1}, {4, 5}}), 2);
    EXPECT_EQ(a, b);
}

}  // namespace
}  // namespace multiproj
