#pragma once

// Random monomial gradings shared by the property and acceptance suites.

#include <random>
#include <vector>

#include "multiproj/grading.hpp"
#include "test_util.hpp"

namespace multiproj::testing {

/// k <= max_k variables, D = Z^r with r <= max_r, full-dimensional degree cone.
inline GradedPolyRing random_grading(std::mt19937& rng, std::size_t max_k = 8, std::size_t max_r = 4) {
    for (;;) {
        std::size_t r = 1 + rng() % max_r;
        std::size_t k = r + rng() % (max_k - r + 1);
        std::vector<IntVector> degs;
        for (std::size_t i = 0; i < k; ++i) degs.push_back(random_vector(rng, r, -2, 3));
        if (rank(degs) != r) continue;
        return GradedPolyRing::free_graded(r, degs);
    }
}

inline std::vector<GradedPolyRing> random_corpus(std::size_t count, unsigned seed, std::size_t max_k = 8,
                                                 std::size_t max_r = 4) {
    std::mt19937 rng(seed);
    std::vector<GradedPolyRing> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_grading(rng, max_k, max_r));
    return out;
}

/// A surjective homomorphism Z^r -> Z^s with 1 <= s <= r.
inline GroupHom random_surjection(std::mt19937& rng, std::size_t r) {
    for (;;) {
        std::size_t s = 1 + rng() % r;
        IntegerMatrix m = random_matrix(rng, s, r, -2, 2);
        GroupHom h(FgAbelianGroup::free(r), FgAbelianGroup::free(s), m, IntegerMatrix(0, r));
        if (h.is_surjective()) return h;
    }
}

inline Monomial random_monomial(std::mt19937& rng, std::size_t k, int max_exp = 3) {
    IntVector e(k);
    std::uniform_int_distribution<int> dist(0, max_exp);
    for (auto& x : e) x = dist(rng);
    return {e};
}

}  // namespace multiproj::testing
