#pragma once

// Test-side oracles for Hilbert bases: a bounding-box enumeration and a
// memoized membership test for the monoid generated by a candidate basis.

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "multiproj/cones.hpp"
#include "test_util.hpp"

namespace multiproj::testing {

// Brute-force Hilbert basis: irreducible lattice points of the cone inside
// the bounding box of the zonotope spanned by the rays, which contains every
// Hilbert basis element.
inline std::vector<IntVector> brute_force_hilbert_basis(const RationalCone& c) {
    const std::size_t n = c.ambient_dim();
    IntVector lo(n), hi(n);
    for (const auto& r : c.rays())
        for (std::size_t i = 0; i < n; ++i) (r[i] < 0 ? lo[i] : hi[i]) += r[i];
    std::vector<IntVector> points;
    IntVector p = lo;
    for (;;) {
        if (!is_zero(p) && c.contains(p)) points.push_back(p);
        std::size_t i = 0;
        while (i < n && p[i] == hi[i]) {
            p[i] = lo[i];
            ++i;
        }
        if (i == n) break;
        ++p[i];
    }
    std::vector<IntVector> basis;
    for (const auto& x : points) {
        bool reducible = false;
        for (const auto& y : points) {
            IntVector z = x - y;
            if (!is_zero(z) && x != y && c.contains(z)) {
                reducible = true;
                break;
            }
        }
        if (!reducible) basis.push_back(x);
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

// Whether x is a nonnegative integer combination of `gens` (pointed cone).
inline bool representable(const IntVector& x, const std::vector<IntVector>& gens, const RationalCone& c,
                   std::map<IntVector, bool>& memo) {
    if (is_zero(x)) return true;
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    bool ok = false;
    for (const auto& g : gens) {
        IntVector rest = x - g;
        if (c.contains(rest) && representable(rest, gens, c, memo)) {
            ok = true;
            break;
        }
    }
    memo[x] = ok;
    return ok;
}

inline RationalCone random_pointed_cone(std::mt19937& rng, std::size_t n, std::size_t count) {
    for (;;) {
        std::vector<IntVector> gens;
        for (std::size_t i = 0; i < count; ++i) gens.push_back(random_vector(rng, n, -3, 3));
        RationalCone c = RationalCone::from_generators(n, gens);
        if (c.is_pointed() && !c.is_zero()) return c;
    }
}

/// Every lattice point of the pointed cone with l1 norm at most `bound` is a
/// nonnegative integer combination of `basis`.
inline bool generates_small_points(const RationalCone& c, const std::vector<IntVector>& basis, long long bound) {
    const std::size_t n = c.ambient_dim();
    std::map<IntVector, bool> memo;
    IntVector p(n, -bound);
    for (;;) {
        Integer norm = 0;
        for (auto& x : p) norm += detail::abs(x);
        if (norm <= bound && c.contains(p) && !representable(p, basis, c, memo)) return false;
        std::size_t i = 0;
        while (i < n && p[i] == bound) p[i++] = -bound;
        if (i == n) return true;
        ++p[i];
    }
}

}  // namespace multiproj::testing
