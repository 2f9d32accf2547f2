#pragma once

// Rational polyhedral cones through the origin, in exact arithmetic.
//
// A cone is stored in canonical form: a Hermite basis of its lineality
// lattice plus the primitive extreme rays of its intersection with the
// orthogonal complement of the lineality space, lexicographically sorted.
// The inequality description (facet normals) and the equations of the span
// are kept alongside. Both descriptions are produced by the double
// description method, so equality of cones is equality of the canonical data.

#include <map>
#include <set>
#include <span>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "multiproj/common.hpp"
#include "multiproj/lattice.hpp"

namespace multiproj {

namespace detail {

/// Generators of {x : <a, x> >= 0 for a in ineqs, <e, x> = 0 for e in eqs}:
/// a lineality basis plus the extreme rays of a pointed complement.
struct DdResult {
    std::vector<IntVector> lineality;
    std::vector<IntVector> rays;
};

inline DdResult double_description(std::size_t n, std::span<const IntVector> ineqs, std::span<const IntVector> eqs) {
    std::vector<IntVector> constraints;
    for (const auto& e : eqs) {
        if (is_zero(e)) continue;
        constraints.push_back(primitive(e));
        constraints.push_back(-constraints.back());
    }
    {
        std::set<IntVector> seen(constraints.begin(), constraints.end());
        for (const auto& a : ineqs) {
            if (a.size() != n) throw InputError("cone: constraint dimension mismatch");
            if (is_zero(a)) continue;
            IntVector p = primitive(a);
            if (seen.insert(p).second) constraints.push_back(std::move(p));
        }
    }
    const std::size_t m = constraints.size();

    std::vector<IntVector> lin;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n);
        e[i] = 1;
        lin.push_back(std::move(e));
    }
    std::vector<IntVector> rays;
    std::vector<boost::dynamic_bitset<>> tight;  // constraints vanishing on each ray

    for (std::size_t t = 0; t < m; ++t) {
        const IntVector& a = constraints[t];

        std::optional<std::size_t> pivot;
        for (std::size_t i = 0; i < lin.size(); ++i)
            if (dot(a, lin[i]) != 0) {
                pivot = i;
                break;
            }
        if (pivot) {
            IntVector l0 = lin[*pivot];
            Integer a0 = dot(a, l0);
            if (a0 < 0) {
                l0 = -l0;
                a0 = -a0;
            }
            std::vector<IntVector> next_lin;
            for (std::size_t i = 0; i < lin.size(); ++i) {
                if (i == *pivot) continue;
                Integer ai = dot(a, lin[i]);
                next_lin.push_back(ai == 0 ? lin[i] : primitive(a0 * lin[i] - ai * l0));
            }
            for (std::size_t i = 0; i < rays.size(); ++i) {
                Integer ai = dot(a, rays[i]);
                if (ai != 0) rays[i] = primitive(a0 * rays[i] - ai * l0);
                tight[i].set(t);
            }
            lin = std::move(next_lin);
            boost::dynamic_bitset<> z(m);
            for (std::size_t s = 0; s < t; ++s) z.set(s);
            rays.push_back(primitive(std::move(l0)));
            tight.push_back(std::move(z));
            continue;
        }

        std::vector<Integer> val(rays.size());
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i]);
            if (val[i] > 0) pos.push_back(i);
            else if (val[i] < 0) neg.push_back(i);
        }
        if (neg.empty()) {
            for (std::size_t i = 0; i < rays.size(); ++i)
                if (val[i] == 0) tight[i].set(t);
            continue;
        }
        std::vector<IntVector> next_rays;
        std::vector<boost::dynamic_bitset<>> next_tight;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] < 0) continue;
            next_rays.push_back(rays[i]);
            next_tight.push_back(tight[i]);
            if (val[i] == 0) next_tight.back().set(t);
        }
        for (std::size_t p : pos)
            for (std::size_t q : neg) {
                boost::dynamic_bitset<> common = tight[p] & tight[q];
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q) continue;
                    if (common.is_subset_of(tight[r])) adjacent = false;
                }
                if (!adjacent) continue;
                IntVector c = primitive(val[p] * rays[q] - val[q] * rays[p]);
                common.set(t);
                next_rays.push_back(std::move(c));
                next_tight.push_back(std::move(common));
            }
        rays = std::move(next_rays);
        tight = std::move(next_tight);
    }
    return {std::move(lin), std::move(rays)};
}

/// Orthogonal projection of v onto the complement of span(basis), scaled to
/// a primitive integer vector.
inline IntVector project_away(const IntVector& v, const std::vector<IntVector>& basis) {
    if (basis.empty()) return primitive(v);
    const std::size_t l = basis.size();
    IntegerMatrix gram(l, l);
    IntVector rhs(l);
    for (std::size_t i = 0; i < l; ++i) {
        for (std::size_t j = 0; j < l; ++j) gram(i, j) = dot(basis[i], basis[j]);
        rhs[i] = dot(basis[i], v);
    }
    auto coeff = solve(gram, rhs);
    assert(coeff);
    RatVector out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        Rational x = Rational(v[k]);
        for (std::size_t i = 0; i < l; ++i) x -= (*coeff)[i] * Rational(basis[i][k]);
        out[k] = x;
    }
    return primitive(clear_denominators(out));
}

inline std::vector<IntVector> canonical_rays(const std::vector<IntVector>& rays, const std::vector<IntVector>& lineality) {
    std::set<IntVector> out;
    for (const auto& r : rays) {
        IntVector p = project_away(r, lineality);
        if (!is_zero(p)) out.insert(std::move(p));
    }
    return {out.begin(), out.end()};
}

}  // namespace detail

class RationalCone {
  public:
    RationalCone() = default;

    /// The cone spanned by `generators`; zero vectors are ignored.
    static RationalCone from_generators(std::size_t n, std::span<const IntVector> generators) {
        for (const auto& g : generators)
            if (g.size() != n) throw InputError("cone_from_generators: dimension mismatch");
        // dual first: its lineality is the orthogonal complement of the span,
        // its rays are the facet normals
        auto dual = detail::double_description(n, generators, {});
        return from_dual(n, std::move(dual));
    }

    static RationalCone from_generators(std::size_t n, std::span<const RatVector> generators) {
        std::vector<IntVector> ints;
        for (const auto& g : generators) {
            if (g.size() != n) throw InputError("cone_from_generators: dimension mismatch");
            ints.push_back(clear_denominators(g));
        }
        return from_generators(n, ints);
    }

    /// {x : <a, x> >= 0 for a in inequalities, <e, x> = 0 for e in equations}
    static RationalCone from_inequalities(std::size_t n, std::span<const IntVector> inequalities,
                                          std::span<const IntVector> equations = {}) {
        for (const auto& e : equations)
            if (e.size() != n) throw InputError("cone: constraint dimension mismatch");
        auto primal = detail::double_description(n, inequalities, equations);
        std::vector<IntVector> gens = primal.rays;
        for (const auto& l : primal.lineality) {
            gens.push_back(l);
            gens.push_back(-l);
        }
        return from_generators(n, gens);
    }

    static RationalCone zero(std::size_t n) { return from_generators(n, std::span<const IntVector>{}); }

    static RationalCone full(std::size_t n) {
        std::vector<IntVector> eqs;
        return from_inequalities(n, std::span<const IntVector>{}, eqs);
    }

    std::size_t ambient_dim() const { return n_; }
    /// Primitive extreme rays of the pointed part, sorted.
    const std::vector<IntVector>& rays() const { return rays_; }
    /// Hermite basis of the lineality lattice.
    const std::vector<IntVector>& lineality() const { return lineality_; }
    /// Primitive inward facet normals (within the span), sorted.
    const std::vector<IntVector>& facets() const { return facets_; }
    /// Hermite basis of the lattice of linear forms vanishing on the cone.
    const std::vector<IntVector>& equations() const { return equations_; }

    /// A generating set: the rays and both signs of each lineality vector.
    std::vector<IntVector> generators() const {
        std::vector<IntVector> g = rays_;
        for (const auto& l : lineality_) {
            g.push_back(l);
            g.push_back(-l);
        }
        return g;
    }

    std::size_t dimension() const { return n_ - equations_.size(); }
    bool is_pointed() const { return lineality_.empty(); }
    bool is_full_dimensional() const { return equations_.empty(); }
    bool is_zero() const { return rays_.empty() && lineality_.empty(); }

    /// Simplicial: pointed with linearly independent rays.
    bool is_simplicial() const { return is_pointed() && rays_.size() == dimension(); }

    bool contains(const IntVector& v) const {
        check_dim(v);
        for (const auto& e : equations_)
            if (dot(e, v) != 0) return false;
        for (const auto& f : facets_)
            if (dot(f, v) < 0) return false;
        return true;
    }
    bool contains(const RatVector& v) const { return contains(clear_denominators(v)); }

    bool relative_interior_contains(const IntVector& v) const {
        check_dim(v);
        for (const auto& e : equations_)
            if (dot(e, v) != 0) return false;
        for (const auto& f : facets_)
            if (dot(f, v) <= 0) return false;
        return true;
    }
    bool relative_interior_contains(const RatVector& v) const {
        return relative_interior_contains(clear_denominators(v));
    }

    bool interior_contains(const IntVector& v) const {
        return is_full_dimensional() && relative_interior_contains(v);
    }

    /// Sum of the extreme rays; lies in the relative interior.
    IntVector relative_interior_point() const {
        IntVector p(n_);
        for (const auto& r : rays_) p = p + r;
        return p;
    }

    bool contains(const RationalCone& other) const {
        if (other.n_ != n_) return false;
        for (const auto& g : other.generators())
            if (!contains(g)) return false;
        return true;
    }

    friend bool operator==(const RationalCone& a, const RationalCone& b) {
        return a.n_ == b.n_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
    }
    friend bool operator<(const RationalCone& a, const RationalCone& b) {
        if (a.n_ != b.n_) return a.n_ < b.n_;
        if (a.rays_ != b.rays_) return a.rays_ < b.rays_;
        return a.lineality_ < b.lineality_;
    }

  private:
    void check_dim(const IntVector& v) const {
        if (v.size() != n_) throw InputError("cone: vector dimension mismatch");
    }

    static RationalCone from_dual(std::size_t n, detail::DdResult dual) {
        RationalCone c;
        c.n_ = n;
        c.equations_ = hermite_basis(dual.lineality, n);
        c.facets_ = detail::canonical_rays(dual.rays, c.equations_);
        auto primal = detail::double_description(n, dual.rays, dual.lineality);
        c.lineality_ = saturation(primal.lineality, n);
        c.rays_ = detail::canonical_rays(primal.rays, c.lineality_);
        return c;
    }

    std::size_t n_ = 0;
    std::vector<IntVector> rays_;
    std::vector<IntVector> lineality_;
    std::vector<IntVector> facets_;
    std::vector<IntVector> equations_;
};

inline RationalCone cone_from_generators(std::span<const IntVector> vectors, std::size_t n) {
    return RationalCone::from_generators(n, vectors);
}

inline std::size_t dimension(const RationalCone& c) { return c.dimension(); }

inline RationalCone intersect(const RationalCone& a, const RationalCone& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw InputError("intersect: ambient dimension mismatch");
    std::vector<IntVector> ineqs = a.facets();
    ineqs.insert(ineqs.end(), b.facets().begin(), b.facets().end());
    std::vector<IntVector> eqs = a.equations();
    eqs.insert(eqs.end(), b.equations().begin(), b.equations().end());
    return RationalCone::from_inequalities(a.ambient_dim(), ineqs, eqs);
}

/// Whether the interior of a ∩ b is non-empty.
inline bool has_full_dim_intersection(const RationalCone& a, const RationalCone& b) {
    if (!a.is_full_dimensional() || !b.is_full_dimensional()) return false;
    return intersect(a, b).is_full_dimensional();
}

inline bool relative_interior_contains(const RationalCone& c, const IntVector& v) {
    return c.relative_interior_contains(v);
}

/// The smallest face of `c` containing the point `p` (which must lie in c).
inline RationalCone minimal_face_containing(const RationalCone& c, const IntVector& p) {
    std::vector<IntVector> eqs = c.equations();
    for (const auto& f : c.facets())
        if (dot(f, p) == 0) eqs.push_back(f);
    return RationalCone::from_inequalities(c.ambient_dim(), c.facets(), eqs);
}

/// Whether `face` is a face of `of` (every cone is a face of itself).
inline bool is_face(const RationalCone& face, const RationalCone& of) {
    if (face.ambient_dim() != of.ambient_dim()) throw InputError("is_face: ambient dimension mismatch");
    if (!of.contains(face)) return false;
    return minimal_face_containing(of, face.relative_interior_point()) == face;
}

// ---------------------------------------------------------------------------
// Hilbert bases

namespace detail {

/// Pulling triangulation of a pointed cone into simplicial cones, each given
/// by a subset of the extreme rays.
inline void triangulate(const RationalCone& cone, const std::vector<IntVector>& rays,
                        std::vector<std::vector<IntVector>>& out) {
    if (rays.size() == cone.dimension()) {
        out.push_back(rays);
        return;
    }
    const IntVector& apex = rays.front();
    for (const auto& f : cone.facets()) {
        if (dot(f, apex) == 0) continue;
        std::vector<IntVector> face_rays;
        for (const auto& r : rays)
            if (dot(f, r) == 0) face_rays.push_back(r);
        RationalCone face = RationalCone::from_generators(cone.ambient_dim(), face_rays);
        std::vector<std::vector<IntVector>> sub;
        triangulate(face, face_rays, sub);
        for (auto& s : sub) {
            s.push_back(apex);
            out.push_back(std::move(s));
        }
    }
}

/// Lattice points of the half-open parallelepiped spanned by the columns of
/// a nonsingular square matrix.
inline std::vector<IntVector> parallelepiped_points(const IntegerMatrix& gens, std::size_t limit) {
    const std::size_t d = gens.rows();
    SmithForm snf = smith_normal_form(gens);
    Integer volume = 1;
    for (std::size_t i = 0; i < d; ++i) volume *= snf.diagonal(i, i);
    if (volume > limit) throw LimitExceeded("hilbert_basis: parallelepiped has more than max_lattice_points points");

    std::vector<IntVector> points;
    IntVector y(d);
    for (;;) {
        IntVector x = snf.left_inverse * y;
        auto lambda = solve(gens, x);
        assert(lambda);
        RatVector frac(d);
        for (std::size_t i = 0; i < d; ++i) {
            const Rational& l = (*lambda)[i];
            Integer fl = floor_div(Integer(numerator(l)), Integer(denominator(l)));
            frac[i] = l - Rational(fl);
        }
        RatVector p(d);
        for (std::size_t r = 0; r < d; ++r)
            for (std::size_t c = 0; c < d; ++c) p[r] += Rational(gens(r, c)) * frac[c];
        IntVector q(d);
        for (std::size_t r = 0; r < d; ++r) {
            assert(denominator(p[r]) == 1);
            q[r] = Integer(numerator(p[r]));
        }
        points.push_back(std::move(q));

        std::size_t i = 0;
        while (i < d) {
            if (++y[i] < snf.diagonal(i, i)) break;
            y[i] = 0;
            ++i;
        }
        if (i == d) break;
    }
    return points;
}

}  // namespace detail

/// The minimal generating set of the monoid c ∩ Z^n for a pointed cone c.
///
/// The cone is triangulated, the lattice points of each fundamental
/// parallelepiped are collected, and reducible candidates are removed.
inline std::vector<IntVector> hilbert_basis(const RationalCone& c, std::size_t max_points = Limits{}.max_lattice_points) {
    if (!c.is_pointed()) throw InputError("hilbert_basis: cone is not pointed");
    if (c.is_zero()) return {};
    const std::size_t n = c.ambient_dim();
    const std::size_t d = c.dimension();

    // coordinates in a basis of span(c) ∩ Z^n
    std::vector<IntVector> basis = c.equations().empty() ? kernel_basis(IntegerMatrix(0, n))
                                                         : kernel_basis(IntegerMatrix::from_rows(c.equations(), n));
    IntegerMatrix b = IntegerMatrix::from_columns(basis, n);
    auto to_local = [&](const IntVector& v) {
        auto x = solve(b, v);
        assert(x);
        IntVector out(d);
        for (std::size_t i = 0; i < d; ++i) {
            assert(denominator((*x)[i]) == 1);
            out[i] = Integer(numerator((*x)[i]));
        }
        return out;
    };
    std::vector<IntVector> local_rays;
    for (const auto& r : c.rays()) local_rays.push_back(to_local(r));
    RationalCone local = RationalCone::from_generators(d, local_rays);

    std::vector<std::vector<IntVector>> simplices;
    detail::triangulate(local, local.rays(), simplices);

    std::set<IntVector> candidates(local.rays().begin(), local.rays().end());
    for (const auto& s : simplices) {
        auto pts = detail::parallelepiped_points(IntegerMatrix::from_columns(s, d), max_points);
        for (auto& p : pts)
            if (!is_zero(p)) candidates.insert(std::move(p));
    }

    std::vector<IntVector> cand(candidates.begin(), candidates.end());
    std::vector<IntVector> result;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        bool reducible = false;
        for (std::size_t j = 0; j < cand.size() && !reducible; ++j) {
            if (i == j) continue;
            IntVector diff = cand[i] - cand[j];
            if (!is_zero(diff) && local.contains(diff)) reducible = true;
        }
        if (!reducible) result.push_back(b * cand[i]);
    }
    std::sort(result.begin(), result.end());
    return result;
}

}  // namespace multiproj
