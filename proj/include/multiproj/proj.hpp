#pragma once

// The multihomogeneous spectrum Proj^D of a monomially graded polynomial
// ring, described as a (possibly non-separated) simplicial torus embedding.
//
// With M = ker(d) ⊆ Z^k the character lattice of the torus and N = Hom(M, Z),
// the chart D+(T^I) of a relevant square-free monomial T^I is the affine
// toric variety of sigma_I = cone{v_j : j not in I}, where v_j in N is the
// restriction of the j-th coordinate function to M.

#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "multiproj/cones.hpp"
#include "multiproj/grading.hpp"
#include "multiproj/lattice.hpp"

namespace multiproj {

/// M = ker d with a chosen basis, and the images v_j of the dual coordinate
/// vectors in N (coordinates with respect to the dual basis).
struct TorusLattice {
    std::size_t num_vars = 0;
    std::vector<IntVector> m_basis;     // vectors in Z^k
    std::vector<IntVector> ray_images;  // v_j in Z^rank(M), one per variable

    std::size_t dim() const { return m_basis.size(); }

    /// Exponent vector in Z^k of a character given in m_basis coordinates.
    IntVector to_exponents(const IntVector& u) const {
        IntVector e(num_vars);
        for (std::size_t i = 0; i < m_basis.size(); ++i) e = e + u[i] * m_basis[i];
        return e;
    }
};

inline TorusLattice torus_lattice(const GradedPolyRing& ring) {
    TorusLattice t;
    t.num_vars = ring.num_vars();
    t.m_basis = kernel_basis(ring.degree_map().hom());
    for (std::size_t j = 0; j < t.num_vars; ++j) {
        IntVector v(t.m_basis.size());
        for (std::size_t i = 0; i < t.m_basis.size(); ++i) v[i] = t.m_basis[i][j];
        t.ray_images.push_back(std::move(v));
    }
    return t;
}

/// sigma_I = cone{v_j : j not in I}; asserted strongly convex and simplicial.
inline RationalCone chart_cone(const TorusLattice& torus, Support support) {
    std::vector<IntVector> gens;
    for (std::size_t j = 0; j < torus.num_vars; ++j)
        if (!support.contains(j)) gens.push_back(torus.ray_images[j]);
    RationalCone sigma = RationalCone::from_generators(torus.dim(), gens);
    if (!sigma.is_simplicial() || sigma.rays().size() != gens.size())
        throw std::logic_error("chart_cone: chart cone is not simplicial");
    return sigma;
}

inline RationalCone chart_cone(const GradedPolyRing& ring, Support support) {
    if (!is_relevant(ring, support)) throw InputError("chart_cone: support " + ring.monomial_name(support) + " is not relevant");
    return chart_cone(torus_lattice(ring), support);
}

/// Generators of the monoid sigma^dual ∩ M, in m_basis coordinates: a basis
/// of the unit group (both signs) plus the Hilbert basis of the pointed
/// quotient, lifted back to M.
inline std::vector<IntVector> chart_semigroup_generators(const RationalCone& sigma, const Limits& limits = {}) {
    const std::size_t m = sigma.ambient_dim();
    RationalCone dual = RationalCone::from_inequalities(m, sigma.rays());
    const auto& units = dual.lineality();
    std::vector<IntVector> out;
    if (units.empty()) {
        out = hilbert_basis(dual, limits.max_lattice_points);
    } else {
        // Z^m = units ⊕ complement; left * units * right = [I; 0]
        SmithForm snf = smith_normal_form(IntegerMatrix::from_columns(units, m));
        const std::size_t l = units.size();
        std::vector<IntVector> image_rays;
        for (const auto& r : dual.rays()) {
            IntVector y = snf.left * r;
            image_rays.emplace_back(y.begin() + static_cast<std::ptrdiff_t>(l), y.end());
        }
        RationalCone image = RationalCone::from_generators(m - l, image_rays);
        for (const auto& h : hilbert_basis(image, limits.max_lattice_points)) {
            IntVector y(m);
            std::copy(h.begin(), h.end(), y.begin() + static_cast<std::ptrdiff_t>(l));
            out.push_back(snf.left_inverse * y);
        }
        for (const auto& u : units) {
            out.push_back(u);
            out.push_back(-u);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<IntVector> chart_semigroup_generators(const GradedPolyRing& ring, Support support,
                                                         const Limits& limits = {}) {
    return chart_semigroup_generators(chart_cone(ring, support), limits);
}

struct Chart {
    Support support;
    RationalCone degree_cone;  // C(T^I) in D ⊗ Q
    RationalCone sigma;        // sigma_I in N ⊗ Q
    std::vector<IntVector> semigroup;  // generators of sigma_I^dual ∩ M (m_basis coordinates)
};

struct ProjData {
    GradedPolyRing ring;
    TorusLattice torus;
    std::vector<Chart> charts;
    std::optional<std::size_t> dimension;  // empty for the empty spectrum
    bool separated = true;
    std::optional<std::pair<std::size_t, std::size_t>> separation_witness;  // chart indices

    bool empty() const { return charts.empty(); }

    std::optional<std::size_t> chart_index(Support s) const {
        auto it = std::lower_bound(charts.begin(), charts.end(), s,
                                   [](const Chart& c, Support x) { return c.support < x; });
        if (it == charts.end() || !(it->support == s)) return std::nullopt;
        return static_cast<std::size_t>(it - charts.begin());
    }

    /// Charts whose support has no relevant proper subset (the maximal cones).
    std::vector<std::size_t> minimal_charts() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < charts.size(); ++i) {
            bool minimal = true;
            for (std::size_t j = 0; j < charts.size() && minimal; ++j)
                if (j != i && charts[j].support.is_subset_of(charts[i].support)) minimal = false;
            if (minimal) out.push_back(i);
        }
        return out;
    }
};

/// Whether D+(f) ∪ D+(g) is separated: sigma_f ∩ sigma_g must be the cone of
/// the gluing chart D+(fg), and a face of both.
inline bool glue_separated(const RationalCone& a, const RationalCone& b, const RationalCone& glued) {
    return intersect(a, b) == glued && is_face(glued, a) && is_face(glued, b);
}

struct SeparationVerdict {
    bool separated = true;
    std::optional<std::pair<std::size_t, std::size_t>> witness;
};

/// Exact separatedness of the union of the given charts (all pairs checked).
inline SeparationVerdict is_separated_exact(const ProjData& p, const std::vector<std::size_t>& subset) {
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            const Chart& ci = p.charts.at(subset[a]);
            const Chart& cj = p.charts.at(subset[b]);
            auto glued = p.chart_index(ci.support | cj.support);
            if (!glued) throw std::logic_error("is_separated_exact: gluing chart missing");
            if (!glue_separated(ci.sigma, cj.sigma, p.charts[*glued].sigma))
                return {false, std::make_pair(subset[a], subset[b])};
        }
    return {};
}

/// Exact separatedness of the whole spectrum. Failure of the gluing condition
/// for two charts forces failure for the charts of their minimal relevant
/// subsupports, so only pairs of minimal charts are examined; the witness is
/// the first offending such pair.
inline SeparationVerdict is_separated_exact(const ProjData& p) {
    return is_separated_exact(p, p.minimal_charts());
}

/// Sufficient criterion: pairwise, the degree cones overlap in a full
/// dimensional cone.
inline bool is_separated_sufficient(const ProjData& p, const std::vector<std::size_t>& subset) {
    for (std::size_t a = 0; a < subset.size(); ++a)
        for (std::size_t b = a + 1; b < subset.size(); ++b)
            if (!has_full_dim_intersection(p.charts.at(subset[a]).degree_cone, p.charts.at(subset[b]).degree_cone))
                return false;
    return true;
}

struct ProjOptions {
    bool semigroups = true;
};

inline ProjData build_proj(const GradedPolyRing& ring, const Limits& limits = {}, ProjOptions options = {}) {
    ProjData p;
    p.ring = ring;
    p.torus = torus_lattice(ring);
    for (Support s : relevant_squarefree_monomials(ring, limits)) {
        Chart c{s, cone_of_support(ring, s), chart_cone(p.torus, s), {}};
        if (options.semigroups) c.semigroup = chart_semigroup_generators(c.sigma, limits);
        p.charts.push_back(std::move(c));
    }
    if (!p.charts.empty()) p.dimension = p.torus.dim();
    SeparationVerdict v = is_separated_exact(p);
    p.separated = v.separated;
    p.separation_witness = v.witness;
    return p;
}

/// All maximal sets of charts whose degree cones pairwise overlap in full
/// dimension; each is a separated open subset of Proj^D.
inline std::vector<std::vector<std::size_t>> maximal_separated_subcollections(const ProjData& p,
                                                                              const Limits& limits = {}) {
    const std::size_t n = p.charts.size();
    if (n > limits.max_charts)
        throw LimitExceeded("maximal_separated_subcollections: " + std::to_string(n) + " charts exceed max_charts=" +
                            std::to_string(limits.max_charts));
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            adj[i][j] = adj[j][i] = has_full_dim_intersection(p.charts[i].degree_cone, p.charts[j].degree_cone);

    // Bron-Kerbosch with pivoting
    std::vector<std::vector<std::size_t>> cliques;
    std::function<void(std::vector<std::size_t>, std::vector<std::size_t>, std::vector<std::size_t>)> expand =
        [&](std::vector<std::size_t> r, std::vector<std::size_t> cand, std::vector<std::size_t> excl) {
            if (cand.empty() && excl.empty()) {
                std::sort(r.begin(), r.end());
                cliques.push_back(std::move(r));
                return;
            }
            std::size_t pivot = cand.empty() ? excl.front() : cand.front();
            std::vector<std::size_t> todo;
            for (auto v : cand)
                if (!adj[pivot][v]) todo.push_back(v);
            for (auto v : todo) {
                std::vector<std::size_t> nc, ne;
                for (auto u : cand)
                    if (adj[v][u]) nc.push_back(u);
                for (auto u : excl)
                    if (adj[v][u]) ne.push_back(u);
                auto nr = r;
                nr.push_back(v);
                expand(std::move(nr), std::move(nc), std::move(ne));
                cand.erase(std::find(cand.begin(), cand.end(), v));
                excl.push_back(v);
            }
        };
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    if (n > 0) expand({}, all, {});
    std::sort(cliques.begin(), cliques.end());
    return cliques;
}

// ---------------------------------------------------------------------------
// Restriction to a ray of degrees

/// The N-graded subring S^d = ⊕_{n >= 0} S_{nd} together with the covering
/// hypothesis under which Proj^D S ≅ Proj S^d.
struct RayRestriction {
    DegreeVector direction;
    std::vector<IntVector> generators;  // exponent vectors of monomial generators of S^d
    IntVector generator_degrees;        // n with deg = n * direction
    GradedPolyRing ambient;             // Z-graded polynomial ring surjecting onto S^d
    std::vector<Support> covering_charts;   // minimal relevant supports with direction in int C(T^I)
    std::vector<Support> uncovered_charts;  // minimal relevant supports missing from the cover
    bool hypothesis_holds = false;
};

inline RayRestriction restrict_to_ray(const GradedPolyRing& ring, const DegreeVector& d, const Limits& limits = {}) {
    RayRestriction out;
    out.direction = reduce(ring.group(), d);
    if (is_zero(out.direction.free)) throw InputError("restrict_to_ray: direction must have a nonzero free part");
    const std::size_t k = ring.num_vars();

    // (u, n) with d(u) = n * direction, u >= 0, n >= 0
    std::vector<GroupElement> images;
    for (std::size_t i = 0; i < k; ++i) images.push_back(ring.degree_map().degree(i));
    images.push_back(GroupElement{-out.direction.free, -out.direction.torsion});
    auto basis = kernel_basis(GroupHom::from_images(k + 1, ring.group(), images));
    if (!basis.empty()) {
        IntegerMatrix b = IntegerMatrix::from_columns(basis, k + 1);
        RationalCone local = RationalCone::from_inequalities(basis.size(), b.row_vectors());
        for (const auto& h : hilbert_basis(local, limits.max_lattice_points)) {
            IntVector un = b * h;
            out.generator_degrees.push_back(un.back());
            un.pop_back();
            out.generators.push_back(std::move(un));
        }
    }
    std::vector<IntVector> degs;
    for (const auto& n : out.generator_degrees) degs.push_back(IntVector{n});
    out.ambient = GradedPolyRing::free_graded(1, degs);

    ProjData p;
    p.ring = ring;
    for (Support s : relevant_squarefree_monomials(ring, limits)) p.charts.push_back({s, {}, {}, {}});
    for (auto i : p.minimal_charts()) {
        Support s = p.charts[i].support;
        if (cone_of_support(ring, s).interior_contains(out.direction.free)) out.covering_charts.push_back(s);
        else out.uncovered_charts.push_back(s);
    }
    out.hypothesis_holds = out.uncovered_charts.empty() && !out.covering_charts.empty();
    return out;
}

}  // namespace multiproj
