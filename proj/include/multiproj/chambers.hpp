#pragma once

// Chamber decomposition of the degree cone of a monomially graded ring.
//
// For w in the degree cone, the chamber of w is the intersection of all cones
// cone{deg T_i : i in I} that contain w. On the interior of a full
// dimensional chamber the collection of relevant supports I with
// w in int C(T^I) is constant, and so is the separated model whose fan
// consists of the chart cones of these supports.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "multiproj/cones.hpp"
#include "multiproj/grading.hpp"
#include "multiproj/lattice.hpp"
#include "multiproj/proj.hpp"

namespace multiproj {

struct Chamber {
    RationalCone cone;
    IntVector sample_point;                  // sum of the extreme rays of `cone`
    std::vector<Support> relevant_supports;  // all I with sample_point in int C(T^I)
    std::vector<Support> maximal_supports;   // minimal relevant supports; one maximal fan cone each
    std::vector<RationalCone> fan;           // sigma_I for I in maximal_supports
    std::size_t num_vars = 0;
    std::size_t lattice_dim = 0;             // rank of M, the dimension of the model
};

/// A point of the degree cone that lies in no open chamber.
struct WallPoint {
    IntVector point;
    RationalCone face;                  // the intersection of all degree cones containing the point
    std::vector<std::size_t> incident;  // chambers whose closure contains the point
};

using ChamberLookup = std::variant<Chamber, WallPoint>;

struct Wall {
    std::size_t a = 0;
    std::size_t b = 0;
    RationalCone cone;
};

struct ChamberFan {
    RationalCone degree_cone;
    std::vector<Chamber> chambers;
    std::vector<Wall> walls;

    /// Index of the chamber containing `w` in its interior.
    std::optional<std::size_t> locate(const IntVector& w) const {
        for (std::size_t i = 0; i < chambers.size(); ++i)
            if (chambers[i].cone.interior_contains(w)) return i;
        return std::nullopt;
    }

    std::vector<std::size_t> incident(const IntVector& w) const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < chambers.size(); ++i)
            if (chambers[i].cone.contains(w)) out.push_back(i);
        return out;
    }

    std::vector<std::size_t> neighbors(std::size_t i) const {
        std::vector<std::size_t> out;
        for (const auto& w : walls) {
            if (w.a == i) out.push_back(w.b);
            if (w.b == i) out.push_back(w.a);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

namespace detail {

/// Precomputed data of the degree vectors shared by all chamber queries.
class ChamberContext {
  public:
    ChamberContext(const GradedPolyRing& ring, const Limits& limits) : ring_(ring) {
        const std::size_t k = ring.num_vars(), r = ring.rank();
        if (r > limits.max_chamber_rank)
            throw LimitExceeded("chambers: rank " + std::to_string(r) + " exceeds max_chamber_rank=" +
                                std::to_string(limits.max_chamber_rank));
        if (k > limits.max_chamber_vars)
            throw LimitExceeded("chambers: " + std::to_string(k) + " variables exceed max_chamber_vars=" +
                                std::to_string(limits.max_chamber_vars));
        degrees_ = ring.free_degrees();
        degree_cone_ = RationalCone::from_generators(r, degrees_);
        torus_ = torus_lattice(ring);

        const std::uint64_t end = std::uint64_t{1} << k;
        std::set<IntVector> normals;
        for (std::uint64_t bits = 0; bits < end; ++bits) {
            Support s(bits);
            const std::size_t size = s.size();
            if (size + 1 < r || size > r) continue;
            std::vector<IntVector> cols = columns(s);
            if (multiproj::rank(std::span<const IntVector>(cols)) != size) continue;
            if (size == r) bases_.push_back({s, simplicial_facets(cols)});
            else normals.insert(hyperplane_normal(cols));
        }
        hyperplanes_.assign(normals.begin(), normals.end());
    }

    const GradedPolyRing& ring() const { return ring_; }
    const RationalCone& degree_cone() const { return degree_cone_; }
    const TorusLattice& torus() const { return torus_; }
    const std::vector<IntVector>& hyperplanes() const { return hyperplanes_; }
    std::size_t rank() const { return ring_.rank(); }

    /// Bases B with w in cone{deg T_i : i in B}.
    std::vector<Support> bases_containing(const IntVector& w) const {
        std::vector<Support> out;
        for (const auto& b : bases_)
            if (std::all_of(b.facets.begin(), b.facets.end(), [&](const IntVector& f) { return dot(f, w) >= 0; }))
                out.push_back(b.support);
        return out;
    }

    /// Whether w lies in a lower dimensional cone spanned by degree vectors.
    bool on_degenerate_cone(const IntVector& w) const {
        if (std::none_of(hyperplanes_.begin(), hyperplanes_.end(), [&](const IntVector& h) { return dot(h, w) == 0; }))
            return false;
        return !degenerate_cones_containing(w).empty();
    }

    /// The intersection of all cones spanned by degree vectors that contain w.
    RationalCone chamber_cone(const IntVector& w) const {
        std::vector<IntVector> ineqs, eqs;
        for (const auto& b : bases_)
            if (std::all_of(b.facets.begin(), b.facets.end(), [&](const IntVector& f) { return dot(f, w) >= 0; }))
                ineqs.insert(ineqs.end(), b.facets.begin(), b.facets.end());
        for (const auto& c : degenerate_cones_containing(w)) {
            ineqs.insert(ineqs.end(), c.facets().begin(), c.facets().end());
            eqs.insert(eqs.end(), c.equations().begin(), c.equations().end());
        }
        if (ineqs.empty() && eqs.empty()) return RationalCone::zero(rank());
        std::sort(ineqs.begin(), ineqs.end());
        ineqs.erase(std::unique(ineqs.begin(), ineqs.end()), ineqs.end());
        return RationalCone::from_inequalities(rank(), ineqs, eqs);
    }

    /// The chamber of a point known to lie in no lower dimensional degree cone.
    Chamber generic_chamber(const IntVector& w) const {
        Chamber c;
        c.cone = chamber_cone(w);
        c.sample_point = c.cone.relative_interior_point();
        c.num_vars = ring_.num_vars();
        c.lattice_dim = torus_.dim();
        c.maximal_supports = bases_containing(w);
        std::sort(c.maximal_supports.begin(), c.maximal_supports.end());
        const std::uint64_t end = std::uint64_t{1} << c.num_vars;
        for (std::uint64_t bits = 0; bits < end; ++bits) {
            Support s(bits);
            if (std::any_of(c.maximal_supports.begin(), c.maximal_supports.end(),
                            [&](Support b) { return b.is_subset_of(s); }))
                c.relevant_supports.push_back(s);
        }
        std::sort(c.relevant_supports.begin(), c.relevant_supports.end());
        for (Support b : c.maximal_supports) c.fan.push_back(chart_cone(torus_, b));
        return c;
    }

  private:
    struct Basis {
        Support support;
        std::vector<IntVector> facets;  // inward normals of the simplicial cone
    };

    std::vector<IntVector> columns(Support s) const {
        std::vector<IntVector> out;
        for (auto i : s.indices()) out.push_back(degrees_[i]);
        return out;
    }

    /// Rows of the inverse of the matrix with the given columns, cleared of denominators.
    static std::vector<IntVector> simplicial_facets(const std::vector<IntVector>& cols) {
        const std::size_t r = cols.size();
        IntegerMatrix a = IntegerMatrix::from_columns(cols, r);
        std::vector<RatVector> inverse_columns;
        for (std::size_t j = 0; j < r; ++j) {
            IntVector e(r);
            e[j] = 1;
            inverse_columns.push_back(*solve(a, e));
        }
        std::vector<IntVector> out;
        for (std::size_t i = 0; i < r; ++i) {
            RatVector row(r);
            for (std::size_t j = 0; j < r; ++j) row[j] = inverse_columns[j][i];
            out.push_back(primitive(clear_denominators(row)));
        }
        return out;
    }

    /// Primitive normal of the hyperplane spanned by r - 1 independent vectors,
    /// with positive leading entry.
    IntVector hyperplane_normal(const std::vector<IntVector>& cols) const {
        const std::size_t r = rank();
        if (cols.empty()) {
            IntVector n(r);
            n[0] = 1;
            return n;
        }
        std::vector<IntVector> ker = kernel_basis(IntegerMatrix::from_rows(cols, r));
        IntVector n = primitive(ker.at(0));
        for (const auto& x : n) {
            if (x == 0) continue;
            if (x < 0) n = -n;
            break;
        }
        return n;
    }

    std::vector<RationalCone> degenerate_cones_containing(const IntVector& w) const {
        std::vector<RationalCone> out;
        const std::size_t r = rank();
        const std::uint64_t end = std::uint64_t{1} << ring_.num_vars();
        for (std::uint64_t bits = 0; bits < end; ++bits) {
            Support s(bits);
            if (s.size() >= r) continue;
            std::vector<IntVector> cols = columns(s);
            if (multiproj::rank(std::span<const IntVector>(cols)) != s.size()) continue;
            if (s.empty()) {
                if (is_zero(w)) out.push_back(RationalCone::zero(r));
                continue;
            }
            auto coeffs = solve(IntegerMatrix::from_columns(cols, r), w);
            if (!coeffs) continue;
            if (std::any_of(coeffs->begin(), coeffs->end(), [](const Rational& x) { return x < 0; })) continue;
            out.push_back(RationalCone::from_generators(r, cols));
        }
        return out;
    }

    GradedPolyRing ring_;
    std::vector<IntVector> degrees_;
    RationalCone degree_cone_;
    TorusLattice torus_;
    std::vector<Basis> bases_;
    std::vector<IntVector> hyperplanes_;
};

/// Full dimensional cells of the arrangement cut out of `cone`.
inline std::vector<RationalCone> arrangement_cells(const RationalCone& cone, const std::vector<IntVector>& hyperplanes) {
    std::vector<RationalCone> cells{cone};
    for (const auto& h : hyperplanes) {
        std::vector<RationalCone> next;
        for (auto& cell : cells) {
            bool pos = false, neg = false;
            for (const auto& g : cell.rays()) {
                Integer s = dot(h, g);
                pos = pos || s > 0;
                neg = neg || s < 0;
            }
            for (const auto& l : cell.lineality())
                if (dot(h, l) != 0) pos = neg = true;
            if (!(pos && neg)) {
                next.push_back(std::move(cell));
                continue;
            }
            for (int sign : {1, -1}) {
                std::vector<IntVector> ineqs = cell.facets();
                ineqs.push_back(Integer(sign) * h);
                next.push_back(RationalCone::from_inequalities(cell.ambient_dim(), ineqs, cell.equations()));
            }
        }
        cells = std::move(next);
    }
    return cells;
}

}  // namespace detail

/// The chamber fan: arrangement cells, merged into the maximal regions on
/// which the chamber of a point is constant.
inline ChamberFan enumerate_chambers(const GradedPolyRing& ring, const Limits& limits = {}) {
    detail::ChamberContext ctx(ring, limits);
    if (!ctx.degree_cone().is_full_dimensional())
        throw InputError("enumerate_chambers: the degree cone is not full dimensional");
    ChamberFan fan;
    fan.degree_cone = ctx.degree_cone();
    std::map<RationalCone, Chamber> unique;
    for (const auto& cell : detail::arrangement_cells(ctx.degree_cone(), ctx.hyperplanes())) {
        IntVector w = cell.relative_interior_point();
        for (const auto& l : cell.lineality()) w = w + l;
        RationalCone q = ctx.chamber_cone(w);
        if (unique.count(q)) continue;
        unique.emplace(q, ctx.generic_chamber(w));
    }
    for (auto& [cone, chamber] : unique) fan.chambers.push_back(std::move(chamber));
    const std::size_t r = ring.rank();
    for (std::size_t a = 0; a < fan.chambers.size(); ++a)
        for (std::size_t b = a + 1; b < fan.chambers.size(); ++b) {
            RationalCone shared = intersect(fan.chambers[a].cone, fan.chambers[b].cone);
            if (shared.dimension() + 1 == r) fan.walls.push_back({a, b, std::move(shared)});
        }
    return fan;
}

/// The chamber whose interior contains w, or the wall point data when w lies
/// on the boundary of every chamber containing it.
inline ChamberLookup chamber_of(const GradedPolyRing& ring, const IntVector& w, const Limits& limits = {}) {
    detail::ChamberContext ctx(ring, limits);
    if (w.size() != ring.rank()) throw InputError("chamber_of: point has the wrong dimension");
    if (!ctx.degree_cone().contains(w)) throw InputError("chamber_of: point is outside the degree cone");
    if (!ctx.on_degenerate_cone(w)) return ctx.generic_chamber(w);
    WallPoint wall{w, ctx.chamber_cone(w), {}};
    wall.incident = enumerate_chambers(ring, limits).incident(w);
    return wall;
}

/// Whether the cones form a fan: pairwise intersections are faces of both.
inline bool satisfies_fan_axioms(const std::vector<RationalCone>& cones) {
    for (std::size_t a = 0; a < cones.size(); ++a)
        for (std::size_t b = a + 1; b < cones.size(); ++b) {
            RationalCone shared = intersect(cones[a], cones[b]);
            if (!is_face(shared, cones[a]) || !is_face(shared, cones[b])) return false;
        }
    return true;
}

/// Whether a fan of full dimensional simplicial cones covers the whole space:
/// every ridge lies in exactly two maximal cones.
inline bool is_complete_fan(const std::vector<RationalCone>& cones, std::size_t dim) {
    if (cones.empty()) return false;
    if (dim == 0) return true;
    std::map<std::vector<IntVector>, std::size_t> ridges;
    for (const auto& c : cones) {
        if (!c.is_simplicial() || c.dimension() != dim) return false;
        const auto& rays = c.rays();
        for (std::size_t skip = 0; skip < rays.size(); ++skip) {
            std::vector<IntVector> key;
            for (std::size_t i = 0; i < rays.size(); ++i)
                if (i != skip) key.push_back(rays[i]);
            ++ridges[key];
        }
    }
    return std::all_of(ridges.begin(), ridges.end(), [](const auto& e) { return e.second == 2; });
}

struct ChamberModelSummary {
    std::size_t dimension = 0;
    bool complete = false;
    bool simplicial = true;
    std::size_t maximal_cones = 0;
    std::vector<std::size_t> ray_variables;         // variables whose ray occurs in the fan
    std::vector<std::size_t> contracted_variables;  // variables whose ray is absent
};

inline ChamberModelSummary chamber_model_summary(const Chamber& c) {
    ChamberModelSummary s;
    s.dimension = c.lattice_dim;
    s.complete = is_complete_fan(c.fan, c.lattice_dim);
    s.simplicial = std::all_of(c.fan.begin(), c.fan.end(), [](const RationalCone& x) { return x.is_simplicial(); });
    s.maximal_cones = c.fan.size();
    for (std::size_t j = 0; j < c.num_vars; ++j) {
        bool everywhere = std::all_of(c.maximal_supports.begin(), c.maximal_supports.end(),
                                      [&](Support b) { return b.contains(j); });
        (everywhere ? s.contracted_variables : s.ray_variables).push_back(j);
    }
    return s;
}

struct EmbeddingReport {
    FgAbelianGroup picard_group;       // Z^k / M
    bool picard_matches_grading = false;  // Z^k / M ≅ D, i.e. the degree map is surjective
    RationalCone effective_cone;
    ChamberFan fan;
    std::optional<std::size_t> ample_chamber;
    std::vector<ChamberModelSummary> models;
    bool all_gen = false;  // caller's assertion; without it the chamber to model claims are conditional
};

inline EmbeddingReport embedding_report(const GradedPolyRing& ring, const std::optional<IntVector>& ample_class,
                                        bool all_gen, const Limits& limits = {}) {
    EmbeddingReport rep;
    const TorusLattice torus = torus_lattice(ring);
    rep.picard_group = cokernel(IntegerMatrix::from_columns(torus.m_basis, ring.num_vars())).group;
    rep.picard_matches_grading = ring.degree_map().hom().is_surjective();
    rep.fan = enumerate_chambers(ring, limits);
    rep.effective_cone = rep.fan.degree_cone;
    for (const auto& c : rep.fan.chambers) rep.models.push_back(chamber_model_summary(c));
    rep.all_gen = all_gen;
    if (ample_class) {
        if (ample_class->size() != ring.rank()) throw InputError("ample class has the wrong dimension");
        if (!rep.effective_cone.contains(*ample_class)) throw InputError("ample class lies outside the degree cone");
        rep.ample_chamber = rep.fan.locate(*ample_class);
        if (!rep.ample_chamber) {
            std::string list;
            for (auto i : rep.fan.incident(*ample_class)) list += (list.empty() ? "" : ", ") + std::to_string(i);
            throw InputError("ample class lies on a wall between chambers " + list);
        }
    }
    return rep;
}

/// How the chambers of a regraded problem relate to the original ones.
struct RefinementEntry {
    std::size_t chamber = 0;            // chamber of the regraded problem
    std::vector<std::size_t> sources;   // original chambers whose image meets it full dimensionally
    bool images_inside = false;         // every such image lies inside the chamber
};

inline RationalCone image_cone(const GroupHom& delta, const RationalCone& c) {
    const IntegerMatrix m = delta.free_matrix();
    std::vector<IntVector> gens;
    for (const auto& g : c.generators()) gens.push_back(m * g);
    return RationalCone::from_generators(m.rows(), gens);
}

inline std::vector<RefinementEntry> refinement_relation(const ChamberFan& original, const ChamberFan& regraded,
                                                        const GroupHom& delta) {
    std::vector<RationalCone> images;
    for (const auto& c : original.chambers) images.push_back(image_cone(delta, c.cone));
    std::vector<RefinementEntry> out;
    for (std::size_t j = 0; j < regraded.chambers.size(); ++j) {
        RefinementEntry e{j, {}, true};
        const RationalCone& target = regraded.chambers[j].cone;
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (!has_full_dim_intersection(images[i], target)) continue;
            e.sources.push_back(i);
            e.images_inside = e.images_inside && target.contains(images[i]);
        }
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace multiproj
