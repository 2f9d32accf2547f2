#pragma once

// Polynomial rings k[T_1, ..., T_k] graded by a finitely generated abelian
// group D through a degree map Z^k -> D, and relevance of monomials.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "multiproj/cones.hpp"
#include "multiproj/lattice.hpp"

namespace multiproj {

using DegreeVector = GroupElement;

/// A subset of the variables {0, ..., k-1}; identifies a square-free monomial.
class Support {
  public:
    static constexpr std::size_t max_vars = 64;

    Support() = default;
    explicit Support(std::uint64_t bits) : bits_(bits) {}

    static Support of(std::initializer_list<std::size_t> indices) {
        Support s;
        for (auto i : indices) s = s.with(i);
        return s;
    }
    static Support all(std::size_t k) { return Support(k >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1); }

    std::uint64_t bits() const { return bits_; }
    bool contains(std::size_t i) const { return (bits_ >> i) & 1u; }
    bool empty() const { return bits_ == 0; }
    std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
    Support with(std::size_t i) const { return Support(bits_ | (std::uint64_t{1} << i)); }
    bool is_subset_of(Support other) const { return (bits_ & ~other.bits_) == 0; }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
        return out;
    }

    friend Support operator|(Support a, Support b) { return Support(a.bits_ | b.bits_); }
    friend Support operator&(Support a, Support b) { return Support(a.bits_ & b.bits_); }
    friend bool operator==(Support a, Support b) { return a.bits_ == b.bits_; }
    /// Ordered by cardinality, then lexicographically by index list.
    friend bool operator<(Support a, Support b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.indices() < b.indices();
    }

  private:
    std::uint64_t bits_ = 0;
};

struct Monomial {
    IntVector exponents;

    static Monomial from(std::initializer_list<long long> e) { return {IntVector(e.begin(), e.end())}; }

    static Monomial squarefree(Support s, std::size_t k) {
        IntVector e(k);
        for (auto i : s.indices()) e[i] = 1;
        return {std::move(e)};
    }

    Support support() const {
        Support s;
        for (std::size_t i = 0; i < exponents.size(); ++i)
            if (exponents[i] != 0) s = s.with(i);
        return s;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// The grading d : Z^k -> D; column i is deg(T_i).
class DegreeMap {
  public:
    DegreeMap() = default;
    explicit DegreeMap(GroupHom hom) : hom_(std::move(hom)) {
        if (!hom_.source().is_free()) throw InputError("DegreeMap: source must be a free group Z^k");
        if (hom_.source().free_rank() > Support::max_vars) throw LimitExceeded("DegreeMap: at most 64 variables");
    }

    static DegreeMap from_degrees(const FgAbelianGroup& group, std::span<const DegreeVector> degrees) {
        return DegreeMap(GroupHom::from_images(degrees.size(), group, degrees));
    }

    /// Convenience for torsion-free D = Z^r: one free vector per variable.
    static DegreeMap from_free_degrees(std::size_t r, std::span<const IntVector> degrees) {
        std::vector<DegreeVector> d;
        for (const auto& x : degrees) {
            if (x.size() != r) throw InputError("DegreeMap: degree vector has wrong dimension");
            d.push_back({x, {}});
        }
        return from_degrees(FgAbelianGroup::free(r), d);
    }

    const GroupHom& hom() const { return hom_; }
    const FgAbelianGroup& group() const { return hom_.target(); }
    std::size_t num_vars() const { return hom_.source().free_rank(); }
    DegreeVector degree(std::size_t i) const { return hom_.image_of_generator(i); }
    /// r x k matrix of free parts.
    IntegerMatrix free_matrix() const { return hom_.free_matrix(); }
    std::vector<IntVector> free_degrees() const { return free_matrix().column_vectors(); }

    friend bool operator==(const DegreeMap&, const DegreeMap&) = default;

  private:
    GroupHom hom_;
};

class GradedPolyRing {
  public:
    GradedPolyRing() = default;
    explicit GradedPolyRing(DegreeMap degrees, std::vector<std::string> names = {})
        : degrees_(std::move(degrees)), names_(std::move(names)) {
        const std::size_t k = degrees_.num_vars();
        if (names_.empty())
            for (std::size_t i = 0; i < k; ++i) names_.push_back("T" + std::to_string(i + 1));
        if (names_.size() != k) throw InputError("GradedPolyRing: variable count does not match degree count");
        for (std::size_t i = 0; i < k; ++i) {
            if (names_[i].empty()) throw InputError("GradedPolyRing: empty variable name");
            for (std::size_t j = 0; j < i; ++j)
                if (names_[i] == names_[j]) throw InputError("GradedPolyRing: duplicate variable name " + names_[i]);
        }
        free_degrees_ = degrees_.free_degrees();
    }

    static GradedPolyRing free_graded(std::size_t r, std::span<const IntVector> degrees) {
        return GradedPolyRing(DegreeMap::from_free_degrees(r, degrees));
    }

    std::size_t num_vars() const { return degrees_.num_vars(); }
    const std::vector<std::string>& var_names() const { return names_; }
    const FgAbelianGroup& group() const { return degrees_.group(); }
    std::size_t rank() const { return group().free_rank(); }
    const DegreeMap& degree_map() const { return degrees_; }
    /// Free parts of deg(T_i), i.e. the images in D ⊗ R.
    const std::vector<IntVector>& free_degrees() const { return free_degrees_; }

    std::string monomial_name(Support s) const {
        if (s.empty()) return "1";
        std::string out;
        for (auto i : s.indices()) {
            if (!out.empty()) out += '*';
            out += names_[i];
        }
        return out;
    }

    friend bool operator==(const GradedPolyRing& a, const GradedPolyRing& b) {
        return a.degrees_ == b.degrees_ && a.names_ == b.names_;
    }

  private:
    DegreeMap degrees_;
    std::vector<std::string> names_;
    std::vector<IntVector> free_degrees_;
};

inline void check_monomial(const GradedPolyRing& ring, const Monomial& m) {
    if (m.exponents.size() != ring.num_vars()) throw InputError("monomial has the wrong number of exponents");
    for (const auto& e : m.exponents)
        if (e < 0) throw InputError("monomial exponents must be nonnegative");
}

inline DegreeVector degree_of(const GradedPolyRing& ring, const Monomial& m) {
    check_monomial(ring, m);
    return ring.degree_map().hom().apply(GroupElement{m.exponents, {}});
}

/// cone{deg(T_i) : i in s} in D ⊗ Q. For a monomial f with support s this is
/// the cone spanned by the degrees of the homogeneous divisors of powers of f.
inline RationalCone cone_of_support(const GradedPolyRing& ring, Support s) {
    std::vector<IntVector> gens;
    for (auto i : s.indices()) gens.push_back(ring.free_degrees().at(i));
    return RationalCone::from_generators(ring.rank(), gens);
}

inline RationalCone cone_of_monomial(const GradedPolyRing& ring, const Monomial& m) {
    check_monomial(ring, m);
    return cone_of_support(ring, m.support());
}

/// The degrees of the support variables generate a finite index subgroup.
inline bool is_relevant(const GradedPolyRing& ring, Support s) {
    std::vector<IntVector> gens;
    for (auto i : s.indices()) gens.push_back(ring.free_degrees().at(i));
    return is_finite_index_subgroup(gens, ring.group());
}

inline bool is_relevant(const GradedPolyRing& ring, const Monomial& m) {
    check_monomial(ring, m);
    return is_relevant(ring, m.support());
}

/// All relevant square-free monomials, as supports in canonical order.
inline std::vector<Support> relevant_squarefree_monomials(const GradedPolyRing& ring, const Limits& limits = {}) {
    const std::size_t k = ring.num_vars();
    if (k > limits.max_vars)
        throw LimitExceeded("relevant_squarefree_monomials: " + std::to_string(k) + " variables exceed max_vars=" +
                            std::to_string(limits.max_vars));
    std::vector<Support> out;
    const std::uint64_t end = std::uint64_t{1} << k;
    for (std::uint64_t bits = 0; bits < end; ++bits)
        if (is_relevant(ring, Support(bits))) out.push_back(Support(bits));
    std::sort(out.begin(), out.end());
    return out;
}

/// The same ring graded through delta ∘ d.
inline GradedPolyRing regrade(const GradedPolyRing& ring, const GroupHom& delta) {
    if (!(delta.source() == ring.group())) throw InputError("regrade: homomorphism source is not the grading group");
    return GradedPolyRing(DegreeMap(delta.compose_after(ring.degree_map().hom())), ring.var_names());
}

}  // namespace multiproj
