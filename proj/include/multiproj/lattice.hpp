#pragma once

// Exact integer linear algebra: Smith and Hermite forms, kernels, cokernels,
// finitely generated abelian groups and their homomorphisms.

#include <cassert>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "multiproj/common.hpp"

namespace multiproj {

class IntegerMatrix {
  public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static IntegerMatrix identity(std::size_t n) {
        IntegerMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Each inner vector becomes a row; `cols` is needed when `rows` is empty.
    static IntegerMatrix from_rows(std::span<const IntVector> rows, std::size_t cols) {
        IntegerMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw InputError("IntegerMatrix: ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    static IntegerMatrix from_columns(std::span<const IntVector> columns, std::size_t rows) {
        IntegerMatrix m(rows, columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if (columns[j].size() != rows) throw InputError("IntegerMatrix: ragged columns");
            for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntVector row(std::size_t i) const {
        return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                         data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    IntVector column(std::size_t j) const {
        IntVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    std::vector<IntVector> row_vectors() const {
        std::vector<IntVector> out;
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    std::vector<IntVector> column_vectors() const {
        std::vector<IntVector> out;
        for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
        return out;
    }

    IntegerMatrix transpose() const {
        IntegerMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    IntVector operator*(const IntVector& v) const {
        assert(v.size() == cols_);
        IntVector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
        assert(a.cols_ == b.rows_);
        IntegerMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        return c;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
    }

    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

    friend std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m) {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? "; " : "");
            for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
        }
        return os << ']';
    }

    // Elementary operations, used by the normal form routines.
    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }
    /// row[dst] += factor * row[src]
    void add_row(std::size_t dst, std::size_t src, const Integer& factor) {
        if (factor == 0) return;
        for (std::size_t j = 0; j < cols_; ++j) (*this)(dst, j) += factor * (*this)(src, j);
    }
    /// col[dst] += factor * col[src]
    void add_col(std::size_t dst, std::size_t src, const Integer& factor) {
        if (factor == 0) return;
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, dst) += factor * (*this)(i, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = -(*this)(r, j);
    }
    void negate_col(std::size_t c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = -(*this)(i, c);
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

/// left * input * right == diagonal, with left and right unimodular.
struct SmithForm {
    IntegerMatrix left;
    IntegerMatrix left_inverse;
    IntegerMatrix diagonal;
    IntegerMatrix right;
    std::size_t rank = 0;

    /// Nonzero diagonal entries d_1 | d_2 | ... | d_rank.
    IntVector invariant_factors() const {
        IntVector f;
        for (std::size_t i = 0; i < rank; ++i) f.push_back(diagonal(i, i));
        return f;
    }
};

/// Smith normal form by elementary operations. Pivots are chosen as the
/// entry of smallest absolute value, searching rows before columns.
inline SmithForm smith_normal_form(const IntegerMatrix& m) {
    const std::size_t nr = m.rows();
    const std::size_t nc = m.cols();
    SmithForm out{IntegerMatrix::identity(nr), IntegerMatrix::identity(nr), m, IntegerMatrix::identity(nc), 0};
    IntegerMatrix& s = out.diagonal;
    IntegerMatrix& u = out.left;
    IntegerMatrix& uinv = out.left_inverse;
    IntegerMatrix& v = out.right;

    auto row_swap = [&](std::size_t a, std::size_t b) {
        s.swap_rows(a, b);
        u.swap_rows(a, b);
        uinv.swap_cols(a, b);
    };
    auto row_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
        s.add_row(dst, src, f);
        u.add_row(dst, src, f);
        uinv.add_col(src, dst, -f);
    };
    auto col_swap = [&](std::size_t a, std::size_t b) {
        s.swap_cols(a, b);
        v.swap_cols(a, b);
    };
    auto col_add = [&](std::size_t dst, std::size_t src, const Integer& f) {
        s.add_col(dst, src, f);
        v.add_col(dst, src, f);
    };

    const std::size_t steps = std::min(nr, nc);
    for (std::size_t t = 0; t < steps; ++t) {
        // global smallest pivot in the trailing block
        std::optional<std::pair<std::size_t, std::size_t>> best;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j)
                if (s(i, j) != 0 && (!best || detail::abs(s(i, j)) < detail::abs(s(best->first, best->second))))
                    best = std::make_pair(i, j);
        if (!best) break;
        row_swap(t, best->first);
        col_swap(t, best->second);

        for (;;) {
            // bring the smallest nonzero entry of row t / column t to the pivot
            std::size_t bi = t, bj = t;
            Integer bval = detail::abs(s(t, t));
            for (std::size_t i = t + 1; i < nr; ++i)
                if (s(i, t) != 0 && (bval == 0 || detail::abs(s(i, t)) < bval)) {
                    bval = detail::abs(s(i, t));
                    bi = i;
                    bj = t;
                }
            for (std::size_t j = t + 1; j < nc; ++j)
                if (s(t, j) != 0 && (bval == 0 || detail::abs(s(t, j)) < bval)) {
                    bval = detail::abs(s(t, j));
                    bi = t;
                    bj = j;
                }
            row_swap(t, bi);
            col_swap(t, bj);

            bool clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (s(i, t) == 0) continue;
                row_add(i, t, -Integer(s(i, t) / s(t, t)));
                if (s(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (s(t, j) == 0) continue;
                col_add(j, t, -Integer(s(t, j) / s(t, t)));
                if (s(t, j) != 0) clean = false;
            }
            if (!clean) continue;

            // divisibility: pull a non-divisible row into row t and retry
            bool divisible = true;
            for (std::size_t i = t + 1; i < nr && divisible; ++i)
                for (std::size_t j = t + 1; j < nc; ++j)
                    if (s(i, j) % s(t, t) != 0) {
                        row_add(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible) break;
        }
        if (s(t, t) < 0) {
            s.negate_row(t);
            u.negate_row(t);
            uinv.negate_col(t);
        }
        out.rank = t + 1;
    }
    return out;
}

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(const IntegerMatrix& m) {
    if (m.rows() != m.cols()) throw InputError("determinant: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntegerMatrix a = m;
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

/// Rank over Q of a list of equal-length vectors.
inline std::size_t rank(std::span<const IntVector> vectors) {
    if (vectors.empty()) return 0;
    const std::size_t n = vectors.front().size();
    std::vector<IntVector> rows(vectors.begin(), vectors.end());
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        for (std::size_t i = r + 1; i < rows.size(); ++i) {
            if (rows[i][c] == 0) continue;
            Integer a = rows[r][c], b = rows[i][c];
            for (std::size_t j = c; j < n; ++j) rows[i][j] = rows[i][j] * a - rows[r][j] * b;
            rows[i] = primitive(std::move(rows[i]));
        }
        ++r;
    }
    return r;
}

inline std::size_t rank(const IntegerMatrix& m) { return rank(m.row_vectors()); }

/// Some rational solution x of a * x == b, if one exists.
inline std::optional<RatVector> solve(const IntegerMatrix& a, const IntVector& b) {
    const std::size_t nr = a.rows(), nc = a.cols();
    std::vector<RatVector> rows(nr, RatVector(nc + 1));
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) rows[i][j] = Rational(a(i, j));
        rows[i][nc] = Rational(b[i]);
    }
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t p = r;
        while (p < nr && rows[p][c] == 0) ++p;
        if (p == nr) continue;
        std::swap(rows[p], rows[r]);
        Rational inv = 1 / rows[r][c];
        for (std::size_t j = c; j <= nc; ++j) rows[r][j] *= inv;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rational f = rows[i][c];
            for (std::size_t j = c; j <= nc; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    for (std::size_t i = r; i < nr; ++i)
        if (rows[i][nc] != 0) return std::nullopt;
    RatVector x(nc);
    for (std::size_t i = 0; i < r; ++i) x[pivots[i]] = rows[i][nc];
    return x;
}

/// Canonical basis of the lattice spanned by `vectors`: the row Hermite normal
/// form (positive pivots, entries above a pivot reduced into [0, pivot)),
/// with zero rows dropped.
inline std::vector<IntVector> hermite_basis(std::span<const IntVector> vectors, std::size_t dim) {
    std::vector<IntVector> rows;
    for (const auto& v : vectors)
        if (!is_zero(v)) rows.push_back(v);
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < rows.size(); ++c) {
        for (;;) {
            std::optional<std::size_t> best;
            for (std::size_t i = r; i < rows.size(); ++i)
                if (rows[i][c] != 0 && (!best || detail::abs(rows[i][c]) < detail::abs(rows[*best][c]))) best = i;
            if (!best) break;
            std::swap(rows[r], rows[*best]);
            bool single = true;
            for (std::size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][c] == 0) continue;
                Integer q = rows[i][c] / rows[r][c];
                for (std::size_t j = c; j < dim; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][c] != 0) single = false;
            }
            if (single) break;
        }
        if (r >= rows.size() || rows[r][c] == 0) continue;
        if (rows[r][c] < 0) rows[r] = -rows[r];
        for (std::size_t i = 0; i < r; ++i) {
            Integer q = detail::floor_div(rows[i][c], rows[r][c]);
            if (q != 0)
                for (std::size_t j = c; j < dim; ++j) rows[i][j] -= q * rows[r][j];
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

/// Z-basis of {v : m v = 0}, in Hermite normal form.
inline std::vector<IntVector> kernel_basis(const IntegerMatrix& m) {
    SmithForm snf = smith_normal_form(m);
    std::vector<IntVector> basis;
    for (std::size_t j = snf.rank; j < m.cols(); ++j) basis.push_back(snf.right.column(j));
    return hermite_basis(basis, m.cols());
}

/// Canonical basis of span_Q(vectors) ∩ Z^dim.
inline std::vector<IntVector> saturation(std::span<const IntVector> vectors, std::size_t dim) {
    auto perp = kernel_basis(IntegerMatrix::from_rows(vectors, dim));
    return kernel_basis(IntegerMatrix::from_rows(perp, dim));
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups

/// Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_s with d_1 | d_2 | ... and every d_i >= 2.
class FgAbelianGroup {
  public:
    FgAbelianGroup() = default;
    explicit FgAbelianGroup(std::size_t free_rank, IntVector torsion = {})
        : free_rank_(free_rank), torsion_(std::move(torsion)) {
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            if (torsion_[i] < 2) throw InputError("FgAbelianGroup: invariant factors must be >= 2");
            if (i > 0 && torsion_[i] % torsion_[i - 1] != 0)
                throw InputError("FgAbelianGroup: invariant factors must form a divisibility chain");
        }
    }

    static FgAbelianGroup free(std::size_t rank) { return FgAbelianGroup(rank); }

    std::size_t free_rank() const { return free_rank_; }
    const IntVector& torsion() const { return torsion_; }
    std::size_t num_generators() const { return free_rank_ + torsion_.size(); }
    bool is_free() const { return torsion_.empty(); }
    bool is_trivial() const { return free_rank_ == 0 && torsion_.empty(); }

    Integer torsion_order() const {
        Integer o = 1;
        for (const auto& d : torsion_) o *= d;
        return o;
    }

    friend bool operator==(const FgAbelianGroup&, const FgAbelianGroup&) = default;

  private:
    std::size_t free_rank_ = 0;
    IntVector torsion_;
};

/// An element of a FgAbelianGroup: free coordinates plus torsion residues.
struct GroupElement {
    IntVector free;
    IntVector torsion;

    static GroupElement zero(const FgAbelianGroup& g) {
        return {IntVector(g.free_rank()), IntVector(g.torsion().size())};
    }

    /// Flattened coordinates (free first, then torsion).
    IntVector coordinates() const {
        IntVector c = free;
        c.insert(c.end(), torsion.begin(), torsion.end());
        return c;
    }

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Reduces torsion residues into [0, d_i); throws on shape mismatch.
inline GroupElement reduce(const FgAbelianGroup& g, GroupElement e) {
    if (e.free.size() != g.free_rank() || e.torsion.size() != g.torsion().size())
        throw InputError("group element does not match the group's shape");
    for (std::size_t i = 0; i < e.torsion.size(); ++i) e.torsion[i] = detail::floor_mod(e.torsion[i], g.torsion()[i]);
    return e;
}

/// A homomorphism given on the generators of the source (free generators
/// first, then torsion generators). `free_block` is target.free_rank x
/// source.num_generators; `torsion_block` is target torsion count x
/// source.num_generators, reduced modulo the target invariant factors.
class GroupHom {
  public:
    GroupHom() = default;
    GroupHom(FgAbelianGroup source, FgAbelianGroup target, IntegerMatrix free_block, IntegerMatrix torsion_block)
        : source_(std::move(source)), target_(std::move(target)), free_(std::move(free_block)),
          torsion_(std::move(torsion_block)) {
        const std::size_t n = source_.num_generators();
        if (free_.rows() != target_.free_rank() || free_.cols() != n || torsion_.rows() != target_.torsion().size() ||
            torsion_.cols() != n)
            throw InputError("GroupHom: matrix shape does not match source/target groups");
        for (std::size_t i = 0; i < torsion_.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) torsion_(i, j) = detail::floor_mod(torsion_(i, j), target_.torsion()[i]);
        // torsion generators must land on elements killed by their order
        for (std::size_t t = 0; t < source_.torsion().size(); ++t) {
            const std::size_t j = source_.free_rank() + t;
            const Integer& order = source_.torsion()[t];
            for (std::size_t i = 0; i < free_.rows(); ++i)
                if (free_(i, j) != 0) throw InputError("GroupHom: torsion generator mapped to a non-torsion element");
            for (std::size_t i = 0; i < torsion_.rows(); ++i)
                if ((order * torsion_(i, j)) % target_.torsion()[i] != 0)
                    throw InputError("GroupHom: not well defined on torsion");
        }
    }

    /// Homomorphism Z^k -> target from the images of the standard basis.
    static GroupHom from_images(std::size_t k, const FgAbelianGroup& target, std::span<const GroupElement> images) {
        if (images.size() != k) throw InputError("GroupHom: wrong number of images");
        IntegerMatrix f(target.free_rank(), k), t(target.torsion().size(), k);
        for (std::size_t j = 0; j < k; ++j) {
            GroupElement e = reduce(target, images[j]);
            for (std::size_t i = 0; i < f.rows(); ++i) f(i, j) = e.free[i];
            for (std::size_t i = 0; i < t.rows(); ++i) t(i, j) = e.torsion[i];
        }
        return GroupHom(FgAbelianGroup::free(k), target, std::move(f), std::move(t));
    }

    static GroupHom identity(const FgAbelianGroup& g) {
        const std::size_t n = g.num_generators();
        IntegerMatrix f(g.free_rank(), n), t(g.torsion().size(), n);
        for (std::size_t i = 0; i < g.free_rank(); ++i) f(i, i) = 1;
        for (std::size_t i = 0; i < g.torsion().size(); ++i) t(i, g.free_rank() + i) = 1;
        return GroupHom(g, g, std::move(f), std::move(t));
    }

    const FgAbelianGroup& source() const { return source_; }
    const FgAbelianGroup& target() const { return target_; }
    const IntegerMatrix& free_block() const { return free_; }
    const IntegerMatrix& torsion_block() const { return torsion_; }

    /// The rational part: target.free_rank x source.free_rank.
    IntegerMatrix free_matrix() const {
        IntegerMatrix m(target_.free_rank(), source_.free_rank());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = free_(i, j);
        return m;
    }

    GroupElement apply(const GroupElement& x) const {
        IntVector c = reduce(source_, x).coordinates();
        return reduce(target_, GroupElement{free_ * c, torsion_ * c});
    }

    GroupElement image_of_generator(std::size_t j) const {
        return GroupElement{free_.column(j), torsion_.column(j)};
    }

    /// this ∘ inner
    GroupHom compose_after(const GroupHom& inner) const {
        if (!(inner.target() == source_)) throw InputError("GroupHom: composition of incompatible maps");
        const std::size_t n = inner.source().num_generators();
        IntegerMatrix f(target_.free_rank(), n), t(target_.torsion().size(), n);
        for (std::size_t j = 0; j < n; ++j) {
            GroupElement e = apply(inner.image_of_generator(j));
            for (std::size_t i = 0; i < f.rows(); ++i) f(i, j) = e.free[i];
            for (std::size_t i = 0; i < t.rows(); ++i) t(i, j) = e.torsion[i];
        }
        return GroupHom(inner.source(), target_, std::move(f), std::move(t));
    }

    /// Matrix over target coordinates whose column span, together with the
    /// target relations, is the image.
    IntegerMatrix image_with_relations() const {
        const std::size_t rt = target_.num_generators();
        const std::size_t n = source_.num_generators();
        IntegerMatrix m(rt, n + target_.torsion().size());
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < free_.rows(); ++i) m(i, j) = free_(i, j);
            for (std::size_t i = 0; i < torsion_.rows(); ++i) m(free_.rows() + i, j) = torsion_(i, j);
        }
        for (std::size_t i = 0; i < target_.torsion().size(); ++i)
            m(target_.free_rank() + i, n + i) = target_.torsion()[i];
        return m;
    }

    bool is_surjective() const {
        const std::size_t rt = target_.num_generators();
        SmithForm snf = smith_normal_form(image_with_relations());
        if (snf.rank != rt) return false;
        for (std::size_t i = 0; i < rt; ++i)
            if (snf.diagonal(i, i) != 1) return false;
        return true;
    }

    /// Surjective after tensoring with Q.
    bool is_rationally_surjective() const { return rank(free_matrix()) == target_.free_rank(); }

    friend bool operator==(const GroupHom&, const GroupHom&) = default;

  private:
    FgAbelianGroup source_;
    FgAbelianGroup target_;
    IntegerMatrix free_;
    IntegerMatrix torsion_;
};

struct Cokernel {
    FgAbelianGroup group;
    GroupHom projection;  // Z^rows -> group
};

/// Z^rows / im(m) in invariant-factor form, with the quotient map.
inline Cokernel cokernel(const IntegerMatrix& m) {
    const std::size_t n = m.rows();
    SmithForm snf = smith_normal_form(m);
    std::vector<std::size_t> torsion_rows;
    IntVector factors;
    for (std::size_t i = 0; i < snf.rank; ++i)
        if (snf.diagonal(i, i) > 1) {
            torsion_rows.push_back(i);
            factors.push_back(snf.diagonal(i, i));
        }
    FgAbelianGroup group(n - snf.rank, factors);
    IntegerMatrix f(n - snf.rank, n), t(torsion_rows.size(), n);
    for (std::size_t i = snf.rank; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) f(i - snf.rank, j) = snf.left(i, j);
    for (std::size_t i = 0; i < torsion_rows.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) t(i, j) = snf.left(torsion_rows[i], j);
    GroupHom proj(FgAbelianGroup::free(n), group, std::move(f), std::move(t));
    return {std::move(group), std::move(proj)};
}

/// Kernel of a homomorphism out of a free group Z^k, as a canonical Z-basis
/// (torsion coordinates of the target are taken into account).
inline std::vector<IntVector> kernel_basis(const GroupHom& hom) {
    if (!hom.source().is_free()) throw InputError("kernel_basis: source group must be free");
    const std::size_t k = hom.source().free_rank();
    const auto& tor = hom.target().torsion();
    if (tor.empty()) return kernel_basis(hom.free_matrix());
    const std::size_t r = hom.target().free_rank();
    IntegerMatrix big(r + tor.size(), k + tor.size());
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < r; ++i) big(i, j) = hom.free_block()(i, j);
        for (std::size_t i = 0; i < tor.size(); ++i) big(r + i, j) = hom.torsion_block()(i, j);
    }
    for (std::size_t i = 0; i < tor.size(); ++i) big(r + i, k + i) = tor[i];
    std::vector<IntVector> projected;
    for (const auto& v : kernel_basis(big)) projected.emplace_back(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k));
    return hermite_basis(projected, k);
}

/// Whether the subgroup generated by `generators` (free coordinates of the
/// ambient group) has finite index. Torsion never affects the answer.
inline bool is_finite_index_subgroup(std::span<const IntVector> generators, const FgAbelianGroup& ambient) {
    for (const auto& g : generators)
        if (g.size() != ambient.free_rank()) throw InputError("is_finite_index_subgroup: dimension mismatch");
    return rank(generators) == ambient.free_rank();
}

}  // namespace multiproj
