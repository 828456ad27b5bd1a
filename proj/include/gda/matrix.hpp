#pragma once

#include "gda/scalars.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace gda {

/// Dense matrix over one of the exact scalar rings. Row-major storage.
template <ScalarRing S>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), d_(rows * cols, S(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t r = 0; r < n; ++r) m.at(r, r) = S(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    S& at(std::size_t r, std::size_t c) { return d_[r * cols_ + c]; }
    const S& at(std::size_t r, std::size_t c) const { return d_[r * cols_ + c]; }

    bool is_zero() const {
        for (const S& v : d_)
            if (!(v == S(0))) return false;
        return true;
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.d_.size(); ++k) r.d_[k] = a.d_[k] + b.d_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        require_same_shape(a, b);
        Matrix r(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.d_.size(); ++k) r.d_[k] = a.d_[k] - b.d_[k];
        return r;
    }
    Matrix operator-() const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < d_.size(); ++k) r.d_[k] = -d_[k];
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw GdaError("E_SHAPE", "matrix product shape mismatch");
        Matrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a.at(i, k);
                if (aik == S(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) = r.at(i, j) + aik * b.at(k, j);
            }
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.d_ == b.d_;
    }

    /// Multiply every entry by a central Q(sqrt2) scalar.
    Matrix scaled(const RealQuad& by) const {
        Matrix r(rows_, cols_);
        for (std::size_t k = 0; k < d_.size(); ++k)
            r.d_[k] = scalar_traits<S>::scale(d_[k], by);
        return r;
    }

    S trace() const {
        S t(0);
        for (std::size_t r = 0; r < rows_ && r < cols_; ++r) t = t + at(r, r);
        return t;
    }

    Matrix pow(unsigned e) const {
        Matrix r = identity(rows_);
        Matrix base = *this;
        while (e > 0) {
            if (e & 1u) r = r * base;
            base = base * base;
            e >>= 1u;
        }
        return r;
    }

    /// Kronecker product; block (i,j) of the result is a_ij * B.
    friend Matrix kron(const Matrix& a, const Matrix& b) {
        Matrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < a.cols_; ++j) {
                const S& v = a.at(i, j);
                if (v == S(0)) continue;
                for (std::size_t p = 0; p < b.rows_; ++p)
                    for (std::size_t q = 0; q < b.cols_; ++q)
                        r.at(i * b.rows_ + p, j * b.cols_ + q) = v * b.at(p, q);
            }
        return r;
    }

    /// Inverse over the (possibly skew) coefficient field by row reduction;
    /// every nonzero scalar is invertible, so elimination uses left
    /// multiplications only. Returns nullopt for singular input.
    std::optional<Matrix> inverse() const;

private:
    static void require_same_shape(const Matrix& a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw GdaError("E_SHAPE", "matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> d_;
};

namespace detail {
inline RealQuad scalar_inverse(const RealQuad& s) { return s.inverse(); }
inline Cyclo8 scalar_inverse(const Cyclo8& s) { return s.inverse(); }
inline QuaternionQ2 scalar_inverse(const QuaternionQ2& s) { return s.inverse(); }
} // namespace detail

template <ScalarRing S>
std::optional<Matrix<S>> Matrix<S>::inverse() const {
    if (rows_ != cols_) throw GdaError("E_SHAPE", "inverse of non-square matrix");
    std::size_t n = rows_;
    Matrix a = *this;
    Matrix inv = identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a.at(piv, col) == S(0)) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a.at(piv, j), a.at(col, j));
                std::swap(inv.at(piv, j), inv.at(col, j));
            }
        S pinv = detail::scalar_inverse(a.at(col, col));
        for (std::size_t j = 0; j < n; ++j) {
            a.at(col, j) = pinv * a.at(col, j);
            inv.at(col, j) = pinv * inv.at(col, j);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            S f = a.at(r, col);
            if (f == S(0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a.at(r, j) = a.at(r, j) - f * a.at(col, j);
                inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
            }
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------
// Exact real linear algebra. Matrices over the three rings flatten to
// coordinate vectors over the field Q(sqrt2); ranks and kernels over that
// field coincide with ranks and kernels over R.

using QuadVec = std::vector<RealQuad>;
using QuadRows = std::vector<QuadVec>;

template <ScalarRing S>
QuadVec flatten_matrix(const Matrix<S>& m) {
    constexpr std::size_t w = scalar_traits<S>::real_dim;
    QuadVec out(m.rows() * m.cols() * w);
    std::size_t k = 0;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            scalar_traits<S>::flatten(m.at(r, c), &out[k]);
            k += w;
        }
    return out;
}

/// In-place reduced row echelon form; returns (rank, pivot columns).
inline std::pair<std::size_t, std::vector<std::size_t>> rref(QuadRows& rows) {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    if (rows.empty()) return {0, pivots};
    std::size_t ncols = rows[0].size();
    for (std::size_t col = 0; col < ncols && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        RealQuad pinv = rows[rank][col].inverse();
        for (std::size_t j = col; j < ncols; ++j) rows[rank][j] = pinv * rows[rank][j];
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col].is_zero()) continue;
            RealQuad f = rows[r][col];
            for (std::size_t j = col; j < ncols; ++j)
                rows[r][j] = rows[r][j] - f * rows[rank][j];
        }
        pivots.push_back(col);
        ++rank;
    }
    return {rank, pivots};
}

inline std::size_t rank_of(QuadRows rows) { return rref(rows).first; }

/// Basis of { x : x * rows = 0 } viewed as combinations of the given rows:
/// returns coefficient vectors c with sum_i c_i rows_i = 0.
inline QuadRows left_kernel(const QuadRows& rows) {
    std::size_t n = rows.size();
    if (n == 0) return {};
    std::size_t m = rows[0].size();
    // Transpose and compute the (right) kernel.
    QuadRows t(m, QuadVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) t[j][i] = rows[i][j];
    auto [rank, pivots] = rref(t);
    QuadRows basis;
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        QuadVec v(n, RealQuad(0));
        v[free] = RealQuad(1);
        for (std::size_t r = 0; r < rank; ++r)
            v[pivots[r]] = -t[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solve sum_i c_i rows_i = target; nullopt when target is outside the span.
inline std::optional<QuadVec> solve_in_span(const QuadRows& rows, const QuadVec& target) {
    std::size_t n = rows.size();
    if (n == 0) {
        for (const auto& v : target)
            if (!v.is_zero()) return std::nullopt;
        return QuadVec{};
    }
    std::size_t m = rows[0].size();
    // Augmented transpose system: columns are the rows, rhs is the target.
    QuadRows sys(m, QuadVec(n + 1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) sys[j][i] = rows[i][j];
    for (std::size_t j = 0; j < m; ++j) sys[j][n] = target[j];
    auto [rank, pivots] = rref(sys);
    QuadVec coeff(n, RealQuad(0));
    for (std::size_t r = 0; r < rank; ++r) {
        if (pivots[r] == n) return std::nullopt; // pivot in rhs column: inconsistent
        coeff[pivots[r]] = sys[r][n];
    }
    return coeff;
}

inline bool in_span(const QuadRows& rows, const QuadVec& target) {
    return solve_in_span(rows, target).has_value();
}

/// Row-reduced span with cheap repeated membership queries.
class ReducedSpan {
public:
    ReducedSpan() = default;
    explicit ReducedSpan(QuadRows rows) {
        auto [rank, pivots] = rref(rows);
        rows.resize(rank);
        rows_ = std::move(rows);
        pivots_ = std::move(pivots);
    }

    std::size_t rank() const { return rows_.size(); }

    bool contains(QuadVec v) const {
        // A single pass suffices: in reduced form each row is zero at the
        // other rows' pivot columns.
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const RealQuad& c = v[pivots_[i]];
            if (c.is_zero()) continue;
            RealQuad f = c;
            for (std::size_t j = pivots_[i]; j < v.size(); ++j)
                if (!rows_[i][j].is_zero()) v[j] = v[j] - f * rows_[i][j];
        }
        for (const auto& c : v)
            if (!c.is_zero()) return false;
        return true;
    }

private:
    QuadRows rows_;
    std::vector<std::size_t> pivots_;
};

template <ScalarRing S>
QuadRows flatten_all(const std::vector<Matrix<S>>& mats) {
    QuadRows rows;
    rows.reserve(mats.size());
    for (const auto& m : mats) rows.push_back(flatten_matrix(m));
    return rows;
}

template <ScalarRing S>
std::size_t span_rank(const std::vector<Matrix<S>>& mats) {
    return rank_of(flatten_all(mats));
}

/// Linear combination sum_i c_i mats_i with Q(sqrt2) coefficients.
template <ScalarRing S>
Matrix<S> combine(const std::vector<Matrix<S>>& mats, const QuadVec& coeff) {
    if (mats.empty()) throw GdaError("E_SHAPE", "combination of empty basis");
    Matrix<S> acc(mats[0].rows(), mats[0].cols());
    for (std::size_t i = 0; i < mats.size(); ++i) {
        if (coeff[i].is_zero()) continue;
        acc = acc + mats[i].scaled(coeff[i]);
    }
    return acc;
}

} // namespace gda
