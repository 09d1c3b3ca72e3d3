#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dhmono/cyclotomic.hpp"

namespace dhmono {

// Dense matrices over Q(zeta_n), row-major. All elimination is exact with
// normalized pivots, so results are canonical and reproducible.

class CycMatrix {
public:
    CycMatrix() : field_(nullptr), rows_(0), cols_(0) {}

    CycMatrix(const CyclotomicField* f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols),
          e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), CycScalar::zero(f)) {}

    static CycMatrix identity(const CyclotomicField* f, int n) {
        CycMatrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = CycScalar::one(f);
        return m;
    }

    const CyclotomicField* field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    CycScalar& at(int r, int c) { return e_[static_cast<std::size_t>(r) * cols_ + c]; }
    const CycScalar& at(int r, int c) const { return e_[static_cast<std::size_t>(r) * cols_ + c]; }

    bool is_zero() const {
        for (const auto& x : e_)
            if (!x.is_zero()) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                if (at(r, c) != (r == c ? CycScalar::one(field_) : CycScalar::zero(field_)))
                    return false;
        return true;
    }

    friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.e_ == b.e_;
    }
    friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

    friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b) {
        a.check_same_shape(b);
        CycMatrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] += b.e_[i];
        return r;
    }

    friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) {
        a.check_same_shape(b);
        CycMatrix r = a;
        for (std::size_t i = 0; i < r.e_.size(); ++i) r.e_[i] -= b.e_[i];
        return r;
    }

    friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
        if (a.field_ != b.field_) throw FieldMismatch();
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product shape mismatch");
        CycMatrix r(a.field_, a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const CycScalar& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) {
                    const CycScalar& bkj = b.at(k, j);
                    if (bkj.is_zero()) continue;
                    r.at(i, j) += aik * bkj;
                }
            }
        return r;
    }

    CycMatrix scaled(const CycScalar& c) const {
        CycMatrix r = *this;
        for (auto& x : r.e_) x *= c;
        return r;
    }

    CycMatrix transpose() const {
        CycMatrix r(field_, cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    CycScalar trace() const {
        CycScalar t = CycScalar::zero(field_);
        for (int i = 0; i < rows_ && i < cols_; ++i) t += at(i, i);
        return t;
    }

    std::vector<CycScalar> row(int r) const {
        return std::vector<CycScalar>(e_.begin() + static_cast<std::size_t>(r) * cols_,
                                      e_.begin() + static_cast<std::size_t>(r + 1) * cols_);
    }

    std::vector<CycScalar> flatten() const { return e_; }

    static CycMatrix from_rows(const CyclotomicField* f, const std::vector<std::vector<CycScalar>>& rows) {
        int rc = static_cast<int>(rows.size());
        int cc = rc ? static_cast<int>(rows[0].size()) : 0;
        CycMatrix m(f, rc, cc);
        for (int r = 0; r < rc; ++r) {
            if (static_cast<int>(rows[r].size()) != cc)
                throw std::invalid_argument("ragged row list");
            for (int c = 0; c < cc; ++c) m.at(r, c) = rows[r][c];
        }
        return m;
    }

private:
    void check_same_shape(const CycMatrix& o) const {
        if (field_ != o.field_) throw FieldMismatch();
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    const CyclotomicField* field_;
    int rows_, cols_;
    std::vector<CycScalar> e_;
};

inline CycMatrix operator*(const CycScalar& c, const CycMatrix& m) { return m.scaled(c); }

inline std::vector<CycScalar> mat_vec(const CycMatrix& m, const std::vector<CycScalar>& v) {
    if (static_cast<int>(v.size()) != m.cols())
        throw std::invalid_argument("mat_vec shape mismatch");
    std::vector<CycScalar> r(static_cast<std::size_t>(m.rows()), CycScalar::zero(m.field()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            const CycScalar& a = m.at(i, j);
            if (!a.is_zero() && !v[j].is_zero()) r[i] += a * v[j];
        }
    return r;
}

// Incrementally maintained row-echelon span of vectors in K^cols.
// Pivots are the first nonzero column of each stored row, normalized to 1;
// rows are kept sorted by pivot column so the basis is order-independent
// only through the deterministic insertion sequence.
class RowEchelon {
public:
    RowEchelon(const CyclotomicField* f, int cols) : field_(f), cols_(cols) {}

    int rank() const { return static_cast<int>(rows_.size()); }
    int cols() const { return cols_; }

    // reduce v against the current basis in place; true if the residue is nonzero
    bool reduce(std::vector<CycScalar>& v) const {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            const CycScalar& c = v[static_cast<std::size_t>(pivot_[r])];
            if (c.is_zero()) continue;
            CycScalar factor = c; // pivot normalized to 1
            for (int j = pivot_[r]; j < cols_; ++j) {
                if (!rows_[r][static_cast<std::size_t>(j)].is_zero())
                    v[static_cast<std::size_t>(j)] -= factor * rows_[r][static_cast<std::size_t>(j)];
            }
        }
        for (const auto& x : v)
            if (!x.is_zero()) return true;
        return false;
    }

    // returns true when v enlarged the span
    bool insert(std::vector<CycScalar> v) {
        if (static_cast<int>(v.size()) != cols_)
            throw std::invalid_argument("RowEchelon width mismatch");
        if (!reduce(v)) return false;
        int p = 0;
        while (v[static_cast<std::size_t>(p)].is_zero()) ++p;
        CycScalar inv = v[static_cast<std::size_t>(p)].inverse();
        for (int j = p; j < cols_; ++j)
            if (!v[static_cast<std::size_t>(j)].is_zero()) v[static_cast<std::size_t>(j)] *= inv;
        // keep rows ordered by pivot column
        std::size_t pos = 0;
        while (pos < rows_.size() && pivot_[pos] < p) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        pivot_.insert(pivot_.begin() + pos, p);
        return true;
    }

    const std::vector<std::vector<CycScalar>>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivot_; }

private:
    const CyclotomicField* field_;
    int cols_;
    std::vector<std::vector<CycScalar>> rows_;
    std::vector<int> pivot_;
};

struct RankSolveResult {
    int rank = 0;
    std::optional<CycMatrix> solution; // present iff rhs given and consistent
    CycMatrix kernel;                  // columns form a kernel basis
};

namespace detail {

// reduced row echelon in place; returns pivot columns, applies the same row
// ops to aug when provided
inline std::vector<int> rref(CycMatrix& m, CycMatrix* aug) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
        int sel = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!m.at(i, c).is_zero()) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r) {
            for (int j = 0; j < m.cols(); ++j) std::swap(m.at(sel, j), m.at(r, j));
            if (aug)
                for (int j = 0; j < aug->cols(); ++j) std::swap(aug->at(sel, j), aug->at(r, j));
        }
        CycScalar inv = m.at(r, c).inverse();
        for (int j = c; j < m.cols(); ++j)
            if (!m.at(r, j).is_zero()) m.at(r, j) *= inv;
        if (aug)
            for (int j = 0; j < aug->cols(); ++j)
                if (!aug->at(r, j).is_zero()) aug->at(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r) continue;
            CycScalar f = m.at(i, c);
            if (f.is_zero()) continue;
            for (int j = c; j < m.cols(); ++j)
                if (!m.at(r, j).is_zero()) m.at(i, j) -= f * m.at(r, j);
            if (aug)
                for (int j = 0; j < aug->cols(); ++j)
                    if (!aug->at(r, j).is_zero()) aug->at(i, j) -= f * aug->at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace detail

inline RankSolveResult rank_and_solve(const CycMatrix& m, const CycMatrix* rhs = nullptr) {
    if (rhs && rhs->rows() != m.rows())
        throw std::invalid_argument("rhs row count mismatch");
    CycMatrix a = m;
    CycMatrix b = rhs ? *rhs : CycMatrix(m.field(), m.rows(), 0);
    std::vector<int> pivots = detail::rref(a, &b);
    RankSolveResult res;
    res.rank = static_cast<int>(pivots.size());

    // kernel basis from the free columns
    std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
    for (int c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
    int free_count = m.cols() - res.rank;
    res.kernel = CycMatrix(m.field(), m.cols(), free_count);
    int k = 0;
    for (int c = 0; c < m.cols(); ++c) {
        if (is_pivot[static_cast<std::size_t>(c)]) continue;
        res.kernel.at(c, k) = CycScalar::one(m.field());
        for (int r = 0; r < res.rank; ++r)
            res.kernel.at(pivots[static_cast<std::size_t>(r)], k) = -a.at(r, c);
        ++k;
    }

    if (rhs) {
        bool consistent = true;
        for (int r = res.rank; r < m.rows() && consistent; ++r)
            for (int j = 0; j < b.cols(); ++j)
                if (!b.at(r, j).is_zero()) { consistent = false; break; }
        if (consistent) {
            CycMatrix sol(m.field(), m.cols(), b.cols());
            for (int r = 0; r < res.rank; ++r)
                for (int j = 0; j < b.cols(); ++j)
                    sol.at(pivots[static_cast<std::size_t>(r)], j) = b.at(r, j);
            res.solution = std::move(sol);
        }
    }
    return res;
}

inline int rank(const CycMatrix& m) {
    CycMatrix a = m;
    return static_cast<int>(detail::rref(a, nullptr).size());
}

inline std::optional<CycMatrix> inverse(const CycMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
    CycMatrix a = m;
    CycMatrix id = CycMatrix::identity(m.field(), m.rows());
    std::vector<int> pivots = detail::rref(a, &id);
    if (static_cast<int>(pivots.size()) != m.rows()) return std::nullopt;
    return id;
}

inline CycScalar det(const CycMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    CycMatrix a = m;
    CycScalar d = CycScalar::one(m.field());
    int n = m.rows();
    for (int c = 0; c < n; ++c) {
        int sel = -1;
        for (int i = c; i < n; ++i)
            if (!a.at(i, c).is_zero()) { sel = i; break; }
        if (sel < 0) return CycScalar::zero(m.field());
        if (sel != c) {
            for (int j = 0; j < n; ++j) std::swap(a.at(sel, j), a.at(c, j));
            d = -d;
        }
        d *= a.at(c, c);
        CycScalar inv = a.at(c, c).inverse();
        for (int i = c + 1; i < n; ++i) {
            CycScalar f = a.at(i, c) * inv;
            if (f.is_zero()) continue;
            for (int j = c; j < n; ++j)
                if (!a.at(c, j).is_zero()) a.at(i, j) -= f * a.at(c, j);
        }
    }
    return d;
}

// characteristic polynomial det(lambda*I - M), monic, via Faddeev-LeVerrier;
// exact because the base ring has characteristic zero
inline std::vector<CycScalar> char_poly(const CycMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly of non-square matrix");
    const CyclotomicField* f = m.field();
    int n = m.rows();
    std::vector<CycScalar> c(static_cast<std::size_t>(n) + 1, CycScalar::zero(f));
    c[static_cast<std::size_t>(n)] = CycScalar::one(f);
    CycMatrix mk = CycMatrix::identity(f, n);
    for (int k = 1; k <= n; ++k) {
        mk = m * mk;
        CycScalar ck = mk.trace() * CycScalar::from_rat(f, Rat(-1, k));
        c[static_cast<std::size_t>(n - k)] = ck;
        for (int i = 0; i < n; ++i) mk.at(i, i) += ck;
    }
    return c;
}

} // namespace dhmono
