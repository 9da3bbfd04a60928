#include "logdiv/matrix.hpp"

#include "logdiv/errors.hpp"

#include <algorithm>

namespace logdiv {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = int(rows.size());
    cols_ = rows_ ? int(rows.begin()->size()) : 0;
    data_.reserve(std::size_t(rows_) * cols_);
    for (const auto& r : rows) {
        if (int(r.size()) != cols_) throw DomainError("ShapeMismatch", "ragged initializer for IntMatrix");
        for (const Int& x : r) data_.push_back(x);
    }
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_columns(int rows, const std::vector<Vec>& columns) {
    IntMatrix m(rows, int(columns.size()));
    for (int j = 0; j < int(columns.size()); ++j) {
        if (int(columns[j].size()) != rows)
            throw DomainError("ShapeMismatch", "column length does not match row count");
        for (int i = 0; i < rows; ++i) m.at(i, j) = columns[j][i];
    }
    return m;
}

IntMatrix IntMatrix::from_rows(int cols, const std::vector<Vec>& rows) {
    IntMatrix m(int(rows.size()), cols);
    for (int i = 0; i < int(rows.size()); ++i) {
        if (int(rows[i].size()) != cols)
            throw DomainError("ShapeMismatch", "row length does not match column count");
        for (int j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

Vec IntMatrix::row(int i) const {
    Vec r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return r;
}

Vec IntMatrix::col(int j) const {
    Vec c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return c;
}

std::vector<Vec> IntMatrix::columns() const {
    std::vector<Vec> cs;
    cs.reserve(cols_);
    for (int j = 0; j < cols_; ++j) cs.push_back(col(j));
    return cs;
}

std::vector<Vec> IntMatrix::row_list() const {
    std::vector<Vec> rs;
    rs.reserve(rows_);
    for (int i = 0; i < rows_; ++i) rs.push_back(row(i));
    return rs;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != Int(i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : data_)
        if (x != 0) return false;
    return true;
}

void IntMatrix::swap_rows(int a, int b) {
    if (a == b) return;
    for (int j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(int a, int b) {
    if (a == b) return;
    for (int i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::negate_row(int i) {
    for (int j = 0; j < cols_; ++j) at(i, j) = -at(i, j);
}

void IntMatrix::negate_col(int j) {
    for (int i = 0; i < rows_; ++i) at(i, j) = -at(i, j);
}

void IntMatrix::add_row_multiple(int dst, int src, const Int& c) {
    for (int j = 0; j < cols_; ++j) at(dst, j) += c * at(src, j);
}

void IntMatrix::add_col_multiple(int dst, int src, const Int& c) {
    for (int i = 0; i < rows_; ++i) at(i, dst) += c * at(i, src);
}

IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw DomainError("ShapeMismatch", "matrix product shape mismatch");
    IntMatrix r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) r.at(i, j) += aik * b.at(k, j);
        }
    return r;
}

Vec mat_apply(const IntMatrix& a, const Vec& v) {
    if (a.cols() != int(v.size())) throw DomainError("ShapeMismatch", "matrix/vector shape mismatch");
    Vec r(a.rows(), Int(0));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (a.at(i, j) != 0) r[i] += a.at(i, j) * v[j];
    return r;
}

Vec apply_transpose(const IntMatrix& a, const Vec& y) {
    if (a.rows() != int(y.size())) throw DomainError("ShapeMismatch", "covector/matrix shape mismatch");
    Vec r(a.cols(), Int(0));
    for (int i = 0; i < a.rows(); ++i)
        if (y[i] != 0)
            for (int j = 0; j < a.cols(); ++j) r[j] += y[i] * a.at(i, j);
    return r;
}

std::vector<Int> SmithDecomposition::invariants() const {
    std::vector<Int> d;
    int n = std::min(diag.rows(), diag.cols());
    for (int i = 0; i < n; ++i)
        if (diag.at(i, i) != 0) d.push_back(diag.at(i, i));
    return d;
}

int SmithDecomposition::rank() const { return int(invariants().size()); }

namespace {

// Finds the position of a nonzero entry of minimal absolute value in the
// trailing submatrix m[t.., t..]; returns false if that submatrix is zero.
bool find_pivot(const IntMatrix& m, int t, int& pi, int& pj) {
    bool found = false;
    Int best = 0;
    for (int i = t; i < m.rows(); ++i)
        for (int j = t; j < m.cols(); ++j) {
            const Int& x = m.at(i, j);
            if (x == 0) continue;
            Int ax = abs_int(x);
            if (!found || ax < best) {
                found = true;
                best = ax;
                pi = i;
                pj = j;
            }
        }
    return found;
}

} // namespace

SmithDecomposition snf(const IntMatrix& input) {
    IntMatrix m = input;
    IntMatrix left = IntMatrix::identity(m.rows());
    IntMatrix right = IntMatrix::identity(m.cols());
    const int n = std::min(m.rows(), m.cols());

    // Phase 1: diagonalize by alternating gcd row/column reduction.
    for (int t = 0; t < n; ++t) {
        int pi, pj;
        if (!find_pivot(m, t, pi, pj)) break;
        m.swap_rows(t, pi);
        left.swap_rows(t, pi);
        m.swap_cols(t, pj);
        right.swap_cols(t, pj);
        for (;;) {
            bool dirty = false;
            for (int i = t + 1; i < m.rows(); ++i) {
                if (m.at(i, t) == 0) continue;
                Int q = m.at(i, t) / m.at(t, t);  // truncating: remainder strictly smaller
                if (q != 0) {
                    m.add_row_multiple(i, t, -q);
                    left.add_row_multiple(i, t, -q);
                }
                if (m.at(i, t) != 0) {
                    // Remainder became the new, smaller pivot candidate.
                    m.swap_rows(t, i);
                    left.swap_rows(t, i);
                    dirty = true;
                }
            }
            for (int j = t + 1; j < m.cols(); ++j) {
                if (m.at(t, j) == 0) continue;
                Int q = m.at(t, j) / m.at(t, t);
                if (q != 0) {
                    m.add_col_multiple(j, t, -q);
                    right.add_col_multiple(j, t, -q);
                }
                if (m.at(t, j) != 0) {
                    m.swap_cols(t, j);
                    right.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (!dirty) break;
        }
    }

    // Phase 2: enforce the divisibility chain d_i | d_{i+1}. Folding column
    // j into column i plants d_j below the pivot; a 2x2 gcd reduction then
    // replaces (d_i, d_j) with (gcd, +-lcm).
    for (;;) {
        bool changed = false;
        for (int i = 0; i + 1 < n; ++i) {
            Int di = m.at(i, i), dj = m.at(i + 1, i + 1);
            if (di == 0 && dj != 0) {
                m.swap_rows(i, i + 1);
                left.swap_rows(i, i + 1);
                m.swap_cols(i, i + 1);
                right.swap_cols(i, i + 1);
                changed = true;
                continue;
            }
            if (di == 0 || dj == 0) continue;
            if (dj % di == 0) continue;
            m.add_col_multiple(i, i + 1, 1);
            right.add_col_multiple(i, i + 1, 1);
            // Local reduction of the 2x2 block at (i, i).
            for (;;) {
                if (m.at(i + 1, i) != 0) {
                    Int q = m.at(i + 1, i) / m.at(i, i);
                    if (q != 0) {
                        m.add_row_multiple(i + 1, i, -q);
                        left.add_row_multiple(i + 1, i, -q);
                    }
                    if (m.at(i + 1, i) != 0) {
                        m.swap_rows(i, i + 1);
                        left.swap_rows(i, i + 1);
                        continue;
                    }
                }
                if (m.at(i, i + 1) != 0) {
                    Int q = m.at(i, i + 1) / m.at(i, i);
                    if (q != 0) {
                        m.add_col_multiple(i + 1, i, -q);
                        right.add_col_multiple(i + 1, i, -q);
                    }
                    if (m.at(i, i + 1) != 0) {
                        m.swap_cols(i, i + 1);
                        right.swap_cols(i, i + 1);
                        continue;
                    }
                }
                break;
            }
            changed = true;
        }
        if (!changed) break;
    }

    // Phase 3: nonnegative diagonal.
    for (int i = 0; i < n; ++i) {
        if (m.at(i, i) < 0) {
            m.negate_row(i);
            left.negate_row(i);
        }
    }

    return SmithDecomposition{left, right, m};
}

IntMatrix hnf(const IntMatrix& input) {
    IntMatrix h = input;
    int c = 0;  // next pivot column
    for (int r = 0; r < h.rows() && c < h.cols(); ++r) {
        // gcd-collapse all entries of row r in columns >= c into column c.
        for (;;) {
            int best = -1;
            Int bestAbs = 0;
            for (int j = c; j < h.cols(); ++j) {
                if (h.at(r, j) == 0) continue;
                Int a = abs_int(h.at(r, j));
                if (best < 0 || a < bestAbs) {
                    best = j;
                    bestAbs = a;
                }
            }
            if (best < 0) break;  // row has no pivot; move to next row
            h.swap_cols(c, best);
            bool clean = true;
            for (int j = c + 1; j < h.cols(); ++j) {
                if (h.at(r, j) == 0) continue;
                Int q = h.at(r, j) / h.at(r, c);
                if (q != 0) h.add_col_multiple(j, c, -q);
                if (h.at(r, j) != 0) clean = false;
            }
            if (clean) break;
        }
        if (h.at(r, c) == 0) continue;
        if (h.at(r, c) < 0) h.negate_col(c);
        // Reduce the columns left of the pivot into [0, pivot).
        for (int j = 0; j < c; ++j) {
            Int q = floor_div(h.at(r, j), h.at(r, c));
            if (q != 0) h.add_col_multiple(j, c, -q);
        }
        ++c;
    }
    return h;
}

IntMatrix kernel_basis(const IntMatrix& m) {
    SmithDecomposition s = snf(m);
    int n = std::min(m.rows(), m.cols());
    std::vector<Vec> cols;
    for (int j = 0; j < m.cols(); ++j) {
        if (j >= n || s.diag.at(j, j) == 0) cols.push_back(s.right.col(j));
    }
    IntMatrix k = hnf(IntMatrix::from_columns(m.cols(), cols));
    // hnf leaves no zero columns here because the inputs are independent.
    return k;
}

IntMatrix saturate_sublattice(const IntMatrix& m) {
    SmithDecomposition s = snf(m);
    IntMatrix linv = inverse_unimodular(s.left);
    int n = std::min(m.rows(), m.cols());
    std::vector<Vec> cols;
    for (int j = 0; j < n; ++j)
        if (s.diag.at(j, j) != 0) cols.push_back(linv.col(j));
    return hnf(IntMatrix::from_columns(m.rows(), cols));
}

CokernelInvariants cokernel_invariants(const IntMatrix& m) {
    SmithDecomposition s = snf(m);
    CokernelInvariants out;
    std::vector<Int> inv = s.invariants();
    for (const Int& d : inv)
        if (d > 1) out.torsion.push_back(d);
    out.free_rank = m.rows() - int(inv.size());
    return out;
}

Int determinant(const IntMatrix& input) {
    if (input.rows() != input.cols()) throw DomainError("ShapeMismatch", "determinant of non-square matrix");
    int n = input.rows();
    if (n == 0) return 1;
    IntMatrix m = input;
    Int sign = 1, prev = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m.at(k, k) == 0) {
            int swap = -1;
            for (int i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    swap = i;
                    break;
                }
            if (swap < 0) return 0;
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign * m.at(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
    if (m.rows() != m.cols()) return false;
    Int d = determinant(m);
    return d == 1 || d == -1;
}

IntMatrix inverse_unimodular(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw DomainError("NotUnimodular", "inverse of non-square matrix");
    SmithDecomposition s = snf(m);
    for (int i = 0; i < m.rows(); ++i)
        if (s.diag.at(i, i) != 1)
            throw DomainError("NotUnimodular", "matrix is not invertible over the integers");
    // left * m * right = I  =>  m^{-1} = right * left.
    return mul(s.right, s.left);
}

std::optional<Vec> solve(const IntMatrix& a, const Vec& b) {
    SmithDecomposition s = snf(a);
    Vec c = mat_apply(s.left, b);
    int n = std::min(a.rows(), a.cols());
    Vec y(a.cols(), Int(0));
    for (int i = 0; i < a.rows(); ++i) {
        Int d = (i < n) ? s.diag.at(i, i) : Int(0);
        if (d == 0) {
            if (c[i] != 0) return std::nullopt;
        } else {
            if (c[i] % d != 0) return std::nullopt;
            y[i] = c[i] / d;
        }
    }
    return mat_apply(s.right, y);
}

bool in_column_lattice(const IntMatrix& basis, const Vec& v) {
    if (basis.cols() == 0) return is_zero_vec(v);
    return solve(basis, v).has_value();
}

int lattice_rank(const IntMatrix& m) { return snf(m).rank(); }

} // namespace logdiv
