#pragma once

#include "logdiv/bigint.hpp"

#include <initializer_list>
#include <optional>
#include <vector>

namespace logdiv {

/// Dense integer matrix, row-major, arbitrary precision entries.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols, Int(0)) {}
    IntMatrix(std::initializer_list<std::initializer_list<Int>> rows);

    static IntMatrix identity(int n);

    /// Builds the matrix whose columns are the given vectors (all of length `rows`).
    static IntMatrix from_columns(int rows, const std::vector<Vec>& columns);

    /// Builds the matrix whose rows are the given vectors.
    static IntMatrix from_rows(int cols, const std::vector<Vec>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& at(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

    Vec row(int i) const;
    Vec col(int j) const;
    std::vector<Vec> columns() const;
    std::vector<Vec> row_list() const;

    IntMatrix transpose() const;
    bool operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_identity() const;
    bool is_zero() const;

    // Elementary row/column operations (used by the normal-form algorithms).
    void swap_rows(int a, int b);
    void swap_cols(int a, int b);
    void negate_row(int i);
    void negate_col(int j);
    void add_row_multiple(int dst, int src, const Int& c);  // row[dst] += c * row[src]
    void add_col_multiple(int dst, int src, const Int& c);  // col[dst] += c * col[src]

private:
    int rows_, cols_;
    std::vector<Int> data_;
};

IntMatrix mul(const IntMatrix& a, const IntMatrix& b);
Vec mat_apply(const IntMatrix& a, const Vec& v);

/// Covector pullback: returns y^T a as a row vector of length a.cols().
Vec apply_transpose(const IntMatrix& a, const Vec& y);

/// Result of the Smith decomposition: left * original * right = diag, with
/// both factors unimodular, diag nonnegative and each entry dividing the next
/// (trailing entries zero).
struct SmithDecomposition {
    IntMatrix left;
    IntMatrix right;
    IntMatrix diag;
    std::vector<Int> invariants() const;  // nonzero diagonal entries, in order
    int rank() const;
};

SmithDecomposition snf(const IntMatrix& m);

/// Column-style Hermite normal form, computed with unimodular column
/// operations only: pivot rows strictly increase, pivots are positive,
/// entries to the left of a pivot lie in [0, pivot), columns right of the
/// last pivot are zero. Canonical for lattice-span comparisons.
IntMatrix hnf(const IntMatrix& m);

/// Basis for the integer kernel {v : m v = 0} as matrix columns. The kernel
/// of an integer matrix is automatically saturated; columns are primitive
/// and canonicalized via HNF.
IntMatrix kernel_basis(const IntMatrix& m);

/// Basis of the smallest saturated sublattice of Z^rows containing the
/// column span of m (= ambient intersect rational column span), as columns,
/// HNF-canonical.
IntMatrix saturate_sublattice(const IntMatrix& m);

struct CokernelInvariants {
    std::vector<Int> torsion;  // invariant factors > 1, in divisibility order
    int free_rank = 0;
};

/// Structure of Z^rows / (column span of m).
CokernelInvariants cokernel_invariants(const IntMatrix& m);

/// Exact determinant (Bareiss fraction-free elimination).
Int determinant(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

/// Inverse of a unimodular square matrix (throws DomainError otherwise).
IntMatrix inverse_unimodular(const IntMatrix& m);

/// One integer solution x of a x = b, if any.
std::optional<Vec> solve(const IntMatrix& a, const Vec& b);

/// Whether v lies in the lattice generated by the columns of basis.
bool in_column_lattice(const IntMatrix& basis, const Vec& v);

/// Rank of the column span over Q.
int lattice_rank(const IntMatrix& m);

} // namespace logdiv
