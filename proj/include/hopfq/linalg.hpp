#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hopfq/scalars.hpp"

namespace hopfq {

struct Entry {
    std::int32_t index;
    Elem value;

    friend bool operator==(const Entry&, const Entry&) = default;
};

// Sparse vector with sorted indices and no stored zeros.
class SparseVec {
public:
    SparseVec() = default;
    SparseVec(Field f, std::size_t dim) : f_(f), dim_(dim) {}

    static SparseVec unit(Field f, std::size_t dim, std::size_t i);
    static SparseVec unit(Field f, std::size_t dim, std::size_t i, Elem c);
    static SparseVec from_dense(Field f, const std::vector<Elem>& v);
    // Sorts, merges duplicate indices and drops zeros.
    static SparseVec from_entries(Field f, std::size_t dim, std::vector<Entry> entries);
    // Entries must already be sorted, unique and nonzero.
    static SparseVec from_sorted(Field f, std::size_t dim, std::vector<Entry> entries);

    Field field() const { return f_; }
    std::size_t dim() const { return dim_; }
    const std::vector<Entry>& entries() const { return e_; }
    std::size_t nnz() const { return e_.size(); }
    bool is_zero() const { return e_.empty(); }
    int leading_index() const { return e_.empty() ? -1 : e_.front().index; }

    Elem at(std::size_t i) const;
    std::vector<Elem> dense() const;

    SparseVec operator+(const SparseVec& o) const;
    SparseVec operator-(const SparseVec& o) const;
    SparseVec operator-() const;
    SparseVec scaled(Elem c) const;
    // this += c * x
    void axpy(Elem c, const SparseVec& x);

    friend bool operator==(const SparseVec& a, const SparseVec& b) {
        return a.dim_ == b.dim_ && a.e_ == b.e_;
    }

private:
    void require_same(const SparseVec& o) const;
    Field f_;
    std::size_t dim_ = 0;
    std::vector<Entry> e_;
};

// Dense scratch buffer for summing many sparse contributions.
class Accumulator {
public:
    Accumulator(Field f, std::size_t dim);

    void add(std::size_t i, Elem v);
    void add(const SparseVec& x, Elem c);
    void add(const SparseVec& x) { add(x, Field::one()); }
    SparseVec take();
    std::size_t dim() const { return buf_.size(); }

private:
    Field f_;
    std::vector<Elem> buf_;
    std::vector<std::uint8_t> mark_;
    std::vector<std::int32_t> touched_;
};

class Subspace;

// Column-major sparse matrix.
class SparseMat {
public:
    SparseMat() = default;
    SparseMat(Field f, std::size_t rows, std::size_t cols);

    static SparseMat identity(Field f, std::size_t n);
    static SparseMat from_columns(Field f, std::size_t rows, std::vector<SparseVec> cols);
    static SparseMat from_rows(Field f, std::size_t cols, const std::vector<SparseVec>& rows);
    static SparseMat from_dense(Field f, const std::vector<std::vector<Elem>>& rows);

    Field field() const { return f_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_.size(); }
    const SparseVec& col(std::size_t j) const { return cols_[j]; }
    void set_col(std::size_t j, SparseVec v);
    Elem at(std::size_t i, std::size_t j) const { return cols_[j].at(i); }

    SparseVec apply(const SparseVec& x) const;
    SparseMat operator*(const SparseMat& o) const;
    SparseMat operator+(const SparseMat& o) const;
    SparseMat operator-(const SparseMat& o) const;
    SparseMat transpose() const;
    std::vector<SparseVec> row_vectors() const;

    std::size_t rank() const;
    Subspace image() const;
    Subspace kernel() const;
    bool is_zero() const;
    // Throws NotInvertible for singular or non-square input.
    SparseMat inverse() const;

    friend bool operator==(const SparseMat& a, const SparseMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_;
    }

private:
    Field f_;
    std::size_t rows_ = 0;
    std::vector<SparseVec> cols_;
};

// T[i][j] is a vector of length d3; slice (i, j) stored at i * d2 + j.
class SparseTensor3 {
public:
    SparseTensor3() = default;
    SparseTensor3(Field f, std::size_t d1, std::size_t d2, std::size_t d3);

    Field field() const { return f_; }
    std::size_t dim1() const { return d1_; }
    std::size_t dim2() const { return d2_; }
    std::size_t dim3() const { return d3_; }

    const SparseVec& slice(std::size_t i, std::size_t j) const { return s_[i * d2_ + j]; }
    void set_slice(std::size_t i, std::size_t j, SparseVec v);
    Elem at(std::size_t i, std::size_t j, std::size_t k) const { return slice(i, j).at(k); }

    // sum_{i,j} x_i y_j T[i][j]
    SparseVec contract(const SparseVec& x, const SparseVec& y) const;

    friend bool operator==(const SparseTensor3& a, const SparseTensor3& b) {
        return a.d1_ == b.d1_ && a.d2_ == b.d2_ && a.d3_ == b.d3_ && a.s_ == b.s_;
    }

private:
    Field f_;
    std::size_t d1_ = 0, d2_ = 0, d3_ = 0;
    std::vector<SparseVec> s_;
};

// Subspace kept as reduced row echelon basis: leftmost unit pivots,
// every pivot column zero in all other rows, rows sorted by pivot.
class Subspace {
public:
    Subspace() = default;
    Subspace(Field f, std::size_t ambient);

    static Subspace span(Field f, std::size_t ambient, const std::vector<SparseVec>& vecs);
    static Subspace full(Field f, std::size_t ambient);

    Field field() const { return f_; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<SparseVec>& basis() const { return rows_; }
    const std::vector<std::int32_t>& pivots() const { return pivots_; }

    // Returns true when v was not already in the span.
    bool insert(const SparseVec& v);
    SparseVec reduce(const SparseVec& v) const;
    bool contains(const SparseVec& v) const { return reduce(v).is_zero(); }
    bool contains(const Subspace& o) const;
    // Coordinates of a member with respect to basis(); throws NoSolution otherwise.
    SparseVec coordinates(const SparseVec& v) const;

    Subspace sum(const Subspace& o) const;
    Subspace intersection(const Subspace& o) const;
    // {x : <x, v> = 0 for all v} under the standard pairing.
    Subspace annihilator() const;
    // Standard basis indices that are not pivots, ascending.
    std::vector<std::int32_t> free_indices() const;
    // ambient x dim matrix whose columns are basis().
    SparseMat basis_matrix() const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
    }

private:
    void require_same(const Subspace& o) const;
    Field f_;
    std::size_t ambient_ = 0;
    std::vector<SparseVec> rows_;
    std::vector<std::int32_t> pivots_;
    std::vector<std::int32_t> pivot_row_;  // column -> row, or -1
};

struct AffineSolution {
    SparseVec particular;
    Subspace kernel;
};

// All x with A x = b. Free variables are zero in the particular solution.
AffineSolution solve_affine(const SparseMat& a, const SparseVec& b);

// Row-major index helpers for tensor powers.
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) { return i * n + j; }

// x (dim m) tensor y (dim n) as a vector of dim m*n, index i*n + j.
SparseVec tensor(const SparseVec& x, const SparseVec& y);
// Swap the legs of a vector in V_m (x) V_n, producing V_n (x) V_m.
SparseVec flip(const SparseVec& v, std::size_t m, std::size_t n);
// (f (x) g) applied to a vector of V_m (x) V_n.
SparseVec apply_tensor(const SparseMat& f, const SparseMat& g, const SparseVec& v);
// Kronecker product of matrices.
SparseMat kron(const SparseMat& a, const SparseMat& b);

}  // namespace hopfq
