#include "hopfq/linalg.hpp"

#include <algorithm>
#include <string>

namespace hopfq {

// ---------------------------------------------------------------- SparseVec

SparseVec SparseVec::unit(Field f, std::size_t dim, std::size_t i) {
    return unit(f, dim, i, Field::one());
}

SparseVec SparseVec::unit(Field f, std::size_t dim, std::size_t i, Elem c) {
    if (i >= dim) throw DimensionMismatch("unit vector index out of range");
    SparseVec v(f, dim);
    if (!Field::is_zero(c)) v.e_.push_back({static_cast<std::int32_t>(i), c});
    return v;
}

SparseVec SparseVec::from_dense(Field f, const std::vector<Elem>& d) {
    SparseVec v(f, d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!Field::is_zero(d[i])) v.e_.push_back({static_cast<std::int32_t>(i), d[i]});
    return v;
}

SparseVec SparseVec::from_entries(Field f, std::size_t dim, std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.index < b.index; });
    SparseVec v(f, dim);
    for (const auto& e : entries) {
        if (e.index < 0 || static_cast<std::size_t>(e.index) >= dim)
            throw DimensionMismatch("entry index " + std::to_string(e.index) + " out of range");
        if (!v.e_.empty() && v.e_.back().index == e.index)
            v.e_.back().value = f.add(v.e_.back().value, e.value);
        else
            v.e_.push_back(e);
    }
    std::erase_if(v.e_, [](const Entry& e) { return Field::is_zero(e.value); });
    return v;
}

SparseVec SparseVec::from_sorted(Field f, std::size_t dim, std::vector<Entry> entries) {
    SparseVec v(f, dim);
    v.e_ = std::move(entries);
    return v;
}

Elem SparseVec::at(std::size_t i) const {
    auto it = std::lower_bound(e_.begin(), e_.end(), static_cast<std::int32_t>(i),
                               [](const Entry& e, std::int32_t k) { return e.index < k; });
    if (it != e_.end() && it->index == static_cast<std::int32_t>(i)) return it->value;
    return Field::zero();
}

std::vector<Elem> SparseVec::dense() const {
    std::vector<Elem> d(dim_, Field::zero());
    for (const auto& e : e_) d[e.index] = e.value;
    return d;
}

void SparseVec::require_same(const SparseVec& o) const {
    if (dim_ != o.dim_)
        throw DimensionMismatch("vector dimensions " + std::to_string(dim_) + " and " +
                                std::to_string(o.dim_));
}

void SparseVec::axpy(Elem c, const SparseVec& x) {
    require_same(x);
    if (Field::is_zero(c) || x.e_.empty()) return;
    std::vector<Entry> out;
    out.reserve(e_.size() + x.e_.size());
    auto a = e_.begin(), ae = e_.end();
    auto b = x.e_.begin(), be = x.e_.end();
    const bool unit = c == Field::one();
    while (a != ae || b != be) {
        if (b == be || (a != ae && a->index < b->index)) {
            out.push_back(*a++);
        } else {
            Elem t = unit ? b->value : f_.mul(c, b->value);
            if (a != ae && a->index == b->index) {
                t = f_.add(a->value, t);
                ++a;
            }
            if (!Field::is_zero(t)) out.push_back({b->index, t});
            ++b;
        }
    }
    e_ = std::move(out);
}

SparseVec SparseVec::operator+(const SparseVec& o) const {
    SparseVec r = *this;
    r.axpy(Field::one(), o);
    return r;
}

SparseVec SparseVec::operator-(const SparseVec& o) const {
    SparseVec r = *this;
    r.axpy(f_.neg(Field::one()), o);
    return r;
}

SparseVec SparseVec::operator-() const { return scaled(f_.neg(Field::one())); }

SparseVec SparseVec::scaled(Elem c) const {
    SparseVec r(f_, dim_);
    if (Field::is_zero(c)) return r;
    r.e_.reserve(e_.size());
    for (const auto& e : e_) r.e_.push_back({e.index, f_.mul(c, e.value)});
    return r;
}

// ------------------------------------------------------------- Accumulator

Accumulator::Accumulator(Field f, std::size_t dim) : f_(f), buf_(dim), mark_(dim, 0) {}

void Accumulator::add(std::size_t i, Elem v) {
    if (Field::is_zero(v)) return;
    if (!mark_[i]) {
        mark_[i] = 1;
        touched_.push_back(static_cast<std::int32_t>(i));
        buf_[i] = v;
    } else {
        buf_[i] = f_.add(buf_[i], v);
    }
}

void Accumulator::add(const SparseVec& x, Elem c) {
    if (x.dim() != buf_.size()) throw DimensionMismatch("accumulator dimension");
    if (Field::is_zero(c)) return;
    const bool unit = c == Field::one();
    for (const auto& e : x.entries()) add(e.index, unit ? e.value : f_.mul(c, e.value));
}

SparseVec Accumulator::take() {
    std::sort(touched_.begin(), touched_.end());
    std::vector<Entry> out;
    out.reserve(touched_.size());
    for (auto i : touched_) {
        if (!Field::is_zero(buf_[i])) out.push_back({i, buf_[i]});
        buf_[i] = Field::zero();
        mark_[i] = 0;
    }
    touched_.clear();
    return SparseVec::from_sorted(f_, buf_.size(), std::move(out));
}

// --------------------------------------------------------------- SparseMat

SparseMat::SparseMat(Field f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols, SparseVec(f, rows)) {}

SparseMat SparseMat::identity(Field f, std::size_t n) {
    SparseMat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.cols_[i] = SparseVec::unit(f, n, i);
    return m;
}

SparseMat SparseMat::from_columns(Field f, std::size_t rows, std::vector<SparseVec> cols) {
    SparseMat m(f, rows, 0);
    for (auto& c : cols)
        if (c.dim() != rows) throw DimensionMismatch("column length");
    m.cols_ = std::move(cols);
    return m;
}

SparseMat SparseMat::from_rows(Field f, std::size_t cols, const std::vector<SparseVec>& rows) {
    std::vector<std::vector<Entry>> c(cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].dim() != cols) throw DimensionMismatch("row length");
        for (const auto& e : rows[i].entries())
            c[e.index].push_back({static_cast<std::int32_t>(i), e.value});
    }
    SparseMat m(f, rows.size(), 0);
    m.cols_.reserve(cols);
    for (auto& entries : c) m.cols_.push_back(SparseVec::from_sorted(f, rows.size(), std::move(entries)));
    return m;
}

SparseMat SparseMat::from_dense(Field f, const std::vector<std::vector<Elem>>& rows) {
    std::vector<SparseVec> r;
    std::size_t cols = rows.empty() ? 0 : rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != cols) throw DimensionMismatch("ragged dense matrix");
        r.push_back(SparseVec::from_dense(f, row));
    }
    return from_rows(f, cols, r);
}

void SparseMat::set_col(std::size_t j, SparseVec v) {
    if (v.dim() != rows_) throw DimensionMismatch("column length");
    cols_[j] = std::move(v);
}

SparseVec SparseMat::apply(const SparseVec& x) const {
    if (x.dim() != cols_.size())
        throw DimensionMismatch("matrix with " + std::to_string(cols_.size()) +
                                " columns applied to vector of dim " + std::to_string(x.dim()));
    if (x.nnz() == 1) return cols_[x.entries()[0].index].scaled(x.entries()[0].value);
    Accumulator acc(f_, rows_);
    for (const auto& e : x.entries()) acc.add(cols_[e.index], e.value);
    return acc.take();
}

SparseMat SparseMat::operator*(const SparseMat& o) const {
    if (cols_.size() != o.rows_) throw DimensionMismatch("matrix product");
    SparseMat r(f_, rows_, 0);
    r.cols_.reserve(o.cols());
    Accumulator acc(f_, rows_);
    for (const auto& c : o.cols_) {
        for (const auto& e : c.entries()) acc.add(cols_[e.index], e.value);
        r.cols_.push_back(acc.take());
    }
    return r;
}

SparseMat SparseMat::operator+(const SparseMat& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) throw DimensionMismatch("matrix sum");
    SparseMat r = *this;
    for (std::size_t j = 0; j < cols(); ++j) r.cols_[j].axpy(Field::one(), o.cols_[j]);
    return r;
}

SparseMat SparseMat::operator-(const SparseMat& o) const {
    if (rows_ != o.rows_ || cols() != o.cols()) throw DimensionMismatch("matrix difference");
    SparseMat r = *this;
    for (std::size_t j = 0; j < cols(); ++j) r.cols_[j].axpy(f_.neg(Field::one()), o.cols_[j]);
    return r;
}

std::vector<SparseVec> SparseMat::row_vectors() const {
    std::vector<std::vector<Entry>> r(rows_);
    for (std::size_t j = 0; j < cols_.size(); ++j)
        for (const auto& e : cols_[j].entries()) r[e.index].push_back({static_cast<std::int32_t>(j), e.value});
    std::vector<SparseVec> out;
    out.reserve(rows_);
    for (auto& entries : r) out.push_back(SparseVec::from_sorted(f_, cols_.size(), std::move(entries)));
    return out;
}

SparseMat SparseMat::transpose() const { return from_columns(f_, cols_.size(), row_vectors()); }

std::size_t SparseMat::rank() const { return image().dim(); }

Subspace SparseMat::image() const { return Subspace::span(f_, rows_, cols_); }

Subspace SparseMat::kernel() const {
    return Subspace::span(f_, cols_.size(), row_vectors()).annihilator();
}

bool SparseMat::is_zero() const {
    return std::all_of(cols_.begin(), cols_.end(), [](const SparseVec& c) { return c.is_zero(); });
}

SparseMat SparseMat::inverse() const {
    const std::size_t n = rows_;
    if (cols_.size() != n) throw NotInvertible("non-square matrix");
    auto rows = row_vectors();
    Subspace s(f_, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Entry> e = rows[i].entries();
        e.push_back({static_cast<std::int32_t>(n + i), Field::one()});
        s.insert(SparseVec::from_sorted(f_, 2 * n, std::move(e)));
    }
    if (s.dim() != n || (n > 0 && s.pivots().back() != static_cast<std::int32_t>(n - 1)))
        throw NotInvertible("singular matrix");
    std::vector<SparseVec> inv_rows;
    inv_rows.reserve(n);
    for (const auto& r : s.basis()) {
        std::vector<Entry> e;
        for (const auto& x : r.entries())
            if (x.index >= static_cast<std::int32_t>(n))
                e.push_back({static_cast<std::int32_t>(x.index - n), x.value});
        inv_rows.push_back(SparseVec::from_sorted(f_, n, std::move(e)));
    }
    return from_rows(f_, n, inv_rows);
}

// ----------------------------------------------------------- SparseTensor3

SparseTensor3::SparseTensor3(Field f, std::size_t d1, std::size_t d2, std::size_t d3)
    : f_(f), d1_(d1), d2_(d2), d3_(d3), s_(d1 * d2, SparseVec(f, d3)) {}

void SparseTensor3::set_slice(std::size_t i, std::size_t j, SparseVec v) {
    if (v.dim() != d3_) throw DimensionMismatch("tensor slice length");
    s_[i * d2_ + j] = std::move(v);
}

SparseVec SparseTensor3::contract(const SparseVec& x, const SparseVec& y) const {
    if (x.dim() != d1_ || y.dim() != d2_) throw DimensionMismatch("tensor contraction");
    if (x.nnz() == 1 && y.nnz() == 1)
        return slice(x.entries()[0].index, y.entries()[0].index)
            .scaled(f_.mul(x.entries()[0].value, y.entries()[0].value));
    Accumulator acc(f_, d3_);
    for (const auto& a : x.entries())
        for (const auto& b : y.entries()) acc.add(slice(a.index, b.index), f_.mul(a.value, b.value));
    return acc.take();
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(Field f, std::size_t ambient) : f_(f), ambient_(ambient), pivot_row_(ambient, -1) {}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<SparseVec>& vecs) {
    Subspace s(f, ambient);
    for (const auto& v : vecs) s.insert(v);
    return s;
}

Subspace Subspace::full(Field f, std::size_t ambient) {
    Subspace s(f, ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
        s.rows_.push_back(SparseVec::unit(f, ambient, i));
        s.pivots_.push_back(static_cast<std::int32_t>(i));
        s.pivot_row_[i] = static_cast<std::int32_t>(i);
    }
    return s;
}

SparseVec Subspace::reduce(const SparseVec& v) const {
    if (v.dim() != ambient_) throw DimensionMismatch("subspace ambient dimension");
    SparseVec r = v;
    for (const auto& e : v.entries()) {
        std::int32_t row = pivot_row_[e.index];
        if (row >= 0) r.axpy(f_.neg(e.value), rows_[row]);
    }
    return r;
}

bool Subspace::insert(const SparseVec& v) {
    SparseVec w = reduce(v);
    if (w.is_zero()) return false;
    const std::int32_t piv = w.leading_index();
    w = w.scaled(f_.inv(w.entries().front().value));
    for (auto& row : rows_) {
        Elem c = row.at(piv);
        if (!Field::is_zero(c)) row.axpy(f_.neg(c), w);
    }
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), piv) - pivots_.begin();
    pivots_.insert(pivots_.begin() + pos, piv);
    rows_.insert(rows_.begin() + pos, std::move(w));
    for (std::size_t r = pos; r < rows_.size(); ++r) pivot_row_[pivots_[r]] = static_cast<std::int32_t>(r);
    return true;
}

bool Subspace::contains(const Subspace& o) const {
    require_same(o);
    return std::all_of(o.rows_.begin(), o.rows_.end(), [&](const SparseVec& v) { return contains(v); });
}

SparseVec Subspace::coordinates(const SparseVec& v) const {
    if (!contains(v)) throw NoSolution("vector is not in the subspace");
    std::vector<Entry> out;
    for (const auto& e : v.entries()) {
        std::int32_t row = pivot_row_[e.index];
        if (row >= 0) out.push_back({row, e.value});
    }
    return SparseVec::from_entries(f_, rows_.size(), std::move(out));
}

void Subspace::require_same(const Subspace& o) const {
    if (ambient_ != o.ambient_) throw DimensionMismatch("subspaces of different ambient spaces");
}

Subspace Subspace::sum(const Subspace& o) const {
    require_same(o);
    Subspace s = *this;
    for (const auto& v : o.rows_) s.insert(v);
    return s;
}

Subspace Subspace::intersection(const Subspace& o) const {
    require_same(o);
    return annihilator().sum(o.annihilator()).annihilator();
}

Subspace Subspace::annihilator() const {
    // kernel vector for free column c: x_c = 1, x_{pivot r} = -row_r[c]
    std::vector<std::vector<Entry>> parts(ambient_);
    for (std::size_t r = 0; r < rows_.size(); ++r)
        for (const auto& e : rows_[r].entries())
            if (e.index != pivots_[r]) parts[e.index].push_back({pivots_[r], f_.neg(e.value)});
    Subspace s(f_, ambient_);
    for (auto c : free_indices()) {
        auto entries = std::move(parts[c]);
        entries.push_back({c, Field::one()});
        s.insert(SparseVec::from_entries(f_, ambient_, std::move(entries)));
    }
    return s;
}

std::vector<std::int32_t> Subspace::free_indices() const {
    std::vector<std::int32_t> out;
    for (std::size_t i = 0; i < ambient_; ++i)
        if (pivot_row_[i] < 0) out.push_back(static_cast<std::int32_t>(i));
    return out;
}

SparseMat Subspace::basis_matrix() const { return SparseMat::from_columns(f_, ambient_, rows_); }

// ------------------------------------------------------------ free functions

AffineSolution solve_affine(const SparseMat& a, const SparseVec& b) {
    const Field f = a.field();
    const std::size_t n = a.cols();
    if (b.dim() != a.rows()) throw DimensionMismatch("right-hand side length");
    auto rows = a.row_vectors();
    Subspace aug(f, n + 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<Entry> e = rows[i].entries();
        Elem bi = b.at(i);
        if (!Field::is_zero(bi)) e.push_back({static_cast<std::int32_t>(n), bi});
        aug.insert(SparseVec::from_sorted(f, n + 1, std::move(e)));
    }
    if (!aug.pivots().empty() && aug.pivots().back() == static_cast<std::int32_t>(n))
        throw NoSolution("inconsistent linear system");
    std::vector<Entry> part;
    Subspace row_space(f, n);
    for (std::size_t r = 0; r < aug.dim(); ++r) {
        const auto& row = aug.basis()[r];
        Elem last = row.at(n);
        if (!Field::is_zero(last)) part.push_back({aug.pivots()[r], last});
        std::vector<Entry> e = row.entries();
        if (!e.empty() && e.back().index == static_cast<std::int32_t>(n)) e.pop_back();
        row_space.insert(SparseVec::from_sorted(f, n, std::move(e)));
    }
    return {SparseVec::from_entries(f, n, std::move(part)), row_space.annihilator()};
}

SparseVec tensor(const SparseVec& x, const SparseVec& y) {
    const std::size_t n = y.dim();
    std::vector<Entry> out;
    out.reserve(x.nnz() * y.nnz());
    const Field f = x.field();
    for (const auto& a : x.entries())
        for (const auto& b : y.entries())
            out.push_back({static_cast<std::int32_t>(a.index * n + b.index), f.mul(a.value, b.value)});
    return SparseVec::from_sorted(f, x.dim() * n, std::move(out));
}

SparseVec flip(const SparseVec& v, std::size_t m, std::size_t n) {
    if (v.dim() != m * n) throw DimensionMismatch("flip of a tensor");
    std::vector<Entry> out;
    out.reserve(v.nnz());
    for (const auto& e : v.entries()) {
        std::size_t i = e.index / n, j = e.index % n;
        out.push_back({static_cast<std::int32_t>(j * m + i), e.value});
    }
    return SparseVec::from_entries(v.field(), m * n, std::move(out));
}

SparseVec apply_tensor(const SparseMat& f, const SparseMat& g, const SparseVec& v) {
    const std::size_t m = f.cols(), n = g.cols();
    if (v.dim() != m * n) throw DimensionMismatch("tensor map input");
    Accumulator acc(f.field(), f.rows() * g.rows());
    for (const auto& e : v.entries()) {
        const auto& a = f.col(e.index / n);
        const auto& b = g.col(e.index % n);
        for (const auto& x : a.entries()) {
            Elem c = f.field().mul(e.value, x.value);
            for (const auto& y : b.entries())
                acc.add(static_cast<std::size_t>(x.index) * g.rows() + y.index, f.field().mul(c, y.value));
        }
    }
    return acc.take();
}

SparseMat kron(const SparseMat& a, const SparseMat& b) {
    std::vector<SparseVec> cols;
    cols.reserve(a.cols() * b.cols());
    for (std::size_t i = 0; i < a.cols(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) cols.push_back(tensor(a.col(i), b.col(j)));
    return SparseMat::from_columns(a.field(), a.rows() * b.rows(), std::move(cols));
}

}  // namespace hopfq
