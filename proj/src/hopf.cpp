#include "hopfq/hopf.hpp"

#include <algorithm>
#include <sstream>

namespace hopfq {

HopfAlgebra::HopfAlgebra(Field f, std::vector<std::string> labels, SparseTensor3 mult, SparseVec unit,
                         SparseMat comult, SparseVec counit, SparseMat antipode)
    : f_(f),
      labels_(std::move(labels)),
      mult_(std::move(mult)),
      unit_(std::move(unit)),
      comult_(std::move(comult)),
      counit_(std::move(counit)),
      antipode_(std::move(antipode)) {
    const std::size_t n = labels_.size();
    if (mult_.dim1() != n || mult_.dim2() != n || mult_.dim3() != n || unit_.dim() != n ||
        comult_.rows() != n * n || comult_.cols() != n || counit_.dim() != n || antipode_.rows() != n ||
        antipode_.cols() != n)
        throw DimensionMismatch("Hopf algebra structure tensors do not match " + std::to_string(n) +
                                " basis labels");
}

Elem HopfAlgebra::epsilon(const SparseVec& x) const {
    Elem s = Field::zero();
    for (const auto& e : x.entries()) s = f_.add(s, f_.mul(e.value, counit_.at(e.index)));
    return s;
}

SparseVec HopfAlgebra::multiply2(const SparseVec& x, const SparseVec& y) const {
    return multiply_tensor({this, this}, x, y);
}

SparseVec HopfAlgebra::coproduct2(const SparseVec& x) const {
    SparseMat id = SparseMat::identity(f_, dim());
    return kron(comult_, id).apply(coproduct(x));
}

SparseVec multiply_tensor(const std::vector<const HopfAlgebra*>& legs, const SparseVec& x,
                          const SparseVec& y) {
    const Field f = x.field();
    std::size_t total = 1;
    for (auto* h : legs) total *= h->dim();
    if (x.dim() != total || y.dim() != total) throw DimensionMismatch("tensor product multiplication");
    const std::size_t k = legs.size();
    Accumulator acc(f, total);
    std::vector<std::size_t> ia(k), ib(k);
    std::vector<std::pair<std::size_t, Elem>> cur, next;
    for (const auto& a : x.entries()) {
        std::size_t r = a.index;
        for (std::size_t l = k; l-- > 0;) {
            ia[l] = r % legs[l]->dim();
            r /= legs[l]->dim();
        }
        for (const auto& b : y.entries()) {
            r = b.index;
            for (std::size_t l = k; l-- > 0;) {
                ib[l] = r % legs[l]->dim();
                r /= legs[l]->dim();
            }
            cur.assign(1, {0, f.mul(a.value, b.value)});
            for (std::size_t l = 0; l < k && !cur.empty(); ++l) {
                const auto& s = legs[l]->product(ia[l], ib[l]);
                next.clear();
                for (const auto& [idx, c] : cur)
                    for (const auto& e : s.entries())
                        next.emplace_back(idx * legs[l]->dim() + e.index, f.mul(c, e.value));
                std::swap(cur, next);
            }
            for (const auto& [idx, c] : cur) acc.add(idx, c);
        }
    }
    return acc.take();
}

// ------------------------------------------------------------ verification

bool VerificationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerificationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed) return &c;
    return nullptr;
}

const Check& VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw std::out_of_range("no check named " + name);
}

void VerificationReport::add(std::string name, bool passed, std::string witness) {
    checks.push_back({std::move(name), passed, std::move(witness)});
}

namespace {

std::string tuple_witness(const HopfAlgebra& h, std::initializer_list<std::size_t> idx) {
    std::string s = "(";
    bool first = true;
    for (auto i : idx) {
        if (!first) s += ", ";
        s += h.labels()[i];
        first = false;
    }
    return s + ")";
}

}  // namespace

VerificationReport verify_hopf(const HopfAlgebra& h, VerifyOptions opt) {
    const Field f = h.field();
    const std::size_t n = h.dim();
    const std::size_t stride = std::max<std::size_t>(1, opt.stride);
    VerificationReport rep;
    std::vector<SparseVec> delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = h.comult().col(i);

    // associativity
    {
        std::string w;
        Accumulator acc(f, n);
        for (std::size_t i = 0; i < n && w.empty(); i += stride)
            for (std::size_t j = 0; j < n && w.empty(); ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    for (const auto& e : h.product(i, j).entries()) acc.add(h.product(e.index, k), e.value);
                    SparseVec left = acc.take();
                    for (const auto& e : h.product(j, k).entries()) acc.add(h.product(i, e.index), e.value);
                    if (!(left == acc.take())) {
                        w = tuple_witness(h, {i, j, k});
                        break;
                    }
                }
        rep.add("associativity", w.empty(), w);
    }
    // unit
    {
        std::string w;
        for (std::size_t i = 0; i < n; ++i) {
            SparseVec e = h.basis(i);
            if (!(h.multiply(h.unit(), e) == e) || !(h.multiply(e, h.unit()) == e)) {
                w = tuple_witness(h, {i});
                break;
            }
        }
        rep.add("unit", w.empty(), w);
    }
    // counit
    {
        SparseMat eps_left = kron(SparseMat::from_rows(f, n, {h.counit()}), SparseMat::identity(f, n));
        SparseMat eps_right = kron(SparseMat::identity(f, n), SparseMat::from_rows(f, n, {h.counit()}));
        std::string w;
        for (std::size_t i = 0; i < n; ++i) {
            SparseVec e = h.basis(i);
            if (!(eps_left.apply(delta[i]) == e) || !(eps_right.apply(delta[i]) == e)) {
                w = tuple_witness(h, {i});
                break;
            }
        }
        rep.add("counit", w.empty(), w);
    }
    // coassociativity
    {
        SparseMat id = SparseMat::identity(f, n);
        SparseMat left = kron(h.comult(), id), right = kron(id, h.comult());
        std::string w;
        for (std::size_t i = 0; i < n; ++i)
            if (!(left.apply(delta[i]) == right.apply(delta[i]))) {
                w = tuple_witness(h, {i});
                break;
            }
        rep.add("coassociativity", w.empty(), w);
    }
    // bialgebra compatibility
    {
        std::string w;
        for (std::size_t i = 0; i < n && w.empty(); i += stride)
            for (std::size_t j = 0; j < n; ++j) {
                SparseVec lhs = h.coproduct(h.product(i, j));
                if (!(lhs == h.multiply2(delta[i], delta[j]))) {
                    w = tuple_witness(h, {i, j});
                    break;
                }
            }
        rep.add("comultiplication is multiplicative", w.empty(), w);
        w.clear();
        for (std::size_t i = 0; i < n && w.empty(); ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (h.epsilon(h.product(i, j)) != f.mul(h.counit().at(i), h.counit().at(j))) {
                    w = tuple_witness(h, {i, j});
                    break;
                }
        rep.add("counit is multiplicative", w.empty(), w);
        bool unit_ok = h.coproduct(h.unit()) == h.tensor_unit() && h.epsilon(h.unit()) == Field::one();
        rep.add("unit is grouplike", unit_ok);
    }
    // antipode
    {
        std::string w;
        for (std::size_t i = 0; i < n; ++i) {
            Accumulator l(f, n), r(f, n);
            for (const auto& e : delta[i].entries()) {
                std::size_t a = e.index / n, b = e.index % n;
                l.add(h.multiply(h.antipode().col(a), h.basis(b)), e.value);
                r.add(h.multiply(h.basis(a), h.antipode().col(b)), e.value);
            }
            SparseVec expect = h.unit().scaled(h.counit().at(i));
            if (!(l.take() == expect) || !(r.take() == expect)) {
                w = tuple_witness(h, {i});
                break;
            }
        }
        rep.add("antipode", w.empty(), w);
    }
    for (std::size_t i = 0; i < n && rep.commutative; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!(h.product(i, j) == h.product(j, i))) {
                rep.commutative = false;
                break;
            }
    for (std::size_t i = 0; i < n; ++i)
        if (!(flip(delta[i], n, n) == delta[i])) {
            rep.cocommutative = false;
            break;
        }
    rep.involutive = h.antipode() * h.antipode() == SparseMat::identity(f, n);
    return rep;
}

// ---------------------------------------------------------------- dual etc.

HopfAlgebra dual_hopf(const HopfAlgebra& h, std::vector<std::string> labels) {
    const Field f = h.field();
    const std::size_t n = h.dim();
    if (labels.empty())
        for (const auto& l : h.labels()) labels.push_back(l + "*");
    if (labels.size() != n) throw DimensionMismatch("dual basis labels");
    SparseTensor3 mult(f, n, n, n);
    std::vector<std::vector<std::vector<Entry>>> slices(n, std::vector<std::vector<Entry>>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (const auto& e : h.comult().col(k).entries())
            slices[e.index / n][e.index % n].push_back({static_cast<std::int32_t>(k), e.value});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mult.set_slice(i, j, SparseVec::from_sorted(f, n, std::move(slices[i][j])));
    std::vector<std::vector<Entry>> cols(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& e : h.product(i, j).entries())
                cols[e.index].push_back({static_cast<std::int32_t>(i * n + j), e.value});
    std::vector<SparseVec> comult;
    for (auto& c : cols) comult.push_back(SparseVec::from_sorted(f, n * n, std::move(c)));
    return HopfAlgebra(f, std::move(labels), std::move(mult), h.counit(),
                       SparseMat::from_columns(f, n * n, std::move(comult)), h.unit(), h.antipode().transpose());
}

HopfAlgebra variant(const HopfAlgebra& h, Variant which) {
    const Field f = h.field();
    const std::size_t n = h.dim();
    SparseMat s_inv;
    try {
        s_inv = h.antipode().inverse();
    } catch (const NotInvertible&) {
        throw AntipodeNotInvertible("antipode has no inverse");
    }
    if (which == Variant::op) {
        SparseTensor3 mult(f, n, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) mult.set_slice(i, j, h.product(j, i));
        return HopfAlgebra(f, h.labels(), std::move(mult), h.unit(), h.comult(), h.counit(), s_inv);
    }
    std::vector<SparseVec> cols;
    for (std::size_t i = 0; i < n; ++i) cols.push_back(flip(h.comult().col(i), n, n));
    return HopfAlgebra(f, h.labels(), h.mult(), h.unit(), SparseMat::from_columns(f, n * n, std::move(cols)),
                       h.counit(), s_inv);
}

HopfAlgebra tensor_hopf(const HopfAlgebra& a, const HopfAlgebra& b) {
    if (!(a.field() == b.field())) throw FieldMismatch("tensor product over different fields");
    const Field f = a.field();
    const std::size_t na = a.dim(), nb = b.dim(), n = na * nb;
    std::vector<std::string> labels;
    for (const auto& x : a.labels())
        for (const auto& y : b.labels()) labels.push_back(x + "(x)" + y);
    SparseTensor3 mult(f, n, n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            mult.set_slice(i, j, tensor(a.product(i / nb, j / nb), b.product(i % nb, j % nb)));
    // (A(x)B)(x)(A(x)B) from A(x)A(x)B(x)B by swapping the middle legs
    std::vector<SparseVec> cols;
    for (std::size_t i = 0; i < n; ++i) {
        SparseVec t = tensor(a.comult().col(i / nb), b.comult().col(i % nb));
        std::vector<Entry> e;
        for (const auto& x : t.entries()) {
            std::size_t r = x.index;
            std::size_t b2 = r % nb;
            r /= nb;
            std::size_t b1 = r % nb;
            r /= nb;
            std::size_t a2 = r % na, a1 = r / na;
            e.push_back({static_cast<std::int32_t>((a1 * nb + b1) * n + a2 * nb + b2), x.value});
        }
        cols.push_back(SparseVec::from_entries(f, n * n, std::move(e)));
    }
    return HopfAlgebra(f, std::move(labels), std::move(mult), tensor(a.unit(), b.unit()),
                       SparseMat::from_columns(f, n * n, std::move(cols)), tensor(a.counit(), b.counit()),
                       kron(a.antipode(), b.antipode()));
}

// ---------------------------------------------------------------- morphisms

MorphismReport is_algebra_map(const SparseMat& m, const HopfAlgebra& src, const HopfAlgebra& dst) {
    if (m.rows() != dst.dim() || m.cols() != src.dim()) throw DimensionMismatch("map shape");
    if (!(m.apply(src.unit()) == dst.unit())) return {false, "unit", ""};
    for (std::size_t i = 0; i < src.dim(); ++i)
        for (std::size_t j = 0; j < src.dim(); ++j)
            if (!(m.apply(src.product(i, j)) == dst.multiply(m.col(i), m.col(j))))
                return {false, "multiplication", tuple_witness(src, {i, j})};
    return {};
}

MorphismReport is_coalgebra_map(const SparseMat& m, const HopfAlgebra& src, const HopfAlgebra& dst) {
    if (m.rows() != dst.dim() || m.cols() != src.dim()) throw DimensionMismatch("map shape");
    for (std::size_t i = 0; i < src.dim(); ++i) {
        if (dst.epsilon(m.col(i)) != src.counit().at(i)) return {false, "counit", tuple_witness(src, {i})};
        if (!(apply_tensor(m, m, src.comult().col(i)) == dst.coproduct(m.col(i))))
            return {false, "comultiplication", tuple_witness(src, {i})};
    }
    return {};
}

MorphismReport is_hopf_morphism(const SparseMat& m, const HopfAlgebra& src, const HopfAlgebra& dst) {
    if (auto r = is_algebra_map(m, src, dst); !r) return r;
    if (auto r = is_coalgebra_map(m, src, dst); !r) return r;
    for (std::size_t i = 0; i < src.dim(); ++i)
        if (!(m.apply(src.antipode().col(i)) == dst.apply_antipode(m.col(i))))
            return {false, "antipode", tuple_witness(src, {i})};
    return {};
}

// ------------------------------------------------------------- convolution

SparseMat convolution(const SparseMat& f, const SparseMat& g, const HopfAlgebra& c, const HopfAlgebra& a) {
    const std::size_t n = c.dim();
    if (f.cols() != n || g.cols() != n || f.rows() != a.dim() || g.rows() != a.dim())
        throw DimensionMismatch("convolution operands");
    std::vector<SparseVec> cols;
    cols.reserve(n);
    Accumulator acc(a.field(), a.dim());
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& e : c.comult().col(i).entries())
            acc.add(a.multiply(f.col(e.index / n), g.col(e.index % n)), e.value);
        cols.push_back(acc.take());
    }
    return SparseMat::from_columns(a.field(), a.dim(), std::move(cols));
}

SparseMat convolution_unit(const HopfAlgebra& c, const HopfAlgebra& a) {
    std::vector<SparseVec> cols;
    for (std::size_t i = 0; i < c.dim(); ++i) cols.push_back(a.unit().scaled(c.counit().at(i)));
    return SparseMat::from_columns(a.field(), a.dim(), std::move(cols));
}

SparseMat convolution_inverse(const SparseMat& f, const HopfAlgebra& c, const HopfAlgebra& a) {
    const Field fld = a.field();
    const std::size_t n = c.dim(), m = a.dim();
    if (f.cols() != n || f.rows() != m) throw DimensionMismatch("convolution operand");
    // unknown g(e_b)[k] sits at b*m + k; equation (f * g)(e_i)[r] sits at i*m + r
    std::vector<std::vector<Entry>> cols(n * m);
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& e : c.comult().col(i).entries()) {
            std::size_t x = e.index / n, b = e.index % n;
            for (std::size_t k = 0; k < m; ++k)
                for (const auto& fe : f.col(x).entries())
                    for (const auto& pe : a.product(fe.index, k).entries())
                        cols[b * m + k].push_back({static_cast<std::int32_t>(i * m + pe.index),
                                                   fld.mul(e.value, fld.mul(fe.value, pe.value))});
        }
    std::vector<SparseVec> colv;
    colv.reserve(n * m);
    for (auto& col : cols) colv.push_back(SparseVec::from_entries(fld, n * m, std::move(col)));
    std::vector<Entry> rhs;
    for (std::size_t i = 0; i < n; ++i) {
        Elem ei = c.counit().at(i);
        for (const auto& u : a.unit().entries())
            rhs.push_back({static_cast<std::int32_t>(i * m + u.index), fld.mul(ei, u.value)});
    }
    AffineSolution sol;
    try {
        sol = solve_affine(SparseMat::from_columns(fld, n * m, std::move(colv)),
                           SparseVec::from_entries(fld, n * m, std::move(rhs)));
    } catch (const NoSolution&) {
        throw NotInvertible("map has no convolution inverse");
    }
    std::vector<std::vector<Entry>> gcols(n);
    for (const auto& e : sol.particular.entries())
        gcols[e.index / m].push_back({static_cast<std::int32_t>(e.index % m), e.value});
    std::vector<SparseVec> gv;
    for (auto& col : gcols) gv.push_back(SparseVec::from_sorted(fld, m, std::move(col)));
    SparseMat g = SparseMat::from_columns(fld, m, std::move(gv));
    if (!(convolution(g, f, c, a) == convolution_unit(c, a)))
        throw NotInvertible("map has a right but no left convolution inverse");
    return g;
}

// ------------------------------------------------------------- grouplikes

bool is_grouplike(const HopfAlgebra& h, const SparseVec& g) {
    return h.epsilon(g) == Field::one() && h.coproduct(g) == tensor(g, g);
}

Subspace two_sided_ideal(const HopfAlgebra& h, const std::vector<SparseVec>& gens) {
    Subspace s = Subspace::span(h.field(), h.dim(), gens);
    while (true) {
        auto basis = s.basis();
        std::size_t before = s.dim();
        for (const auto& v : basis)
            for (std::size_t i = 0; i < h.dim(); ++i) {
                s.insert(h.multiply(h.basis(i), v));
                s.insert(h.multiply(v, h.basis(i)));
            }
        if (s.dim() == before) break;
    }
    return s;
}

bool is_central(const HopfAlgebra& h, const SparseVec& x) {
    for (std::size_t i = 0; i < h.dim(); ++i) {
        SparseVec e = h.basis(i);
        if (!(h.multiply(x, e) == h.multiply(e, x))) return false;
    }
    return true;
}

namespace {

// Rationals: coordinates in {0, 1, -1} only.
std::vector<SparseVec> grouplikes_bounded(const HopfAlgebra& h, SearchBudget budget) {
    const Field f = h.field();
    const std::size_t n = h.dim();
    std::vector<Elem> values{Field::zero(), Field::one(), f.neg(Field::one())};
    double count = 1;
    for (std::size_t i = 0; i < n; ++i) count *= static_cast<double>(values.size());
    if (count > static_cast<double>(budget.candidates))
        throw FieldTooLargeForEnumeration("grouplike search needs " + std::to_string(count) +
                                          " candidates, budget " + std::to_string(budget.candidates));
    std::vector<SparseVec> out;
    std::vector<std::size_t> digit(n, 0);
    std::vector<Elem> cur(n, values[0]);
    while (n > 0) {
        SparseVec g = SparseVec::from_dense(f, cur);
        if (!g.is_zero() && is_grouplike(h, g)) out.push_back(g);
        std::size_t pos = n;
        while (pos > 0) {
            --pos;
            if (++digit[pos] < values.size()) {
                cur[pos] = values[digit[pos]];
                break;
            }
            digit[pos] = 0;
            cur[pos] = values[0];
            if (pos == 0) return out;
        }
    }
    return out;
}

}  // namespace

// A grouplike g is a common eigenvector of every x -> (id (x) e_j^*) Delta(x),
// with eigenvalue its own j-th coordinate. Split H into common eigenspaces one
// coordinate at a time, trying every field element as eigenvalue.
std::vector<SparseVec> grouplikes(const HopfAlgebra& h, SearchBudget budget) {
    const Field f = h.field();
    if (!f.is_finite()) return grouplikes_bounded(h, budget);
    const std::size_t n = h.dim();
    std::vector<std::vector<std::vector<Entry>>> ops(n, std::vector<std::vector<Entry>>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (const auto& e : h.comult().col(i).entries())
            ops[e.index % n][i].push_back({static_cast<std::int32_t>(e.index / n), e.value});
    std::vector<SparseMat> right(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<SparseVec> cols;
        for (auto& c : ops[j]) cols.push_back(SparseVec::from_entries(f, n, std::move(c)));
        right[j] = SparseMat::from_columns(f, n, std::move(cols));
    }
    const auto values = f.elements();
    std::size_t work = 0;
    struct Node {
        Subspace space;
        std::vector<Elem> eigen;
    };
    std::vector<Node> level{{Subspace::full(f, n), {}}};
    for (std::size_t j = 0; j < n && !level.empty(); ++j) {
        std::vector<Node> next;
        for (const auto& node : level) {
            SparseMat b = node.space.basis_matrix();
            SparseMat image = right[j] * b;
            for (const auto& lam : values) {
                if (++work > budget.candidates)
                    throw FieldTooLargeForEnumeration("grouplike search exceeded " +
                                                      std::to_string(budget.candidates) + " eigenspace steps");
                std::vector<SparseVec> shifted;
                for (std::size_t c = 0; c < b.cols(); ++c) shifted.push_back(image.col(c) - b.col(c).scaled(lam));
                Subspace ker = SparseMat::from_columns(f, n, std::move(shifted)).kernel();
                if (ker.dim() == 0) continue;
                std::vector<SparseVec> vecs;
                for (const auto& k : ker.basis()) vecs.push_back(b.apply(k));
                Node child{Subspace::span(f, n, vecs), node.eigen};
                child.eigen.push_back(lam);
                next.push_back(std::move(child));
            }
        }
        level = std::move(next);
    }
    std::vector<SparseVec> out;
    for (const auto& node : level) {
        if (node.eigen.size() != n) continue;
        SparseVec g = SparseVec::from_dense(f, node.eigen);
        if (!g.is_zero() && node.space.contains(g) && is_grouplike(h, g)) out.push_back(g);
    }
    auto key = [&](const SparseVec& v) {
        std::vector<std::int64_t> k;
        for (const auto& x : v.dense()) k.push_back(f.code(x));
        return k;
    };
    std::sort(out.begin(), out.end(), [&](const SparseVec& a, const SparseVec& b) { return key(a) < key(b); });
    return out;
}

std::vector<SparseVec> primitives(const HopfAlgebra& h) {
    const Field f = h.field();
    std::vector<SparseVec> cols;
    for (std::size_t i = 0; i < h.dim(); ++i) {
        SparseVec e = h.basis(i);
        cols.push_back(h.comult().col(i) - tensor(e, h.unit()) - tensor(h.unit(), e));
    }
    return SparseMat::from_columns(f, h.dim() * h.dim(), std::move(cols)).kernel().basis();
}

// ---------------------------------------------------------------- printing

std::string format_vector(const HopfAlgebra& h, const SparseVec& v) {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& e : v.entries()) {
        if (!first) os << " + ";
        first = false;
        if (e.value != Field::one()) os << h.field().format(e.value) << "*";
        os << h.labels()[e.index];
    }
    return os.str();
}

std::string format_tensor(const HopfAlgebra& a, const HopfAlgebra& b, const SparseVec& v) {
    if (v.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& e : v.entries()) {
        if (!first) os << " + ";
        first = false;
        if (e.value != Field::one()) os << a.field().format(e.value) << "*";
        os << a.labels()[e.index / b.dim()] << "(x)" << b.labels()[e.index % b.dim()];
    }
    return os.str();
}

}  // namespace hopfq
