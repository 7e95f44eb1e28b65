#include "hopfq/double.hpp"

#include <functional>

namespace hopfq {

namespace {

std::int32_t idx(std::size_t i) { return static_cast<std::int32_t>(i); }

// x in H (x) H placed on legs (first, second) of H^(x)3, unit on the remaining leg.
SparseVec place(const HopfAlgebra& h, const SparseVec& x, int first, int second) {
    const std::size_t n = h.dim();
    Accumulator acc(h.field(), n * n * n);
    for (const auto& e : x.entries()) {
        std::size_t a = e.index / n, b = e.index % n;
        for (const auto& u : h.unit().entries()) {
            std::size_t leg[3];
            leg[first] = a;
            leg[second] = b;
            leg[3 - first - second] = u.index;
            acc.add((leg[0] * n + leg[1]) * n + leg[2], h.field().mul(e.value, u.value));
        }
    }
    return acc.take();
}

std::string first_bad_basis(const HopfAlgebra& h, const std::function<bool(std::size_t)>& ok) {
    for (std::size_t i = 0; i < h.dim(); ++i)
        if (!ok(i)) return h.labels()[i];
    return {};
}

SparseVec solve_left_multiplication(const SparseMat& left_mult, const SparseVec& target) {
    return solve_affine(left_mult, target).particular;
}

}  // namespace

DoubleData drinfeld_double(const GroupScheme& g) {
    const HopfAlgebra& kg = g.group_algebra;
    const HopfAlgebra& o = g.coordinate_algebra;
    const Field f = kg.field();
    const std::size_t n = kg.dim(), nn = n * n;
    std::vector<SparseMat> coadj(n);
    for (std::size_t a = 0; a < n; ++a) coadj[a] = ad_right_matrix(kg, kg.basis(a)).transpose();

    std::vector<std::string> labels;
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t u = 0; u < n; ++u) labels.push_back(o.labels()[b] + "#" + kg.labels()[u]);

    SparseTensor3 mult(f, nn, nn, nn);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const SparseVec& dj = kg.comult().col(j);
            for (std::size_t k = 0; k < n; ++k) {
                std::vector<SparseVec> left;
                for (const auto& e : dj.entries())
                    left.push_back(o.multiply(o.basis(i), coadj[e.index / n].col(k)));
                for (std::size_t l = 0; l < n; ++l) {
                    Accumulator acc(f, nn);
                    std::size_t t = 0;
                    for (const auto& e : dj.entries()) {
                        const SparseVec& lv = left[t++];
                        if (lv.is_zero()) continue;
                        const SparseVec& rv = kg.product(e.index % n, l);
                        for (const auto& x : lv.entries())
                            for (const auto& y : rv.entries())
                                acc.add(x.index * n + y.index, f.mul(e.value, f.mul(x.value, y.value)));
                    }
                    mult.set_slice(i * n + j, k * n + l, acc.take());
                }
            }
        }

    // (b2 # u1) (x) (b1 # u2)
    std::vector<SparseVec> comult;
    std::vector<Elem> counit(nn);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t u = 0; u < n; ++u) {
            Accumulator acc(f, nn * nn);
            for (const auto& db : o.comult().col(b).entries()) {
                std::size_t b1 = db.index / n, b2 = db.index % n;
                for (const auto& du : kg.comult().col(u).entries()) {
                    std::size_t u1 = du.index / n, u2 = du.index % n;
                    acc.add((b2 * n + u1) * nn + b1 * n + u2, f.mul(db.value, du.value));
                }
            }
            comult.push_back(acc.take());
            counit[b * n + u] = f.mul(o.counit().at(b), kg.counit().at(u));
        }

    DoubleData d;
    d.embed_o = SparseMat(f, nn, n);
    d.embed_kg = SparseMat(f, nn, n);
    d.proj_kg = SparseMat(f, n, nn);
    for (std::size_t b = 0; b < n; ++b) {
        d.embed_o.set_col(b, SparseVec::from_sorted(f, nn, [&] {
                              std::vector<Entry> e;
                              for (const auto& x : kg.unit().entries()) e.push_back({idx(b * n + x.index), x.value});
                              return e;
                          }()));
        for (std::size_t u = 0; u < n; ++u) {
            Elem eb = o.counit().at(b);
            if (!Field::is_zero(eb)) d.proj_kg.set_col(b * n + u, SparseVec::unit(f, n, u, eb));
        }
    }
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<Entry> e;
        for (const auto& x : o.unit().entries()) e.push_back({idx(x.index * n + u), x.value});
        d.embed_kg.set_col(u, SparseVec::from_entries(f, nn, std::move(e)));
    }
    SparseVec unit = d.embed_kg.apply(kg.unit());

    // S(b # u) = (1 # S(u)) (S(b) # 1)
    SparseMat anti(f, nn, nn);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t u = 0; u < n; ++u)
            anti.set_col(b * n + u, mult.contract(d.embed_kg.apply(kg.antipode().col(u)),
                                                  d.embed_o.apply(o.antipode().col(b))));
    d.algebra = HopfAlgebra(f, std::move(labels), std::move(mult), unit,
                            SparseMat::from_columns(f, nn * nn, std::move(comult)), SparseVec::from_dense(f, counit),
                            anti);
    return d;
}

QuasiHopfData canonical_r_and_v(const GroupScheme& g, const DoubleData& d) {
    const HopfAlgebra& o = g.coordinate_algebra;
    const Field f = g.field();
    const std::size_t n = g.order(), nn = n * n;
    // dual bases of k[G] and O(G) pair to the identity
    Accumulator r(f, nn * nn), v(f, nn);
    for (std::size_t u = 0; u < n; ++u) {
        r.add(tensor(d.embed_kg.col(u), d.embed_o.col(u)));
        for (const auto& e : o.antipode().col(u).entries()) v.add(e.index * n + u, e.value);
    }
    return {d.algebra, r.take(), v.take()};
}

std::optional<SparseVec> tensor_inverse(const HopfAlgebra& h, const SparseVec& x) {
    const std::size_t n2 = h.dim() * h.dim();
    std::vector<SparseVec> cols;
    for (std::size_t j = 0; j < n2; ++j) cols.push_back(h.multiply2(x, SparseVec::unit(h.field(), n2, j)));
    SparseVec y;
    try {
        y = solve_left_multiplication(SparseMat::from_columns(h.field(), n2, std::move(cols)), h.tensor_unit());
    } catch (const NoSolution&) {
        return std::nullopt;
    }
    if (!(h.multiply2(y, x) == h.tensor_unit())) return std::nullopt;
    return y;
}

std::optional<SparseVec> element_inverse(const HopfAlgebra& h, const SparseVec& x) {
    std::vector<SparseVec> cols;
    for (std::size_t j = 0; j < h.dim(); ++j) cols.push_back(h.multiply(x, h.basis(j)));
    SparseVec y;
    try {
        y = solve_left_multiplication(SparseMat::from_columns(h.field(), h.dim(), std::move(cols)), h.unit());
    } catch (const NoSolution&) {
        return std::nullopt;
    }
    if (!(h.multiply(y, x) == h.unit())) return std::nullopt;
    return y;
}

SparseVec monodromy(const HopfAlgebra& h, const SparseVec& r) {
    return h.multiply2(flip(r, h.dim(), h.dim()), r);
}

VerificationReport verify_quasitriangular(const QuasiHopfData& q) {
    const HopfAlgebra& h = q.algebra;
    const std::size_t n = h.dim();
    VerificationReport rep;
    // (S (x) id) R is the inverse whenever R is an R-matrix; fall back to a solve otherwise
    SparseMat id = SparseMat::identity(h.field(), n);
    SparseVec cand = apply_tensor(h.antipode(), id, q.r);
    bool invertible = h.multiply2(cand, q.r) == h.tensor_unit() && h.multiply2(q.r, cand) == h.tensor_unit();
    if (!invertible) invertible = tensor_inverse(h, q.r).has_value();
    rep.add("R invertible", invertible);

    std::string w = first_bad_basis(h, [&](std::size_t i) {
        const SparseVec& d = h.comult().col(i);
        return h.multiply2(q.r, d) == h.multiply2(flip(d, n, n), q.r);
    });
    rep.add("R Delta(h) = Delta^cop(h) R", w.empty(), w);

    const std::vector<const HopfAlgebra*> legs{&h, &h, &h};
    SparseVec r13 = place(h, q.r, 0, 2), r23 = place(h, q.r, 1, 2), r12 = place(h, q.r, 0, 1);
    SparseVec delta_left = apply_tensor(h.comult(), id, q.r);
    rep.add("(Delta x id) R = R13 R23", delta_left == multiply_tensor(legs, r13, r23));
    SparseVec delta_right = apply_tensor(id, h.comult(), q.r);
    rep.add("(id x Delta) R = R13 R12", delta_right == multiply_tensor(legs, r13, r12));

    SparseMat eps_row = SparseMat::from_rows(h.field(), n, {h.counit()});
    SparseVec eps_r = apply_tensor(eps_row, id, q.r);
    rep.add("(eps x id) R = 1", eps_r == h.unit());
    return rep;
}

VerificationReport verify_ribbon(const QuasiHopfData& q) {
    if (!q.v) throw MissingRibbonElement("no ribbon element supplied");
    const HopfAlgebra& h = q.algebra;
    const SparseVec& v = *q.v;
    VerificationReport rep;
    rep.add("V central", first_bad_basis(h, [&](std::size_t i) {
                             return h.multiply(v, h.basis(i)) == h.multiply(h.basis(i), v);
                         }).empty());
    rep.add("V invertible", element_inverse(h, v).has_value());
    rep.add("S(V) = V", h.apply_antipode(v) == v);
    rep.add("eps(V) = 1", h.epsilon(v) == Field::one());
    SparseVec lhs = h.multiply2(monodromy(h, q.r), h.coproduct(v));
    rep.add("Delta(V) = (R21 R)^-1 (V x V)", lhs == tensor(v, v));
    return rep;
}

bool is_triangular(const QuasiHopfData& q) { return monodromy(q.algebra, q.r) == q.algebra.tensor_unit(); }

bool is_factorizable(const QuasiHopfData& q) {
    const std::size_t n = q.algebra.dim();
    SparseVec m = monodromy(q.algebra, q.r);
    // row i of the reshaped monodromy is (e_i^* (x) id)(R21 R)
    std::vector<std::vector<Entry>> rows(n);
    for (const auto& e : m.entries()) rows[e.index / n].push_back({idx(e.index % n), e.value});
    std::vector<SparseVec> cols;
    for (auto& r : rows) cols.push_back(SparseVec::from_sorted(q.algebra.field(), n, std::move(r)));
    return SparseMat::from_columns(q.algebra.field(), n, std::move(cols)).rank() == n;
}

}  // namespace hopfq
