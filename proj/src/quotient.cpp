#include "hopfq/quotient.hpp"

namespace hopfq {

namespace {

std::int32_t idx(std::size_t i) { return static_cast<std::int32_t>(i); }

struct Split3 {
    std::size_t a, b, c;
    Elem value;
};

std::vector<Split3> split3(const SparseVec& v, std::size_t n) {
    std::vector<Split3> out;
    for (const auto& e : v.entries()) {
        std::size_t i = e.index;
        out.push_back({i / (n * n), (i / n) % n, i % n, e.value});
    }
    return out;
}

}  // namespace

SparseVec coordinates_in(const SubgroupScheme& l, const SparseVec& w, const char* what) {
    try {
        return l.subspace.coordinates(w);
    } catch (const NoSolution&) {
        throw AssertionFailure(std::string(what) + " leaves k[" + l.own.name + "]");
    }
}

SparseMat star_matrix(const GroupScheme& g, const SubgroupScheme& k, const SectionData& mu, const SparseVec& u) {
    return k.surjection() * ad_right_matrix(g.group_algebra, u).transpose() * mu.mu;
}

SparseMat trivial_b(const SubgroupScheme& k, const SubgroupScheme& h) {
    const Field f = k.own.field();
    SparseMat b(f, k.order(), h.order());
    const HopfAlgebra& kh = h.own.group_algebra;
    for (std::size_t v = 0; v < h.order(); ++v)
        b.set_col(v, k.own.coordinate_algebra.unit().scaled(kh.counit().at(v)));
    return b;
}

std::string equivariance_witness(const GroupScheme& g, const SubgroupScheme& k, const SubgroupScheme& h,
                                 const SparseMat& b, const SectionData& mu) {
    const HopfAlgebra& kg = g.group_algebra;
    for (std::size_t u = 0; u < kg.dim(); ++u) {
        SparseMat star = star_matrix(g, k, mu, kg.basis(u));
        for (std::size_t v = 0; v < h.order(); ++v) {
            SparseVec moved = ad_left(kg, kg.basis(u), h.inclusion.col(v));
            if (!(star.apply(b.col(v)) == b.apply(coordinates_in(h, moved, "adjoint action"))))
                return kg.labels()[u] + " on " + h.own.group_algebra.labels()[v];
        }
    }
    return {};
}

VerificationReport check_triple(const Triple& t, const SectionData& mu) {
    const GroupScheme& g = *t.ambient;
    VerificationReport rep;
    rep.add("K normal", is_normal(g, t.k));
    rep.add("H normal", is_normal(g, t.h));
    rep.add("K and H centralize each other", centralize(g, t.h, t.k));
    bool shape = t.b.rows() == t.k.order() && t.b.cols() == t.h.order();
    rep.add("B has shape |K| x |H|", shape);
    if (!shape) return rep;
    auto m = is_hopf_morphism(t.b, t.h.own.group_algebra, t.k.own.coordinate_algebra);
    rep.add("B Hopf morphism", m.ok, m.failed + (m.witness.empty() ? "" : ": " + m.witness));
    if (!rep.ok()) return rep;

    std::string witness = equivariance_witness(g, t.k, t.h, t.b, mu);
    rep.add("B G-equivariant", witness.empty(), witness);
    return rep;
}

void require_triple(const Triple& t, const SectionData& mu) {
    auto rep = check_triple(t, mu);
    if (const Check* bad = rep.first_failure())
        throw InvalidTriple(bad->name + (bad->witness.empty() ? "" : " (" + bad->witness + ")") + " fails");
}

SparseVec tau_bar_lift(const GroupScheme& g, const SubgroupScheme& h, const CleavingData& c, const SparseVec& u) {
    const HopfAlgebra& kg = g.group_algebra;
    const HopfAlgebra& kh = h.own.group_algebra;
    const Field f = kg.field();
    const std::size_t n = kg.dim(), m = kh.dim();
    Accumulator acc(f, m * m);
    for (const auto& t : split3(kg.coproduct2(u), n)) {
        SparseVec w = kh.coproduct(c.eta_inv_h.col(t.a));
        const SparseVec& left = c.eta_h.col(t.b);
        const SparseVec& right = c.eta_h.col(t.c);
        for (const auto& e : w.entries()) {
            SparseVec l = kh.multiply(kh.basis(e.index / m), left);
            SparseVec r = kh.multiply(kh.basis(e.index % m), right);
            acc.add(tensor(l, r), f.mul(t.value, e.value));
        }
    }
    return acc.take();
}

SparseVec tau_bar(const GroupScheme& g, const SubgroupScheme& h, const CleavingData& c, const SparseVec& x) {
    return tau_bar_lift(g, h, c, c.gamma.apply(x));
}

QuotientPair build_quotient(const Triple& t, QuotientOptions opt) {
    const GroupScheme& g = *t.ambient;
    const HopfAlgebra& kg = g.group_algebra;
    const Field f = kg.field();

    QuotientPair qp;
    qp.triple = t;
    if (opt.section) {
        if (!is_valid_section(g, t.k, *opt.section)) throw InvalidInput("supplied section is not a section of q_K");
        qp.section.mu = *opt.section;
        qp.section.mu_inv = convolution_inverse(qp.section.mu, t.k.own.coordinate_algebra, g.coordinate_algebra);
    } else {
        qp.section = section_mu(g, t.k);
    }
    if (opt.validate) require_triple(t, qp.section);
    qp.quotient = quotient_by_normal(g, t.h);
    qp.cleaving = cleaving_gamma(g, t.h, qp.quotient, opt.cleaving);

    const HopfAlgebra& ok = t.k.own.coordinate_algebra;
    const HopfAlgebra& kq = qp.quotient.quotient.group_algebra;
    const std::size_t n = kg.dim(), nk = ok.dim(), m = kq.dim(), nd = nk * m;
    const SparseMat& gamma = qp.cleaving.gamma;
    const SparseMat& b = t.b;

    for (std::size_t x = 0; x < m; ++x) qp.dot.push_back(star_matrix(g, t.k, qp.section, gamma.col(x)));

    // sigma(x, y) = B(gamma(x1) gamma(y1) gamma^-1(x2 y2))
    qp.sigma = SparseTensor3(f, m, m, nk);
    for (std::size_t x = 0; x < m; ++x)
        for (std::size_t y = 0; y < m; ++y) {
            Accumulator acc(f, n);
            for (const auto& ex : kq.comult().col(x).entries())
                for (const auto& ey : kq.comult().col(y).entries()) {
                    std::size_t x1 = ex.index / m, x2 = ex.index % m, y1 = ey.index / m, y2 = ey.index % m;
                    SparseVec front = kg.multiply(gamma.col(x1), gamma.col(y1));
                    SparseVec back = qp.cleaving.gamma_inv.apply(kq.product(x2, y2));
                    acc.add(kg.multiply(front, back), f.mul(ex.value, ey.value));
                }
            qp.sigma.set_slice(x, y, b.apply(coordinates_in(t.h, acc.take(), "cocycle")));
        }

    // tau = (B (x) B) tau-bar
    {
        std::vector<SparseVec> cols;
        for (std::size_t x = 0; x < m; ++x)
            cols.push_back(apply_tensor(b, b, tau_bar(g, t.h, qp.cleaving, kq.basis(x))));
        qp.tau = SparseMat::from_columns(f, nk * nk, std::move(cols));
    }

    std::vector<std::string> labels;
    for (std::size_t a = 0; a < nk; ++a)
        for (std::size_t x = 0; x < m; ++x) labels.push_back(ok.labels()[a] + "#" + kq.labels()[x]);

    // (a # x)(a' # y) = a (x1 . a') sigma(x2, y1) # x3 y2
    SparseTensor3 mult(f, nd, nd, nd);
    for (std::size_t x = 0; x < m; ++x) {
        const auto dx = split3(kq.coproduct2(kq.basis(x)), m);
        for (std::size_t y = 0; y < m; ++y) {
            const SparseVec& dy = kq.comult().col(y);
            for (std::size_t a = 0; a < nk; ++a)
                for (std::size_t a2 = 0; a2 < nk; ++a2) {
                    Accumulator acc(f, nd);
                    for (const auto& s : dx) {
                        SparseVec left = ok.multiply(ok.basis(a), qp.dot[s.a].col(a2));
                        if (left.is_zero()) continue;
                        for (const auto& ey : dy.entries()) {
                            std::size_t y1 = ey.index / m, y2 = ey.index % m;
                            const SparseVec& sg = qp.sigma.slice(s.b, y1);
                            if (sg.is_zero()) continue;
                            SparseVec coeff = ok.multiply(left, sg);
                            acc.add(tensor(coeff, kq.product(s.c, y2)), f.mul(s.value, ey.value));
                        }
                    }
                    mult.set_slice(a * m + x, a2 * m + y, acc.take());
                }
        }
    }

    // (a2 tau(x1)^1 # x2) (x) (a1 tau(x1)^2 # x3)
    std::vector<SparseVec> comult;
    std::vector<Elem> counit(nd);
    for (std::size_t a = 0; a < nk; ++a)
        for (std::size_t x = 0; x < m; ++x) {
            Accumulator acc(f, nd * nd);
            const auto dx = split3(kq.coproduct2(kq.basis(x)), m);
            for (const auto& ea : ok.comult().col(a).entries()) {
                std::size_t a1 = ea.index / nk, a2 = ea.index % nk;
                for (const auto& s : dx)
                    for (const auto& et : qp.tau.col(s.a).entries()) {
                        std::size_t t1 = et.index / nk, t2 = et.index % nk;
                        SparseVec l = tensor(ok.product(a2, t1), kq.basis(s.b));
                        SparseVec r = tensor(ok.product(a1, t2), kq.basis(s.c));
                        acc.add(tensor(l, r), f.mul(ea.value, f.mul(s.value, et.value)));
                    }
            }
            comult.push_back(acc.take());
            counit[a * m + x] = f.mul(ok.counit().at(a), kq.counit().at(x));
        }

    SparseVec unit = tensor(ok.unit(), kq.unit());
    SparseMat anti(f, nd, nd);
    for (std::size_t a = 0; a < nk; ++a)
        for (std::size_t x = 0; x < m; ++x)
            anti.set_col(a * m + x, mult.contract(tensor(ok.unit(), kq.antipode().col(x)),
                                                  tensor(ok.antipode().col(a), kq.unit())));
    qp.algebra = HopfAlgebra(f, std::move(labels), std::move(mult), unit,
                             SparseMat::from_columns(f, nd * nd, std::move(comult)), SparseVec::from_dense(f, counit),
                             anti);

    // theta(b # u) = q_K(b) B(eta(u1)) # pi(u2)
    SparseMat qk = t.k.surjection();
    SparseMat b_eta = b * qp.cleaving.eta_h;
    const SparseMat& pi = qp.quotient.pi;
    std::vector<SparseVec> theta_kg;
    for (std::size_t u = 0; u < n; ++u) {
        Accumulator acc(f, nd);
        for (const auto& e : kg.comult().col(u).entries())
            acc.add(tensor(b_eta.col(e.index / n), pi.col(e.index % n)), e.value);
        theta_kg.push_back(acc.take());
    }
    qp.theta = SparseMat(f, nd, n * n);
    for (std::size_t bi = 0; bi < n; ++bi) {
        SparseVec head = tensor(qk.col(bi), kq.unit());
        for (std::size_t u = 0; u < n; ++u) qp.theta.set_col(bi * n + u, qp.algebra.multiply(head, theta_kg[u]));
    }

    // R = sum_w theta(1 # w) (x) (w^* # 1), V = sum_w (S(w^*) # 1) theta(1 # w)
    Accumulator r(f, nd * nd), v(f, nd);
    for (std::size_t w = 0; w < nk; ++w) {
        SparseVec image(f, nd);
        for (const auto& e : t.k.inclusion.col(w).entries()) image.axpy(e.value, theta_kg[e.index]);
        r.add(tensor(image, tensor(ok.basis(w), kq.unit())));
        v.add(qp.algebra.multiply(tensor(ok.antipode().col(w), kq.unit()), image));
    }
    qp.qt = {qp.algebra, r.take(), v.take()};
    return qp;
}

std::vector<SparseVec> kernel_generators(const QuotientPair& qp, const DoubleData& d) {
    const GroupScheme& g = *qp.triple.ambient;
    const HopfAlgebra& o = g.coordinate_algebra;
    std::vector<SparseVec> gens;
    const Subspace coinv = quotient_coinvariants(g, qp.triple.k);
    for (const auto& c : coinv.basis()) {
        SparseVec aug = c - o.unit().scaled(o.epsilon(c));
        if (!aug.is_zero()) gens.push_back(d.embed_o.apply(aug));
    }
    const SubgroupScheme& h = qp.triple.h;
    for (std::size_t v = 0; v < h.order(); ++v) {
        SparseVec lifted = qp.section.mu.apply(qp.triple.b.col(v));
        gens.push_back(d.embed_o.apply(lifted) - d.embed_kg.apply(h.inclusion.col(v)));
    }
    return gens;
}

bool kernel_matches_ideal(const QuotientPair& qp, const DoubleData& d) {
    return qp.theta.kernel() == two_sided_ideal(d.algebra, kernel_generators(qp, d));
}

QuasiHopfData pushed_r_and_v(const QuotientPair& qp, const DoubleData& d) {
    QuasiHopfData canon = canonical_r_and_v(*qp.triple.ambient, d);
    return {qp.algebra, apply_tensor(qp.theta, qp.theta, canon.r), qp.theta.apply(*canon.v)};
}

SparseMat right_inverse(const SparseMat& surjection) {
    const Field f = surjection.field();
    const std::size_t rows = surjection.rows();
    Subspace seen(f, rows);
    std::vector<std::size_t> chosen;
    for (std::size_t j = 0; j < surjection.cols() && chosen.size() < rows; ++j)
        if (seen.insert(surjection.col(j))) chosen.push_back(j);
    if (chosen.size() != rows) throw NotSurjective("map has rank " + std::to_string(chosen.size()) + " < " +
                                                   std::to_string(rows));
    std::vector<SparseVec> cols;
    for (auto j : chosen) cols.push_back(surjection.col(j));
    SparseMat inv = SparseMat::from_columns(f, rows, std::move(cols)).inverse();
    // place row i of inv at source coordinate chosen[i]
    SparseMat out(f, surjection.cols(), rows);
    auto inv_rows = inv.row_vectors();
    std::vector<std::vector<Entry>> out_cols(rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (const auto& e : inv_rows[i].entries()) out_cols[e.index].push_back({idx(chosen[i]), e.value});
    for (std::size_t c = 0; c < rows; ++c)
        out.set_col(c, SparseVec::from_entries(f, surjection.cols(), std::move(out_cols[c])));
    return out;
}

Recognition recognize_triple(const std::shared_ptr<const GroupScheme>& gp, const DoubleData& d, const SparseMat& phi,
                             const HopfAlgebra& target) {
    const GroupScheme& g = *gp;
    const HopfAlgebra& kg = g.group_algebra;
    const HopfAlgebra& o = g.coordinate_algebra;
    const Field f = kg.field();
    const std::size_t n = kg.dim(), nt = target.dim();
    if (phi.rows() != nt || phi.cols() != d.algebra.dim()) throw DimensionMismatch("phi has the wrong shape");
    if (auto m = is_hopf_morphism(phi, d.algebra, target); !m)
        throw NotHopfMorphism(m.failed + (m.witness.empty() ? "" : ": " + m.witness));
    if (phi.rank() != nt) throw NotSurjective("phi is not onto the target");

    SparseMat on_o = phi * d.embed_o;
    SubgroupScheme k = subgroup_from_subspace(g, on_o.kernel().annihilator(), "K");

    Subspace ideal = two_sided_ideal(target, [&] {
        std::vector<SparseVec> gens;
        for (std::size_t b = 0; b < n; ++b) {
            SparseVec aug = o.basis(b) - o.unit().scaled(o.counit().at(b));
            if (!aug.is_zero()) gens.push_back(on_o.apply(aug));
        }
        return gens;
    }());
    SparseMat functionals = SparseMat::from_rows(f, nt, ideal.annihilator().basis());
    SparseMat on_kg = functionals * phi * d.embed_kg;
    SparseVec one = functionals.apply(target.unit());
    SparseMat id = SparseMat::identity(f, n);
    std::vector<SparseVec> cols;
    for (std::size_t u = 0; u < n; ++u)
        cols.push_back(apply_tensor(id, on_kg, kg.comult().col(u)) - tensor(kg.basis(u), one));
    SubgroupScheme h = subgroup_from_subspace(g, SparseMat::from_columns(f, n * functionals.rows(), cols).kernel(), "H");

    SectionData mu = section_mu(g, k);
    SparseMat lifted = on_o * mu.mu;
    SparseMat b(f, k.order(), h.order());
    for (std::size_t v = 0; v < h.order(); ++v) {
        SparseVec rhs = phi.apply(d.embed_kg.apply(h.inclusion.col(v)));
        try {
            b.set_col(v, solve_affine(lifted, rhs).particular);
        } catch (const NoSolution&) {
            throw AssertionFailure("image of k[H] is not inside the image of O(K)");
        }
    }

    Recognition rec;
    rec.triple = {gp, std::move(k), std::move(h), std::move(b)};
    rec.pair = build_quotient(rec.triple);
    rec.iso = phi * right_inverse(rec.pair.theta);
    check(rec.iso * rec.pair.theta == phi, "recognized quotient factors phi");
    check(rec.iso.rank() == nt, "factored map is an isomorphism");
    return rec;
}

SparseMat induced_surjection(const QuotientPair& target, const QuotientPair& source) {
    const Triple& t = target.triple;
    const Triple& s = source.triple;
    if (t.ambient.get() != s.ambient.get() && !(t.ambient->group_algebra == s.ambient->group_algebra))
        throw NoFactorization("quotients of different doubles");
    if (!is_subgroup_of(t.k, s.k)) throw NoFactorization("K is not contained in K'");
    if (!is_subgroup_of(s.h, t.h)) throw NoFactorization("H' is not contained in H");
    SparseMat lhs = relative_inclusion(t.k, s.k).transpose() * s.b;
    SparseMat rhs = t.b * relative_inclusion(s.h, t.h);
    if (!(lhs == rhs)) throw NoFactorization("restriction of B' differs from B on H'");
    SparseMat phi = target.theta * right_inverse(source.theta);
    if (!(phi * source.theta == target.theta)) {
        const Subspace ker = source.theta.kernel();
        for (const auto& v : ker.basis())
            if (!target.theta.apply(v).is_zero())
                throw NoFactorization("ker theta' not inside ker theta at D(G) basis index " +
                                      std::to_string(v.leading_index()));
        throw AssertionFailure("factorization failed without a kernel witness");
    }
    return phi;
}

}  // namespace hopfq
