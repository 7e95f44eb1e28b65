#include "hopfq/lattice.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace hopfq {

namespace {

std::int32_t idx(std::size_t i) { return static_cast<std::int32_t>(i); }

SparseMat restriction(const SubgroupScheme& inner, const SubgroupScheme& outer) {
    return relative_inclusion(inner, outer).transpose();
}

// Graph {(w, B(w))} of a partially defined algebra map k[H] -> O(K), kept as a
// subspace of k[H] (+) O(K) closed under the componentwise product.
class Graph {
public:
    Graph(const HopfAlgebra& kh, const HopfAlgebra& ok) : kh_(&kh), ok_(&ok), s_(kh.field(), kh.dim() + ok.dim()) {
        s_.insert(join(kh.unit(), ok.unit()));
    }

    // Adds (v, z) and closes under products; false when B stops being well defined.
    bool extend(const SparseVec& v, const SparseVec& z) {
        s_.insert(join(v, z));
        bool changed = true;
        while (changed) {
            changed = false;
            auto rows = s_.basis();
            for (const auto& a : rows)
                for (const auto& b : rows) changed |= s_.insert(product(a, b));
            if (!well_defined()) return false;
        }
        return true;
    }

    bool well_defined() const {
        const auto& p = s_.pivots();
        return p.empty() || static_cast<std::size_t>(p.back()) < kh_->dim();
    }
    std::size_t dim() const { return s_.dim(); }

    // Rows as (w, B(w)); the w parts are a reduced echelon basis of the domain.
    std::vector<std::pair<SparseVec, SparseVec>> rows() const {
        std::vector<std::pair<SparseVec, SparseVec>> out;
        for (const auto& r : s_.basis()) out.push_back(split(r));
        return out;
    }

    // B(w) for w in the domain; nullopt otherwise.
    std::optional<SparseVec> apply(const SparseVec& w) const {
        SparseVec image(ok_->field(), ok_->dim());
        SparseVec rest = w;
        for (const auto& [a, b] : rows()) {
            Elem c = rest.at(static_cast<std::size_t>(a.leading_index()));
            if (Field::is_zero(c)) continue;
            rest.axpy(ok_->field().neg(c), a);
            image.axpy(c, b);
        }
        if (!rest.is_zero()) return std::nullopt;
        return image;
    }

    // B(t) for t in domain (x) domain; nullopt otherwise.
    std::optional<SparseVec> apply2(const SparseVec& t) const {
        const std::size_t n = kh_->dim(), m = ok_->dim();
        auto r = rows();
        Accumulator image(ok_->field(), m * m);
        Accumulator back(ok_->field(), n * n);
        for (const auto& [a, b] : r)
            for (const auto& [a2, b2] : r) {
                std::size_t i = static_cast<std::size_t>(a.leading_index()) * n + a2.leading_index();
                Elem c = t.at(i);
                if (Field::is_zero(c)) continue;
                back.add(tensor(a, a2), c);
                image.add(tensor(b, b2), c);
            }
        if (!(back.take() == t)) return std::nullopt;
        return image.take();
    }

    // Full matrix once the domain is all of k[H].
    SparseMat matrix() const {
        std::vector<SparseVec> cols;
        for (const auto& r : rows()) cols.push_back(r.second);
        return SparseMat::from_columns(ok_->field(), ok_->dim(), std::move(cols));
    }

    // Coalgebra compatibility on every row whose coproduct stays inside the domain.
    bool coalgebra_consistent() const {
        for (const auto& [a, b] : rows()) {
            auto img = apply2(kh_->coproduct(a));
            if (img && !(*img == ok_->coproduct(b))) return false;
            if (kh_->epsilon(a) != ok_->epsilon(b)) return false;
        }
        return true;
    }

private:
    SparseVec join(const SparseVec& a, const SparseVec& b) const {
        std::vector<Entry> e = a.entries();
        for (const auto& x : b.entries()) e.push_back({idx(x.index + kh_->dim()), x.value});
        return SparseVec::from_sorted(kh_->field(), kh_->dim() + ok_->dim(), std::move(e));
    }
    std::pair<SparseVec, SparseVec> split(const SparseVec& v) const {
        std::vector<Entry> a, b;
        for (const auto& e : v.entries()) {
            if (static_cast<std::size_t>(e.index) < kh_->dim())
                a.push_back(e);
            else
                b.push_back({idx(e.index - kh_->dim()), e.value});
        }
        return {SparseVec::from_sorted(kh_->field(), kh_->dim(), std::move(a)),
                SparseVec::from_sorted(ok_->field(), ok_->dim(), std::move(b))};
    }
    SparseVec product(const SparseVec& x, const SparseVec& y) const {
        auto [xa, xb] = split(x);
        auto [ya, yb] = split(y);
        return join(kh_->multiply(xa, ya), ok_->multiply(xb, yb));
    }

    const HopfAlgebra* kh_;
    const HopfAlgebra* ok_;
    Subspace s_;
};

std::vector<SparseVec> all_vectors(Field f, const SparseVec& base, const std::vector<SparseVec>& directions,
                                   std::size_t& budget) {
    if (!f.is_finite() && !directions.empty())
        throw FieldTooLargeForEnumeration("enumerating a positive-dimensional family over Q");
    const auto values = f.is_finite() ? f.elements() : std::vector<Elem>{Field::zero()};
    std::vector<SparseVec> out;
    std::vector<std::size_t> digit(directions.size(), 0);
    while (true) {
        if (budget == 0) throw BudgetExceeded("Hopf map enumeration exceeded its budget");
        --budget;
        SparseVec v = base;
        for (std::size_t i = 0; i < directions.size(); ++i)
            if (digit[i]) v.axpy(values[digit[i]], directions[i]);
        out.push_back(std::move(v));
        std::size_t pos = directions.size();
        while (pos > 0) {
            --pos;
            if (++digit[pos] < values.size()) break;
            digit[pos] = 0;
            if (pos == 0) return out;
        }
        if (directions.empty()) return out;
    }
}

struct MapSearch {
    const HopfAlgebra& kh;
    const HopfAlgebra& ok;
    std::vector<SparseVec> generators;
    std::size_t budget;
    std::vector<SparseMat> found;
    std::optional<std::vector<SparseVec>> grouplike_cache;

    std::vector<SparseVec> candidates(const Graph& gr, const SparseVec& v) {
        const Field f = kh.field();
        const std::size_t nh = kh.dim(), nk = ok.dim();
        SparseVec dv = kh.coproduct(v);
        if (dv == tensor(v, v)) {
            if (!grouplike_cache) grouplike_cache = grouplikes(ok);
            return *grouplike_cache;
        }
        SparseVec rest = dv - tensor(v, kh.unit()) - tensor(kh.unit(), v);
        if (auto known = gr.apply2(rest)) {
            // Delta z - z (x) 1 - 1 (x) z = (B (x) B)(rest), eps(z) = eps(v)
            std::vector<SparseVec> cols;
            for (std::size_t j = 0; j < nk; ++j) {
                SparseVec e = ok.basis(j);
                SparseVec col = ok.coproduct(e) - tensor(e, ok.unit()) - tensor(ok.unit(), e);
                std::vector<Entry> ent = col.entries();
                if (Elem c = ok.counit().at(j); !Field::is_zero(c)) ent.push_back({idx(nk * nk), c});
                cols.push_back(SparseVec::from_entries(f, nk * nk + 1, std::move(ent)));
            }
            std::vector<Entry> rhs = known->entries();
            if (Elem c = kh.epsilon(v); !Field::is_zero(c)) rhs.push_back({idx(nk * nk), c});
            AffineSolution sol;
            try {
                sol = solve_affine(SparseMat::from_columns(f, nk * nk + 1, std::move(cols)),
                                   SparseVec::from_entries(f, nk * nk + 1, std::move(rhs)));
            } catch (const NoSolution&) {
                return {};
            }
            return all_vectors(f, sol.particular, sol.kernel.basis(), budget);
        }
        // no structure to exploit: every z with the right counit
        std::vector<SparseVec> dirs;
        SparseVec base(f, nk);
        std::size_t anchor = nk;
        for (const auto& e : ok.counit().entries()) {
            anchor = static_cast<std::size_t>(e.index);
            base = ok.basis(anchor).scaled(f.div(kh.epsilon(v), e.value));
            break;
        }
        for (std::size_t j = 0; j < nk; ++j) {
            if (j == anchor) continue;
            Elem c = ok.counit().at(j);
            SparseVec d = ok.basis(j);
            if (anchor < nk && !Field::is_zero(c)) d.axpy(f.neg(f.div(c, ok.counit().at(anchor))), ok.basis(anchor));
            dirs.push_back(d);
        }
        (void)nh;
        return all_vectors(f, base, dirs, budget);
    }

    void run(const Graph& gr, std::size_t next) {
        if (next == generators.size()) {
            if (gr.dim() != kh.dim()) return;
            SparseMat b = gr.matrix();
            if (is_hopf_morphism(b, kh, ok)) found.push_back(std::move(b));
            return;
        }
        for (const auto& z : candidates(gr, generators[next])) {
            if (budget == 0) throw BudgetExceeded("Hopf map enumeration exceeded its budget");
            --budget;
            Graph g2 = gr;
            if (!g2.extend(generators[next], z)) continue;
            if (!g2.coalgebra_consistent()) continue;
            run(g2, next + 1);
        }
    }
};

std::vector<SparseVec> algebra_generators(const HopfAlgebra& h) {
    Subspace span(h.field(), h.dim());
    span.insert(h.unit());
    std::vector<SparseVec> gens;
    auto close = [&] {
        bool changed = true;
        while (changed) {
            changed = false;
            auto rows = span.basis();
            for (const auto& a : rows)
                for (const auto& b : rows) changed |= span.insert(h.multiply(a, b));
        }
    };
    for (std::size_t i = 0; i < h.dim(); ++i) {
        if (span.contains(h.basis(i))) continue;
        gens.push_back(h.basis(i));
        span.insert(h.basis(i));
        close();
    }
    return gens;
}

std::string b_label(const SparseMat& b, const SparseMat& trivial, std::size_t& counter) {
    if (b == trivial) return "1";
    return "B" + std::to_string(++counter);
}

}  // namespace

SparseMat b_bar(const Triple& t) {
    return t.b.transpose() * t.k.own.group_algebra.antipode();
}

Triple centralizer_triple(const Triple& t) {
    Triple c{t.ambient, t.h, t.k, b_bar(t)};
    require_triple(c, section_mu(*t.ambient, c.k));
    return c;
}

bool contains(const Triple& t, const Triple& t_sub) {
    if (!is_subgroup_of(t_sub.k, t.k) || !is_subgroup_of(t.h, t_sub.h)) return false;
    return restriction(t_sub.k, t.k) * t.b == t_sub.b * relative_inclusion(t.h, t_sub.h);
}

Beta beta_map(const Triple& t, const Triple& t2) {
    const GroupScheme& g = *t.ambient;
    Beta out;
    out.k_meet = intersect_subgroup(g, t.k, t2.k);
    out.h_meet = intersect_subgroup(g, t.h, t2.h);
    SparseMat first = restriction(out.h_meet, t.h) * t.b.transpose() * relative_inclusion(out.k_meet, t.k);
    SparseMat second = restriction(out.h_meet, t2.h) * b_bar(t2) * relative_inclusion(out.k_meet, t2.k);
    out.map = convolution(first, second, out.k_meet.own.group_algebra, out.h_meet.own.coordinate_algebra);
    return out;
}

Triple intersect(const Triple& t, const Triple& t2) {
    const GroupScheme& g = *t.ambient;
    const Field f = g.field();
    Beta beta = beta_map(t, t2);

    // k[L] = {u in k[K meet K'] : u1 (x) beta(u2) = u (x) 1}
    const HopfAlgebra& ki = beta.k_meet.own.group_algebra;
    const HopfAlgebra& oj = beta.h_meet.own.coordinate_algebra;
    SparseMat id = SparseMat::identity(f, ki.dim());
    std::vector<SparseVec> cols;
    for (std::size_t u = 0; u < ki.dim(); ++u)
        cols.push_back(apply_tensor(id, beta.map, ki.comult().col(u)) - tensor(ki.basis(u), oj.unit()));
    Subspace coinv = SparseMat::from_columns(f, ki.dim() * oj.dim(), std::move(cols)).kernel();
    std::vector<SparseVec> in_g;
    for (const auto& v : coinv.basis()) in_g.push_back(beta.k_meet.inclusion.apply(v));
    SubgroupScheme l = subgroup_from_subspace(g, Subspace::span(f, g.order(), in_g), "L");
    SubgroupScheme m = product_subgroup(g, t.h, t2.h);

    // the Hopf map k[HH'] -> O(L) restricting to B and B' on H and H'
    const std::size_t nh = t.h.order(), nh2 = t2.h.order();
    SparseMat from_h = restriction(l, t.k) * t.b;
    SparseMat from_h2 = restriction(l, t2.k) * t2.b;
    const HopfAlgebra& ol = l.own.coordinate_algebra;
    const HopfAlgebra& kg = g.group_algebra;
    SparseMat mult(f, m.order(), nh * nh2), values(f, l.order(), nh * nh2);
    for (std::size_t a = 0; a < nh; ++a)
        for (std::size_t b = 0; b < nh2; ++b) {
            SparseVec prod = kg.multiply(t.h.inclusion.col(a), t2.h.inclusion.col(b));
            mult.set_col(a * nh2 + b, coordinates_in(m, prod, "product of H and H'"));
            values.set_col(a * nh2 + b, ol.multiply(from_h.col(a), from_h2.col(b)));
        }
    SparseMat big_b = values * right_inverse(mult);
    check(big_b * mult == values, "B and B' agree on the overlap of the intersection");
    Triple out{t.ambient, std::move(l), std::move(m), std::move(big_b)};
    require_triple(out, section_mu(g, out.k));
    return out;
}

Flags categorical_flags(const Triple& t) {
    const GroupScheme& g = *t.ambient;
    Flags fl;
    SparseMat bar = b_bar(t);
    if (is_subgroup_of(t.k, t.h))
        fl.symmetric = t.b * relative_inclusion(t.k, t.h) == restriction(t.k, t.h) * bar;
    SubgroupScheme prod = product_subgroup(g, t.h, t.k);
    if (prod.order() == g.order()) {
        Triple c{t.ambient, t.h, t.k, bar};
        Beta beta = beta_map(t, c);
        fl.nondegenerate = beta.map.rank() == beta.map.cols() && beta.map.rows() == beta.map.cols();
    }
    fl.lagrangian = t.k == t.h && t.b == bar;
    return fl;
}

Flags classify(const Triple& t, const QuotientPair& qp) {
    Flags fl = categorical_flags(t);
    fl.triangular = is_triangular(qp.qt);
    fl.factorizable = is_factorizable(qp.qt);
    return fl;
}

SparseVec double_braiding(const QuotientPair& t, const QuotientPair& s, const SparseVec& monodromy_dg) {
    return apply_tensor(t.theta, s.theta, monodromy_dg);
}

std::size_t Lattice::find(const Triple& t) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].triple == t) return i;
    throw AssertionFailure("triple (" + t.k.own.name + ", " + t.h.own.name + ") is not among the enumerated nodes");
}

std::vector<SparseMat> equivariant_hopf_maps(const GroupScheme& g, const SubgroupScheme& k, const SubgroupScheme& h,
                                             std::size_t budget) {
    const HopfAlgebra& kh = h.own.group_algebra;
    const HopfAlgebra& ok = k.own.coordinate_algebra;
    MapSearch search{kh, ok, algebra_generators(kh), budget, {}, std::nullopt};
    search.run(Graph(kh, ok), 0);
    SectionData mu = section_mu(g, k);
    std::vector<SparseMat> out;
    for (auto& b : search.found)
        if (equivariance_witness(g, k, h, b, mu).empty()) out.push_back(std::move(b));
    return out;
}

Lattice enumerate_triples(const std::shared_ptr<const GroupScheme>& g, EnumerateOptions opt) {
    Lattice lat;
    lat.group = g;
    lat.normal = normal_subgroups(*g, opt.subgroup_budget);
    for (const auto& k : lat.normal)
        for (const auto& h : lat.normal) {
            if (!centralize(*g, h, k)) continue;
            SparseMat trivial = trivial_b(k, h);
            std::size_t counter = 0;
            auto maps = equivariant_hopf_maps(*g, k, h, opt.map_budget);
            // trivial map first, then the search order
            std::stable_partition(maps.begin(), maps.end(), [&](const SparseMat& b) { return b == trivial; });
            for (auto& b : maps) {
                LatticeNode node;
                node.name = "(" + k.own.name + "," + h.own.name + "," + b_label(b, trivial, counter) + ")";
                node.triple = {g, k, h, std::move(b)};
                lat.pairs.push_back(build_quotient(node.triple));
                node.fp_dimension = lat.pairs.back().fp_dim();
                node.flags = classify(node.triple, lat.pairs.back());
                lat.nodes.push_back(std::move(node));
            }
        }
    for (auto& node : lat.nodes) node.centralizer = lat.find(centralizer_triple(node.triple));
    lat.hasse = hasse_edges(lat.nodes);
    return lat;
}

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<LatticeNode>& nodes) {
    const std::size_t n = nodes.size();
    std::vector<std::vector<char>> below(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            below[i][j] = i != j && contains(nodes[i].triple, nodes[j].triple);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (!below[i][j]) continue;
            bool covered = true;
            for (std::size_t k = 0; k < n && covered; ++k)
                if (below[i][k] && below[k][j]) covered = false;
            if (covered) edges.emplace_back(i, j);
        }
    return edges;
}

std::string hasse_dot(const Lattice& l) {
    std::ostringstream os;
    os << "digraph lattice {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < l.nodes.size(); ++i) {
        const auto& n = l.nodes[i];
        os << "  n" << i << " [label=\"" << n.name << "\\nFPdim " << n.fp_dimension << "\", fpdim=" << n.fp_dimension
           << ", symmetric=" << n.flags.symmetric << ", nondegenerate=" << n.flags.nondegenerate
           << ", lagrangian=" << n.flags.lagrangian << ", triangular=" << n.flags.triangular
           << ", factorizable=" << n.flags.factorizable << ", centralizer=n" << n.centralizer << "];\n";
    }
    for (const auto& [upper, lower] : l.hasse) os << "  n" << lower << " -> n" << upper << ";\n";
    os << "}\n";
    return os.str();
}

std::vector<BlockData> block_data(const QuotientPair& qp) {
    const Triple& t = qp.triple;
    const GroupScheme& g = *t.ambient;
    if (!g.is_constant()) throw NotConstant("block data needs a constant group");
    const CayleyTable& table = *g.cayley;
    const HopfAlgebra& kg = g.group_algebra;
    const HopfAlgebra& kq = qp.quotient.quotient.group_algebra;
    const Field f = g.field();
    const std::size_t n = kg.dim(), m = kq.dim();

    std::vector<BlockData> out;
    for (const auto& cls : conjugacy_classes(table)) {
        if (!t.k.subspace.contains(kg.basis(cls.front()))) continue;
        BlockData bd;
        bd.representative = cls.front();
        bd.conjugacy_class = cls;
        const int rep = bd.representative;
        for (int x = 0; x < table.size(); ++x)
            if (table.mul(x, rep) == table.mul(rep, x)) bd.centralizer.push_back(x);

        // <a, g> for a in O(K)
        SparseVec point = coordinates_in(t.k, kg.basis(rep), "class representative");
        auto pair_with = [&](const SparseVec& a) {
            Elem s = Field::zero();
            for (const auto& e : a.entries()) s = f.add(s, f.mul(e.value, point.at(e.index)));
            return s;
        };
        std::vector<Elem> chr(t.h.order());
        for (std::size_t v = 0; v < t.h.order(); ++v) chr[v] = pair_with(t.b.col(v));
        bd.character = SparseVec::from_dense(f, chr);

        std::map<std::size_t, int> coset_pos;
        for (int x : bd.centralizer) {
            const SparseVec& img = qp.quotient.pi.col(static_cast<std::size_t>(x));
            check(img.nnz() == 1 && img.entries()[0].value == Field::one(), "group elements map to cosets");
            coset_pos.emplace(static_cast<std::size_t>(img.leading_index()), 0);
        }
        for (auto& [c, pos] : coset_pos) {
            pos = static_cast<int>(bd.cosets.size());
            bd.cosets.push_back(c);
        }
        auto psi = [&](std::size_t x, std::size_t y) { return pair_with(qp.sigma.slice(x, y)); };
        bd.twist = SparseMat(f, bd.cosets.size(), bd.cosets.size());
        for (std::size_t j = 0; j < bd.cosets.size(); ++j) {
            std::vector<Elem> col(bd.cosets.size());
            for (std::size_t i = 0; i < bd.cosets.size(); ++i) col[i] = psi(bd.cosets[i], bd.cosets[j]);
            bd.twist.set_col(j, SparseVec::from_dense(f, col));
        }

        auto character_of = [&](const SparseVec& w) {
            SparseVec c = coordinates_in(t.h, w, "adjoint action");
            Elem s = Field::zero();
            for (const auto& e : c.entries()) s = f.add(s, f.mul(e.value, chr[e.index]));
            return s;
        };
        bd.character_invariant = true;
        for (int x : bd.centralizer) {
            SparseVec u = kg.basis(static_cast<std::size_t>(x));
            SparseVec su = kg.apply_antipode(u);
            for (std::size_t v = 0; v < t.h.order(); ++v)
                if (character_of(ad_left(kg, su, t.h.inclusion.col(v))) != f.mul(kg.epsilon(u), chr[v]))
                    bd.character_invariant = false;
        }

        // p_g(u) = B_g(eta(u1)) pi(u2), multiplicative into the psi_g-twisted product
        auto p_g = [&](const SparseVec& u) {
            Accumulator acc(f, m);
            const SparseVec du = kg.coproduct(u);
            for (const auto& e : du.entries()) {
                SparseVec eta = qp.cleaving.eta.col(e.index / n);
                if (eta.is_zero()) continue;
                acc.add(qp.quotient.pi.col(e.index % n), f.mul(e.value, character_of(eta)));
            }
            return acc.take();
        };
        auto twisted = [&](const SparseVec& x, const SparseVec& y) {
            Accumulator acc(f, m);
            SparseVec dx = kq.coproduct(x), dy = kq.coproduct(y);
            for (const auto& a : dx.entries())
                for (const auto& b : dy.entries()) {
                    Elem c = f.mul(f.mul(a.value, b.value), psi(a.index / m, b.index / m));
                    if (!Field::is_zero(c)) acc.add(kq.product(a.index % m, b.index % m), c);
                }
            return acc.take();
        };
        bd.p_g_multiplicative = true;
        for (int x : bd.centralizer)
            for (int y : bd.centralizer) {
                SparseVec u = kg.basis(static_cast<std::size_t>(x)), w = kg.basis(static_cast<std::size_t>(y));
                if (!(p_g(kg.multiply(u, w)) == twisted(p_g(u), p_g(w)))) bd.p_g_multiplicative = false;
            }

        bd.fp_dimension = static_cast<std::size_t>(t.k.own.connected_order) * cls.size() * m;
        out.push_back(std::move(bd));
    }
    return out;
}

}  // namespace hopfq
