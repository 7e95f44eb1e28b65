#include "hopfq/groupscheme.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>

namespace hopfq {

namespace {

std::int32_t idx(std::size_t i) { return static_cast<std::int32_t>(i); }

// Every basis vector grouplike and closed under products: a constant group.
std::optional<CayleyTable> detect_cayley(const HopfAlgebra& h) {
    const std::size_t n = h.dim();
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (std::size_t i = 0; i < n; ++i)
        if (!is_grouplike(h, h.basis(i))) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto& p = h.product(i, j);
            if (p.nnz() != 1 || p.entries()[0].value != Field::one()) return std::nullopt;
            table[i][j] = p.entries()[0].index;
        }
    return make_cayley(h.labels(), table);
}

struct Tags {
    std::int64_t connected, points;
};

Tags derive_tags(const GroupScheme& ambient, const HopfAlgebra& sub) {
    const auto n = static_cast<std::int64_t>(sub.dim());
    if (ambient.is_constant()) return {1, n};
    if (ambient.points == 1) return {n, 1};
    if (ambient.connected_order == 1) return {1, n};
    auto pts = static_cast<std::int64_t>(grouplikes(sub).size());
    return {n / pts, pts};
}

std::string exponent_label(const std::string& base, int e) {
    if (e == 0) return "";
    if (e == 1) return base;
    return base + "^" + std::to_string(e);
}

}  // namespace

// ------------------------------------------------------------ constructors

CayleyTable make_cayley(std::vector<std::string> names, std::vector<std::vector<int>> table) {
    const int n = static_cast<int>(names.size());
    if (n == 0) throw NotAGroup("empty group");
    if (static_cast<int>(table.size()) != n) throw NotAGroup("table has wrong number of rows");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw NotAGroup("table row has wrong length");
        for (int x : row)
            if (x < 0 || x >= n) throw NotAGroup("table entry out of range");
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw NotAGroup("not associative at (" + names[a] + ", " + names[b] + ", " + names[c] + ")");
    int e = -1;
    for (int x = 0; x < n && e < 0; ++x) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = table[x][a] == a && table[a][x] == a;
        if (ok) e = x;
    }
    if (e < 0) throw NotAGroup("no identity element");
    std::vector<int> inv(n, -1);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            if (table[a][b] == e && table[b][a] == e) inv[a] = b;
        if (inv[a] < 0) throw NotAGroup("element " + names[a] + " has no inverse");
    }
    return {std::move(names), std::move(table), e, std::move(inv)};
}

GroupScheme from_group_algebra(std::string name, HopfAlgebra kg, std::vector<std::string> o_labels,
                               std::int64_t connected_order, std::int64_t points,
                               std::optional<CayleyTable> cayley) {
    GroupScheme g;
    g.name = std::move(name);
    g.coordinate_algebra = dual_hopf(kg, std::move(o_labels));
    g.group_algebra = std::move(kg);
    g.connected_order = connected_order;
    g.points = points;
    g.cayley = std::move(cayley);
    return g;
}

GroupScheme constant_group(Field f, const CayleyTable& t, std::string name) {
    const std::size_t n = t.size();
    SparseTensor3 mult(f, n, n, n);
    std::vector<SparseVec> comult;
    SparseMat s(f, n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) mult.set_slice(a, b, SparseVec::unit(f, n, t.mul(a, b)));
        comult.push_back(SparseVec::unit(f, n * n, a * n + a));
        s.set_col(a, SparseVec::unit(f, n, t.inverse[a]));
    }
    std::vector<Elem> ones(n, Field::one());
    HopfAlgebra kg(f, t.names, std::move(mult), SparseVec::unit(f, n, t.identity),
                   SparseMat::from_columns(f, n * n, std::move(comult)), SparseVec::from_dense(f, ones), s);
    std::vector<std::string> o_labels;
    for (const auto& x : t.names) o_labels.push_back("d_" + x);
    return from_group_algebra(std::move(name), std::move(kg), std::move(o_labels), 1,
                              static_cast<std::int64_t>(n), t);
}

GroupScheme cyclic_group(Field f, int n) {
    std::vector<std::string> names;
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        names.push_back(i == 0 ? "e" : exponent_label("g", i));
        for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    }
    return constant_group(f, make_cayley(names, table), "Z/" + std::to_string(n));
}

GroupScheme symmetric_group3(Field f) {
    using Perm = std::array<int, 3>;
    // images of (0,1,2); product a*b applies b first
    const std::vector<std::pair<std::string, Perm>> el = {
        {"e", {0, 1, 2}},    {"(123)", {1, 2, 0}}, {"(132)", {2, 0, 1}},
        {"(12)", {1, 0, 2}}, {"(13)", {2, 1, 0}},  {"(23)", {0, 2, 1}}};
    std::vector<std::string> names;
    for (const auto& [nm, p] : el) names.push_back(nm);
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            Perm c{};
            for (int i = 0; i < 3; ++i) c[i] = el[a].second[el[b].second[i]];
            for (int k = 0; k < 6; ++k)
                if (el[k].second == c) table[a][b] = k;
        }
    return constant_group(f, make_cayley(names, table), "S3");
}

GroupScheme ga_kernel(Field f, int r) {
    if (f.characteristic() == 0) throw CharZero("G_a kernels need positive characteristic");
    if (r < 1) throw InvalidInput("Frobenius kernel height must be positive");
    std::int64_t p = f.characteristic();
    std::size_t n = 1;
    for (int i = 0; i < r; ++i) n *= static_cast<std::size_t>(p);
    SparseTensor3 mult(f, n, n, n);
    std::vector<SparseVec> comult;
    SparseMat s(f, n, n);
    std::vector<std::string> labels, o_labels;
    for (std::size_t a = 0; a < n; ++a) {
        labels.push_back("d" + std::to_string(a));
        o_labels.push_back(a == 0 ? "1" : exponent_label("t", static_cast<int>(a)));
        for (std::size_t b = 0; b < n; ++b)
            if (a + b < n) {
                Scalar c = binomial(static_cast<std::int64_t>(a + b), static_cast<std::int64_t>(a), f);
                mult.set_slice(a, b, SparseVec::unit(f, n, a + b, c.value()));
            }
        std::vector<Entry> d;
        for (std::size_t i = 0; i <= a; ++i) d.push_back({idx(i * n + a - i), Field::one()});
        comult.push_back(SparseVec::from_entries(f, n * n, std::move(d)));
        s.set_col(a, SparseVec::unit(f, n, a, a % 2 ? f.neg(Field::one()) : Field::one()));
    }
    HopfAlgebra kg(f, std::move(labels), std::move(mult), SparseVec::unit(f, n, 0),
                   SparseMat::from_columns(f, n * n, std::move(comult)), SparseVec::unit(f, n, 0), s);
    return from_group_algebra("G_a," + std::to_string(r), std::move(kg), std::move(o_labels),
                              static_cast<std::int64_t>(n), 1);
}

GroupScheme mu_p_kernel(Field f) {
    if (f.characteristic() == 0) throw CharZero("mu_p needs positive characteristic");
    const auto n = static_cast<std::size_t>(f.characteristic());
    // O = k[t]/(t^p - 1) with t grouplike; k[G] is its dual
    SparseTensor3 mult(f, n, n, n);
    std::vector<SparseVec> comult;
    SparseMat s(f, n, n);
    std::vector<std::string> o_labels, labels;
    std::vector<Elem> ones(n, Field::one());
    for (std::size_t a = 0; a < n; ++a) {
        o_labels.push_back(a == 0 ? "1" : exponent_label("t", static_cast<int>(a)));
        labels.push_back("e" + std::to_string(a));
        for (std::size_t b = 0; b < n; ++b) mult.set_slice(a, b, SparseVec::unit(f, n, (a + b) % n));
        comult.push_back(SparseVec::unit(f, n * n, a * n + a));
        s.set_col(a, SparseVec::unit(f, n, (n - a) % n));
    }
    HopfAlgebra o(f, o_labels, std::move(mult), SparseVec::unit(f, n, 0),
                  SparseMat::from_columns(f, n * n, std::move(comult)), SparseVec::from_dense(f, ones), s);
    return from_group_algebra("mu_p", dual_hopf(o, labels), o_labels, static_cast<std::int64_t>(n), 1);
}

GroupScheme direct_product(const GroupScheme& a, const GroupScheme& b) {
    if (!(a.field() == b.field())) throw FieldMismatch("direct product over different fields");
    HopfAlgebra kg = tensor_hopf(a.group_algebra, b.group_algebra);
    std::vector<std::string> labels, o_labels;
    for (const auto& x : a.group_algebra.labels())
        for (const auto& y : b.group_algebra.labels()) labels.push_back("(" + x + "," + y + ")");
    for (const auto& x : a.coordinate_algebra.labels())
        for (const auto& y : b.coordinate_algebra.labels()) o_labels.push_back(x + "*" + y);
    kg = HopfAlgebra(kg.field(), labels, kg.mult(), kg.unit(), kg.comult(), kg.counit(), kg.antipode());
    std::optional<CayleyTable> t;
    if (a.is_constant() && b.is_constant()) t = detect_cayley(kg);
    return from_group_algebra(a.name + "x" + b.name, std::move(kg), std::move(o_labels),
                              a.connected_order * b.connected_order, a.points * b.points, std::move(t));
}

// ------------------------------------------------------ restricted Lie algebras

namespace {

using Word = std::vector<int>;

class Straightener {
public:
    Straightener(Field f, const RestrictedLieData& lie) : f_(f), lie_(lie), p_(static_cast<int>(f.characteristic())) {
        dim_ = 1;
        for (int i = 0; i < lie.dim; ++i) dim_ *= static_cast<std::size_t>(p_);
    }

    std::size_t dim() const { return dim_; }

    std::vector<int> exponents(std::size_t index) const {
        std::vector<int> a(lie_.dim);
        for (int i = lie_.dim - 1; i >= 0; --i) {
            a[i] = static_cast<int>(index % p_);
            index /= p_;
        }
        return a;
    }

    std::size_t index_of(const std::vector<int>& a) const {
        std::size_t r = 0;
        for (int e : a) r = r * p_ + e;
        return r;
    }

    Word word(std::size_t index) const {
        Word w;
        auto a = exponents(index);
        for (int i = 0; i < lie_.dim; ++i) w.insert(w.end(), a[i], i);
        return w;
    }

    SparseVec normalize(const Word& start, Elem coef) const {
        std::map<Word, Elem> work;
        Accumulator out(f_, dim_);
        auto push = [&](Word w, Elem c) {
            if (Field::is_zero(c)) return;
            auto [it, inserted] = work.emplace(std::move(w), c);
            if (!inserted) {
                it->second = f_.add(it->second, c);
                if (Field::is_zero(it->second)) work.erase(it);
            }
        };
        push(start, coef);
        while (!work.empty()) {
            auto node = work.extract(work.begin());
            const Word& w = node.key();
            Elem c = node.mapped();
            std::size_t pos = w.size();
            for (std::size_t i = 0; i + 1 < w.size(); ++i)
                if (w[i] > w[i + 1]) {
                    pos = i;
                    break;
                }
            if (pos < w.size()) {
                int k = w[pos], j = w[pos + 1];
                Word swapped = w;
                std::swap(swapped[pos], swapped[pos + 1]);
                push(std::move(swapped), c);
                for (int m = 0; m < lie_.dim; ++m) {
                    Elem b = f_.from_int(lie_.bracket[k][j][m]);
                    if (Field::is_zero(b)) continue;
                    Word v(w.begin(), w.begin() + pos);
                    v.push_back(m);
                    v.insert(v.end(), w.begin() + pos + 2, w.end());
                    push(std::move(v), f_.mul(c, b));
                }
                continue;
            }
            std::size_t run = w.size();
            for (std::size_t i = 0; i + p_ <= w.size(); ++i)
                if (w[i] == w[i + p_ - 1]) {
                    run = i;
                    break;
                }
            if (run < w.size()) {
                int g = w[run];
                for (int m = 0; m < lie_.dim; ++m) {
                    Elem b = f_.from_int(lie_.p_map[g][m]);
                    if (Field::is_zero(b)) continue;
                    Word v(w.begin(), w.begin() + run);
                    v.push_back(m);
                    v.insert(v.end(), w.begin() + run + p_, w.end());
                    push(std::move(v), f_.mul(c, b));
                }
                continue;
            }
            std::vector<int> a(lie_.dim, 0);
            for (int x : w) ++a[x];
            out.add(index_of(a), c);
        }
        return out.take();
    }

private:
    Field f_;
    const RestrictedLieData& lie_;
    int p_;
    std::size_t dim_;
};

std::vector<Elem> lie_bracket(Field f, const RestrictedLieData& lie, const std::vector<Elem>& x,
                              const std::vector<Elem>& y) {
    std::vector<Elem> out(lie.dim, Field::zero());
    for (int i = 0; i < lie.dim; ++i)
        for (int j = 0; j < lie.dim; ++j) {
            Elem c = f.mul(x[i], y[j]);
            if (Field::is_zero(c)) continue;
            for (int m = 0; m < lie.dim; ++m)
                out[m] = f.add(out[m], f.mul(c, f.from_int(lie.bracket[i][j][m])));
        }
    return out;
}

std::vector<Elem> lie_unit(int dim, int i) {
    std::vector<Elem> v(dim, Field::zero());
    v[i] = Field::one();
    return v;
}

void validate_lie(Field f, const RestrictedLieData& lie) {
    const int n = lie.dim;
    if (static_cast<int>(lie.bracket.size()) != n || static_cast<int>(lie.p_map.size()) != n)
        throw NotRestrictedLie("bracket or p-map has wrong size");
    for (const auto& row : lie.bracket) {
        if (static_cast<int>(row.size()) != n) throw NotRestrictedLie("bracket row has wrong size");
        for (const auto& v : row)
            if (static_cast<int>(v.size()) != n) throw NotRestrictedLie("bracket entry has wrong size");
    }
    for (const auto& v : lie.p_map)
        if (static_cast<int>(v.size()) != n) throw NotRestrictedLie("p-map entry has wrong size");
    auto name = [&](int i) { return i < static_cast<int>(lie.names.size()) ? lie.names[i] : "x" + std::to_string(i + 1); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto a = lie_bracket(f, lie, lie_unit(n, i), lie_unit(n, j));
            auto b = lie_bracket(f, lie, lie_unit(n, j), lie_unit(n, i));
            for (int m = 0; m < n; ++m)
                if (f.add(a[m], b[m]) != Field::zero())
                    throw NotRestrictedLie("[" + name(i) + "," + name(j) + "] is not antisymmetric");
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                auto xi = lie_unit(n, i), xj = lie_unit(n, j), xk = lie_unit(n, k);
                auto t1 = lie_bracket(f, lie, xi, lie_bracket(f, lie, xj, xk));
                auto t2 = lie_bracket(f, lie, xj, lie_bracket(f, lie, xk, xi));
                auto t3 = lie_bracket(f, lie, xk, lie_bracket(f, lie, xi, xj));
                for (int m = 0; m < n; ++m)
                    if (f.add(f.add(t1[m], t2[m]), t3[m]) != Field::zero())
                        throw NotRestrictedLie("Jacobi identity fails at (" + name(i) + ", " + name(j) + ", " +
                                               name(k) + ")");
            }
    const auto p = f.characteristic();
    for (int i = 0; i < n; ++i) {
        std::vector<Elem> pi(n);
        for (int m = 0; m < n; ++m) pi[m] = f.from_int(lie.p_map[i][m]);
        for (int j = 0; j < n; ++j) {
            auto lhs = lie_unit(n, j);
            for (std::int64_t t = 0; t < p; ++t) lhs = lie_bracket(f, lie, lie_unit(n, i), lhs);
            auto rhs = lie_bracket(f, lie, pi, lie_unit(n, j));
            if (lhs != rhs)
                throw NotRestrictedLie("ad(" + name(i) + ")^p differs from ad(" + name(i) + "^[p]) on " + name(j));
        }
    }
}

}  // namespace

RestrictedLieData two_dim_nonabelian_lie(Field f) {
    RestrictedLieData d;
    d.dim = 2;
    d.names = {"x", "y"};
    const std::int64_t minus_one = f.characteristic() - 1;
    d.bracket = {{{0, 0}, {0, 1}}, {{0, minus_one}, {0, 0}}};
    d.p_map = {{1, 0}, {0, 0}};
    return d;
}

RestrictedLieData heisenberg_lie() {
    RestrictedLieData d;
    d.dim = 3;
    d.names = {"x", "y", "z"};
    d.bracket.assign(3, std::vector<std::vector<std::int64_t>>(3, std::vector<std::int64_t>(3, 0)));
    d.bracket[0][1] = {0, 0, 1};
    d.bracket[1][0] = {0, 0, -1};
    d.p_map.assign(3, std::vector<std::int64_t>(3, 0));
    return d;
}

GroupScheme restricted_enveloping(Field f, const RestrictedLieData& lie, std::string name) {
    if (f.characteristic() == 0) throw CharZero("restricted enveloping algebras need positive characteristic");
    if (lie.dim < 1) throw NotRestrictedLie("Lie algebra must have positive dimension");
    validate_lie(f, lie);
    Straightener st(f, lie);
    const std::size_t n = st.dim();
    std::vector<std::string> gen = lie.names;
    for (int i = static_cast<int>(gen.size()); i < lie.dim; ++i) gen.push_back("x" + std::to_string(i + 1));

    std::vector<std::string> labels, o_labels;
    for (std::size_t a = 0; a < n; ++a) {
        auto e = st.exponents(a);
        std::string s;
        for (int i = 0; i < lie.dim; ++i) s += exponent_label(gen[i], e[i]);
        labels.push_back(s.empty() ? "1" : s);
        o_labels.push_back("f[" + labels.back() + "]");
    }
    SparseTensor3 mult(f, n, n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Word w = st.word(a);
            Word wb = st.word(b);
            w.insert(w.end(), wb.begin(), wb.end());
            mult.set_slice(a, b, st.normalize(w, Field::one()));
        }
    std::vector<SparseVec> comult;
    SparseMat s(f, n, n);
    SparseVec counit = SparseVec::unit(f, n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        auto e = st.exponents(a);
        std::vector<Entry> d;
        std::size_t total = 1;
        for (int x : e) total *= static_cast<std::size_t>(x + 1);
        for (std::size_t code = 0; code < total; ++code) {
            std::size_t c = code;
            std::vector<int> left(lie.dim), right(lie.dim);
            Elem coef = Field::one();
            for (int i = lie.dim - 1; i >= 0; --i) {
                left[i] = static_cast<int>(c % (e[i] + 1));
                c /= e[i] + 1;
                right[i] = e[i] - left[i];
                coef = f.mul(coef, binomial(e[i], left[i], f).value());
            }
            if (!Field::is_zero(coef))
                d.push_back({idx(st.index_of(left) * n + st.index_of(right)), coef});
        }
        comult.push_back(SparseVec::from_entries(f, n * n, std::move(d)));
        Word w = st.word(a);
        std::reverse(w.begin(), w.end());
        s.set_col(a, st.normalize(w, w.size() % 2 ? f.neg(Field::one()) : Field::one()));
    }
    HopfAlgebra kg(f, labels, std::move(mult), SparseVec::unit(f, n, 0),
                   SparseMat::from_columns(f, n * n, std::move(comult)), counit, s);
    auto rep = verify_hopf(kg);
    if (!rep.ok()) {
        const Check* c = rep.first_failure();
        throw NotRestrictedLie("restricted enveloping algebra fails " + c->name + " at " + c->witness);
    }
    return from_group_algebra(std::move(name), std::move(kg), std::move(o_labels), static_cast<std::int64_t>(n), 1);
}

// ---------------------------------------------------------------- subgroups

SubgroupScheme subgroup_from_subspace(const GroupScheme& g, const Subspace& s, std::string name) {
    const HopfAlgebra& kg = g.group_algebra;
    const Field f = kg.field();
    const std::size_t n = kg.dim(), m = s.dim();
    if (s.ambient_dim() != n) throw DimensionMismatch("subspace ambient dimension");
    const auto& rows = s.basis();
    const auto& piv = s.pivots();
    auto coords = [&](const SparseVec& v, const char* what) {
        try {
            return s.coordinates(v);
        } catch (const NoSolution&) {
            throw ClosureNotHopf(std::string("subspace is not closed under ") + what);
        }
    };
    SparseTensor3 mult(f, m, m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) mult.set_slice(i, j, coords(kg.multiply(rows[i], rows[j]), "multiplication"));
    SparseMat basis = s.basis_matrix();
    SparseMat basis2 = kron(basis, basis);
    std::vector<SparseVec> comult;
    for (std::size_t i = 0; i < m; ++i) {
        SparseVec d = kg.coproduct(rows[i]);
        std::vector<Entry> e;
        for (std::size_t a = 0; a < m; ++a)
            for (std::size_t b = 0; b < m; ++b) {
                Elem c = d.at(static_cast<std::size_t>(piv[a]) * n + piv[b]);
                if (!Field::is_zero(c)) e.push_back({idx(a * m + b), c});
            }
        SparseVec dc = SparseVec::from_sorted(f, m * m, std::move(e));
        if (!(basis2.apply(dc) == d)) throw ClosureNotHopf("subspace is not a subcoalgebra");
        comult.push_back(std::move(dc));
    }
    std::vector<Elem> counit(m);
    SparseMat anti(f, m, m);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < m; ++i) {
        counit[i] = kg.epsilon(rows[i]);
        anti.set_col(i, coords(kg.apply_antipode(rows[i]), "the antipode"));
        if (rows[i].nnz() == 1 && rows[i].entries()[0].value == Field::one())
            labels.push_back(kg.labels()[rows[i].entries()[0].index]);
        else
            labels.push_back(format_vector(kg, rows[i]));
    }
    HopfAlgebra kl(f, labels, std::move(mult), coords(kg.unit(), "the unit"),
                   SparseMat::from_columns(f, m * m, std::move(comult)), SparseVec::from_dense(f, counit), anti);
    std::vector<std::string> o_labels;
    const auto& go = g.coordinate_algebra.labels();
    for (std::size_t i = 0; i < m; ++i)
        o_labels.push_back(rows[i].nnz() == 1 ? go[rows[i].entries()[0].index] : "(" + labels[i] + ")*");
    std::optional<CayleyTable> t;
    if (g.is_constant()) t = detect_cayley(kl);
    Tags tags = derive_tags(g, kl);
    SubgroupScheme out;
    out.subspace = s;
    out.inclusion = basis;
    out.own = from_group_algebra(std::move(name), std::move(kl), std::move(o_labels), tags.connected, tags.points,
                                 std::move(t));
    return out;
}

SubgroupScheme subgroup_from_generators(const GroupScheme& g, const std::vector<SparseVec>& gens, std::string name) {
    const HopfAlgebra& kg = g.group_algebra;
    const std::size_t n = kg.dim();
    Subspace s(kg.field(), n);
    s.insert(kg.unit());
    for (const auto& v : gens) s.insert(v);
    bool changed = true;
    while (changed) {
        changed = false;
        auto basis = s.basis();
        for (const auto& v : basis) {
            changed |= s.insert(kg.apply_antipode(v));
            SparseVec d = kg.coproduct(v);
            std::vector<std::vector<Entry>> left(n), right(n);
            for (const auto& e : d.entries()) {
                auto a = e.index / static_cast<std::int32_t>(n), b = e.index % static_cast<std::int32_t>(n);
                left[b].push_back({a, e.value});
                right[a].push_back({b, e.value});
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (!left[i].empty()) changed |= s.insert(SparseVec::from_entries(kg.field(), n, std::move(left[i])));
                if (!right[i].empty()) changed |= s.insert(SparseVec::from_entries(kg.field(), n, std::move(right[i])));
            }
        }
        basis = s.basis();
        for (const auto& v : basis)
            for (const auto& w : basis) changed |= s.insert(kg.multiply(v, w));
    }
    return subgroup_from_subspace(g, s, std::move(name));
}

SubgroupScheme trivial_subgroup(const GroupScheme& g) { return subgroup_from_generators(g, {}, "1"); }

SubgroupScheme full_subgroup(const GroupScheme& g) {
    return subgroup_from_subspace(g, Subspace::full(g.field(), g.order()), g.name);
}

SubgroupScheme subgroup_from_elements(const GroupScheme& g, const std::vector<int>& elements, std::string name) {
    if (!g.is_constant()) throw NotConstant("element subgroups need a constant group");
    const CayleyTable& t = *g.cayley;
    std::set<int> sub{t.identity};
    for (int x : elements) {
        if (x < 0 || x >= t.size()) throw InvalidInput("element index out of range");
        sub.insert(x);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> cur(sub.begin(), sub.end());
        for (int a : cur)
            for (int b : cur) changed |= sub.insert(t.mul(a, b)).second;
    }
    std::vector<SparseVec> v;
    for (int x : sub) v.push_back(SparseVec::unit(g.field(), g.order(), x));
    return subgroup_from_subspace(g, Subspace::span(g.field(), g.order(), v), std::move(name));
}

SubgroupScheme frobenius_subgroup(const GroupScheme& g, int r_sub) {
    std::size_t m = 1;
    for (int i = 0; i < r_sub; ++i) m *= static_cast<std::size_t>(g.field().characteristic());
    if (m > g.order()) throw InvalidInput("Frobenius subgroup larger than the group");
    std::vector<SparseVec> v;
    for (std::size_t i = 0; i < m; ++i) v.push_back(SparseVec::unit(g.field(), g.order(), i));
    return subgroup_from_subspace(g, Subspace::span(g.field(), g.order(), v), "G_a," + std::to_string(r_sub));
}

SparseMat relative_inclusion(const SubgroupScheme& inner, const SubgroupScheme& outer) {
    std::vector<SparseVec> cols;
    for (std::size_t j = 0; j < inner.inclusion.cols(); ++j) {
        try {
            cols.push_back(outer.subspace.coordinates(inner.inclusion.col(j)));
        } catch (const NoSolution&) {
            throw InvalidInput("subgroup is not contained in the given outer subgroup");
        }
    }
    return SparseMat::from_columns(outer.subspace.field(), outer.order(), std::move(cols));
}

SubgroupScheme relative_subgroup(const SubgroupScheme& inner, const SubgroupScheme& outer) {
    SubgroupScheme r;
    r.inclusion = relative_inclusion(inner, outer);
    r.subspace = r.inclusion.image();
    r.own = inner.own;
    return r;
}

bool is_subgroup_of(const SubgroupScheme& inner, const SubgroupScheme& outer) {
    return outer.subspace.contains(inner.subspace);
}

// -------------------------------------------------------------- adjoint actions

SparseVec ad_right(const HopfAlgebra& kg, const SparseVec& u, const SparseVec& v) {
    const std::size_t n = kg.dim();
    Accumulator acc(kg.field(), n);
    SparseVec d = kg.coproduct(u);
    for (const auto& e : d.entries())
        acc.add(kg.multiply(kg.multiply(kg.antipode().col(e.index / n), v), kg.basis(e.index % n)), e.value);
    return acc.take();
}

SparseVec ad_left(const HopfAlgebra& kg, const SparseVec& u, const SparseVec& v) {
    const std::size_t n = kg.dim();
    Accumulator acc(kg.field(), n);
    SparseVec d = kg.coproduct(u);
    for (const auto& e : d.entries())
        acc.add(kg.multiply(kg.multiply(kg.basis(e.index / n), v), kg.antipode().col(e.index % n)), e.value);
    return acc.take();
}

SparseMat ad_right_matrix(const HopfAlgebra& kg, const SparseVec& u) {
    std::vector<SparseVec> cols;
    for (std::size_t k = 0; k < kg.dim(); ++k) cols.push_back(ad_right(kg, u, kg.basis(k)));
    return SparseMat::from_columns(kg.field(), kg.dim(), std::move(cols));
}

SparseVec coadjoint(const GroupScheme& g, const SparseVec& u, const SparseVec& b) {
    return ad_right_matrix(g.group_algebra, u).transpose().apply(b);
}

bool is_normal(const GroupScheme& g, const SubgroupScheme& l) {
    const HopfAlgebra& kg = g.group_algebra;
    for (std::size_t i = 0; i < kg.dim(); ++i)
        for (const auto& row : l.subspace.basis())
            if (!l.subspace.contains(ad_right(kg, kg.basis(i), row))) return false;
    return true;
}

bool centralize(const GroupScheme& g, const SubgroupScheme& h, const SubgroupScheme& k) {
    const HopfAlgebra& kg = g.group_algebra;
    for (const auto& v : h.subspace.basis())
        for (const auto& w : k.subspace.basis())
            if (!(kg.multiply(v, w) == kg.multiply(w, v))) return false;
    return true;
}

// ---------------------------------------------------------------- quotients

QuotientData quotient_by_normal(const GroupScheme& g, const SubgroupScheme& h) {
    if (!is_normal(g, h)) throw NotNormal("subgroup scheme is not normal");
    const HopfAlgebra& kg = g.group_algebra;
    const Field f = kg.field();
    const std::size_t n = kg.dim();
    Subspace ideal(f, n);
    for (const auto& row : h.subspace.basis()) {
        SparseVec aug = row - kg.unit().scaled(kg.epsilon(row));
        if (aug.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) ideal.insert(kg.multiply(aug, kg.basis(j)));
    }
    Subspace span = ideal;
    std::vector<std::int32_t> reps;
    for (std::size_t i = 0; i < n; ++i)
        if (span.insert(kg.basis(i))) reps.push_back(idx(i));
    const std::size_t m = reps.size();
    check(ideal.dim() + m == n, "ideal and representatives must span k[G]");
    std::vector<SparseVec> cols = ideal.basis();
    for (auto r : reps) cols.push_back(kg.basis(r));
    SparseMat inv = SparseMat::from_columns(f, n, cols).inverse();
    auto inv_rows = inv.row_vectors();
    std::vector<SparseVec> pi_rows(inv_rows.begin() + static_cast<std::ptrdiff_t>(ideal.dim()), inv_rows.end());
    SparseMat pi = SparseMat::from_rows(f, n, pi_rows);
    std::vector<SparseVec> lift_cols;
    for (auto r : reps) lift_cols.push_back(kg.basis(r));
    SparseMat lift = SparseMat::from_columns(f, n, std::move(lift_cols));

    SparseTensor3 mult(f, m, m, m);
    std::vector<SparseVec> comult;
    std::vector<Elem> counit(m);
    SparseMat anti(f, m, m);
    std::vector<std::string> labels, o_labels;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) mult.set_slice(a, b, pi.apply(kg.product(reps[a], reps[b])));
        comult.push_back(apply_tensor(pi, pi, kg.comult().col(reps[a])));
        counit[a] = kg.counit().at(reps[a]);
        anti.set_col(a, pi.apply(kg.antipode().col(reps[a])));
        labels.push_back("[" + kg.labels()[reps[a]] + "]");
        o_labels.push_back("d" + labels.back());
    }
    HopfAlgebra kq(f, labels, std::move(mult), pi.apply(kg.unit()),
                   SparseMat::from_columns(f, m * m, std::move(comult)), SparseVec::from_dense(f, counit), anti);
    std::optional<CayleyTable> t;
    if (g.is_constant()) t = detect_cayley(kq);
    Tags tags = derive_tags(g, kq);
    QuotientData q;
    q.quotient = from_group_algebra(g.name + "/" + h.own.name, std::move(kq), std::move(o_labels), tags.connected,
                                    tags.points, std::move(t));
    q.pi = std::move(pi);
    q.lift = std::move(lift);
    q.reps = std::move(reps);
    return q;
}

Subspace quotient_coinvariants(const GroupScheme& g, const SubgroupScheme& h) {
    const HopfAlgebra& o = g.coordinate_algebra;
    const Field f = o.field();
    const std::size_t n = o.dim();
    SparseMat q = h.surjection();
    SparseMat id = SparseMat::identity(f, n);
    SparseVec one_h = h.own.coordinate_algebra.unit();
    std::vector<SparseVec> cols;
    for (std::size_t i = 0; i < n; ++i)
        cols.push_back(apply_tensor(id, q, o.comult().col(i)) - tensor(o.basis(i), one_h));
    return SparseMat::from_columns(f, n * h.order(), std::move(cols)).kernel();
}

// ------------------------------------------------------------------ sections

namespace {

struct LinearSystem {
    std::vector<SparseVec> rows;
    std::vector<Entry> rhs;
    std::size_t unknowns = 0;

    void add(std::vector<Entry> row, Elem b, Field f) {
        SparseVec r = SparseVec::from_entries(f, unknowns, std::move(row));
        if (!Field::is_zero(b)) rhs.push_back({idx(rows.size()), b});
        rows.push_back(std::move(r));
    }
    AffineSolution solve(Field f) const {
        return solve_affine(SparseMat::from_rows(f, unknowns, rows), SparseVec::from_entries(f, rows.size(), rhs));
    }
};

// Unknown mu^*: k[G] -> k[L] as X[l][g] at g*|L| + l.
LinearSystem section_system(const GroupScheme& ambient, const SubgroupScheme& l) {
    const HopfAlgebra& kg = ambient.group_algebra;
    const HopfAlgebra& kl = l.own.group_algebra;
    const Field f = kg.field();
    const std::size_t n = kg.dim(), m = kl.dim();
    LinearSystem sys;
    sys.unknowns = n * m;
    for (std::size_t lp = 0; lp < m; ++lp)
        for (std::size_t r = 0; r < m; ++r) {
            std::vector<Entry> row;
            for (const auto& e : l.inclusion.col(lp).entries()) row.push_back({idx(e.index * m + r), e.value});
            sys.add(std::move(row), lp == r ? Field::one() : Field::zero(), f);
        }
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t ell = 0; ell < m; ++ell) {
            SparseVec prod = kg.multiply(kg.basis(g), l.inclusion.col(ell));
            for (std::size_t r = 0; r < m; ++r) {
                std::vector<Entry> row;
                for (const auto& e : prod.entries()) row.push_back({idx(e.index * m + r), e.value});
                for (std::size_t l2 = 0; l2 < m; ++l2) {
                    Elem c = kl.product(l2, ell).at(r);
                    if (!Field::is_zero(c)) row.push_back({idx(g * m + l2), f.neg(c)});
                }
                sys.add(std::move(row), Field::zero(), f);
            }
        }
    for (std::size_t g = 0; g < n; ++g) {
        std::vector<Entry> row;
        for (const auto& e : kl.counit().entries()) row.push_back({idx(g * m + e.index), e.value});
        sys.add(std::move(row), kg.counit().at(g), f);
    }
    return sys;
}

SparseMat section_from_unknowns(const SparseVec& x, std::size_t n, std::size_t m, Field f) {
    // mu = (mu^*)^T, so mu column l has entry X[l][g] in row g
    std::vector<std::vector<Entry>> cols(m);
    for (const auto& e : x.entries()) cols[e.index % m].push_back({idx(e.index / m), e.value});
    std::vector<SparseVec> c;
    for (auto& col : cols) c.push_back(SparseVec::from_sorted(f, n, std::move(col)));
    return SparseMat::from_columns(f, n, std::move(c));
}

SparseMat projection_candidate(const GroupScheme& ambient, const SubgroupScheme& l) {
    const Field f = ambient.field();
    const std::size_t n = ambient.order(), m = l.order();
    Subspace span = l.inclusion.image();
    const auto& piv = span.pivots();
    // T[r][c] = inclusion column c at pivot r
    std::vector<SparseVec> tcols;
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<Entry> e;
        for (std::size_t r = 0; r < m; ++r) {
            Elem v = l.inclusion.col(c).at(piv[r]);
            if (!Field::is_zero(v)) e.push_back({idx(r), v});
        }
        tcols.push_back(SparseVec::from_sorted(f, m, std::move(e)));
    }
    SparseMat tinv = SparseMat::from_columns(f, m, std::move(tcols)).inverse();
    // mu^*(e_g) = T^-1 (e_g restricted to pivots)
    std::vector<SparseVec> star_cols;
    for (std::size_t g = 0; g < n; ++g) {
        auto it = std::find(piv.begin(), piv.end(), idx(g));
        if (it == piv.end())
            star_cols.push_back(SparseVec(f, m));
        else
            star_cols.push_back(tinv.col(static_cast<std::size_t>(it - piv.begin())));
    }
    return SparseMat::from_columns(f, m, std::move(star_cols)).transpose();
}

std::optional<SparseMat> coset_candidate(const GroupScheme& ambient, const SubgroupScheme& l) {
    if (!ambient.is_constant() || !l.own.is_constant()) return std::nullopt;
    const CayleyTable& t = *ambient.cayley;
    const Field f = ambient.field();
    const std::size_t n = ambient.order(), m = l.order();
    // position of each ambient element inside L
    std::vector<int> in_l(n, -1);
    for (std::size_t c = 0; c < m; ++c) {
        const auto& col = l.inclusion.col(c);
        if (col.nnz() != 1) return std::nullopt;
        in_l[col.entries()[0].index] = static_cast<int>(c);
    }
    std::vector<int> rep_of(n, -1);
    for (std::size_t g = 0; g < n; ++g) {
        if (rep_of[g] >= 0) continue;
        int r = in_l[g] >= 0 ? t.identity : static_cast<int>(g);
        for (std::size_t c = 0; c < n; ++c)
            if (in_l[c] >= 0) rep_of[t.mul(r, static_cast<int>(c))] = r;
    }
    std::vector<SparseVec> star_cols;
    for (std::size_t g = 0; g < n; ++g) {
        int lpart = t.mul(t.inverse[rep_of[g]], static_cast<int>(g));
        star_cols.push_back(SparseVec::unit(f, m, in_l[lpart]));
    }
    return SparseMat::from_columns(f, m, std::move(star_cols)).transpose();
}

}  // namespace

bool is_valid_section(const GroupScheme& ambient, const SubgroupScheme& l, const SparseMat& mu) {
    const HopfAlgebra& kg = ambient.group_algebra;
    const HopfAlgebra& kl = l.own.group_algebra;
    if (mu.rows() != kg.dim() || mu.cols() != kl.dim()) return false;
    SparseMat star = mu.transpose();
    if (!(star * l.inclusion == SparseMat::identity(kg.field(), kl.dim()))) return false;
    for (std::size_t g = 0; g < kg.dim(); ++g) {
        if (kl.epsilon(star.col(g)) != kg.counit().at(g)) return false;
        for (std::size_t ell = 0; ell < kl.dim(); ++ell)
            if (!(star.apply(kg.multiply(kg.basis(g), l.inclusion.col(ell))) ==
                  kl.multiply(star.col(g), kl.basis(ell))))
                return false;
    }
    return true;
}

SectionData section_mu(const GroupScheme& ambient, const SubgroupScheme& l) {
    std::optional<SparseMat> mu;
    SparseMat cand = projection_candidate(ambient, l);
    if (is_valid_section(ambient, l, cand)) mu = cand;
    if (!mu)
        if (auto c = coset_candidate(ambient, l); c && is_valid_section(ambient, l, *c)) mu = *c;
    if (!mu) {
        try {
            auto sol = section_system(ambient, l).solve(ambient.field());
            mu = section_from_unknowns(sol.particular, ambient.order(), l.order(), ambient.field());
        } catch (const NoSolution&) {
            throw NoSection("no colinear section of the restriction map");
        }
        check(is_valid_section(ambient, l, *mu), "solved section satisfies its defining equations");
    }
    SectionData s;
    s.mu = *mu;
    s.mu_inv = convolution_inverse(s.mu, l.own.coordinate_algebra, ambient.coordinate_algebra);
    return s;
}

std::optional<SparseMat> alternative_section(const GroupScheme& ambient, const SubgroupScheme& l,
                                             const SparseMat& mu) {
    AffineSolution sol;
    try {
        sol = section_system(ambient, l).solve(ambient.field());
    } catch (const NoSolution&) {
        return std::nullopt;
    }
    std::vector<SparseVec> cands{sol.particular};
    for (const auto& k : sol.kernel.basis()) cands.push_back(sol.particular + k);
    for (const auto& c : cands) {
        SparseMat m = section_from_unknowns(c, ambient.order(), l.order(), ambient.field());
        if (!(m == mu) && is_valid_section(ambient, l, m)) return m;
    }
    return std::nullopt;
}

// ----------------------------------------------------------------- cleavings

bool is_colinear_section(const GroupScheme& g, const QuotientData& q, const SparseMat& gamma) {
    const HopfAlgebra& kg = g.group_algebra;
    const HopfAlgebra& kq = q.quotient.group_algebra;
    const Field f = kg.field();
    if (gamma.rows() != kg.dim() || gamma.cols() != kq.dim()) return false;
    if (!(q.pi * gamma == SparseMat::identity(f, kq.dim()))) return false;
    if (!(gamma.apply(kq.unit()) == kg.unit())) return false;
    SparseMat idq = SparseMat::identity(f, kq.dim());
    SparseMat idg = SparseMat::identity(f, kg.dim());
    for (std::size_t x = 0; x < kq.dim(); ++x) {
        if (kg.epsilon(gamma.col(x)) != kq.counit().at(x)) return false;
        if (!(apply_tensor(gamma, idq, kq.comult().col(x)) == apply_tensor(idg, q.pi, kg.coproduct(gamma.col(x)))))
            return false;
    }
    return true;
}

CleavingData cleaving_from_gamma(const GroupScheme& g, const SubgroupScheme& h, const QuotientData& q,
                                 const SparseMat& gamma) {
    const HopfAlgebra& kg = g.group_algebra;
    const HopfAlgebra& kq = q.quotient.group_algebra;
    CleavingData c;
    c.gamma = gamma;
    c.gamma_inv = convolution_inverse(gamma, kq, kg);
    c.eta = convolution(SparseMat::identity(kg.field(), kg.dim()), c.gamma_inv * q.pi, kg, kg);
    c.eta_inv = convolution_inverse(c.eta, kg, kg);
    auto to_h = [&](const SparseMat& m, const char* what) {
        std::vector<SparseVec> cols;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            try {
                cols.push_back(h.subspace.coordinates(m.col(j)));
            } catch (const NoSolution&) {
                throw AssertionFailure(std::string(what) + " leaves k[H] at basis element " + kg.labels()[j]);
            }
        }
        return SparseMat::from_columns(kg.field(), h.order(), std::move(cols));
    };
    c.eta_h = to_h(c.eta, "retraction");
    c.eta_inv_h = to_h(c.eta_inv, "inverse retraction");
    return c;
}

namespace {

// Unknown gamma entries at x*|G| + k.
LinearSystem cleaving_system(const GroupScheme& g, const QuotientData& q) {
    const HopfAlgebra& kg = g.group_algebra;
    const HopfAlgebra& kq = q.quotient.group_algebra;
    const Field f = kg.field();
    const std::size_t n = kg.dim(), m = kq.dim();
    LinearSystem sys;
    sys.unknowns = n * m;
    SparseMat idg = SparseMat::identity(f, n);
    std::vector<SparseVec> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = apply_tensor(idg, q.pi, kg.comult().col(k));
    for (std::size_t x = 0; x < m; ++x) {
        // one equation per coordinate of k[G] (x) k[G/H]
        std::vector<std::vector<Entry>> rows(n * m);
        for (const auto& e : kq.comult().col(x).entries()) {
            std::size_t a = e.index / m, b = e.index % m;
            for (std::size_t k = 0; k < n; ++k) rows[k * m + b].push_back({idx(a * n + k), e.value});
        }
        for (std::size_t k = 0; k < n; ++k)
            for (const auto& e : w[k].entries()) rows[e.index].push_back({idx(x * n + k), f.neg(e.value)});
        for (auto& r : rows)
            if (!r.empty()) sys.add(std::move(r), Field::zero(), f);
        for (std::size_t y = 0; y < m; ++y) {
            std::vector<Entry> row;
            for (std::size_t k = 0; k < n; ++k) {
                Elem c = q.pi.at(y, k);
                if (!Field::is_zero(c)) row.push_back({idx(x * n + k), c});
            }
            sys.add(std::move(row), x == y ? Field::one() : Field::zero(), f);
        }
        std::vector<Entry> row;
        for (const auto& e : kg.counit().entries()) row.push_back({idx(x * n + e.index), e.value});
        sys.add(std::move(row), kq.counit().at(x), f);
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Entry> row;
        for (const auto& e : kq.unit().entries()) row.push_back({idx(e.index * n + k), e.value});
        sys.add(std::move(row), kg.unit().at(k), f);
    }
    return sys;
}

SparseMat gamma_from_unknowns(const SparseVec& x, std::size_t n, std::size_t m, Field f) {
    std::vector<std::vector<Entry>> cols(m);
    for (const auto& e : x.entries()) cols[e.index / n].push_back({idx(e.index % n), e.value});
    std::vector<SparseVec> c;
    for (auto& col : cols) c.push_back(SparseVec::from_sorted(f, n, std::move(col)));
    return SparseMat::from_columns(f, n, std::move(c));
}

}  // namespace

CleavingData cleaving_gamma(const GroupScheme& g, const SubgroupScheme& h, const QuotientData& q,
                            CleavingOptions opt) {
    if (!is_normal(g, h)) throw NotNormal("cleaving needs a normal subgroup scheme");
    std::size_t to_skip = opt.skip;
    auto attempt = [&](const SparseMat& gamma) -> std::optional<CleavingData> {
        if (!is_colinear_section(g, q, gamma)) return std::nullopt;
        try {
            CleavingData c = cleaving_from_gamma(g, h, q, gamma);
            if (to_skip > 0) {
                --to_skip;
                return std::nullopt;
            }
            return c;
        } catch (const NotInvertible&) {
            return std::nullopt;
        }
    };
    if (!opt.force_solve)
        if (auto c = attempt(q.lift)) return *c;
    const Field f = g.field();
    const std::size_t n = g.order(), m = q.quotient.order();
    AffineSolution sol;
    try {
        sol = cleaving_system(g, q).solve(f);
    } catch (const NoSolution&) {
        throw NoInvertibleSectionFound("no colinear section of the quotient map exists");
    }
    std::vector<Elem> values;
    if (f.is_finite())
        values = f.elements();
    else
        values = {Field::zero(), Field::one(), f.neg(Field::one())};
    const auto& kernel = sol.kernel.basis();
    std::vector<std::size_t> digit(kernel.size(), 0);
    for (std::size_t tried = 0; tried < opt.search_budget; ++tried) {
        SparseVec x = sol.particular;
        for (std::size_t i = 0; i < kernel.size(); ++i)
            if (digit[i]) x.axpy(values[digit[i]], kernel[i]);
        if (auto c = attempt(gamma_from_unknowns(x, n, m, f))) return *c;
        std::size_t pos = kernel.size();
        bool done = true;
        while (pos > 0) {
            --pos;
            if (++digit[pos] < values.size()) {
                done = false;
                break;
            }
            digit[pos] = 0;
        }
        if (done) break;
    }
    throw NoInvertibleSectionFound("no convolution-invertible colinear section within " +
                                   std::to_string(opt.search_budget) + " candidates");
}

// ------------------------------------------------------ products, intersections

SubgroupScheme product_subgroup(const GroupScheme& g, const SubgroupScheme& h, const SubgroupScheme& k) {
    std::vector<SparseVec> gens;
    for (const auto& v : h.subspace.basis())
        for (const auto& w : k.subspace.basis()) gens.push_back(g.group_algebra.multiply(v, w));
    return subgroup_from_generators(g, gens, h.own.name + k.own.name);
}

SubgroupScheme intersect_subgroup(const GroupScheme& g, const SubgroupScheme& h, const SubgroupScheme& k) {
    const HopfAlgebra& o = g.coordinate_algebra;
    auto ideal = [&](const SubgroupScheme& l) {
        Subspace inv = quotient_coinvariants(g, l);
        Subspace out(o.field(), o.dim());
        for (const auto& c : inv.basis()) {
            SparseVec aug = c - o.unit().scaled(o.epsilon(c));
            if (aug.is_zero()) continue;
            for (std::size_t j = 0; j < o.dim(); ++j) out.insert(o.multiply(aug, o.basis(j)));
        }
        return out;
    };
    Subspace dual = ideal(h).sum(ideal(k)).annihilator();
    Subspace direct = h.subspace.intersection(k.subspace);
    check(dual == direct, "k[H] meet k[K] equals the annihilator of I_H + I_K");
    return subgroup_from_subspace(g, direct, h.own.name + "^" + k.own.name);
}

// ----------------------------------------------------------------- enumeration

namespace {

bool subspace_less(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    if (a.pivots() != b.pivots()) return a.pivots() < b.pivots();
    for (std::size_t i = 0; i < a.dim(); ++i) {
        const auto& x = a.basis()[i].entries();
        const auto& y = b.basis()[i].entries();
        auto key = [](const std::vector<Entry>& v) {
            std::vector<std::tuple<std::int32_t, std::int64_t, std::int64_t>> k;
            for (const auto& e : v) k.emplace_back(e.index, e.value.num, e.value.den);
            return k;
        };
        auto kx = key(x), ky = key(y);
        if (kx != ky) return kx < ky;
    }
    return false;
}

}  // namespace

std::vector<SubgroupScheme> normal_subgroups(const GroupScheme& g, std::size_t budget) {
    const HopfAlgebra& kg = g.group_algebra;
    const Field f = kg.field();
    const std::size_t n = kg.dim();
    std::vector<Subspace> found;
    auto add = [&](const Subspace& s) {
        for (const auto& x : found)
            if (x == s) return false;
        found.push_back(s);
        return true;
    };
    std::size_t closures = 0;
    auto close = [&](const std::vector<SparseVec>& gens) {
        if (++closures > budget) throw BudgetExceeded("subgroup enumeration exceeded its budget");
        return subgroup_from_generators(g, gens).subspace;
    };
    add(Subspace::span(f, n, {kg.unit()}));
    add(Subspace::full(f, n));
    if (g.is_constant()) {
        for (std::size_t i = 0; i < n; ++i) add(subgroup_from_elements(g, {static_cast<int>(i)}).subspace);
    } else {
        for (std::size_t i = 0; i < n; ++i) add(close({kg.basis(i)}));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) add(close({kg.basis(i) + kg.basis(j)}));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        auto snapshot = found;
        for (std::size_t a = 0; a < snapshot.size(); ++a)
            for (std::size_t b = a + 1; b < snapshot.size(); ++b) {
                if (snapshot[a].contains(snapshot[b]) || snapshot[b].contains(snapshot[a])) continue;
                std::vector<SparseVec> gens = snapshot[a].basis();
                for (const auto& v : snapshot[b].basis()) gens.push_back(v);
                changed |= add(close(gens));
            }
    }
    std::sort(found.begin(), found.end(), subspace_less);
    std::vector<SubgroupScheme> out;
    int counter = 0;
    for (const auto& s : found) {
        SubgroupScheme sub = subgroup_from_subspace(g, s, "N" + std::to_string(counter));
        if (!is_normal(g, sub)) continue;
        if (s.dim() == 1)
            sub.own.name = "1";
        else if (s.dim() == n)
            sub.own.name = g.name;
        ++counter;
        out.push_back(std::move(sub));
    }
    return out;
}

std::vector<std::vector<int>> conjugacy_classes(const CayleyTable& t) {
    std::vector<int> seen(t.size(), 0);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < t.size(); ++x) {
        if (seen[x]) continue;
        std::set<int> cls;
        for (int g = 0; g < t.size(); ++g) cls.insert(t.conj(g, x));
        for (int y : cls) seen[y] = 1;
        out.emplace_back(cls.begin(), cls.end());
    }
    return out;
}

}  // namespace hopfq
