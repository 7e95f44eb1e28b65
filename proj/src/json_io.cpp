#include "hopfq/json_io.hpp"

#include <algorithm>
#include <array>
#include <tuple>

namespace hopfq::io {

namespace {

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

template <class T>
T get(const Json& j, const char* key) {
    try {
        return need(j, key).get<T>();
    } catch (const Json::exception& e) {
        throw SchemaError(std::string("bad value for \"") + key + "\": " + e.what());
    }
}

std::size_t index_at(const Json& indices, std::size_t pos, std::size_t bound) {
    if (!indices.is_array() || pos >= indices.size() || !indices[pos].is_number_integer())
        throw SchemaError("entry indices must be integer arrays");
    auto i = indices[pos].get<std::int64_t>();
    if (i < 0 || static_cast<std::size_t>(i) >= bound) throw SchemaError("entry index out of range");
    return static_cast<std::size_t>(i);
}

void check_version(const Json& j) {
    if (j.is_object() && j.contains("schema_version") && j.at("schema_version") != schema_version)
        throw SchemaError("unsupported schema_version " + j.at("schema_version").dump());
}

Json document(const char* kind) {
    return Json{{"schema_version", schema_version}, {"kind", kind}};
}

Json entry(std::initializer_list<std::size_t> idx, Json value) {
    return Json{{"indices", Json(std::vector<std::size_t>(idx))}, {"value", std::move(value)}};
}

Field field_of(const Json& j) {
    try {
        return Field::parse(get<std::string>(j, "field"));
    } catch (const SchemaError&) {
        throw;
    } catch (const InvalidInput& e) {
        throw SchemaError(std::string("bad field: ") + e.what());
    }
}

std::vector<std::vector<std::int64_t>> int_matrix(const Json& j, const char* what) {
    try {
        return j.get<std::vector<std::vector<std::int64_t>>>();
    } catch (const Json::exception&) {
        throw SchemaError(std::string(what) + " must be an array of integer arrays");
    }
}

RestrictedLieData lie_from_json(Field f, const Json& j) {
    if (j.is_string()) {
        if (j == "two_dim_nonabelian") return two_dim_nonabelian_lie(f);
        if (j == "heisenberg") return heisenberg_lie();
        throw SchemaError("unknown restricted Lie algebra " + j.dump());
    }
    RestrictedLieData lie;
    lie.dim = get<int>(j, "dim");
    try {
        lie.bracket = need(j, "bracket").get<std::vector<std::vector<std::vector<std::int64_t>>>>();
    } catch (const Json::exception&) {
        throw SchemaError("bracket must be a dim x dim x dim integer array");
    }
    lie.p_map = int_matrix(need(j, "p_map"), "p_map");
    if (j.contains("names")) lie.names = get<std::vector<std::string>>(j, "names");
    return lie;
}

CayleyTable cayley_from_json(const Json& j) {
    auto names = get<std::vector<std::string>>(j, "elements");
    const Json& rows = need(j, "table");
    if (!rows.is_array()) throw SchemaError("table must be an array");
    std::vector<std::vector<int>> table;
    for (const auto& row : rows) {
        if (!row.is_array()) throw SchemaError("table rows must be arrays");
        std::vector<int> r;
        for (const auto& cell : row) {
            if (cell.is_number_integer()) {
                r.push_back(cell.get<int>());
            } else if (cell.is_string()) {
                auto it = std::find(names.begin(), names.end(), cell.get<std::string>());
                if (it == names.end()) throw SchemaError("unknown element " + cell.dump());
                r.push_back(static_cast<int>(it - names.begin()));
            } else {
                throw SchemaError("table cells must be names or indices");
            }
        }
        table.push_back(std::move(r));
    }
    return make_cayley(std::move(names), std::move(table));
}

Json cayley_to_json(const CayleyTable& t) {
    return Json{{"elements", t.names}, {"table", t.table}};
}

SparseVec vector_spec(const GroupScheme& g, const Json& j) {
    const Field f = g.field();
    if (j.is_array()) {
        if (j.size() != g.order()) throw SchemaError("dense vector has the wrong length");
        std::vector<Elem> v;
        for (const auto& x : j) v.push_back(elem_from_json(f, x));
        return SparseVec::from_dense(f, v);
    }
    SparseVec v = vec_from_json(f, j);
    if (v.dim() != g.order()) throw SchemaError("vector has the wrong dimension");
    return v;
}

}  // namespace

Json to_json(Field f, Elem a) {
    if (f.kind() == FieldKind::extension) return f.coefficients(a);
    return f.format(a);
}

Elem elem_from_json(Field f, const Json& j) {
    try {
        if (j.is_array()) {
            if (f.kind() != FieldKind::extension) throw SchemaError("coefficient arrays need an extension field");
            return f.from_coefficients(j.get<std::vector<std::int64_t>>());
        }
        if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
        if (j.is_string()) return f.parse_elem(j.get<std::string>());
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError("bad scalar " + j.dump() + ": " + e.what());
    }
    throw SchemaError("bad scalar " + j.dump());
}

Json to_json(const SparseVec& v) {
    Json entries = Json::array();
    for (const auto& e : v.entries())
        entries.push_back(entry({static_cast<std::size_t>(e.index)}, to_json(v.field(), e.value)));
    return Json{{"shape", {v.dim()}}, {"entries", std::move(entries)}};
}

Json to_json(const SparseMat& m) {
    std::vector<std::tuple<std::size_t, std::size_t, Elem>> cells;
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (const auto& e : m.col(c).entries()) cells.emplace_back(static_cast<std::size_t>(e.index), c, e.value);
    std::sort(cells.begin(), cells.end(),
              [](const auto& a, const auto& b) { return std::tie(std::get<0>(a), std::get<1>(a)) <
                                                        std::tie(std::get<0>(b), std::get<1>(b)); });
    Json entries = Json::array();
    for (const auto& [r, c, v] : cells) entries.push_back(entry({r, c}, to_json(m.field(), v)));
    return Json{{"shape", {m.rows(), m.cols()}}, {"entries", std::move(entries)}};
}

Json to_json(const SparseTensor3& t) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < t.dim1(); ++i)
        for (std::size_t j = 0; j < t.dim2(); ++j)
            for (const auto& e : t.slice(i, j).entries())
                entries.push_back(entry({i, j, static_cast<std::size_t>(e.index)}, to_json(t.field(), e.value)));
    return Json{{"shape", {t.dim1(), t.dim2(), t.dim3()}}, {"entries", std::move(entries)}};
}

SparseVec vec_from_json(Field f, const Json& j) {
    auto shape = get<std::vector<std::size_t>>(j, "shape");
    if (shape.size() != 1) throw SchemaError("vector shape must have one entry");
    std::vector<Entry> out;
    for (const auto& e : need(j, "entries"))
        out.push_back({static_cast<std::int32_t>(index_at(need(e, "indices"), 0, shape[0])),
                       elem_from_json(f, need(e, "value"))});
    return SparseVec::from_entries(f, shape[0], std::move(out));
}

SparseMat mat_from_json(Field f, const Json& j) {
    if (j.is_array()) {
        std::vector<std::vector<Elem>> rows;
        for (const auto& row : j) {
            if (!row.is_array()) throw SchemaError("dense matrix rows must be arrays");
            std::vector<Elem> r;
            for (const auto& x : row) r.push_back(elem_from_json(f, x));
            if (!rows.empty() && r.size() != rows.front().size()) throw SchemaError("ragged dense matrix");
            rows.push_back(std::move(r));
        }
        return SparseMat::from_dense(f, rows);
    }
    auto shape = get<std::vector<std::size_t>>(j, "shape");
    if (shape.size() != 2) throw SchemaError("matrix shape must have two entries");
    std::vector<std::vector<Entry>> cols(shape[1]);
    for (const auto& e : need(j, "entries")) {
        const Json& idx = need(e, "indices");
        std::size_t r = index_at(idx, 0, shape[0]), c = index_at(idx, 1, shape[1]);
        cols[c].push_back({static_cast<std::int32_t>(r), elem_from_json(f, need(e, "value"))});
    }
    SparseMat m(f, shape[0], shape[1]);
    for (std::size_t c = 0; c < shape[1]; ++c) m.set_col(c, SparseVec::from_entries(f, shape[0], std::move(cols[c])));
    return m;
}

SparseTensor3 tensor_from_json(Field f, const Json& j) {
    auto shape = get<std::vector<std::size_t>>(j, "shape");
    if (shape.size() != 3) throw SchemaError("tensor shape must have three entries");
    std::vector<std::vector<Entry>> slices(shape[0] * shape[1]);
    for (const auto& e : need(j, "entries")) {
        const Json& idx = need(e, "indices");
        std::size_t a = index_at(idx, 0, shape[0]), b = index_at(idx, 1, shape[1]), c = index_at(idx, 2, shape[2]);
        slices[a * shape[1] + b].push_back({static_cast<std::int32_t>(c), elem_from_json(f, need(e, "value"))});
    }
    SparseTensor3 t(f, shape[0], shape[1], shape[2]);
    for (std::size_t a = 0; a < shape[0]; ++a)
        for (std::size_t b = 0; b < shape[1]; ++b)
            t.set_slice(a, b, SparseVec::from_entries(f, shape[2], std::move(slices[a * shape[1] + b])));
    return t;
}

Json to_json(const HopfAlgebra& h) {
    Json j = document("hopf_algebra");
    j["field"] = h.field().spec_string();
    j["dim"] = h.dim();
    j["labels"] = h.labels();
    j["mult"] = to_json(h.mult());
    j["unit"] = to_json(h.unit());
    j["comult"] = to_json(h.comult());
    j["counit"] = to_json(h.counit());
    j["antipode"] = to_json(h.antipode());
    return j;
}

HopfAlgebra hopf_from_json(const Json& j) {
    check_version(j);
    const Field f = field_of(j);
    auto dim = get<std::size_t>(j, "dim");
    auto labels = j.contains("labels") ? get<std::vector<std::string>>(j, "labels") : std::vector<std::string>{};
    if (labels.empty())
        for (std::size_t i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
    if (labels.size() != dim) throw SchemaError("labels do not match dim");
    auto mult = tensor_from_json(f, need(j, "mult"));
    auto unit = vec_from_json(f, need(j, "unit"));
    auto comult = mat_from_json(f, need(j, "comult"));
    auto counit = vec_from_json(f, need(j, "counit"));
    auto antipode = mat_from_json(f, need(j, "antipode"));
    if (mult.dim1() != dim || mult.dim2() != dim || mult.dim3() != dim || unit.dim() != dim ||
        comult.rows() != dim * dim || comult.cols() != dim || counit.dim() != dim || antipode.rows() != dim ||
        antipode.cols() != dim)
        throw SchemaError("Hopf algebra structure maps do not match dim");
    return HopfAlgebra(f, std::move(labels), std::move(mult), std::move(unit), std::move(comult), std::move(counit),
                       std::move(antipode));
}

Json to_json(const VerificationReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
    return Json{{"ok", r.ok()},
                {"checks", std::move(checks)},
                {"commutative", r.commutative},
                {"cocommutative", r.cocommutative},
                {"involutive", r.involutive}};
}

VerificationReport report_from_json(const Json& j) {
    VerificationReport r;
    for (const auto& c : need(j, "checks")) r.add(get<std::string>(c, "name"), get<bool>(c, "passed"),
                                                 get<std::string>(c, "witness"));
    r.commutative = get<bool>(j, "commutative");
    r.cocommutative = get<bool>(j, "cocommutative");
    r.involutive = get<bool>(j, "involutive");
    return r;
}

GroupScheme group_from_json(const Json& spec, std::optional<Field> field) {
    check_version(spec);
    if (!spec.is_object()) throw SchemaError("group spec must be an object");
    if (spec.value("kind", "") == "group_scheme") {
        GroupScheme g;
        g.name = get<std::string>(spec, "name");
        g.group_algebra = hopf_from_json(need(spec, "group_algebra"));
        g.coordinate_algebra = hopf_from_json(need(spec, "coordinate_algebra"));
        g.connected_order = get<std::int64_t>(spec, "connected_order");
        g.points = get<std::int64_t>(spec, "points");
        if (spec.contains("cayley")) g.cayley = cayley_from_json(spec.at("cayley"));
        if (field && !(*field == g.field())) throw SchemaError("group document is over " + g.field().spec_string());
        if (g.coordinate_algebra.dim() != g.order() || !(g.coordinate_algebra.field() == g.field()))
            throw SchemaError("k[G] and O(G) do not match");
        return g;
    }
    if (!field) {
        if (!spec.contains("field")) throw SchemaError("no field given for group spec");
        field = field_of(spec);
    }
    const Field f = *field;
    std::optional<GroupScheme> g;
    try {
        if (spec.contains("constant")) {
            g = constant_group(f, cayley_from_json(spec.at("constant")));
        } else if (spec.contains("cyclic")) {
            g = cyclic_group(f, get<int>(spec.at("cyclic"), "n"));
        } else if (spec.contains("symmetric3")) {
            g = symmetric_group3(f);
        } else if (spec.contains("ga_kernel")) {
            g = ga_kernel(f, get<int>(spec.at("ga_kernel"), "r"));
        } else if (spec.contains("mu_p")) {
            g = mu_p_kernel(f);
        } else if (spec.contains("product")) {
            const Json& parts = spec.at("product");
            if (!parts.is_array() || parts.size() != 2) throw SchemaError("product takes two group specs");
            g = direct_product(group_from_json(parts[0], f), group_from_json(parts[1], f));
        } else if (spec.contains("restricted_lie")) {
            g = restricted_enveloping(f, lie_from_json(f, spec.at("restricted_lie")));
        } else {
            throw SchemaError("unknown group constructor in " + spec.dump());
        }
    } catch (const Json::exception& e) {
        throw SchemaError(std::string("malformed group spec: ") + e.what());
    }
    if (spec.contains("name")) g->name = get<std::string>(spec, "name");
    return std::move(*g);
}

Json to_json(const GroupScheme& g) {
    Json j = document("group_scheme");
    j["name"] = g.name;
    j["field"] = g.field().spec_string();
    j["order"] = g.order();
    j["connected_order"] = g.connected_order;
    j["points"] = g.points;
    j["group_algebra"] = to_json(g.group_algebra);
    j["coordinate_algebra"] = to_json(g.coordinate_algebra);
    if (g.cayley) j["cayley"] = cayley_to_json(*g.cayley);
    return j;
}

SubgroupScheme subgroup_from_json(const GroupScheme& g, const Json& spec) {
    if (spec == "trivial") return trivial_subgroup(g);
    if (spec == "full") return full_subgroup(g);
    if (!spec.is_object()) throw SchemaError("bad subgroup spec " + spec.dump());
    std::string name = spec.value("name", "L");
    if (spec.contains("generators")) {
        std::vector<SparseVec> gens;
        for (const auto& v : spec.at("generators")) gens.push_back(vector_spec(g, v));
        if (gens.empty()) return trivial_subgroup(g);
        return subgroup_from_generators(g, gens, name);
    }
    if (spec.contains("frobenius_sub")) return frobenius_subgroup(g, get<int>(spec, "frobenius_sub"));
    if (spec.contains("elements")) {
        if (!g.is_constant()) throw SchemaError("elements need a constant group");
        std::vector<int> elems;
        for (const auto& e : spec.at("elements")) {
            if (e.is_number_integer()) {
                elems.push_back(e.get<int>());
            } else {
                const auto& names = g.cayley->names;
                auto it = std::find(names.begin(), names.end(), e.get<std::string>());
                if (it == names.end()) throw SchemaError("unknown element " + e.dump());
                elems.push_back(static_cast<int>(it - names.begin()));
            }
        }
        for (int e : elems)
            if (e < 0 || e >= g.cayley->size()) throw SchemaError("element index out of range");
        return subgroup_from_elements(g, elems, name);
    }
    throw SchemaError("unknown subgroup spec " + spec.dump());
}

Json to_json(const SubgroupScheme& s) {
    Json gens = Json::array();
    for (const auto& v : s.subspace.basis()) gens.push_back(to_json(v));
    return Json{{"name", s.own.name}, {"order", s.order()}, {"generators", std::move(gens)}};
}

Json to_json(const Triple& t) {
    Json j = document("triple");
    j["group"] = to_json(*t.ambient);
    j["K"] = to_json(t.k);
    j["H"] = to_json(t.h);
    j["B"] = to_json(t.b);
    return j;
}

Triple triple_from_json(const Json& j, std::optional<Field> field) {
    check_version(j);
    auto g = std::make_shared<const GroupScheme>(group_from_json(need(j, "group"), field));
    Triple t{g, subgroup_from_json(*g, need(j, "K")), subgroup_from_json(*g, need(j, "H")), SparseMat()};
    const Json& b = need(j, "B");
    t.b = b == "trivial" ? trivial_b(t.k, t.h) : mat_from_json(g->field(), b);
    if (t.b.rows() != t.k.order() || t.b.cols() != t.h.order())
        throw SchemaError("B must be |K| x |H| = " + std::to_string(t.k.order()) + " x " +
                          std::to_string(t.h.order()));
    return t;
}

Json to_json(const QuotientPair& qp, const VerificationReport& report) {
    Json j = document("quotient_pair");
    j["triple"] = to_json(qp.triple);
    j["D"] = to_json(qp.algebra);
    j["fp_dimension"] = qp.fp_dim();
    j["theta"] = to_json(qp.theta);
    j["sigma"] = to_json(qp.sigma);
    j["tau"] = to_json(qp.tau);
    j["R"] = to_json(qp.qt.r);
    j["V"] = qp.qt.v ? to_json(*qp.qt.v) : Json();
    j["report"] = to_json(report);
    return j;
}

QuotientBundle quotient_from_json(const Json& j) {
    check_version(j);
    QuotientBundle out;
    out.triple = triple_from_json(need(j, "triple"));
    const Field f = out.triple.ambient->field();
    out.algebra = hopf_from_json(need(j, "D"));
    out.theta = mat_from_json(f, need(j, "theta"));
    out.sigma = tensor_from_json(f, need(j, "sigma"));
    out.tau = mat_from_json(f, need(j, "tau"));
    out.r = vec_from_json(f, need(j, "R"));
    if (!need(j, "V").is_null()) out.v = vec_from_json(f, j.at("V"));
    out.report = report_from_json(need(j, "report"));
    return out;
}

Json to_json(const GroupScheme& g, const QuasiHopfData& q, const VerificationReport& report) {
    Json j = document("double");
    j["group"] = to_json(g);
    j["D"] = to_json(q.algebra);
    j["R"] = to_json(q.r);
    j["V"] = q.v ? to_json(*q.v) : Json();
    j["report"] = to_json(report);
    return j;
}

DoubleBundle double_from_json(const Json& j) {
    check_version(j);
    DoubleBundle out;
    out.group = std::make_shared<const GroupScheme>(group_from_json(need(j, "group")));
    out.structure.algebra = hopf_from_json(need(j, "D"));
    const Field f = out.structure.algebra.field();
    out.structure.r = vec_from_json(f, need(j, "R"));
    if (!need(j, "V").is_null()) out.structure.v = vec_from_json(f, j.at("V"));
    out.report = report_from_json(need(j, "report"));
    return out;
}

Json to_json(const Flags& f) {
    return Json{{"symmetric", f.symmetric},     {"nondegenerate", f.nondegenerate}, {"lagrangian", f.lagrangian},
                {"triangular", f.triangular},   {"factorizable", f.factorizable}};
}

Flags flags_from_json(const Json& j) {
    return {get<bool>(j, "symmetric"), get<bool>(j, "nondegenerate"), get<bool>(j, "lagrangian"),
            get<bool>(j, "triangular"), get<bool>(j, "factorizable")};
}

Json to_json(const Lattice& l) {
    Json j = document("lattice");
    j["group"] = to_json(*l.group);
    Json nodes = Json::array();
    for (const auto& n : l.nodes)
        nodes.push_back({{"name", n.name},
                         {"K", to_json(n.triple.k)},
                         {"H", to_json(n.triple.h)},
                         {"B", to_json(n.triple.b)},
                         {"fp_dimension", n.fp_dimension},
                         {"flags", to_json(n.flags)},
                         {"centralizer", n.centralizer}});
    j["nodes"] = std::move(nodes);
    Json edges = Json::array();
    for (const auto& [upper, lower] : l.hasse) edges.push_back({{"upper", upper}, {"lower", lower}});
    j["hasse"] = std::move(edges);
    j["dot"] = hasse_dot(l);
    return j;
}

LatticeDocument lattice_from_json(const Json& j) {
    check_version(j);
    LatticeDocument out;
    out.group = std::make_shared<const GroupScheme>(group_from_json(need(j, "group")));
    const GroupScheme& g = *out.group;
    for (const auto& n : need(j, "nodes")) {
        LatticeNode node;
        node.name = get<std::string>(n, "name");
        node.triple = {out.group, subgroup_from_json(g, need(n, "K")), subgroup_from_json(g, need(n, "H")),
                       mat_from_json(g.field(), need(n, "B"))};
        node.fp_dimension = get<std::size_t>(n, "fp_dimension");
        node.flags = flags_from_json(need(n, "flags"));
        node.centralizer = get<std::size_t>(n, "centralizer");
        out.nodes.push_back(std::move(node));
    }
    for (const auto& e : need(j, "hasse")) out.hasse.emplace_back(get<std::size_t>(e, "upper"),
                                                                   get<std::size_t>(e, "lower"));
    return out;
}

Json to_json(const BlockData& b) {
    return Json{{"representative", b.representative},
                {"conjugacy_class", b.conjugacy_class},
                {"centralizer", b.centralizer},
                {"character", to_json(b.character)},
                {"cosets", b.cosets},
                {"twist", to_json(b.twist)},
                {"fp_dimension", b.fp_dimension},
                {"character_invariant", b.character_invariant},
                {"p_g_multiplicative", b.p_g_multiplicative}};
}

BlockData block_from_json(Field f, const Json& j) {
    BlockData b;
    b.representative = get<int>(j, "representative");
    b.conjugacy_class = get<std::vector<int>>(j, "conjugacy_class");
    b.centralizer = get<std::vector<int>>(j, "centralizer");
    b.character = vec_from_json(f, need(j, "character"));
    b.cosets = get<std::vector<std::size_t>>(j, "cosets");
    b.twist = mat_from_json(f, need(j, "twist"));
    b.fp_dimension = get<std::size_t>(j, "fp_dimension");
    b.character_invariant = get<bool>(j, "character_invariant");
    b.p_g_multiplicative = get<bool>(j, "p_g_multiplicative");
    return b;
}

}  // namespace hopfq::io
