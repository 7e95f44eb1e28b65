#include "hopfq/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hopfq/appendix.hpp"

#ifndef HOPFQ_DATA_DIR
#define HOPFQ_DATA_DIR "data"
#endif

namespace hopfq {

namespace {

using io::Json;

struct Options {
    std::string group, triple, hopf, field, output, format = "json";
    std::string golden_dir = std::string(HOPFQ_DATA_DIR) + "/golden";
    std::size_t subgroup_budget = 100'000, map_budget = 1'000'000, cleaving_budget = 100'000;
    std::size_t stride = 1;
    std::int64_t p = 0;
};

Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

std::optional<Field> field_option(const Options& o) {
    if (o.field.empty()) return std::nullopt;
    try {
        return Field::parse(o.field);
    } catch (const InvalidInput& e) {
        throw SchemaError(std::string("bad --field: ") + e.what());
    }
}

std::shared_ptr<const GroupScheme> load_group(const Options& o) {
    return std::make_shared<const GroupScheme>(io::group_from_json(read_json(o.group), field_option(o)));
}

void merge(VerificationReport& into, const VerificationReport& part, const std::string& prefix) {
    for (const auto& c : part.checks) into.add(prefix + c.name, c.passed, c.witness);
}

std::string report_text(const VerificationReport& r) {
    std::ostringstream os;
    for (const auto& c : r.checks) {
        os << (c.passed ? "PASS " : "FAIL ") << c.name;
        if (!c.passed && !c.witness.empty()) os << ": " << c.witness;
        os << '\n';
    }
    os << (r.ok() ? "all checks passed" : "verification failed") << '\n';
    return os.str();
}

std::string lattice_text(const Lattice& l) {
    std::ostringstream os;
    for (std::size_t i = 0; i < l.nodes.size(); ++i) {
        const auto& n = l.nodes[i];
        os << i << ' ' << n.name << " fpdim=" << n.fp_dimension << " centralizer=" << n.centralizer;
        if (n.flags.symmetric) os << " symmetric";
        if (n.flags.nondegenerate) os << " nondegenerate";
        if (n.flags.lagrangian) os << " lagrangian";
        if (n.flags.triangular) os << " triangular";
        if (n.flags.factorizable) os << " factorizable";
        os << '\n';
    }
    for (const auto& [upper, lower] : l.hasse) os << lower << " < " << upper << '\n';
    return os.str();
}

class Emitter {
public:
    Emitter(const Options& o, std::ostream& out) : o_(o), out_(out) {}

    void json(const Json& j) { text(j.dump(2) + "\n"); }
    void text(const std::string& s) {
        if (o_.output.empty()) {
            out_ << s;
            return;
        }
        std::ofstream f(o_.output);
        if (!f) throw SchemaError("cannot write " + o_.output);
        f << s;
    }

private:
    const Options& o_;
    std::ostream& out_;
};

int finish(const VerificationReport& r, std::ostream& err) {
    if (r.ok()) return exit_ok;
    const Check* bad = r.first_failure();
    err << "verification failed: " << bad->name << (bad->witness.empty() ? "" : ": " + bad->witness) << '\n';
    return exit_verification;
}

int cmd_build(const Options& o, Emitter& em) {
    auto g = load_group(o);
    if (o.format == "text") {
        std::ostringstream os;
        os << g->name << " over " << g->field().name() << ": order " << g->order() << ", connected order "
           << g->connected_order << ", points " << g->points << '\n';
        em.text(os.str());
    } else {
        em.json(io::to_json(*g));
    }
    return exit_ok;
}

int cmd_verify(const Options& o, Emitter& em, std::ostream& err) {
    VerificationReport rep;
    if (!o.hopf.empty()) {
        merge(rep, verify_hopf(io::hopf_from_json(read_json(o.hopf)), {o.stride}), "");
    } else if (!o.triple.empty()) {
        Triple t = io::triple_from_json(read_json(o.triple), field_option(o));
        merge(rep, check_triple(t, section_mu(*t.ambient, t.k)), "");
    } else if (!o.group.empty()) {
        auto g = load_group(o);
        merge(rep, verify_hopf(g->group_algebra, {o.stride}), "k[G]: ");
        merge(rep, verify_hopf(g->coordinate_algebra, {o.stride}), "O(G): ");
        rep.add("k[G] cocommutative", verify_hopf(g->group_algebra, {o.stride}).cocommutative);
        rep.add("O(G) commutative", verify_hopf(g->coordinate_algebra, {o.stride}).commutative);
        rep.add("O(G) dual to k[G]", dual_hopf(g->group_algebra) == g->coordinate_algebra);
    } else {
        throw SchemaError("verify needs --hopf, --triple or --group");
    }
    if (o.format == "text")
        em.text(report_text(rep));
    else
        em.json(io::to_json(rep));
    return finish(rep, err);
}

int cmd_double(const Options& o, Emitter& em, std::ostream& err) {
    auto g = load_group(o);
    auto d = drinfeld_double(*g);
    auto q = canonical_r_and_v(*g, d);
    VerificationReport rep;
    auto hopf = verify_hopf(d.algebra, {o.stride});
    merge(rep, hopf, "hopf: ");
    rep.add("hopf: S^2 = id", hopf.involutive);
    merge(rep, verify_quasitriangular(q), "quasitriangular: ");
    merge(rep, verify_ribbon(q), "ribbon: ");
    rep.add("factorizable", is_factorizable(q));
    if (o.format == "text")
        em.text("D(" + g->name + ") of dimension " + std::to_string(d.algebra.dim()) + "\n" + report_text(rep));
    else
        em.json(io::to_json(*g, q, rep));
    return finish(rep, err);
}

VerificationReport quotient_report(const QuotientPair& qp, const DoubleData& d, std::size_t stride) {
    VerificationReport rep;
    merge(rep, check_triple(qp.triple, qp.section), "triple: ");
    merge(rep, verify_hopf(qp.algebra, {stride}), "hopf: ");
    auto morph = is_hopf_morphism(qp.theta, d.algebra, qp.algebra);
    rep.add("theta is a Hopf map", morph.ok, morph.failed + (morph.witness.empty() ? "" : " " + morph.witness));
    rep.add("theta is surjective", qp.theta.rank() == qp.algebra.dim());
    rep.add("ker theta is the expected ideal", kernel_matches_ideal(qp, d));
    auto pushed = pushed_r_and_v(qp, d);
    rep.add("closed-form R equals pushed-forward R", pushed.r == qp.qt.r);
    rep.add("closed-form V equals pushed-forward V", pushed.v == qp.qt.v);
    merge(rep, verify_quasitriangular(qp.qt), "quasitriangular: ");
    if (qp.qt.v) merge(rep, verify_ribbon(qp.qt), "ribbon: ");
    return rep;
}

int cmd_quotient(const Options& o, Emitter& em, std::ostream& err) {
    Triple t = io::triple_from_json(read_json(o.triple), field_option(o));
    QuotientOptions qo;
    qo.cleaving.search_budget = o.cleaving_budget;
    auto qp = build_quotient(t, qo);
    auto d = drinfeld_double(*t.ambient);
    auto rep = quotient_report(qp, d, o.stride);
    if (o.format == "text")
        em.text("D(" + t.k.own.name + "," + t.h.own.name + ",B) of dimension " + std::to_string(qp.fp_dim()) + "\n" +
                report_text(rep));
    else
        em.json(io::to_json(qp, rep));
    return finish(rep, err);
}

Lattice load_lattice(const Options& o) {
    return enumerate_triples(load_group(o), {o.subgroup_budget, o.map_budget});
}

int cmd_lattice(const Options& o, Emitter& em, bool with_meets) {
    Lattice l = load_lattice(o);
    if (o.format == "dot") {
        em.text(hasse_dot(l));
    } else if (o.format == "text") {
        em.text(lattice_text(l));
    } else {
        Json j = io::to_json(l);
        if (with_meets) {
            Json meets = Json::array();
            for (const auto& a : l.nodes) {
                Json row = Json::array();
                for (const auto& b : l.nodes) row.push_back(l.find(intersect(a.triple, b.triple)));
                meets.push_back(std::move(row));
            }
            j["meets"] = std::move(meets);
        } else {
            j.erase("hasse");
        }
        em.json(j);
    }
    return exit_ok;
}

int cmd_blocks(const Options& o, Emitter& em) {
    std::vector<std::pair<std::string, QuotientPair>> pairs;
    if (!o.triple.empty()) {
        Triple t = io::triple_from_json(read_json(o.triple), field_option(o));
        pairs.emplace_back("(" + t.k.own.name + "," + t.h.own.name + ",B)", build_quotient(t));
    } else if (!o.group.empty()) {
        Lattice l = load_lattice(o);
        for (std::size_t i = 0; i < l.nodes.size(); ++i) pairs.emplace_back(l.nodes[i].name, l.pairs[i]);
    } else {
        throw SchemaError("blocks needs --triple or --group");
    }
    Json out = Json{{"schema_version", io::schema_version}, {"kind", "blocks"}, {"triples", Json::array()}};
    std::ostringstream text;
    for (const auto& [name, qp] : pairs) {
        Json blocks = Json::array();
        std::size_t total = 0;
        text << name << '\n';
        for (const auto& b : block_data(qp)) {
            blocks.push_back(io::to_json(b));
            total += b.fp_dimension;
            text << "  class of " << qp.triple.ambient->cayley->names[static_cast<std::size_t>(b.representative)]
                 << ": size " << b.conjugacy_class.size() << ", fpdim " << b.fp_dimension
                 << (b.character_invariant ? "" : ", character not invariant")
                 << (b.p_g_multiplicative ? "" : ", p_g not multiplicative") << '\n';
        }
        text << "  total " << total << " of " << qp.fp_dim() << '\n';
        out["triples"].push_back({{"name", name}, {"fp_dimension", qp.fp_dim()}, {"blocks", std::move(blocks)}});
    }
    if (o.format == "text")
        em.text(text.str());
    else
        em.json(out);
    return exit_ok;
}

int cmd_appendix(const Options& o, Emitter& em, std::ostream& err) {
    Json computed = appendix_document(o.p);
    if (o.format == "text") {
        em.text(computed.dump(1) + "\n");
    } else {
        em.json(computed);
    }
    const std::string golden = o.golden_dir + "/appendix_p" + std::to_string(o.p) + ".json";
    Json expected = read_json(golden);
    Json patch = Json::diff(expected, computed);
    if (patch.empty()) return exit_ok;
    err << "appendix output differs from " << golden << ":\n" << patch.dump(2) << '\n';
    return exit_verification;
}

}  // namespace

Json appendix_document(std::int64_t p) {
    const Field f = Field::prime(p);
    auto g = std::make_shared<const GroupScheme>(ga_kernel(f, 2));
    auto k = frobenius_subgroup(*g, 1);
    Json cases = Json::array();
    for (const auto& lambda : f.elements()) {
        SparseMat b = b_lambda(k, k, lambda);
        auto qp = build_quotient({g, k, k, b});
        cases.push_back({{"lambda", io::to_json(f, lambda)},
                         {"pi", io::to_json(qp.quotient.pi)},
                         {"gamma", io::to_json(qp.cleaving.gamma)},
                         {"gamma_inv", io::to_json(qp.cleaving.gamma_inv)},
                         {"eta", io::to_json(qp.cleaving.eta)},
                         {"eta_inv", io::to_json(qp.cleaving.eta_inv)},
                         {"sigma", io::to_json(qp.sigma)},
                         {"tau", io::to_json(qp.tau)},
                         {"B", io::to_json(b)},
                         {"B_is_hopf_morphism",
                          is_hopf_morphism(b, k.own.group_algebra, k.own.coordinate_algebra).ok},
                         {"R", io::to_json(qp.qt.r)}});
    }
    return Json{{"schema_version", io::schema_version}, {"kind", "appendix"}, {"p", p},
                {"field", f.spec_string()}, {"cases", std::move(cases)}};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Drinfeld doubles of finite group schemes and their Hopf quotients", "hopfq"};
    app.require_subcommand(1);
    Options o;

    auto group_opts = [&](CLI::App* c, bool required) {
        auto* opt = c->add_option("--group", o.group, "group spec or group document (JSON)");
        if (required) opt->required();
        c->add_option("--field", o.field, "field: q, p7, p5^2, ...");
    };
    auto common = [&](CLI::App* c, std::vector<std::string> formats) {
        c->add_option("--output,-o", o.output, "write to this file instead of stdout");
        c->add_option("--format", o.format, "report format")->check(CLI::IsMember(std::move(formats)));
    };

    auto* build = app.add_subcommand("build", "emit the group scheme document");
    group_opts(build, true);
    common(build, {"json", "text"});

    auto* verify = app.add_subcommand("verify", "check Hopf axioms, a group scheme, or a triple");
    group_opts(verify, false);
    verify->add_option("--hopf", o.hopf, "Hopf algebra document");
    verify->add_option("--triple", o.triple, "triple file");
    verify->add_option("--stride", o.stride, "visit every n-th outer basis index")->check(CLI::PositiveNumber);
    common(verify, {"json", "text"});

    auto* dbl = app.add_subcommand("double", "D(G) with R, V and a full verification report");
    group_opts(dbl, true);
    dbl->add_option("--stride", o.stride, "visit every n-th outer basis index")->check(CLI::PositiveNumber);
    common(dbl, {"json", "text"});

    auto* quot = app.add_subcommand("quotient", "build D(K,H,B) from a triple file");
    quot->add_option("--triple", o.triple, "triple file")->required();
    quot->add_option("--field", o.field, "field for the triple's group spec");
    quot->add_option("--cleaving-budget", o.cleaving_budget, "candidate sections tried");
    quot->add_option("--stride", o.stride, "visit every n-th outer basis index")->check(CLI::PositiveNumber);
    common(quot, {"json", "text"});

    auto* lat = app.add_subcommand("lattice", "all triples with Hasse diagram, centralizers and meets");
    auto* en = app.add_subcommand("enumerate", "all triples with flags and DOT");
    for (auto* c : {lat, en}) {
        group_opts(c, true);
        c->add_option("--subgroup-budget", o.subgroup_budget, "normal subgroup search budget");
        c->add_option("--map-budget", o.map_budget, "Hopf map candidates per (K, H)");
        common(c, {"json", "text", "dot"});
    }

    auto* blocks = app.add_subcommand("blocks", "block data for a triple, or for every triple of a group");
    group_opts(blocks, false);
    blocks->add_option("--triple", o.triple, "triple file");
    common(blocks, {"json", "text"});

    auto* app_cmd = app.add_subcommand("appendix", "reproduce the G_a,2 example and diff against golden files");
    app_cmd->add_option("--p", o.p, "prime")->required()->check(CLI::IsMember({2, 3, 5, 7}));
    app_cmd->add_option("--golden-dir", o.golden_dir, "directory holding appendix_p<P>.json");
    common(app_cmd, {"json", "text"});

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_schema;
    }

    Emitter em(o, out);
    try {
        if (build->parsed()) return cmd_build(o, em);
        if (verify->parsed()) return cmd_verify(o, em, err);
        if (dbl->parsed()) return cmd_double(o, em, err);
        if (quot->parsed()) return cmd_quotient(o, em, err);
        if (lat->parsed()) return cmd_lattice(o, em, true);
        if (en->parsed()) return cmd_lattice(o, em, false);
        if (blocks->parsed()) return cmd_blocks(o, em);
        if (app_cmd->parsed()) return cmd_appendix(o, em, err);
    } catch (const BudgetError& e) {
        err << "budget exhausted: " << e.what() << '\n';
        return exit_budget;
    } catch (const InvalidTriple& e) {
        err << "verification failed: " << e.what() << '\n';
        return exit_verification;
    } catch (const NotHopfMorphism& e) {
        err << "verification failed: " << e.what() << '\n';
        return exit_verification;
    } catch (const InvalidInput& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_schema;
    } catch (const Json::exception& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_schema;
    } catch (const Error& e) {
        err << "verification failed: " << e.what() << '\n';
        return exit_verification;
    }
    return exit_schema;
}

}  // namespace hopfq
