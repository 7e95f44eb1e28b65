#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hopfq/appendix.hpp"
#include "hopfq/cli.hpp"

using namespace hopfq;
using io::Json;

namespace {

namespace fs = std::filesystem;

const std::string groups = std::string(HOPFQ_SOURCE_DIR) + "/groups/";

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "hopfq_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string write(const std::string& name, const std::string& text) {
    fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p.string();
}

std::shared_ptr<const GroupScheme> share(GroupScheme g) { return std::make_shared<const GroupScheme>(std::move(g)); }

// beta(g^i, g^j) = 2^(c i j) on A3 inside S3 over F7
SparseMat a3_bicharacter(Field f, int c) {
    SparseMat b(f, 3, 3);
    for (int i = 0; i < 3; ++i) {
        std::vector<Elem> col(3);
        for (int j = 0; j < 3; ++j) col[j] = f.pow(f.from_int(2), static_cast<std::uint64_t>(c * i * j));
        b.set_col(i, SparseVec::from_dense(f, col));
    }
    return b;
}

}  // namespace

TEST(Json, ScalarsInEveryFieldKind) {
    for (const Field f : {Field::prime(7), Field::extension(2, 3), Field::extension(3, 2), Field::rationals()}) {
        std::vector<Elem> sample = f.is_finite() ? f.elements()
                                                 : std::vector<Elem>{f.from_int(0), f.from_int(-3),
                                                                     f.div(f.from_int(5), f.from_int(-6))};
        for (const auto& a : sample) {
            Json j = io::to_json(f, a);
            EXPECT_EQ(io::elem_from_json(f, Json::parse(j.dump())), a) << f.name() << " " << j.dump();
        }
    }
    EXPECT_EQ(io::to_json(Field::rationals(), Field::rationals().from_int(-2)), "-2/1");
    EXPECT_TRUE(io::to_json(Field::extension(2, 3), Field::one()).is_array());
    EXPECT_THROW(io::elem_from_json(Field::prime(7), Json::array({1, 0})), SchemaError);
    EXPECT_THROW(io::elem_from_json(Field::prime(7), Json::object()), SchemaError);
}

TEST(Json, SparseObjectsRoundTrip) {
    const Field f = Field::prime(5);
    auto g = ga_kernel(f, 1);
    const auto& h = g.group_algebra;
    EXPECT_EQ(io::vec_from_json(f, io::to_json(h.unit())), h.unit());
    EXPECT_EQ(io::mat_from_json(f, io::to_json(h.comult())), h.comult());
    EXPECT_EQ(io::tensor_from_json(f, io::to_json(h.mult())), h.mult());
    Json dense = Json::array({Json::array({"1", "2"}), Json::array({"0", "4"})});
    SparseMat m = io::mat_from_json(f, dense);
    EXPECT_EQ(m.at(0, 1), f.from_int(2));
    EXPECT_EQ(m.at(1, 0), Field::zero());
    Json bad = io::to_json(h.unit());
    bad["entries"][0]["indices"] = Json::array({99});
    EXPECT_THROW(io::vec_from_json(f, bad), SchemaError);
}

TEST(Json, HopfAlgebrasAndGroupsRoundTrip) {
    std::vector<GroupScheme> all{cyclic_group(Field::rationals(), 2),
                                 symmetric_group3(Field::prime(7)),
                                 ga_kernel(Field::prime(3), 2),
                                 mu_p_kernel(Field::prime(2)),
                                 restricted_enveloping(Field::prime(3), two_dim_nonabelian_lie(Field::prime(3))),
                                 cyclic_group(Field::extension(2, 2), 3)};
    for (const auto& g : all) {
        Json j = io::to_json(g);
        auto back = io::group_from_json(Json::parse(j.dump()));
        EXPECT_EQ(back.group_algebra, g.group_algebra) << g.name;
        EXPECT_EQ(back.coordinate_algebra, g.coordinate_algebra) << g.name;
        EXPECT_EQ(back.group_algebra.labels(), g.group_algebra.labels()) << g.name;
        EXPECT_EQ(back.connected_order, g.connected_order);
        EXPECT_EQ(back.points, g.points);
        EXPECT_EQ(back.is_constant(), g.is_constant());
        EXPECT_EQ(io::to_json(back), j) << g.name;
    }
}

TEST(Json, GroupSpecFilesMatchBuiltIns) {
    auto read = [](const std::string& name) { return Json::parse(std::ifstream(groups + name)); };
    const Field f7 = Field::prime(7), f3 = Field::prime(3);
    EXPECT_EQ(io::group_from_json(read("s3.json"), f7).group_algebra, symmetric_group3(f7).group_algebra);
    EXPECT_EQ(io::group_from_json(read("z2.json"), Field::rationals()).group_algebra,
              cyclic_group(Field::rationals(), 2).group_algebra);
    EXPECT_EQ(io::group_from_json(read("ga2.json"), f3).group_algebra, ga_kernel(f3, 2).group_algebra);
    EXPECT_EQ(io::group_from_json(read("u_nonabelian.json"), f3).group_algebra,
              restricted_enveloping(f3, two_dim_nonabelian_lie(f3)).group_algebra);
    EXPECT_EQ(io::group_from_json(read("z2xz2.json"), f3).order(), 4u);
    EXPECT_EQ(io::group_from_json(read("mu_p.json"), f3).order(), 3u);
    Json product = {{"product", Json::array({read("z2.json"), read("z2.json")})}};
    EXPECT_EQ(io::group_from_json(product, f3).group_algebra,
              direct_product(cyclic_group(f3, 2), cyclic_group(f3, 2)).group_algebra);
    Json with_field = read("z3.json");
    with_field["field"] = "p7";
    EXPECT_EQ(io::group_from_json(with_field).field(), f7);
    EXPECT_THROW(io::group_from_json(read("z3.json")), SchemaError);
    EXPECT_THROW(io::group_from_json(Json{{"dihedral", {{"n", 4}}}}, f7), SchemaError);
    EXPECT_THROW(io::group_from_json(Json{{"cyclic", {{"m", 4}}}}, f7), SchemaError);
}

TEST(Json, TriplesQuotientsAndLatticesRoundTrip) {
    const Field f = Field::prime(7);
    auto g = share(symmetric_group3(f));
    auto a3 = subgroup_from_elements(*g, {1}, "A3");
    Triple t{g, a3, a3, a3_bicharacter(f, 1)};
    Json tj = io::to_json(t);
    EXPECT_EQ(io::triple_from_json(Json::parse(tj.dump())), t);

    auto qp = build_quotient(t);
    VerificationReport rep = verify_hopf(qp.algebra);
    auto bundle = io::quotient_from_json(Json::parse(io::to_json(qp, rep).dump()));
    EXPECT_EQ(bundle.triple, t);
    EXPECT_EQ(bundle.algebra, qp.algebra);
    EXPECT_EQ(bundle.theta, qp.theta);
    EXPECT_EQ(bundle.sigma, qp.sigma);
    EXPECT_EQ(bundle.tau, qp.tau);
    EXPECT_EQ(bundle.r, qp.qt.r);
    EXPECT_EQ(bundle.v, qp.qt.v);
    EXPECT_EQ(io::to_json(bundle.report), io::to_json(rep));

    auto lat = enumerate_triples(g);
    auto doc = io::lattice_from_json(Json::parse(io::to_json(lat).dump()));
    ASSERT_EQ(doc.nodes.size(), lat.nodes.size());
    for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
        EXPECT_EQ(doc.nodes[i].name, lat.nodes[i].name);
        EXPECT_EQ(doc.nodes[i].triple, lat.nodes[i].triple);
        EXPECT_EQ(doc.nodes[i].fp_dimension, lat.nodes[i].fp_dimension);
        EXPECT_EQ(doc.nodes[i].flags, lat.nodes[i].flags);
        EXPECT_EQ(doc.nodes[i].centralizer, lat.nodes[i].centralizer);
    }
    EXPECT_EQ(doc.hasse, lat.hasse);

    for (const auto& b : block_data(qp)) {
        auto back = io::block_from_json(f, Json::parse(io::to_json(b).dump()));
        EXPECT_EQ(io::to_json(back), io::to_json(b));
        EXPECT_EQ(back.twist, b.twist);
        EXPECT_EQ(back.character, b.character);
    }
}

TEST(Json, DoubleBundleRoundTrips) {
    auto g = cyclic_group(Field::rationals(), 2);
    auto d = drinfeld_double(g);
    auto q = canonical_r_and_v(g, d);
    auto rep = verify_quasitriangular(q);
    auto back = io::double_from_json(Json::parse(io::to_json(g, q, rep).dump()));
    EXPECT_EQ(back.structure.algebra, q.algebra);
    EXPECT_EQ(back.structure.r, q.r);
    EXPECT_EQ(back.structure.v, q.v);
    EXPECT_EQ(back.group->group_algebra, g.group_algebra);
}

TEST(Json, SchemaVersionIsChecked) {
    Json j = io::to_json(ga_kernel(Field::prime(2), 1));
    j["schema_version"] = 2;
    EXPECT_THROW(io::group_from_json(j), SchemaError);
}

TEST(Cli, DoubleOfZ2OverQ) {
    auto r = run({"double", "--group", groups + "z2.json", "--field", "q"});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["D"]["dim"], 4);
    EXPECT_TRUE(j["report"]["ok"]);
    auto back = io::double_from_json(j);
    EXPECT_EQ(io::to_json(*back.group, back.structure, back.report), j);
}

TEST(Cli, EnumerateS3OverF7) {
    auto r = run({"enumerate", "--group", groups + "s3.json", "--field", "p7"});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["nodes"].size(), 8u);
    auto dot = run({"enumerate", "--group", groups + "s3.json", "--field", "p7", "--format", "dot"});
    std::size_t vertices = 0;
    std::istringstream lines(dot.out);
    for (std::string line; std::getline(lines, line);)
        vertices += line.find("[label=") != std::string::npos;
    EXPECT_EQ(vertices, 8u);
    EXPECT_EQ(dot.out, j["dot"].get<std::string>());
}

TEST(Cli, LatticeCarriesMeetsAndCentralizers) {
    auto r = run({"lattice", "--group", groups + "z2.json", "--field", "q"});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    Json j = Json::parse(r.out);
    ASSERT_EQ(j["nodes"].size(), 5u);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(j["meets"][i][i], i);
    EXPECT_FALSE(j["hasse"].empty());
}

TEST(Cli, AppendixMatchesGoldenFiles) {
    for (const char* p : {"2", "3", "5"}) {
        auto r = run({"appendix", "--p", p});
        EXPECT_EQ(r.code, exit_ok) << r.err;
    }
}

TEST(Cli, AppendixReportsADiff) {
    fs::path dir = scratch("golden");
    fs::create_directories(dir);
    Json doc = appendix_document(3);
    doc["cases"][1]["tau"]["entries"][1]["value"] = "0";
    std::ofstream(dir / "appendix_p3.json") << doc.dump();
    auto r = run({"appendix", "--p", "3", "--golden-dir", dir.string()});
    EXPECT_EQ(r.code, exit_verification);
    EXPECT_NE(r.err.find("/cases/1/tau"), std::string::npos) << r.err;
}

TEST(Cli, QuotientFromTripleFile) {
    Json triple = {{"group", {{"symmetric3", Json::object()}}},
                   {"K", {{"elements", {"(123)"}}, {"name", "A3"}}},
                   {"H", {{"elements", {"(123)"}}, {"name", "A3"}}},
                   {"B", Json::array({Json::array({"1", "1", "1"}), Json::array({"1", "2", "4"}),
                                      Json::array({"1", "4", "2"})})}};
    auto path = write("a3_triple.json", triple.dump());
    auto r = run({"quotient", "--triple", path, "--field", "p7"});
    ASSERT_EQ(r.code, exit_ok) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["fp_dimension"], 6);
    EXPECT_TRUE(j["report"]["ok"]);
    auto bundle = io::quotient_from_json(j);
    EXPECT_EQ(bundle.triple.b, a3_bicharacter(Field::prime(7), 1));
}

TEST(Cli, VerificationFailureExitsWithOne) {
    auto r = run({"double", "--group", groups + "u_nonabelian.json", "--field", "p3"});
    EXPECT_EQ(r.code, exit_verification);
    EXPECT_NE(r.err.find("S(V) = V"), std::string::npos) << r.err;

    // K = H = <y>; the identity matrix is not a valid B
    Json triple = {{"group", {{"restricted_lie", "two_dim_nonabelian"}}},
                   {"K", {{"generators", Json::array({Json::array({"0", "1", "0", "0", "0", "0", "0", "0", "0"})})}}},
                   {"H", {{"generators", Json::array({Json::array({"0", "1", "0", "0", "0", "0", "0", "0", "0"})})}}},
                   {"B", "trivial"}};
    auto ok = run({"verify", "--triple", write("u_trivial.json", triple.dump()), "--field", "p3"});
    EXPECT_EQ(ok.code, exit_ok) << ok.err;
    triple["B"] = Json::array({Json::array({"1", "0", "0"}), Json::array({"0", "1", "0"}),
                               Json::array({"0", "0", "1"})});
    auto bad = run({"verify", "--triple", write("u_bad.json", triple.dump()), "--field", "p3"});
    EXPECT_EQ(bad.code, exit_verification) << bad.out;
    auto quot = run({"quotient", "--triple", write("u_bad.json", triple.dump()), "--field", "p3"});
    EXPECT_EQ(quot.code, exit_verification);
}

TEST(Cli, SchemaErrorsExitWithTwo) {
    EXPECT_EQ(run({"build", "--group", write("broken.json", "{ not json")}).code, exit_schema);
    EXPECT_EQ(run({"build", "--group", groups + "z2.json"}).code, exit_schema);
    EXPECT_EQ(run({"build", "--group", groups + "z2.json", "--field", "p4"}).code, exit_schema);
    EXPECT_EQ(run({"build", "--group", write("unknown.json", R"({"dihedral": {"n": 4}})"), "--field", "q"}).code,
              exit_schema);
    EXPECT_EQ(run({"frobnicate"}).code, exit_schema);
    EXPECT_EQ(run({"appendix", "--p", "4"}).code, exit_schema);
    Json triple = {{"group", {{"cyclic", {{"n", 2}}}}}, {"K", "full"}, {"H", "full"}, {"B", Json::array({"1"})}};
    EXPECT_EQ(run({"quotient", "--triple", write("shape.json", triple.dump()), "--field", "q"}).code, exit_schema);
}

TEST(Cli, BudgetExhaustionExitsWithThree) {
    auto r = run({"enumerate", "--group", groups + "s3.json", "--field", "p7", "--map-budget", "2"});
    EXPECT_EQ(r.code, exit_budget);
    EXPECT_NE(r.err.find("budget"), std::string::npos);
}

TEST(Cli, BuildRoundTripsAndIsDeterministic) {
    auto first = run({"build", "--group", groups + "ga2.json", "--field", "p3"});
    auto second = run({"build", "--group", groups + "ga2.json", "--field", "p3"});
    ASSERT_EQ(first.code, exit_ok);
    EXPECT_EQ(first.out, second.out);
    auto path = write("ga2_doc.json", first.out);
    auto again = run({"build", "--group", path});
    EXPECT_EQ(again.out, first.out);
}

TEST(Cli, ReportsIgnoreInputKeyOrder) {
    auto a = write("order_a.json", R"({"name": "Z/2xZ/2", "constant": {"elements": ["e","a","b","ab"],
        "table": [["e","a","b","ab"],["a","e","ab","b"],["b","ab","e","a"],["ab","b","a","e"]]}})");
    auto b = write("order_b.json", R"({"constant": {"table": [["e","a","b","ab"],["a","e","ab","b"],
        ["b","ab","e","a"],["ab","b","a","e"]], "elements": ["e","a","b","ab"]}, "name": "Z/2xZ/2"})");
    for (const char* cmd : {"build", "lattice", "blocks"}) {
        auto ra = run({cmd, "--group", a, "--field", "p3"});
        auto rb = run({cmd, "--group", b, "--field", "p3"});
        EXPECT_EQ(ra.code, exit_ok) << cmd << ra.err;
        EXPECT_EQ(ra.out, rb.out) << cmd;
    }
}

TEST(Cli, OutputFileAndTextFormat) {
    auto path = scratch("z3_double.txt");
    auto r = run({"double", "--group", groups + "z3.json", "--field", "p7", "--format", "text", "-o", path.string()});
    EXPECT_EQ(r.code, exit_ok) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::stringstream text;
    text << std::ifstream(path).rdbuf();
    EXPECT_NE(text.str().find("all checks passed"), std::string::npos);
    auto blocks = run({"blocks", "--group", groups + "z2xz2.json", "--field", "p3", "--format", "text"});
    EXPECT_EQ(blocks.code, exit_ok);
    EXPECT_NE(blocks.out.find("total 16 of 16"), std::string::npos) << blocks.out;
}
