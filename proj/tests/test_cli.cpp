#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "rigidcoh/cli/app.hpp"

using namespace rigidcoh;
using namespace rigidcoh::cli;

namespace {

const std::string corpus_path = RIGIDCOH_SOURCE_DIR "/data/corpus/worked_examples.json";
const std::string schema_path = RIGIDCOH_SOURCE_DIR "/docs/schema.json";

// Library operations that the runner must expose.
const std::vector<std::string> library_operations{
    "smith_normal_form", "kernel_basis", "subquotient", "saturation",
    "norm_matrix", "augmentation_sublattice", "invariants_sublattice", "tate_h0", "tate_h_neg1", "h1_lattice",
    "tate_h_neg2_finite", "h1_finite", "dual_module",
    "rigid_h1_torus", "h1_F_torus", "h2_F_torus", "restriction_to_band", "transgression", "infres_check",
    "induced_class_map",
    "char_module", "hom_u_to_Z", "h2_u_level", "transition_char", "transition_h2", "alpha_level",
    "coroot_sublattice", "rigid_h1_reductive", "component_group_dual_center", "tn_pairing", "pairing_perfectness",
    "weyl_group", "weyl_quotient_triviality", "is_elliptic", "dual_root_datum",
    "endoscopic_subsystem", "validate_refined", "lift_to_refined", "transfer_pairing_term",
    "enlarge_center_invariance",
    "valuation", "abs_value", "is_strongly_regular", "delta_IV",
};

DocumentError document_error(const std::string& text) {
    try {
        parse_document(text);
    } catch (const DocumentError& e) {
        return e;
    }
    ADD_FAILURE() << "document was accepted";
    return DocumentError(ErrorCode::InvalidArgument, "", "");
}

int invoke(std::vector<std::string> args, std::string& out, std::string& err) {
    args.insert(args.begin(), "rigidcoh");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    int rc = main_entry(static_cast<int>(argv.size()), argv.data(), "{\"tasks\": []}\n", o, e);
    out = o.str();
    err = e.str();
    return rc;
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
}

const char* minimal = R"({"groups": {"G": {"cyclic": 2}},
  "lattices": {"Y": {"group": "G", "rank": 1, "action": {"1": [[-1]]}}},
  "tasks": [{"op": "tate_h_neg1", "lattice": "Y"}]})";

} // namespace

TEST(Parse, MinimalDocument) {
    TaskDocument doc = parse_document(minimal);
    EXPECT_EQ(doc.tasks.size(), 1u);
    EXPECT_EQ(doc.tasks[0].op->name, "tate_h_neg1");
}

TEST(Parse, DanglingReference) {
    DocumentError e = document_error(R"({"groups": {"G": {"cyclic": 2}},
      "tasks": [{"op": "tate_h0", "lattice": "missing"}]})");
    EXPECT_EQ(e.code(), ErrorCode::DanglingReference);
    EXPECT_EQ(e.location(), "/tasks/0/lattice");
    EXPECT_NE(e.detail().find("missing"), std::string::npos);

    e = document_error(R"({"pairs": {"P": {"y": "nowhere"}}, "tasks": []})");
    EXPECT_EQ(e.code(), ErrorCode::DanglingReference);
    EXPECT_EQ(e.location(), "/pairs/P/y");
}

TEST(Parse, NonLatinSquareTable) {
    DocumentError e = document_error(R"({"groups": {"G": {"table": [[0, 1], [1, 1]]}}, "tasks": []})");
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_EQ(e.location(), "/groups/G/table");
    EXPECT_NE(e.detail().find("Latin square"), std::string::npos);
}

TEST(Parse, SyntaxAndShapeErrors) {
    DocumentError e = document_error("{\n  \"tasks\": [\n    {\"op\": }\n  ]\n}");
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_EQ(e.location().rfind("line 3", 0), 0u) << e.location();

    e = document_error(R"({"tasks": [], "tasks": []})");
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_NE(e.detail().find("duplicate"), std::string::npos);

    e = document_error(R"({"groups": {"X": {"cyclic": 2}}, "lattices": {"X": {"group": "X", "rank": 1}}, "tasks": []})");
    EXPECT_EQ(e.location(), "/lattices/X");

    e = document_error(R"({"tasks": [{"op": "no_such_op"}]})");
    EXPECT_EQ(e.location(), "/tasks/0/op");

    e = document_error(R"({"tasks": [{"op": "kernel_basis", "matrix": [[1, 2], [3]]}]})");
    EXPECT_EQ(e.location(), "/tasks/0/matrix/1");

    e = document_error(R"({"tasks": [{"op": "kernel_basis"}]})");
    EXPECT_EQ(e.location(), "/tasks/0/matrix");

    e = document_error(R"({"tasks": [{"op": "kernel_basis", "matrix": [[1]], "extra": 1}]})");
    EXPECT_EQ(e.location(), "/tasks/0/extra");

    e = document_error(R"({"groups": {"G": {"cyclic": 2}},
      "lattices": {"Y": {"group": "G", "rank": 1, "action": {"1": [[2]]}}}, "tasks": []})");
    EXPECT_EQ(e.code(), ErrorCode::SchemaError);
    EXPECT_EQ(e.location(), "/lattices/Y/action");

    e = document_error(R"({"characters": {"s": ["1/0"]}, "tasks": []})");
    EXPECT_EQ(e.location(), "/characters/s/0");
}

TEST(Run, NormOneTorus) {
    Json r = run(parse_document(R"({"groups": {"G": {"cyclic": 2}},
      "lattices": {"Y": {"group": "G", "rank": 1, "action": {"1": [[-1]]}}},
      "pairs": {"P": {"y": "Y"}},
      "tasks": [{"op": "rigid_h1_torus", "pair": "P"}]})"));
    EXPECT_EQ(r["results"][0]["payload"]["invariant_factors"], Json::parse("[2]"));
}

TEST(Run, BandH2) {
    Json r = run(parse_document(R"({"groups": {"G": {"cyclic": 2}},
      "tasks": [{"op": "h2_u_level", "level": {"group": "G", "n": 2}}]})"));
    EXPECT_EQ(r["results"][0]["status"], "ok");
    EXPECT_EQ(r["results"][0]["payload"]["invariant_factors"], Json::parse("[2]"));
}

TEST(Run, EmptyTaskList) {
    Json r = run(parse_document(R"({"tasks": []})"), 8);
    EXPECT_TRUE(r["results"].empty());
    EXPECT_TRUE(all_ok(r));
}

TEST(Run, TaskFailuresAreIsolated) {
    Json r = run(parse_document(R"({"groups": {"G": {"cyclic": 2}},
      "lattices": {"Y": {"group": "G", "rank": 1}},
      "pairs": {"P": {"y": "Y", "ybar": "Y", "matrix": [[2]]}},
      "root_data": {"SL2": {"cartan": "A1"}},
      "series": {"one": {"p": 3, "coefficients": [1], "precision": 8}},
      "tasks": [{"op": "is_strongly_regular", "datum": "SL2", "gamma": ["one"]},
                {"op": "rigid_h1_torus", "pair": "P"},
                {"op": "restriction_to_band", "pair": "P", "class": [1]}]})"), 2);
    EXPECT_EQ(r["results"][0]["error"]["code"], "PrecisionInsufficient");
    EXPECT_EQ(r["results"][1]["status"], "ok");
    EXPECT_EQ(r["results"][2]["error"]["code"], "NormNonzero");
    EXPECT_EQ(r["summary"]["failed"], 2);
    EXPECT_FALSE(all_ok(r));
}

TEST(Run, DeterministicAcrossParallelism) {
    TaskDocument doc = parse_document(read_file(corpus_path));
    const std::string base = serialize(run(doc, 1));
    for (std::size_t jobs : {2u, 3u, 8u, 32u}) EXPECT_EQ(serialize(run(doc, jobs)), base) << jobs;
    EXPECT_TRUE(all_ok(Json::parse(base)));
}

TEST(Run, DeclarationOrderIrrelevant) {
    const char* a = R"({"tasks": [{"op": "tate_h0", "lattice": "Y"}],
      "lattices": {"Y": {"group": "G", "rank": 2}, "Z": {"group": "G", "regular": true}},
      "groups": {"G": {"cyclic": 3}}})";
    const char* b = R"({"groups": {"G": {"cyclic": 3}},
      "lattices": {"Z": {"regular": true, "group": "G"}, "Y": {"rank": 2, "group": "G"}},
      "tasks": [{"lattice": "Y", "op": "tate_h0"}]})";
    EXPECT_EQ(serialize(run(parse_document(a))), serialize(run(parse_document(b))));
}

TEST(RoundTrip, Documents) {
    TaskDocument doc = parse_document(read_file(corpus_path));
    std::string text = serialize(doc);
    TaskDocument again = parse_document(text);
    EXPECT_EQ(again, doc);
    EXPECT_EQ(serialize(again), text);
}

TEST(RoundTrip, Results) {
    std::string out = serialize(run(parse_document(read_file(corpus_path)), 4));
    EXPECT_EQ(serialize(Json::parse(out)), out);
}

TEST(Dispatcher, CoversLibraryOperations) {
    std::set<std::string> table;
    for (const auto& op : operation_table()) EXPECT_TRUE(table.insert(op.name).second) << op.name;
    for (const auto& name : library_operations) EXPECT_TRUE(table.count(name)) << name;
    EXPECT_EQ(table.size(), library_operations.size());

    // Every task type appears in the bundled corpus and in the published schema.
    std::set<std::string> used, schema;
    const Json corpus = Json::parse(read_file(corpus_path));
    const Json published = Json::parse(read_file(schema_path));
    for (const auto& t : corpus["tasks"]) used.insert(t["op"].get<std::string>());
    for (const auto& n : published["$defs"]["task"]["properties"]["op"]["enum"]) schema.insert(n.get<std::string>());
    EXPECT_EQ(used, table);
    EXPECT_EQ(schema, table);

    // Parameter names are declared in the schema.
    const Json& props = published["$defs"]["task"]["properties"];
    for (const auto& op : operation_table())
        for (const auto& p : op.params) EXPECT_TRUE(props.contains(p.key)) << op.name << "." << p.key;
}

TEST(Text, RendersGroups) {
    std::string text = render_text(run(parse_document(minimal)));
    EXPECT_NE(text.find("ℤ/2"), std::string::npos);
    Json g = encode(FinAbGroup::standard({Integer(2), Integer(4)}));
    EXPECT_EQ(render_group(g), "ℤ/2 ⊕ ℤ/4");
    EXPECT_EQ(render_group(encode(FinAbGroup::standard({}))), "0");
}

TEST(Codec, LargeIntegersAsStrings) {
    Integer big("123456789012345678901234567890");
    EXPECT_EQ(encode(big), Json("123456789012345678901234567890"));
    EXPECT_EQ(read_integer(encode(big), "/"), big);
    EXPECT_EQ(encode(Integer(-5)), Json(-5));
}

TEST(App, ExitCodes) {
    std::string out, err;
    std::string ok = write_temp("ok.json", minimal);
    EXPECT_EQ(invoke({"run", ok}, out, err), 0);
    EXPECT_EQ(Json::parse(out)["summary"]["ok"], 1);
    EXPECT_EQ(invoke({"run", ok, "--format", "text", "--jobs", "2"}, out, err), 0);
    EXPECT_NE(out.find("ℤ/2"), std::string::npos);
    EXPECT_EQ(invoke({"check", ok}, out, err), 0);

    std::string failing = write_temp("fail.json", R"({"groups": {"G": {"cyclic": 2}},
      "lattices": {"Y": {"group": "G", "rank": 1}}, "pairs": {"P": {"y": "Y", "ybar": "Y", "matrix": [[2]]}},
      "tasks": [{"op": "transgression", "pair": "P", "element": [0]}, {"op": "restriction_to_band", "pair": "P", "class": [1]}]})");
    EXPECT_EQ(invoke({"run", failing}, out, err), 1);

    std::string bad = write_temp("bad.json", R"({"tasks": [{"op": "tate_h0", "lattice": "nope"}]})");
    EXPECT_EQ(invoke({"run", bad}, out, err), 2);
    EXPECT_EQ(Json::parse(err)["error"]["code"], "DanglingReference");
    EXPECT_EQ(invoke({"check", bad}, out, err), 2);
    EXPECT_EQ(invoke({"run", ::testing::TempDir() + "does_not_exist.json"}, out, err), 2);
    EXPECT_EQ(invoke({"run", ok, "--format", "xml"}, out, err), 2);
    EXPECT_EQ(invoke({}, out, err), 2);

    EXPECT_EQ(invoke({"examples"}, out, err), 0);
    EXPECT_EQ(out, "{\"tasks\": []}\n");
}
