#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "vir/cli.hpp"
#include "vir/kactable.hpp"
#include "vir/rational.hpp"

using vir::rat;
using vir::rat_parse;
using vir::rat_str;
using vir::run;
using vir::verify_all;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

RunResult capture(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    RunResult rr;
    rr.code = run(args, out, err);
    rr.out = out.str();
    rr.err = err.str();
    return rr;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

/* every string that looks like a fraction must survive a parse/print
   round trip unchanged */
void check_fraction_round_trip(const nlohmann::json& j, long& seen) {
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        if (s.find('/') == std::string::npos) return;
        CHECK(rat_str(rat_parse(s)) == s);
        ++seen;
        return;
    }
    if (j.is_array() || j.is_object())
        for (const auto& child : j) check_fraction_round_trip(child, seen);
}

} // namespace

TEST_CASE("weight table prints the grid") {
    auto rr = capture({"table", "--p", "2", "--q", "3", "--rmax", "2", "--smax", "5"});
    CHECK(rr.code == 0);
    CHECK(rr.err.empty());
    CHECK(contains(rr.out, "c = 0/1"));
    CHECK(contains(rr.out, "5/8"));
    CHECK(contains(rr.out, "-1/24"));

    auto js = capture({"table", "--p", "3", "--q", "4", "--format", "json"});
    CHECK(js.code == 0);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["c"] == "1/2");
    CHECK(j["weights"].size() == 3);
    CHECK(j["weights"][0].size() == 4);
    CHECK(j["weights"][1][0] == "1/2");
}

TEST_CASE("bad parameters exit with usage errors") {
    auto rr = capture({"table", "--p", "2", "--q", "4"});
    CHECK(rr.code == 2);
    CHECK(rr.out.empty());
    CHECK(!rr.err.empty());

    auto unknown = capture({"frobnicate"});
    CHECK(unknown.code == 2);
    CHECK(!unknown.err.empty());

    auto none = capture({});
    CHECK(none.code == 2);

    auto badfmt = capture({"table", "--format", "yaml"});
    CHECK(badfmt.code == 2);

    auto badlabel = capture({"singular", "--r", "0", "--s", "1"});
    CHECK(badlabel.code == 2);

    auto evenp = capture({"bpz", "--p", "4"});
    CHECK(evenp.code == 2);

    auto missing = capture({"singular", "--r", "1"});
    CHECK(missing.code == 2);
}

TEST_CASE("help is available") {
    auto rr = capture({"--help"});
    CHECK(rr.code == 0);
    CHECK(contains(rr.out, "table"));
    CHECK(contains(rr.out, "verify"));
}

TEST_CASE("singular vector output shows the level 2 kernel") {
    auto rr = capture({"singular", "--p", "2", "--q", "3", "--r", "1", "--s", "2",
                       "--level", "2"});
    CHECK(rr.code == 0);
    CHECK(contains(rr.out, "h = 0/1"));
    CHECK(contains(rr.out, "-2/3"));
    CHECK(contains(rr.out, "level 2"));

    auto js = capture({"singular", "--r", "2", "--s", "1", "--level", "3",
                       "--format", "json"});
    CHECK(js.code == 0);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["h"] == "5/8");
    REQUIRE(j["singular"].size() == 1);
    CHECK(j["singular"][0]["level"] == 2);
}

TEST_CASE("diagram output lists nodes and arrows") {
    auto rr = capture({"diagram", "--r", "1", "--s", "1", "--depth", "4",
                       "--format", "json"});
    CHECK(rr.code == 0);
    auto j = nlohmann::json::parse(rr.out);
    CHECK(j["case"] == "Bulk");
    REQUIRE(j["nodes"].size() == 4);
    CHECK(j["nodes"][0]["weight"] == "0/1");
    CHECK(!j["arrows"].empty());

    auto text = capture({"diagram", "--r", "2", "--s", "3", "--depth", "3"});
    CHECK(text.code == 0);
    CHECK(contains(text.out, "case: Corner"));
}

TEST_CASE("character output carries the three rows") {
    auto rr = capture({"char", "--r", "1", "--s", "2", "--level", "6"});
    CHECK(rr.code == 0);
    CHECK(contains(rr.out, "verma: 1 1 2 3 5 7 11"));
    CHECK(contains(rr.out, "kac: 1 1 1 2 3 4 6"));
    CHECK(contains(rr.out, "simple: 1 0 0 0 0 0 0"));

    auto js = capture({"char", "--p", "3", "--q", "4", "--r", "1", "--s", "1",
                       "--level", "4", "--format", "json"});
    CHECK(js.code == 0);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["verma"] == nlohmann::json::parse("[1,1,2,3,5]"));
    CHECK(j["kac"] == nlohmann::json::parse("[1,0,1,1,2]"));
}

TEST_CASE("structure output names factors and arrows") {
    auto rr = capture({"kac-structure", "--r", "3", "--s", "4", "--format", "json"});
    CHECK(rr.code == 0);
    auto j = nlohmann::json::parse(rr.out);
    CHECK(j["kind"] == "Kac");
    CHECK(j["strip"] == "Bulk");
    CHECK(j["length"] == 6);
    CHECK(j["factors"].size() == 6);

    auto ff = capture({"kac-structure", "--r", "1", "--s", "1", "--feigin-fuchs"});
    CHECK(ff.code == 0);
    CHECK(contains(ff.out, "kind: FeiginFuchs"));
}

TEST_CASE("graded dimension output matches the partition count rule") {
    auto rr = capture({"kac-dims", "--r", "1", "--s", "2", "--level", "6"});
    CHECK(rr.code == 0);
    CHECK(contains(rr.out, "dims: 1 1 1 2 3 4 6"));

    auto js = capture({"kac-dims", "--r", "2", "--s", "2", "--level", "5",
                       "--format", "json"});
    CHECK(js.code == 0);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["dims"] == nlohmann::json::parse("[1,1,2,3,4,6]"));
    CHECK(j["lambda"].contains("a"));
}

TEST_CASE("intertwiner output reports the primary and descent flags") {
    auto rr = capture({"intertwiner", "--r", "1", "--s", "1", "--branch", "plus",
                       "--level", "4", "--format", "json"});
    CHECK(rr.code == 0);
    auto j = nlohmann::json::parse(rr.out);
    CHECK(j["admissible"] == true);
    CHECK(j["primary_condition"] == true);
    CHECK(j["descends"] == true);
    CHECK(j["target"]["s"] == 2);
    CHECK(j["phis"].size() == 5);

    auto inadm = capture({"intertwiner", "--r", "1", "--s", "3", "--branch",
                          "minus", "--level", "4", "--format", "json"});
    CHECK(inadm.code == 0);
    auto ji = nlohmann::json::parse(inadm.out);
    CHECK(ji["admissible"] == false);
    CHECK(!ji.contains("primary_condition"));

    auto vanish = capture({"intertwiner", "--r", "1", "--s", "1", "--branch",
                           "minus", "--level", "4", "--format", "json"});
    CHECK(vanish.code == 0);
    auto jv = nlohmann::json::parse(vanish.out);
    CHECK(jv["admissible"] == true);
    CHECK(jv["target"]["s"] == 0);
    CHECK(jv["descends"] == true);
}

TEST_CASE("oscillator image comparison reports a match") {
    auto rr = capture({"fock-image", "--r", "1", "--s", "2", "--r2", "3", "--s2",
                       "4", "--level", "4", "--format", "json"});
    CHECK(rr.code == 0);
    auto j = nlohmann::json::parse(rr.out);
    CHECK(j["match"] == true);
    CHECK(j["image_dims"] == j["target_dims"]);
}

TEST_CASE("series identity command reports a zero residual") {
    auto rr = capture({"bpz", "--p", "3", "--order", "12"});
    CHECK(rr.code == 0);
    CHECK(contains(rr.out, "zero_residual: true"));

    auto js = capture({"bpz", "--p", "5", "--order", "10", "--format", "json"});
    CHECK(js.code == 0);
    auto j = nlohmann::json::parse(js.out);
    CHECK(j["zero_residual"] == true);
    CHECK(j["first_nonzero_order"].is_null());
}

TEST_CASE("constants command emits decimals with a stated precision") {
    auto rr = capture({"constants", "--p", "2", "--q", "3", "--precision", "128",
                       "--format", "json"});
    CHECK(rr.code == 0);
    auto j = nlohmann::json::parse(rr.out);
    CHECK(j["precision_bits"] == 128);
    CHECK(j["R_pairing"] == "-1");
    std::string d12 = j["d_K12"].get<std::string>();
    CHECK(d12.substr(0, 6) == "0.9999");

    auto low = capture({"constants", "--precision", "16"});
    CHECK(low.code == 2);
}

TEST_CASE("fusion command covers the three products") {
    auto rr = capture({"fuse", "--left", "k12", "--r", "1", "--s", "3",
                       "--format", "json"});
    CHECK(rr.code == 0);
    auto j = nlohmann::json::parse(rr.out);
    CHECK(j["splits"] == false);
    CHECK(j["logarithmic"] == true);
    CHECK(j["indecomposable"] == true);
    bool found = false;
    for (const auto& f : j["factors"])
        if (f["r"] == 1 && f["s"] == 4 && f["mult"] == 2) found = true;
    CHECK(found);

    auto iso = capture({"fuse", "--left", "kr1", "--r", "2", "--s", "3"});
    CHECK(iso.code == 0);
    CHECK(contains(iso.out, "isomorphism: true"));
    CHECK(contains(iso.out, "{(2,3):1}"));

    auto simple = capture({"fuse", "--left", "k12", "--r", "1", "--s", "4",
                           "--simple"});
    CHECK(simple.code == 0);
    CHECK(contains(simple.out, "{(1,3):1, (1,5):1}"));

    auto bad = capture({"fuse", "--left", "kr1", "--r", "1", "--s", "2",
                        "--simple"});
    CHECK(bad.code == 2);
}

TEST_CASE("zero mode command prints the quadratic constraint") {
    auto rr = capture({"zhu", "--first", "k12", "--r", "2", "--s", "3",
                       "--format", "json"});
    CHECK(rr.code == 0);
    auto j = nlohmann::json::parse(rr.out);
    CHECK(j["kind"] == "JordanBlock");
    CHECK(j["poly"] == nlohmann::json::parse(R"(["1/64","-1/4","1/1"])"));
    CHECK(j["roots"][0] == "1/8");

    auto k21 = capture({"zhu", "--first", "k21", "--r", "1", "--s", "1"});
    CHECK(k21.code == 0);
    CHECK(contains(k21.out, "kind: TwoSemisimple"));
}

TEST_CASE("duality status command names the region") {
    auto rr = capture({"rigidity", "--r", "1", "--s", "4"});
    CHECK(rr.code == 0);
    CHECK(contains(rr.out, "status: NotRigid"));

    auto open = capture({"rigidity", "--r", "2", "--s", "7", "--format", "json"});
    CHECK(open.code == 0);
    CHECK(nlohmann::json::parse(open.out)["status"] == "Open");

    auto rigid = capture({"rigidity", "--r", "2", "--s", "3"});
    CHECK(rigid.code == 0);
    CHECK(contains(rigid.out, "status: RigidSelfDual"));
}

TEST_CASE("ring cross check command exits by result") {
    auto rr = capture({"consistency", "--rmax", "3", "--smax", "3"});
    CHECK(rr.code == 0);
    CHECK(contains(rr.out, "ok: true"));

    auto bad = capture({"consistency", "--rmax", "0", "--smax", "3"});
    CHECK(bad.code == 2);
}

TEST_CASE("full check suite passes at the practical minimum level") {
    auto rr = capture({"verify", "--p", "2", "--q", "3", "--level", "6"});
    CHECK(rr.code == 0);
    CHECK(contains(rr.out, "result: 9/9 passed"));
    CHECK(!contains(rr.out, "["));

    auto shallow = capture({"verify", "--level", "1"});
    CHECK(shallow.code == 2);
}

TEST_CASE("report struct carries sorted named checks") {
    auto cc = vir::central_charge(2, 5);
    auto rep = verify_all(cc, 6);
    REQUIRE(rep.checks.size() == 9);
    CHECK(rep.all_passed());
    for (size_t i = 1; i < rep.checks.size(); ++i)
        CHECK(rep.checks[i - 1].name < rep.checks[i].name);
    for (const auto& ck : rep.checks) {
        CHECK(!ck.expected.empty());
        CHECK(!ck.actual.empty());
        CHECK(ck.elapsed_seconds >= 0.0);
    }
}

TEST_CASE("identical arguments give identical bytes") {
    const std::vector<std::vector<std::string>> cases{
        {"table", "--p", "3", "--q", "5", "--format", "json"},
        {"singular", "--r", "1", "--s", "3", "--level", "4"},
        {"diagram", "--r", "1", "--s", "2", "--depth", "5", "--format", "json"},
        {"kac-structure", "--r", "2", "--s", "2"},
        {"fuse", "--left", "k21", "--r", "2", "--s", "2", "--format", "json"},
        {"zhu", "--first", "k12", "--r", "1", "--s", "3", "--format", "json"},
        {"constants", "--precision", "192", "--format", "json"},
        {"verify", "--p", "2", "--q", "3", "--level", "6", "--format", "json"},
    };
    for (const auto& argv : cases) {
        auto first = capture(argv);
        auto second = capture(argv);
        CHECK(first.code == second.code);
        CHECK(first.out == second.out);
        CHECK(first.err == second.err);
    }
}

TEST_CASE("json fractions round trip through the exact parser") {
    const std::vector<std::vector<std::string>> cases{
        {"table", "--p", "2", "--q", "3", "--rmax", "4", "--smax", "6",
         "--format", "json"},
        {"singular", "--r", "1", "--s", "2", "--level", "4", "--format", "json"},
        {"diagram", "--r", "1", "--s", "1", "--depth", "6", "--format", "json"},
        {"kac-structure", "--r", "3", "--s", "4", "--format", "json"},
        {"intertwiner", "--r", "1", "--s", "1", "--branch", "plus", "--level",
         "4", "--format", "json"},
        {"zhu", "--first", "k21", "--r", "2", "--s", "3", "--format", "json"},
    };
    long seen = 0;
    for (const auto& argv : cases) {
        auto rr = capture(argv);
        REQUIRE(rr.code == 0);
        check_fraction_round_trip(nlohmann::json::parse(rr.out), seen);
    }
    CHECK(seen > 40);
}
