#include "doctest.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "tsc/cli.hpp"

using tsc::run_cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "tsc-analyze");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

const std::string corpus = TSC_CORPUS_DIR;

}  // namespace

TEST_CASE("calc examples") {
    const Run one = run({"calc", "integral", "--fn", "one", "--scale", "Z", "--from", "0", "--to", "3", "--format", "json"});
    REQUIRE(one.code == 0);
    CHECK(one.json()["result"]["value"] == "3");
    CHECK(one.json()["result"]["exact"] == true);

    const Run id = run({"calc", "integral", "--fn", "id", "--scale", "Z", "--from", "0", "--to", "5/2", "--format", "json"});
    REQUIRE(id.code == 0);
    CHECK(id.json()["result"]["value"] == "1");
    CHECK(id.json()["result"]["endpoint"] == "2");
    CHECK(id.json()["result"]["endpoint_rule"] == "rho");

    const Run sq = run({"calc", "deriv", "--fn", "sq", "--scale", "Z", "--at", "3"});
    REQUIRE(sq.code == 0);
    CHECK(sq.out.find("value: 7\n") != std::string::npos);
    CHECK(sq.out.find("certification: exact") != std::string::npos);

    const Run dense = run({"calc", "integral", "--fn", "id", "--scale", "Unit", "--from", "0", "--to", "1", "--format", "json"});
    REQUIRE(dense.code == 0);
    CHECK(dense.json()["result"]["exact"] == false);
    CHECK(std::abs(dense.json()["result"]["value"].get<double>() - 0.5) < 1e-9);

    const Run shifted = run({"calc", "shifted", "--fn", "one", "--scale", "Z", "--from", "0", "--length", "5/2", "--format", "json"});
    REQUIRE(shifted.code == 0);
    CHECK(shifted.json()["result"]["value"] == "2");
}

TEST_CASE("classify") {
    const Run z = run({"classify", "--scale", "Z", "--window", "-100", "100", "--format", "json"});
    REQUIRE(z.code == 0);
    const auto j = z.json();
    CHECK(j["schema_version"] == 1);
    CHECK(j["implications_consistent"] == true);
    CHECK(j["verdicts"]["periodic_invariance"]["level"] == "StructurallyProved");
    CHECK(j["tilde_point_count"] == 201);

    const Run ex = run({"classify", "--scale", "Ex31", "--format", "json"});
    REQUIRE(ex.code == 0);
    const auto p = ex.json()["verdicts"]["periodic_invariance"];
    CHECK(p["level"] == "Refuted");
    CHECK_FALSE(p["witnesses"].empty());
    CHECK(ex.json()["sup_mu"] == "5");

    const Run text = run({"classify", "--scale", "ZHalf"});
    CHECK(text.code == 0);
    CHECK(text.out.find("Refuted") != std::string::npos);
    CHECK(text.out.find("WindowCertified") != std::string::npos);
}

TEST_CASE("other commands") {
    const Run pi = run({"pi", "--scale", "HalfZ", "--definition", "invariance", "--tau-bound", "3", "--denom-bound", "2",
                        "--format", "json"});
    REQUIRE(pi.code == 0);
    CHECK(pi.json()["invariance"]["structural"] == "(1/2)Z");

    const Run d = run({"distance", "--scale", "Z", "--tau", "3/10", "--window", "-50", "50", "--format", "json"});
    REQUIRE(d.code == 0);
    CHECK(d.out.find("\"3/10\"") != std::string::npos);

    const Run e = run({"eps-set", "--scale", "ZplusHalf", "--fn", "zero", "--eps", "1/10", "--tau-bound", "20",
                       "--denom-bound", "1", "--format", "json"});
    REQUIRE(e.code == 0);
    CHECK(e.json()["translation_set"]["dense_in_T"]["verdict"] == "false-by-disjointness");
    CHECK(e.json()["translation_set"]["dense_in_R"]["verdict"] == "dense");

    const Run dec = run({"check-decomposition", "--scale", "Z", "--parts", "Z", "--periods", "1", "--format", "json"});
    CHECK(dec.code == 0);
    CHECK(dec.out.find("Confirmed") != std::string::npos);
}

TEST_CASE("audit") {
    const Run a = run({"audit", "--all", "--seed", "7", "--format", "json"});
    const Run b = run({"audit", "--all", "--seed", "7", "--format", "json"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.json()["all_expectations_met"] == true);

    const Run ex = run({"audit", "--claim", "example31", "--tau-bound", "50"});
    CHECK(ex.code == 0);
    for (const char* c : {"case 2", "case 3", "case 4", "case 5"}) CHECK(ex.out.find(c) != std::string::npos);

    const Run band = run({"audit", "--claim", "def62", "--eps-star", "1/5", "--eps1", "9/10", "--format", "json"});
    REQUIRE(band.code == 0);
    CHECK(band.out.find("\"11/20\"") != std::string::npos);

    CHECK(run({"audit", "--claim", "def62", "--eps-star", "1/2", "--eps1", "2/5"}).code == tsc::kExitPrecondition);
    CHECK(run({"audit", "--claim", "nope"}).code == tsc::kExitName);
    // An unreachable band yields NotDecidable where Confirmed was expected.
    CHECK(run({"audit", "--claim", "def62", "--eps-star", "3/5", "--eps1", "4/5"}).code == tsc::kExitAudit);
}

TEST_CASE("scripts and exit codes") {
    const Run ok = run({"classify", "--input", corpus + "/example31.tsc", "--scale", "Ex31", "--format", "json"});
    CHECK(ok.code == 0);

    const Run syntax = run({"classify", "--input", corpus + "/errors/bad_interval.tsc", "--scale", "Bad"});
    CHECK(syntax.code == tsc::kExitParse);
    CHECK(syntax.err.find("bad_interval.tsc:2:13:") != std::string::npos);

    CHECK(run({"classify", "--scale", "Nope"}).code == tsc::kExitName);
    CHECK(run({"calc", "integral", "--fn", "nofn", "--scale", "Z", "--from", "0", "--to", "1"}).code == tsc::kExitName);
    CHECK(run({"calc", "integral", "--fn", "id", "--scale", "Z", "--from", "1/2", "--to", "1"}).code ==
          tsc::kExitPrecondition);
    CHECK(run({"classify", "--scale", "Z", "--window", "5", "1"}).code == tsc::kExitParse);
    CHECK(run({"bogus"}).code == tsc::kExitParse);
    CHECK(run({"classify", "--scale", "Z", "--format", "xml"}).code == tsc::kExitParse);
    CHECK(run({"classify", "--input", corpus + "/does_not_exist.tsc", "--scale", "Z"}).code != 0);
}
