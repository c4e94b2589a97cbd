#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lab_systems.hpp"
#include "parop/cli.hpp"

using namespace parop;

namespace {

struct RunOutcome {
    int code;
    std::string out;
    std::string err;
};

RunOutcome run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

} // namespace

TEST_CASE("gunning table") {
    auto r = run_cli({"gunning", "--curve", data("curve_g0_n3_c2.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("par-deg 0") != std::string::npos);
    CHECK(r.out.find("3/5 2/5") != std::string::npos);
}

TEST_CASE("json output is deterministic") {
    auto a = run_cli({"sym", "--curve", data("curve_g0_n3_c2.json"), "--power", "4", "--json"});
    auto b = run_cli({"sym", "--curve", data("curve_g0_n3_c2.json"), "--power", "4", "--json"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Json j = Json::parse(a.out);
    CHECK(j["status"] == "ok");
    CHECK(j["payload"]["rank"] == 5);
    CHECK(j["payload"]["degree"] == -6);
    CHECK(j["payload"]["weights"]["x1"][0] == "4/5");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run_cli({"frobnicate"}).code == 2);
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"gunning"}).code == 2); // missing --curve
    CHECK(run_cli({"gunning", "--curve", data("missing.json")}).code == 2);
}

TEST_CASE("oracle check runs from the CLI") {
    auto r = run_cli({"oracle-check", "--curve", data("curve_g0_n3_c2.json"), "--seed", "7",
                      "--count", "50"});
    CHECK(r.code == 0);
    CHECK(r.out.find("all agree") != std::string::npos);
}

TEST_CASE("filtration, xi, transversality, jets, oper-operators, theta, regrep") {
    for (auto args : std::vector<std::vector<std::string>>{
             {"filtration", "--curve", data("curve_g0_n3_c2.json"), "--rank", "4"},
             {"xi", "--curve", data("curve_g0_n3_c2.json"), "--rank", "6", "--power", "5"},
             {"transversality", "--curve", data("curve_g0_n3_c2.json"), "--rank", "6"},
             {"jets", "--curve", data("curve_g0_n3_c2.json"), "--order", "5"},
             {"oper-operators", "--curve", data("curve_g0_n3_c2.json"), "--rank", "3"},
             {"theta-check", "--curve", data("curve_g0_n3_c2.json")},
             {"regrep", "--curve", data("curve_g0_n3_c2.json")},
             {"validate", "--curve", data("curve_g0_n3_c2.json")},
         }) {
        auto r = run_cli(args);
        CAPTURE(args[0]);
        CHECK(r.code == 0);
        CHECK_FALSE(r.out.empty());
    }
}

TEST_CASE("diffspace between bundle files") {
    auto r = run_cli({"diffspace", "--curve", data("curve_g0_n3_c2.json"), "--order", "2",
                      "--source", data("bundle_theta_line.json"), "--target",
                      data("bundle_theta_line.json"), "--json"});
    CHECK(r.code == 0);
    Json j = Json::parse(r.out);
    CHECK(j["payload"]["total_rank"] == 3);
    // Hom(L, L) is trivial, so the gradeds are the jet lines themselves
    CHECK(j["payload"]["pieces"][0]["bundle"]["degree"] == 0);
    CHECK(j["payload"]["pieces"][1]["bundle"]["degree"] == -1);
    CHECK(j["payload"]["pieces"][2]["bundle"]["degree"] == -2);
}

TEST_CASE("indicial resolves labels through the curve") {
    auto r = run_cli({"indicial", "--op", data("op_euler.json"), "--point", "x1", "--curve",
                      data("curve_g0_n3_c2.json")});
    CHECK(r.code == 0);
    CHECK(r.out.find("indicial roots") != std::string::npos);
}

TEST_CASE("monodromy and operator commands") {
    auto m = run_cli({"monodromy", "--system", data("system_rank2.json"), "--point", "x1",
                      "--tol", "1e-8", "--json"});
    CHECK(m.code == 0);
    Json jm = Json::parse(m.out);
    CHECK(jm["payload"]["estimated_error"].get<double>() <= 1e-8);

    auto ind = run_cli({"indicial", "--op", data("op_euler.json"), "--point", "0"});
    CHECK(ind.code == 0);
    CHECK(ind.out.find("2") != std::string::npos);
    CHECK(ind.out.find("5") != std::string::npos);

    auto sp = run_cli({"subprincipal", "--op", data("op_euler.json")});
    CHECK(sp.code == 0);
    CHECK(sp.out.find("nonzero") != std::string::npos);
}

TEST_CASE("json round trips for systems and operators") {
    FuchsianSystem sys = system_from_json(load_json_file(data("system_rank2.json")));
    FuchsianSystem again = system_from_json(system_to_json(sys));
    REQUIRE(again.punctures().size() == sys.punctures().size());
    for (std::size_t i = 0; i < sys.punctures().size(); ++i) {
        CHECK(again.punctures()[i].coordinate == sys.punctures()[i].coordinate);
        CHECK(distance(again.punctures()[i].residue, sys.punctures()[i].residue) == 0.0);
    }

    MonicOperator op = operator_from_json(load_json_file(data("op_euler.json")));
    MonicOperator op2 = operator_from_json(operator_to_json(op));
    CHECK(op2.order == op.order);
    for (int j = 0; j < op.order; ++j) CHECK(op2.a(j) == op.a(j));

    CurvePtr curve = curve_from_json(load_json_file(data("curve_g0_n3_c2.json")));
    LocallyAbelianBundle v = bundle_from_json(load_json_file(data("bundle_theta_line.json")), curve);
    CHECK(bundle_from_json(bundle_to_json(v), curve) == v);
    CHECK(*curve_from_json(curve_to_json(*curve)) == *curve);
}

TEST_CASE("oper-check accepts the model operator and rejects a broken one") {
    // write the model operator to a temp file
    std::string path = "model_op_tmp.json";
    {
        std::ofstream f(path);
        f << operator_to_json(parop::testing::oper_rank2_model_operator()).dump(2);
    }
    auto ok = run_cli({"oper-check", "--curve", data("curve_g0_n3_c2.json"), "--rank", "2",
                       "--op", path, "--tol", "1e-6"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("pass") != std::string::npos);

    // against c = 3 weights the exponent classes no longer match
    auto wrong = run_cli({"oper-check", "--curve", data("curve_g0_n3_c3.json"), "--rank", "2",
                          "--op", path, "--tol", "1e-6"});
    CHECK(wrong.code == 1);
    std::remove(path.c_str());
}
