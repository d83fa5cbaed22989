#include "doctest.h"

#include "critint/cli.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;

    json parsed() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "critint");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = critint::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("critint-test-" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("classify exit codes and certificates") {
    const auto a = run({"classify", "--k", "2", "--mu", "1,5,7", "--eps", "-1"});
    CHECK(a.code == 0);
    CHECK(a.parsed()["verdict"] == "Integrable");
    CHECK(a.parsed()["schema"] == 1);

    const auto b = run({"classify", "--k", "3", "--mu", "1,4", "--eps", "1"});
    CHECK(b.code == 10);
    CHECK(b.parsed()["reason"] == "kimura_contradiction");

    const auto c = run({"classify", "--k", "3", "--mu", "0,1", "--eps", "1"});
    CHECK(c.code == 10);
    CHECK(c.parsed()["reason"] == "kovacic_type_iv");
    CHECK(c.parsed()["kovacic_trace"]["galois"]["families"]["at_infinity"] == json::array({0, 2, 4}));

    CHECK(run({"classify", "--k", "3", "--mu", "1,4", "--eps", "1"}).out == b.out);

    const auto dec = run({"classify", "--k", "3", "--mu", "0.5,1"});
    CHECK(dec.code == 1);
    CHECK(dec.err.find("p/q") != std::string::npos);
    CHECK(run({"classify", "--k", "3"}).code == 1);
    CHECK(run({"classify", "--k", "1", "--mu", "1"}).code == 1);
    CHECK(run({"classify", "--k", "3", "--mu", "1", "--eps", "2"}).code == 1);
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"bogus"}).code == 1);
}

TEST_CASE("certificates replay through verify") {
    TempDir dir;
    for (const auto& mu : {"1,4", "0,1", "2,2,2", "-1,3", "1/2,9"}) {
        const auto path = dir.file("cert.json");
        const auto c = run({"classify", "--k", "3", "--mu", mu, "--out", path});
        REQUIRE(c.code != 1);
        CHECK(slurp(path) == c.out);
        const auto v = run({"verify", "--certificate", path});
        CHECK(v.code == c.code);
        CHECK(v.parsed()["consistent"] == true);
    }
    auto cert = run({"classify", "--k", "4", "--mu", "1,2"}).parsed();
    cert["verdict"] = "Integrable";
    std::ofstream(dir.file("bad.json")) << cert.dump();
    const auto v = run({"verify", "--certificate", dir.file("bad.json")});
    CHECK(v.code == 1);
    CHECK_FALSE(v.parsed()["problems"].empty());
    for (const auto& entry : fs::directory_iterator(dir.path))
        CHECK(entry.path().filename().string().find(".tmp.") == std::string::npos);
}

TEST_CASE("anve subcommand") {
    const auto f = run({"anve", "--k", "3", "--mu", "1,9", "--pivot", "1"}).parsed();
    CHECK(f["differences"]["rho"] == "3/2");
    CHECK(f["differences"]["tau"] == "1");
    CHECK(f["differences"]["sigma"] == "1/2");
    CHECK(f["kimura"]["via"] == "condition_i");

    const auto r = run({"anve", "--k", "3", "--mu", "1,9", "--pivot", "2"}).parsed();
    CHECK(r["differences"]["rho"] == "1/6");
    CHECK(r["kimura"]["solvable"] == false);

    CHECK(run({"anve", "--k", "4", "--mu", "1,1", "--pivot", "1"}).parsed()["differences"]["rho"] == "1/3");

    const auto z = run({"anve", "--k", "3", "--mu", "0,1", "--pivot", "1"});
    CHECK(z.code == 1);
    CHECK(z.err.find("degenerate") != std::string::npos);
}

TEST_CASE("kovacic subcommand") {
    const auto a = run({"kovacic", "--r", "-3/32;z^3"});
    CHECK(a.code == 0);
    CHECK(a.parsed()["trace"]["verdict"] == "TypeIV");

    const auto b = run({"kovacic", "--r", "1/4;z^2"}).parsed();
    CHECK(b["trace"]["verdict"] == "TypeII");
    CHECK(b["trace"]["certificate"]["P"] == "1");

    CHECK(run({"kovacic", "--r", "0"}).parsed()["trace"]["verdict"] != "TypeIV");
    CHECK(run({"kovacic", "--r", "1;z^2-2"}).code == 1);
}

TEST_CASE("simulate subcommand") {
    TempDir dir;
    const auto csv = dir.file("traj.csv"), report = dir.file("drift.json");
    const auto s = run({"simulate", "--k", "2", "--mu", "1,1", "--eps", "-1", "--u0", "1,0", "--v0", "0,1", "--dt", "1e-3",
                        "--T", "10", "--monitor", "H,L12", "--csv", csv, "--report", report});
    CHECK(s.code == 0);
    const auto j = json::parse(slurp(report));
    CHECK(j["status"] == "completed");
    REQUIRE(j["drift"].size() == 2);
    CHECK(j["drift"][1]["observable"] == "L12");
    CHECK(j["drift"][1]["relative"].get<double>() <= 1e-6);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,u1,u2,v1,v2,H");

    const auto again = run({"simulate", "--k", "2", "--mu", "1,1", "--eps", "-1", "--u0", "1,0", "--v0", "0,1", "--dt",
                            "1e-3", "--T", "10", "--monitor", "H,L12", "--csv", dir.file("traj2.csv")});
    CHECK(slurp(csv) == slurp(dir.file("traj2.csv")));

    const auto esc = run({"simulate", "--k", "3", "--mu", "1", "--u0", "2", "--v0", "0", "--T", "10", "--escape-bound", "1e3",
                          "--csv", dir.file("esc.csv")});
    CHECK(esc.code == 2);
    CHECK(esc.parsed()["status"] == "escaped");
    CHECK(fs::exists(dir.file("esc.csv")));

    CHECK(run({"simulate", "--k", "2", "--mu", "1,1", "--u0", "1", "--v0", "0,1"}).code == 1);
    CHECK(run({"simulate", "--k", "2", "--mu", "1,1", "--u0", "1,0", "--v0", "0,1", "--monitor", "L13"}).code == 1);
}

TEST_CASE("poincare subcommand") {
    TempDir dir;
    const auto empty = run({"poincare", "--k", "3", "--mu", "1,4", "--eps", "-1", "--csv", dir.file("s.csv")});
    CHECK(empty.code == 0);
    CHECK(slurp(dir.file("s.csv")) == "seed,tcross,u2,v1\n");

    const auto r = run({"poincare", "--k", "3", "--mu", "1,4", "--eps", "-1", "--seeds", "0,0.3,0.5,0;0,0.3,0.3,0.4",
                        "--section", "u1", "--record", "u2,v2", "--T", "20", "--energy-tol", "1", "--csv",
                        dir.file("t.csv")});
    CHECK(r.code == 0);
    CHECK(r.parsed()["points"].get<int>() > 0);
    CHECK(slurp(dir.file("t.csv")).rfind("seed,tcross,u2,v2\n", 0) == 0);

    CHECK(run({"poincare", "--k", "3", "--mu", "1,4", "--section", "u3", "--csv", dir.file("x.csv")}).code == 1);
}

TEST_CASE("quadrature subcommand") {
    const auto q = run({"quadrature", "--k", "3", "--mu", "1", "--eps", "1", "--h", "0.3333333333333333", "--ua", "0",
                        "--ub", "0.9", "--cross-check"});
    CHECK(q.code == 0);
    CHECK(q.parsed()["relative_deviation"].get<double>() <= 1e-6);
    CHECK(run({"quadrature", "--k", "3", "--mu", "1", "--h", "0.1", "--ua", "0", "--ub", "2"}).code == 1);
}
