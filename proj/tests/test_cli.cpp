#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mec/io.hpp"

using namespace mec;
namespace fs = std::filesystem;

namespace {

std::string bin() {
    const char* b = std::getenv("MEC_BIN");
    REQUIRE_MESSAGE(b != nullptr, "MEC_BIN must point at the CLI binary");
    return b;
}

fs::path work_dir() {
    fs::path d = fs::temp_directory_path() / "mec_cli_tests";
    fs::create_directories(d);
    return d;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args) {
    fs::path out = work_dir() / "stdout.txt", err = work_dir() / "stderr.txt";
    std::string cmd = bin() + " " + args + " >" + out.string() + " 2>" + err.string();
    int rc = std::system(cmd.c_str());
    int code = (rc != -1 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
    return {code, slurp(out), slurp(err)};
}

}  // namespace

TEST_CASE("bound subcommand emits table rows") {
    auto r = run("bound --q 289 --k 4");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["value"] == 162);
    CHECK(j["citation"] == "Table 1 row 4");
    CHECK(j["parity_regime"] == "even");

    auto rr = run("bound --q 289 --k 4 --restricted");
    REQUIRE(rr.code == 0);
    CHECK(json::parse(rr.out)["value"] == 161);
    CHECK(json::parse(rr.out)["citation"] == "Table 1 row 3");

    auto rb = run("bound --q 1024 --k 5");
    CHECK(json::parse(rb.out)["value"] == 544);
    CHECK(json::parse(rb.out)["citation"] == "Table 1 row 10");
}

TEST_CASE("errors and help map to exit codes") {
    CHECK(run("bound --q 256 --k 4").code == 1);       // not in the table's range
    CHECK(run("bound --k 4").code == 1);               // missing required flag
    CHECK(run("frobnicate").code == 1);                // unknown subcommand
    CHECK(run("--help").code == 0);
    CHECK(run("code verify -i /nonexistent.json").code == 1);
    auto r = run("bound --q 300 --k 4");
    CHECK(r.code == 1);
    CHECK(r.err.find("prime power") != std::string::npos);
}

TEST_CASE("curve info reports the known stats") {
    auto r = run("curve info --p 17 --a 2 --modulus 3:16:1 --coeffs 0:0 0:0 0:0 0:0 1:0");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["N"] == 324);
    CHECK(j["trace"] == -34);
    CHECK(j["hasse_ok"] == true);
    CHECK(j["structure"][0] == 18);
    CHECK(j["structure"][1] == 18);
    CHECK(j["generators"].size() == 2);
}

TEST_CASE("curve search finds a target count") {
    auto r = run("curve search --p 7 --target-n 8 --strategy exhaustive");
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["N"] == 8);
    CHECK(run("curve search --p 7 --target-n 14 --strategy exhaustive").code == 1);
}

TEST_CASE("place deg3 avoid reproduces the witness") {
    auto r = run("place deg3 --p 17 --a 2 --modulus 3:16:1 --coeffs 0:0 0:0 0:0 0:0 1:0 --method avoid");
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["degree"] == 3);
    CHECK(j["witness_b"] == json::array({1, 1}));

    auto rt = run("place deg3 --p 7 --coeffs 0 0 0 1 0 --method trace --seed 3");
    REQUIRE(rt.code == 0);
    CHECK(json::parse(rt.out)["degree"] == 3);
}

TEST_CASE("construct verify audit round trip") {
    fs::path spec = work_dir() / "c289.json";
    auto r = run("code construct --p 17 --a 2 --k 4 --seed 7 -o " + spec.string());
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["n"] == 162);
    CHECK(j["provenance"]["construction"] == "deg3_avoid");
    CHECK(fs::exists(work_dir() / "c289.csv"));
    CHECK(json::parse(slurp(spec)).dump() == j.dump());

    auto vc = run("code verify -i " + spec.string() + " --mode combinatorial");
    CHECK(vc.code == 0);
    CHECK(json::parse(vc.out)["mds"] == true);
    auto vs = run("code verify -i " + spec.string() + " --mode sampled:50000 --seed 1");
    CHECK(vs.code == 0);
    auto vm = run("code verify -i " + spec.string() + " --mode minors --threads 4");
    CHECK(vm.code == 0);
    auto vd = run("code verify -i " + spec.string() + " --mode distance");
    CHECK(vd.code == 1);  // 289^4 states exceed the distance-scan budget
    auto vb = run("code verify -i " + spec.string() + " --mode sampled:nope");
    CHECK(vb.code == 1);

    auto ar = run("code audit -i " + spec.string());
    REQUIRE(ar.code == 0);
    json a = json::parse(ar.out);
    CHECK(a["n_half_N"] == true);
    CHECK(a["d_coset"] == true);
    CHECK(a["higher_degree_place"] == true);
    CHECK(a["predicts_not_mds"] == false);
}

TEST_CASE("verify flags a code that cannot be MDS") {
    Curve E = [&] {
        FieldRef F = make_field(17, 2);
        return make_curve(F, F->zero(), F->zero(), F->zero(), F->zero(), F->one());
    }();
    GroupTable T = group_table(E);
    auto subs = index2_subgroups(T);
    const Subgroup& H = subs.front();
    int u = 0;
    while (H.contains(u)) ++u;
    auto cos = coset_ids(T, H, u);
    std::vector<Point> D;
    for (int id : H.elems) D.push_back(T.point(id));
    Divisor G;
    for (int i = 0; i < 4; ++i) G.add_term(make_place(E, T.point(cos[i])), 1);
    CodeSpec s = make_code_spec(E, D, G);

    fs::path bad = work_dir() / "bad.json";
    std::ofstream(bad) << codespec_to_json(s).dump() << "\n";
    auto r = run("code verify -i " + bad.string() + " --mode combinatorial");
    CHECK(r.code == 2);
    json j = json::parse(r.out);
    CHECK(j["mds"] == false);
    CHECK(j["witness"].size() == 4);
    auto a = run("code audit -i " + bad.string());
    CHECK(a.code == 0);
    CHECK(json::parse(a.out)["predicts_not_mds"] == true);
}

TEST_CASE("construct output is byte stable") {
    fs::path s1 = work_dir() / "d1.json", s2 = work_dir() / "d2.json";
    REQUIRE(run("code construct --p 17 --a 2 --k 5 --restricted --seed 11 -o " + s1.string()).code == 0);
    REQUIRE(run("code construct --p 17 --a 2 --k 5 --restricted --seed 11 -o " + s2.string()).code == 0);
    CHECK(slurp(s1) == slurp(s2));
    CHECK(slurp(work_dir() / "d1.csv") == slurp(work_dir() / "d2.csv"));
    CHECK(!slurp(work_dir() / "d1.csv").empty());
}
