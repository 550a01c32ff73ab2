#include "mec/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mec/io.hpp"

namespace mec {

namespace {

std::vector<int> parse_digits(const std::string& s) {
    std::vector<int> ds;
    std::stringstream in(s);
    std::string part;
    while (std::getline(in, part, ':')) ds.push_back(std::stoi(part));
    if (ds.empty()) throw FormatError("empty digit string");
    return ds;
}

Elem parse_elem(const FieldCtx& K, const std::string& s) {
    return K.from_digits(parse_digits(s));
}

FieldRef field_from_flags(u64 p, int a, const std::string& modulus) {
    if (modulus.empty()) return make_field(p, a);
    return make_field(p, a, parse_digits(modulus));
}

Curve curve_from_flags(u64 p, int a, const std::string& modulus,
                       const std::vector<std::string>& coeffs) {
    FieldRef F = field_from_flags(p, a, modulus);
    if (coeffs.size() != 5)
        throw FormatError("--coeffs needs a1 a2 a3 a4 a6");
    return make_curve(F, parse_elem(*F, coeffs[0]), parse_elem(*F, coeffs[1]),
                      parse_elem(*F, coeffs[2]), parse_elem(*F, coeffs[3]),
                      parse_elem(*F, coeffs[4]));
}

std::string sibling_csv(const std::string& path) {
    const std::string ext = ".json";
    if (path.size() > ext.size() &&
        path.compare(path.size() - ext.size(), ext.size(), ext) == 0)
        return path.substr(0, path.size() - ext.size()) + ".csv";
    return path + ".csv";
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << data;
    if (!out) throw Error("write to " + path + " failed");
}

json load_spec(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    return json::parse(in);
}

void print_curve_report(const Curve& E) {
    const FieldCtx& K = *E.ctx();
    u64 N = count_points(E);
    i64 t = static_cast<i64>(K.q() + 1) - static_cast<i64>(N);
    json j;
    j["curve"] = curve_to_json(E);
    j["N"] = N;
    j["trace"] = t;
    j["hasse_ok"] = t * t <= static_cast<i64>(4 * K.q());
    try {
        GroupTable T = group_table(E);
        j["structure"] = json::array({T.d(), T.e()});
        json gens = json::array();
        if (T.d() > 1) gens.push_back(point_to_json(K, T.point(T.gen1_id())));
        gens.push_back(point_to_json(K, T.point(T.gen2_id())));
        j["generators"] = std::move(gens);
    } catch (const BudgetExceeded&) {
        j["structure"] = nullptr;
        j["generators"] = nullptr;
    }
    std::cout << j.dump() << "\n";
}

}  // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"maximum-length MDS codes from elliptic curves"};
    app.require_subcommand(1);

    u64 bq = 0;
    int bk = 0;
    bool brestricted = false;
    auto* bound = app.add_subcommand("bound", "table lookup for the maximal length");
    bound->add_option("--q", bq, "field size")->required();
    bound->add_option("--k", bk, "dimension")->required();
    bound->add_flag("--restricted", brestricted, "rational-support evaluation divisor");

    auto* curve = app.add_subcommand("curve", "curve utilities");
    curve->require_subcommand(1);
    u64 cp = 0;
    int ca = 1;
    std::string cmodulus;
    std::vector<std::string> ccoeffs;
    auto* cinfo = curve->add_subcommand("info", "point count and group structure");
    cinfo->add_option("--p", cp, "characteristic")->required();
    cinfo->add_option("--a", ca, "extension degree");
    cinfo->add_option("--modulus", cmodulus, "defining polynomial, digits joined by ':'");
    cinfo->add_option("--coeffs", ccoeffs, "a1 a2 a3 a4 a6, digits joined by ':'")
        ->expected(5)
        ->required();

    u64 sp = 0, starget = 0, sseed = 0;
    int sa = 1;
    std::string smodulus, sstrategy = "auto";
    auto* csearch = curve->add_subcommand("search", "find a curve with a given point count");
    csearch->add_option("--p", sp, "characteristic")->required();
    csearch->add_option("--a", sa, "extension degree");
    csearch->add_option("--modulus", smodulus, "defining polynomial, digits joined by ':'");
    csearch->add_option("--target-n", starget, "desired number of rational points")->required();
    csearch->add_option("--strategy", sstrategy, "family, exhaustive, random_scan or auto");
    csearch->add_option("--seed", sseed, "random scan seed");

    auto* place = app.add_subcommand("place", "place utilities");
    place->require_subcommand(1);
    u64 pp = 0, pseed = 0;
    int pa = 1;
    std::string pmodulus, pmethod = "trace";
    std::vector<std::string> pcoeffs;
    auto* pdeg3 = place->add_subcommand("deg3", "find a degree-3 place summing to O");
    pdeg3->add_option("--p", pp, "characteristic")->required();
    pdeg3->add_option("--a", pa, "extension degree");
    pdeg3->add_option("--modulus", pmodulus, "defining polynomial, digits joined by ':'");
    pdeg3->add_option("--coeffs", pcoeffs, "a1 a2 a3 a4 a6, digits joined by ':'")
        ->expected(5)
        ->required();
    pdeg3->add_option("--method", pmethod, "trace or avoid");
    pdeg3->add_option("--seed", pseed, "sampling seed for the trace method");

    auto* code = app.add_subcommand("code", "construct, verify and audit codes");
    code->require_subcommand(1);
    u64 gp = 0, gseed = 0;
    int ga = 1, gk = 0, gthreads = 1;
    bool grestricted = false;
    std::string gout;
    auto* cons = code->add_subcommand("construct", "build a maximum-length MDS code");
    cons->add_option("--p", gp, "characteristic")->required();
    cons->add_option("--a", ga, "extension degree");
    cons->add_option("--k", gk, "dimension")->required();
    cons->add_flag("--restricted", grestricted, "rational-support evaluation divisor");
    cons->add_option("--seed", gseed, "search seed");
    cons->add_option("--threads", gthreads, "accepted for symmetry, output is identical");
    cons->add_option("-o,--out", gout, "output path for the code spec JSON")->required();

    std::string vin, vmode = "combinatorial";
    u64 vseed = 0, vbudget = kDefaultMinorBudget;
    int vthreads = 1;
    auto* verify = code->add_subcommand("verify", "check the MDS property");
    verify->add_option("-i,--in", vin, "code spec JSON path")->required();
    verify->add_option("--mode", vmode, "combinatorial, minors, sampled:COUNT or distance");
    verify->add_option("--seed", vseed, "sampling seed");
    verify->add_option("--minor-budget", vbudget, "max subset determinants for minors mode");
    verify->add_option("--threads", vthreads, "accepted for symmetry, output is identical");

    std::string ain;
    auto* audit = code->add_subcommand("audit", "structural report on a code spec");
    audit->add_option("-i,--in", ain, "code spec JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (bound->parsed()) {
            std::cout << bound_to_json(mec_bound(bq, bk, brestricted)).dump() << "\n";
            return 0;
        }
        if (cinfo->parsed()) {
            print_curve_report(curve_from_flags(cp, ca, cmodulus, ccoeffs));
            return 0;
        }
        if (csearch->parsed()) {
            FieldRef F = field_from_flags(sp, sa, smodulus);
            Curve E = [&] {
                if (sstrategy == "family")
                    return find_curve(F, starget, SearchStrategy::family, sseed);
                if (sstrategy == "exhaustive")
                    return find_curve(F, starget, SearchStrategy::exhaustive, sseed);
                if (sstrategy == "random_scan")
                    return find_curve(F, starget, SearchStrategy::random_scan, sseed);
                if (sstrategy != "auto")
                    throw PreconditionFailed("unknown strategy " + sstrategy);
                try {
                    return find_curve(F, starget, SearchStrategy::family, sseed);
                } catch (const PreconditionFailed&) {
                } catch (const SearchExhausted&) {
                }
                try {
                    return find_curve(F, starget, SearchStrategy::random_scan, sseed);
                } catch (const SearchExhausted&) {
                }
                return find_curve(F, starget, SearchStrategy::exhaustive, sseed);
            }();
            print_curve_report(E);
            return 0;
        }
        if (pdeg3->parsed()) {
            Curve E = curve_from_flags(pp, pa, pmodulus, pcoeffs);
            Place R = [&] {
                if (pmethod == "trace") return find_degree3_trace(E, pseed);
                if (pmethod != "avoid")
                    throw PreconditionFailed("unknown method " + pmethod);
                auto [A, b] = find_degree3_avoid(E);
                A.witness_b = b;
                return A;
            }();
            std::cout << place_to_json(R).dump() << "\n";
            return 0;
        }
        if (cons->parsed()) {
            CodeSpec s = build_max_code(gp, ga, gk, grestricted, gseed);
            json j = codespec_to_json(s);
            GenMatrix M = generator_matrix(s);
            write_file(gout, j.dump() + "\n");
            write_file(sibling_csv(gout), matrix_to_csv(M, s));
            std::cout << j.dump() << "\n";
            return 0;
        }
        if (verify->parsed()) {
            CodeSpec s = codespec_from_json(load_spec(vin));
            Verdict v;
            if (vmode == "combinatorial") {
                GroupTable T = group_table(*s.curve);
                v = mds_combinatorial(s, T);
            } else if (vmode == "minors") {
                v = mds_matrix(generator_matrix(s), MatrixMode::exhaustive_minors, 0, 0,
                               vbudget);
            } else if (vmode == "distance") {
                v = mds_matrix(generator_matrix(s), MatrixMode::exhaustive_distance);
            } else if (vmode.rfind("sampled:", 0) == 0) {
                u64 count = std::stoull(vmode.substr(8));
                v = mds_matrix(generator_matrix(s), MatrixMode::sampled_minors, count,
                               vseed);
            } else {
                throw PreconditionFailed("unknown mode " + vmode);
            }
            std::cout << verdict_to_json(v, vmode).dump() << "\n";
            return v.mds ? 0 : 2;
        }
        if (audit->parsed()) {
            CodeSpec s = codespec_from_json(load_spec(ain));
            GroupTable T = group_table(*s.curve);
            std::cout << audit_to_json(audit_code(s, T)).dump() << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    std::cerr << "no subcommand\n";
    return 1;
}

}  // namespace mec
