#include "mec/io.hpp"

#include <sstream>
#include <utility>

namespace mec {

namespace {

std::vector<int> int_list(const json& j, const char* what) {
    if (!j.is_array()) throw FormatError(std::string(what) + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number_integer()) throw FormatError(std::string(what) + " entry not an integer");
        out.push_back(v.get<int>());
    }
    return out;
}

json prov_to_json(const FieldCtx& K, const Provenance& p) {
    json j;
    j["construction"] = p.construction;
    j["seed"] = p.seed;
    j["c1"] = p.c1;
    j["c2"] = p.c2;
    j["citation"] = p.citation;
    j["extension"] = p.extension;
    if (p.witness_b) j["witness_b"] = elem_to_json(K, *p.witness_b);
    return j;
}

Provenance prov_from_json(const FieldCtx& K, const json& j) {
    Provenance p;
    p.construction = j.at("construction").get<std::string>();
    p.seed = j.at("seed").get<u64>();
    p.c1 = j.at("c1").get<int>();
    p.c2 = j.at("c2").get<int>();
    p.citation = j.at("citation").get<int>();
    p.extension = j.at("extension").get<bool>();
    if (j.contains("witness_b")) p.witness_b = elem_from_json(K, j.at("witness_b"));
    return p;
}

void check_same_field(const FieldCtx& a, const json& b) {
    if (a.p() != b.at("p").get<u64>() || a.deg() != b.at("a").get<int>() ||
        a.modulus() != int_list(b.at("modulus"), "modulus"))
        throw FormatError("embedded fields disagree");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

}  // namespace

json field_to_json(const FieldCtx& K) {
    if (K.is_tower()) throw PreconditionFailed("tower fields are rebuilt from degree, not serialized");
    json j;
    j["p"] = K.p();
    j["a"] = K.deg();
    j["modulus"] = K.modulus();
    return j;
}

FieldRef field_from_json(const json& j) {
    u64 p = j.at("p").get<u64>();
    int a = j.at("a").get<int>();
    return make_field(p, a, int_list(j.at("modulus"), "modulus"));
}

json elem_to_json(const FieldCtx& K, const Elem& e) {
    return json(K.digits(e));
}

Elem elem_from_json(const FieldCtx& K, const json& j) {
    auto ds = int_list(j, "element");
    if (static_cast<int>(ds.size()) != K.deg())
        throw FormatError("element digit count does not match field degree");
    return K.from_digits(ds);
}

json point_to_json(const FieldCtx& K, const Point& P) {
    if (P.inf) return json("O");
    json j;
    j["x"] = elem_to_json(K, P.x);
    j["y"] = elem_to_json(K, P.y);
    return j;
}

Point point_from_json(const FieldCtx& K, const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "O") throw FormatError("point string must be \"O\"");
        return Point::infinity();
    }
    return Point::affine(elem_from_json(K, j.at("x")), elem_from_json(K, j.at("y")));
}

json curve_to_json(const Curve& E) {
    const FieldCtx& K = *E.ctx();
    json j;
    j["field"] = field_to_json(K);
    j["a1"] = elem_to_json(K, E.a1());
    j["a2"] = elem_to_json(K, E.a2());
    j["a3"] = elem_to_json(K, E.a3());
    j["a4"] = elem_to_json(K, E.a4());
    j["a6"] = elem_to_json(K, E.a6());
    return j;
}

Curve curve_from_json(const json& j) {
    FieldRef F = field_from_json(j.at("field"));
    return make_curve(F, elem_from_json(*F, j.at("a1")), elem_from_json(*F, j.at("a2")),
                      elem_from_json(*F, j.at("a3")), elem_from_json(*F, j.at("a4")),
                      elem_from_json(*F, j.at("a6")));
}

json place_to_json(const Place& pl) {
    json j;
    j["degree"] = pl.degree;
    j["representative"] = point_to_json(*pl.field, pl.rep());
    if (pl.witness_b) j["witness_b"] = elem_to_json(*pl.curve->ctx(), *pl.witness_b);
    return j;
}

Place place_from_json(const Curve& E, const json& j) {
    int degree = j.at("degree").get<int>();
    if (degree < 1) throw FormatError("place degree must be positive");
    Place pl = [&] {
        if (degree == 1)
            return make_place(E, point_from_json(*E.ctx(), j.at("representative")));
        FieldRef K = extend_field(E.ctx(), degree);
        return make_place(E, point_from_json(*K, j.at("representative")), K);
    }();
    if (pl.degree != degree) throw FormatError("representative orbit has the wrong degree");
    if (j.contains("witness_b"))
        pl.witness_b = elem_from_json(*E.ctx(), j.at("witness_b"));
    return pl;
}

json divisor_to_json(const Divisor& D) {
    json j = json::array();
    for (const auto& [pl, c] : D.terms()) {
        json t;
        t["place"] = place_to_json(pl);
        t["coeff"] = c;
        j.push_back(std::move(t));
    }
    return j;
}

Divisor divisor_from_json(const Curve& E, const json& j) {
    if (!j.is_array()) throw FormatError("divisor must be an array of terms");
    Divisor D;
    for (const auto& t : j)
        D.add_term(place_from_json(E, t.at("place")), t.at("coeff").get<int>());
    return D;
}

json subgroup_to_json(const GroupTable& T, const Subgroup& H) {
    json j;
    j["c1"] = H.c1;
    j["c2"] = H.c2;
    j["order"] = H.order;
    std::vector<std::pair<u64, u64>> gens;
    if (H.c1 == 0 && H.c2 == 1) gens = {{1, 0}, {0, 2}};
    else if (H.c1 == 1 && H.c2 == 0) gens = {{2, 0}, {0, 1}};
    else gens = {{2, 0}, {1, 1}};
    json out = json::array();
    for (auto [a, b] : gens) {
        a %= T.d();
        b %= T.e();
        if (a == 0 && b == 0) continue;
        out.push_back(json::array({a, b}));
    }
    j["generators"] = std::move(out);
    return j;
}

json bound_to_json(const BoundResult& b) {
    json j;
    j["q"] = b.q;
    j["k"] = b.k;
    j["restricted"] = b.restricted;
    j["preconditions_ok"] = true;
    j["parity_regime"] = b.even_regime ? "even" : "odd";
    j["value"] = b.value;
    j["citation"] = "Table 1 row " + std::to_string(b.citation);
    return j;
}

json verdict_to_json(const Verdict& v, const std::string& mode) {
    json j;
    j["mode"] = mode;
    j["mds"] = v.mds;
    j["witness"] = v.witness;
    return j;
}

json audit_to_json(const AuditReport& r) {
    json j;
    j["N"] = r.N;
    j["n"] = r.n;
    j["k"] = r.k;
    j["n_half_N"] = r.n_half_N;
    j["d_coset"] = r.d_coset;
    if (r.d_coset) {
        j["coset"] = json{{"c1", r.coset_c1}, {"c2", r.coset_c2}};
    } else {
        j["coset"] = nullptr;
    }
    j["higher_degree_place"] = r.higher_degree_place;
    j["k_even"] = r.k_even;
    j["odd_N"] = r.odd_N;
    j["odd_regime"] = r.odd_regime;
    j["predicts_not_mds"] = r.predicts_not_mds;
    return j;
}

json codespec_to_json(const CodeSpec& s) {
    const FieldCtx& K = *s.field();
    json j;
    j["field"] = field_to_json(K);
    j["curve"] = curve_to_json(*s.curve);
    j["n"] = s.n();
    j["k"] = s.k;
    json d = json::array();
    for (const Point& P : s.D) d.push_back(point_to_json(K, P));
    j["D"] = std::move(d);
    j["G"] = divisor_to_json(s.G);
    j["provenance"] = prov_to_json(K, s.prov);
    return j;
}

CodeSpec codespec_from_json(const json& j) {
    Curve E = curve_from_json(j.at("curve"));
    const FieldCtx& K = *E.ctx();
    check_same_field(K, j.at("field"));
    std::vector<Point> D;
    for (const auto& p : j.at("D")) D.push_back(point_from_json(K, p));
    if (j.at("n").get<size_t>() != D.size())
        throw FormatError("declared n does not match |D|");
    Divisor G = divisor_from_json(E, j.at("G"));
    int k = j.at("k").get<int>();
    if (G.degree() != k) throw FormatError("declared k does not match deg G");
    Provenance prov = prov_from_json(K, j.at("provenance"));
    return make_code_spec(E, std::move(D), std::move(G), std::move(prov));
}

std::string matrix_to_csv(const GenMatrix& M, const CodeSpec& s) {
    const FieldCtx& K = *M.field;
    json h;
    h["n"] = M.n;
    h["k"] = M.k;
    h["field"] = field_to_json(K);
    h["provenance"] = prov_to_json(*s.field(), s.prov);
    std::string out = "# " + h.dump() + "\n";
    for (int r = 0; r < M.k; ++r) {
        for (int c = 0; c < M.n; ++c) {
            if (c) out.push_back(',');
            auto ds = K.digits(M.at(r, c));
            for (size_t i = 0; i < ds.size(); ++i) {
                if (i) out.push_back(':');
                out += std::to_string(ds[i]);
            }
        }
        out.push_back('\n');
    }
    return out;
}

GenMatrix matrix_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0)
        throw FormatError("missing CSV header line");
    json h = json::parse(line.substr(2));
    FieldRef F = field_from_json(h.at("field"));
    int k = h.at("k").get<int>(), n = h.at("n").get<int>();
    if (k < 1 || n < 1) throw FormatError("header dimensions must be positive");
    GenMatrix M{F, k, n, {}};
    M.a.reserve(static_cast<size_t>(k) * n);
    for (int r = 0; r < k; ++r) {
        if (!std::getline(in, line)) throw FormatError("fewer rows than header k");
        auto cells = split(line, ',');
        if (static_cast<int>(cells.size()) != n) throw FormatError("row width does not match header n");
        for (const auto& cell : cells) {
            std::vector<int> ds;
            for (const auto& d : split(cell, ':')) ds.push_back(std::stoi(d));
            if (static_cast<int>(ds.size()) != F->deg())
                throw FormatError("entry digit count does not match field degree");
            M.a.push_back(F->from_digits(ds));
        }
    }
    return M;
}

}  // namespace mec
