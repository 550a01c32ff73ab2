#include "mec/code.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <utility>

namespace mec {
namespace {

void validate(const CodeSpec& s) {
    const Curve& E = *s.curve;
    int n = s.n();
    if (s.k != s.G.degree()) throw PreconditionFailed("k must equal deg G");
    if (s.k <= 0 || s.k >= n) throw PreconditionFailed("need 0 < deg G < n");
    bool seenO = false;
    std::set<std::pair<u64, u64>> seen;
    for (const Point& P : s.D) {
        E.require_on_curve(P, *E.ctx());
        bool dup = P.inf ? std::exchange(seenO, true)
                         : !seen.insert({P.x.v, P.y.v}).second;
        if (dup) throw DuplicateElements("evaluation point repeated");
    }
    for (const auto& [pl, c] : s.G.terms()) {
        (void)c;
        if (pl.degree != 1) continue;
        const Point& R = pl.rep();
        bool hit = R.inf ? seenO : seen.count({R.x.v, R.y.v}) != 0;
        if (hit) throw PreconditionFailed("Supp(G) meets the evaluation set");
    }
}

// Reduced row echelon form in place; returns the rank.
int rref(const FieldCtx& K, std::vector<Elem>& a, int rows, int cols) {
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (!K.is_zero(a[static_cast<size_t>(i) * cols + c])) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j)
                std::swap(a[static_cast<size_t>(piv) * cols + j],
                          a[static_cast<size_t>(r) * cols + j]);
        Elem s = K.inv(a[static_cast<size_t>(r) * cols + c]);
        for (int j = c; j < cols; ++j) {
            auto& e = a[static_cast<size_t>(r) * cols + j];
            e = K.mul(e, s);
        }
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            Elem f = a[static_cast<size_t>(i) * cols + c];
            if (K.is_zero(f)) continue;
            for (int j = c; j < cols; ++j) {
                auto& e = a[static_cast<size_t>(i) * cols + j];
                e = K.sub(e, K.mul(f, a[static_cast<size_t>(r) * cols + j]));
            }
        }
        ++r;
    }
    return r;
}

u64 binom_capped(u64 n, u64 k, u64 cap) {
    if (k > n) return 0;
    if (n - k < k) k = n - k;
    unsigned __int128 r = 1;
    for (u64 i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
        if (r > cap) return cap + 1;
    }
    return static_cast<u64>(r);
}

// Depth-first scan of all k-subsets of columns in colexicographic order,
// carrying column reductions so each subset costs O(k) once its prefix is
// processed. Returns a singular subset (ascending) if one exists.
std::optional<std::vector<int>> scan_minors(const GenMatrix& M, u64 budget) {
    const FieldCtx& K = *M.field;
    const int k = M.k, n = M.n;
    if (k < 1 || k > n) throw PreconditionFailed("need 1 <= k <= n columns");
    if (binom_capped(n, k, budget) > budget)
        throw BudgetExceeded("C(n,k) exceeds the minor budget; use sampled mode");
    using Rows = std::vector<std::vector<Elem>>;
    Rows top(k, std::vector<Elem>(n));
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < n; ++c) top[r][c] = M.at(r, c);

    std::vector<int> chosen;
    std::optional<std::vector<int>> found;
    auto dfs = [&](auto&& self, const Rows& rows, int need, int limit) -> bool {
        for (int c = need - 1; c < limit; ++c) {
            int piv = -1;
            for (int i = 0; i < static_cast<int>(rows.size()); ++i)
                if (!K.is_zero(rows[i][c])) { piv = i; break; }
            if (piv < 0) {
                // column c depends on the chosen ones; any completion works
                std::vector<int> w(chosen);
                w.push_back(c);
                for (int i = 0; i < need - 1; ++i) w.push_back(i);
                std::sort(w.begin(), w.end());
                found = std::move(w);
                return true;
            }
            if (need == 1) continue;
            Rows next;
            next.reserve(rows.size() - 1);
            Elem inv = K.inv(rows[piv][c]);
            for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
                if (i == piv) continue;
                std::vector<Elem> row(rows[i].begin(), rows[i].begin() + c);
                Elem f = K.mul(rows[i][c], inv);
                if (!K.is_zero(f))
                    for (int j = 0; j < c; ++j)
                        row[j] = K.sub(row[j], K.mul(f, rows[piv][j]));
                next.push_back(std::move(row));
            }
            chosen.push_back(c);
            bool hit = self(self, next, need - 1, c);
            chosen.pop_back();
            if (hit) return true;
        }
        return false;
    };
    dfs(dfs, top, k, n);
    return found;
}

bool singular_cols(const FieldCtx& K, const GenMatrix& M,
                   const std::vector<int>& cols, std::vector<Elem>& buf) {
    const int k = M.k;
    buf.resize(static_cast<size_t>(k) * k);
    for (int r = 0; r < k; ++r)
        for (int j = 0; j < k; ++j)
            buf[static_cast<size_t>(r) * k + j] = M.at(r, cols[j]);
    return rref(K, buf, k, k) < k;
}

// Minimum weight over all nonzero codewords plus the zero positions of a
// minimizing word; q^k <= 10^6 enforced.
std::pair<int, std::vector<int>> weight_scan(const GenMatrix& M) {
    const FieldCtx& K = *M.field;
    const u64 q = K.q();
    const int k = M.k, n = M.n;
    u64 total = 1;
    for (int i = 0; i < k; ++i) {
        total *= q;
        if (total > 1000000)
            throw PreconditionFailed("exhaustive distance needs q^k <= 10^6");
    }
    int best = n + 1;
    std::vector<int> best_zero;
    std::vector<Elem> cw(n);
    std::vector<u64> digits;
    // messages whose last nonzero coordinate is 1 hit every codeword line
    for (int topr = 0; topr < k; ++topr) {
        digits.assign(topr, 0);
        while (true) {
            for (int c = 0; c < n; ++c) cw[c] = M.at(topr, c);
            for (int i = 0; i < topr; ++i) {
                if (digits[i] == 0) continue;
                Elem mi = K.elem_at(digits[i]);
                for (int c = 0; c < n; ++c)
                    cw[c] = K.add(cw[c], K.mul(mi, M.at(i, c)));
            }
            int w = 0;
            for (int c = 0; c < n; ++c)
                if (!K.is_zero(cw[c])) ++w;
            if (w < best) {
                best = w;
                best_zero.clear();
                for (int c = 0; c < n; ++c)
                    if (K.is_zero(cw[c])) best_zero.push_back(c);
            }
            int j = 0;
            while (j < topr && ++digits[j] == q) digits[j++] = 0;
            if (j == topr) break;
        }
    }
    return {best, best_zero};
}

int first_outside(const Subgroup& H) {
    int u = 0;
    while (H.contains(u)) ++u;
    return u;
}

}  // namespace

CodeSpec make_code_spec(const Curve& E, std::vector<Point> D, Divisor G,
                        Provenance prov) {
    CodeSpec s;
    s.curve = std::make_shared<const Curve>(E);
    s.D = std::move(D);
    s.G = std::move(G);
    s.k = s.G.degree();
    s.prov = std::move(prov);
    validate(s);
    return s;
}

GenMatrix generator_matrix(const CodeSpec& spec) {
    const Curve& E = *spec.curve;
    auto basis = rr_basis(E, spec.G);
    const int k = spec.k, n = spec.n();
    FieldRef K = basis.front().field;
    GenMatrix M{spec.field(), k, n, {}};
    M.a.resize(static_cast<size_t>(k) * n);
    std::vector<Elem> w(static_cast<size_t>(k) * n);
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < n; ++c)
            w[static_cast<size_t>(r) * n + c] = evaluate_fn(basis[r], spec.D[c]);
    if (!K->is_tower()) {
        M.a = w;
        if (rref(*K, w, k, n) != k)
            throw DimensionMismatch("generator matrix rank below k");
        return M;
    }
    if (rref(*K, w, k, n) != k)
        throw DimensionMismatch("generator matrix rank below k");
    for (size_t i = 0; i < w.size(); ++i) {
        if (!K->in_base(w[i]))
            throw EchelonNotRational("echelon entry outside the base field");
        M.a[i] = K->project(w[i]);
    }
    return M;
}

Verdict mds_combinatorial(const CodeSpec& spec, const GroupTable& T) {
    if (!T.has_points())
        throw PreconditionFailed("group table carries no point data");
    const int n = spec.n(), k = spec.k;
    if (k < 1 || k > n - 1) throw PreconditionFailed("need 1 <= k <= n-1");
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = T.id_of(spec.D[i]);
    int sid = T.id_of(divisor_sum(spec.G));
    SumsetDP dp(T, ids, k);
    if (!dp.contains(sid)) return {};
    auto wit = dp.witness(sid);
    Verdict v;
    v.mds = false;
    for (int id : *wit)
        v.witness.push_back(
            static_cast<int>(std::find(ids.begin(), ids.end(), id) - ids.begin()));
    std::sort(v.witness.begin(), v.witness.end());
    return v;
}

Verdict mds_matrix(const GenMatrix& M, MatrixMode mode, u64 count, u64 seed,
                   u64 minor_budget) {
    const FieldCtx& K = *M.field;
    switch (mode) {
        case MatrixMode::exhaustive_minors: {
            auto bad = scan_minors(M, minor_budget);
            if (!bad) return {};
            return {false, *bad};
        }
        case MatrixMode::sampled_minors: {
            if (count == 0)
                throw PreconditionFailed("sampled mode needs a positive count");
            if (M.k < 1 || M.k > M.n)
                throw PreconditionFailed("need 1 <= k <= n columns");
            std::mt19937_64 rng(seed);
            std::vector<int> idx(M.n);
            for (int i = 0; i < M.n; ++i) idx[i] = i;
            std::vector<int> cols(M.k);
            std::vector<Elem> buf;
            for (u64 t = 0; t < count; ++t) {
                for (int j = 0; j < M.k; ++j)
                    std::swap(idx[j], idx[j + rng() % (M.n - j)]);
                cols.assign(idx.begin(), idx.begin() + M.k);
                if (singular_cols(K, M, cols, buf)) {
                    std::sort(cols.begin(), cols.end());
                    return {false, cols};
                }
            }
            return {};
        }
        case MatrixMode::exhaustive_distance: {
            auto [d, zeros] = weight_scan(M);
            if (d == M.n - M.k + 1) return {};
            zeros.resize(M.k);
            return {false, zeros};
        }
    }
    throw PreconditionFailed("unknown verification mode");
}

int min_distance(const GenMatrix& M) { return weight_scan(M).first; }

CodeSpec construct_coset_code(const Curve& E, const GroupTable& T, int k) {
    if (T.N() % 2 != 0)
        throw OddGroupOrder("coset construction needs an even point count");
    if (k < 3) throw PreconditionFailed("k >= 3 required");
    auto subs = index2_subgroups(T);
    const Subgroup& H = subs.front();
    int u = first_outside(H);
    auto cos = coset_ids(T, H, u);
    std::vector<Point> D;
    Divisor G;
    Provenance prov;
    prov.construction = "coset";
    prov.c1 = H.c1;
    prov.c2 = H.c2;
    prov.extension = k % 2 != 0;
    if (k % 2 == 0) {
        for (int id : cos)
            if (id != u) D.push_back(T.point(id));
        G.add_term(place_at_infinity(E), k + 1);
        G.add_term(make_place(E, T.point(u)), -1);
    } else {
        for (int id : cos) D.push_back(T.point(id));
        G.add_term(place_at_infinity(E), k);
    }
    CodeSpec spec = make_code_spec(E, std::move(D), std::move(G), std::move(prov));
    if (!mds_combinatorial(spec, T).mds)
        throw ConstructionFailedMDS("coset construction gave a non-MDS code");
    return spec;
}

CodeSpec construct_deg3_code(const Curve& E, const GroupTable& T, int k,
                             const Place& R) {
    if (T.N() % 2 != 0)
        throw OddGroupOrder("degree-3 construction needs an even point count");
    if (k < 3) throw PreconditionFailed("k >= 3 required");
    if (R.degree != 3)
        throw NotDegreeThree("place has degree " + std::to_string(R.degree));
    Divisor rdiv;
    rdiv.add_term(R, 1);
    if (!divisor_sum(rdiv).inf)
        throw PreconditionFailed("sum([R]) must be the identity");
    auto subs = index2_subgroups(T);
    const Subgroup& H = subs.front();
    int u = first_outside(H);
    std::vector<Point> D;
    Divisor G;
    G.add_term(R, 1);
    Provenance prov;
    prov.construction = "deg3";
    prov.c1 = H.c1;
    prov.c2 = H.c2;
    prov.witness_b = R.witness_b;
    if (k % 2 == 0) {
        for (int id : H.elems) D.push_back(T.point(id));
        auto cos = coset_ids(T, H, u);
        if (k - 3 > static_cast<int>(cos.size()))
            throw PreconditionFailed("coset smaller than k-3");
        for (int i = 0; i < k - 3; ++i)
            G.add_term(make_place(E, T.point(cos[i])), 1);
    } else {
        for (int id : coset_ids(T, H, u)) D.push_back(T.point(id));
        if (k > 3) G.add_term(place_at_infinity(E), k - 3);
    }
    CodeSpec spec = make_code_spec(E, std::move(D), std::move(G), std::move(prov));
    if (!mds_combinatorial(spec, T).mds)
        throw ConstructionFailedMDS("degree-3 construction gave a non-MDS code");
    return spec;
}

CodeSpec build_max_code(u64 p, int a, int k, bool restricted, u64 seed) {
    u64 q = ipow(p, static_cast<unsigned>(a));
    BoundResult b = mec_bound(q, k, restricted);
    u64 s = isqrt(4 * q);
    u64 target = b.even_regime ? q + 1 + s : q + s;
    FieldRef F = make_field(p, a);
    Curve E = [&] {
        try {
            return find_curve(F, target, SearchStrategy::family, seed);
        } catch (const PreconditionFailed&) {
        } catch (const SearchExhausted&) {
        }
        try {
            return find_curve(F, target, SearchStrategy::random_scan, seed);
        } catch (const SearchExhausted&) {
        }
        return find_curve(F, target, SearchStrategy::exhaustive, seed);
    }();
    GroupTable T = group_table(E);
    CodeSpec spec = [&] {
        if (restricted) return construct_coset_code(E, T, k);
        if (p != 2 && F->is_zero(E.a1()) && F->is_zero(E.a3())) {
            auto RW = find_degree3_avoid(E);
            CodeSpec sp = construct_deg3_code(E, T, k, RW.first);
            sp.prov.construction = "deg3_avoid";
            return sp;
        }
        Place R = find_degree3_trace(E, seed);
        CodeSpec sp = construct_deg3_code(E, T, k, R);
        sp.prov.construction = "deg3_trace";
        return sp;
    }();
    spec.prov.seed = seed;
    spec.prov.citation = b.citation;
    if (static_cast<u64>(spec.n()) != b.value)
        throw ConstructionFailedMDS("length " + std::to_string(spec.n()) +
                                    " misses the bound " + std::to_string(b.value));
    return spec;
}

AuditReport audit_code(const CodeSpec& spec, const GroupTable& T) {
    AuditReport r;
    r.N = T.N();
    r.n = spec.n();
    r.k = spec.k;
    r.k_even = spec.k % 2 == 0;
    r.odd_N = T.N() % 2 != 0;
    r.n_half_N = !r.odd_N && 2 * static_cast<u64>(r.n) == r.N;
    for (const auto& [pl, c] : spec.G.terms()) {
        (void)c;
        if (pl.degree > 1) r.higher_degree_place = true;
    }
    if (r.n_half_N) {
        std::vector<int> ids(r.n);
        for (int i = 0; i < r.n; ++i) ids[i] = T.id_of(spec.D[i]);
        std::sort(ids.begin(), ids.end());
        for (const Subgroup& H : index2_subgroups(T)) {
            if (ids == H.elems || ids == coset_ids(T, H, first_outside(H))) {
                r.d_coset = true;
                r.coset_c1 = H.c1;
                r.coset_c2 = H.c2;
                break;
            }
        }
    }
    if (r.odd_N) {
        i64 N2 = 2 * static_cast<i64>(r.N);
        r.odd_regime = 5LL * (r.n - 1) >= N2 && r.k >= 3 &&
                       5LL * (r.n + 2 - r.k) >= N2;
    }
    r.predicts_not_mds =
        (r.n_half_N && r.k_even && (!r.d_coset || !r.higher_degree_place)) ||
        r.odd_regime;
    return r;
}

}  // namespace mec
