#include "mec/group.hpp"

#include <algorithm>
#include <array>
#include <bit>

namespace mec {

bool trace_admissible(u64 p, int n, i64 t) {
    const u64 q = ipow(p, static_cast<unsigned>(n));
    if (t * t > static_cast<i64>(4 * q)) return false;
    const u64 at = static_cast<u64>(t < 0 ? -t : t);
    if (at != 0 && gcd_u64(at, p) == 1) return true;                      // (i)
    if (n % 2 == 0) {
        const u64 r = ipow(p, static_cast<unsigned>(n / 2));
        if (at == 2 * r) return true;                                     // (ii)
        if (p % 3 != 1 && at == r) return true;                           // (iii)
    } else {
        if ((p == 2 || p == 3) && at == ipow(p, static_cast<unsigned>((n + 1) / 2)))
            return true;                                                  // (iv)
    }
    if (t == 0 && (n % 2 == 1 || p % 4 != 1)) return true;                // (v)
    return false;
}

std::set<i64> admissible_traces(u64 p, int n) {
    const u64 q = ipow(p, static_cast<unsigned>(n));
    const i64 s = static_cast<i64>(isqrt(4 * q));
    std::set<i64> out;
    for (i64 t = -s; t <= s; ++t)
        if (trace_admissible(p, n, t)) out.insert(t);
    return out;
}

std::vector<std::pair<u64, u64>> possible_structures(u64 p, int n, u64 N) {
    const u64 q = ipow(p, static_cast<unsigned>(n));
    const i64 t = static_cast<i64>(q) + 1 - static_cast<i64>(N);
    if (!trace_admissible(p, n, t))
        throw InadmissibleCount("order " + std::to_string(N) +
                                " is not admissible over GF(" + std::to_string(q) + ")");
    const u64 at = static_cast<u64>(t < 0 ? -t : t);
    const bool case_a = n % 2 == 0 && at == 2 * ipow(p, static_cast<unsigned>(n / 2));
    auto fac = factorize(N);
    std::vector<std::vector<u64>> choices;  // prime-power values of the d-part
    for (auto& [l, h] : fac) {
        std::vector<u64> c;
        if (l == p) {
            c.push_back(1);  // p-part is cyclic
        } else if (case_a) {
            c.push_back(ipow(l, static_cast<unsigned>(h / 2)));
        } else {
            int vl = 0;
            u64 m = q - 1;
            while (m % l == 0) { m /= l; ++vl; }
            int top = std::min(vl, h / 2);
            for (int a = 0; a <= top; ++a) c.push_back(ipow(l, static_cast<unsigned>(a)));
        }
        choices.push_back(std::move(c));
    }
    std::vector<std::pair<u64, u64>> out;
    std::vector<size_t> idx(choices.size(), 0);
    while (true) {
        u64 d = 1;
        for (size_t i = 0; i < choices.size(); ++i) d *= choices[i][idx[i]];
        out.emplace_back(d, N / d);
        size_t pos = 0;
        while (pos < choices.size() && ++idx[pos] == choices[pos].size()) {
            idx[pos] = 0;
            ++pos;
        }
        if (pos == choices.size()) break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

u64 gcd_plus_minus(u64 p, int r, int s) {
    const u64 g = gcd_u64(static_cast<u64>(r), static_cast<u64>(s));
    if ((static_cast<u64>(s) / g) % 2 == 1) return p % 2 == 0 ? 1 : 2;
    return ipow(p, static_cast<unsigned>(g)) + 1;
}

bool predict_cyclic_binary_maximal(int m) {
    return m % 2 == 1 || m % 6 == 0 || m % 6 == 2;
}

GroupTable GroupTable::synthetic(u64 d, u64 e) {
    if (d < 1 || e < 1 || e % d != 0)
        throw PreconditionFailed("need d | e for invariant factors");
    const u64 N = d * e;
    if (N > 1000000) throw BudgetExceeded("synthetic group too large");
    GroupTable G;
    G.N_ = N;
    G.d_ = d;
    G.e_ = e;
    G.coords_.resize(N);
    G.coord_to_id_.resize(N);
    for (u64 id = 0; id < N; ++id) {
        G.coords_[id] = {id / e, id % e};
        G.coord_to_id_[id] = static_cast<int>(id);
    }
    for (u64 id = 0; id < N; ++id) {
        auto [i, j] = G.coords_[id];
        if ((2 * i) % d == 0 && (2 * j) % e == 0)
            G.two_torsion_.push_back(static_cast<int>(id));
    }
    return G;
}

int GroupTable::smul_id(i64 m, int a) const {
    auto [i, j] = coords_[a];
    i64 mi = (static_cast<i64>(i) * m) % static_cast<i64>(d_);
    i64 mj = (static_cast<i64>(j) * m) % static_cast<i64>(e_);
    if (mi < 0) mi += static_cast<i64>(d_);
    if (mj < 0) mj += static_cast<i64>(e_);
    return coord_to_id_[static_cast<u64>(mi) * e_ + static_cast<u64>(mj)];
}

const Point& GroupTable::point(int id) const {
    if (!has_points()) throw Error("synthetic table has no points");
    return points_[static_cast<size_t>(id)];
}

int GroupTable::id_of(const Point& P) const {
    if (!has_points()) throw Error("synthetic table has no points");
    auto it = std::lower_bound(points_.begin(), points_.end(), P, point_less);
    if (it == points_.end() || !(*it == P))
        throw PointNotOnCurve("point is not in the group table");
    return static_cast<int>(it - points_.begin());
}

GroupTable group_table(const Curve& E) {
    auto [pts, N] = enumerate_points(E);
    if (N > 5000) throw BudgetExceeded("group table beyond 5000 elements");
    GroupTable G;
    G.N_ = N;
    G.curve_ = std::make_shared<Curve>(E);
    G.points_ = std::move(pts);

    auto fac = factorize(N);
    auto point_order = [&](const Point& P) {
        u64 ord = N;
        for (auto& [l, h] : fac) {
            (void)h;
            while (ord % l == 0 && E.smul(static_cast<i64>(ord / l), P).inf) ord /= l;
        }
        return ord;
    };
    std::vector<u64> orders(N);
    for (u64 id = 0; id < N; ++id) orders[id] = point_order(G.points_[id]);

    const u64 e = *std::max_element(orders.begin(), orders.end());
    const u64 d = N / e;
    if (d * e != N || e % d != 0) throw Error("invariant factor computation failed");
    G.d_ = d;
    G.e_ = e;

    // Torsion cross-check: point orders must reproduce |E[l]| = gcd(l,d)*gcd(l,e).
    for (auto& [l, h] : fac) {
        (void)h;
        u64 cnt = 0;
        for (u64 id = 0; id < N; ++id)
            if (orders[id] == 1 || orders[id] == l) ++cnt;
        if (cnt != gcd_u64(l, d) * gcd_u64(l, e))
            throw Error("l-torsion count contradicts invariant factors");
    }
    auto structs = possible_structures(E.ctx()->p(), E.ctx()->deg(), N);
    if (std::find(structs.begin(), structs.end(), std::make_pair(d, e)) == structs.end())
        throw Error("computed structure is not in the admissible list");

    Point g2 = Point::infinity();
    for (u64 id = 0; id < N; ++id)
        if (orders[id] == e) { g2 = G.points_[id]; break; }

    auto raw_id = [&](const Point& P) {
        auto it = std::lower_bound(G.points_.begin(), G.points_.end(), P, point_less);
        return static_cast<int>(it - G.points_.begin());
    };

    Point g1 = Point::infinity();
    if (d > 1) {
        std::vector<char> in_g2(N, 0);
        Point cur = Point::infinity();
        for (u64 j = 0; j < e; ++j) {
            in_g2[static_cast<size_t>(raw_id(cur))] = 1;
            cur = E.add(cur, g2);
        }
        for (u64 id = 0; id < N && g1.inf; ++id) {
            if (orders[id] != d) continue;
            const Point& cand = G.points_[id];
            bool indep = true;
            Point m = cand;
            for (u64 t = 1; t < d && indep; ++t) {
                if (in_g2[static_cast<size_t>(raw_id(m))]) indep = false;
                m = E.add(m, cand);
            }
            if (indep) g1 = cand;
        }
        if (g1.inf) throw Error("no independent generator of order d found");
    }

    G.coords_.assign(N, {0, 0});
    G.coord_to_id_.assign(N, -1);
    std::vector<char> seen(N, 0);
    Point rowp = Point::infinity();
    for (u64 i = 0; i < d; ++i) {
        Point curp = rowp;
        for (u64 j = 0; j < e; ++j) {
            int id = raw_id(curp);
            if (seen[static_cast<size_t>(id)]) throw Error("coordinates are not a bijection");
            seen[static_cast<size_t>(id)] = 1;
            G.coords_[static_cast<size_t>(id)] = {i, j};
            G.coord_to_id_[i * e + j] = id;
            curp = E.add(curp, g2);
        }
        rowp = E.add(rowp, g1);
    }

    for (u64 id = 0; id < N; ++id)
        if (orders[id] <= 2) G.two_torsion_.push_back(static_cast<int>(id));
    return G;
}

std::vector<Subgroup> index2_subgroups(const GroupTable& G) {
    std::vector<Subgroup> out;
    const std::array<std::pair<int, int>, 3> chars = {{{0, 1}, {1, 0}, {1, 1}}};
    for (auto [c1, c2] : chars) {
        if (c1 == 1 && G.d() % 2 != 0) continue;
        if (c2 == 1 && G.e() % 2 != 0) continue;
        Subgroup H;
        H.c1 = c1;
        H.c2 = c2;
        H.member.assign(G.N(), 0);
        for (u64 id = 0; id < G.N(); ++id) {
            auto [i, j] = G.coords(static_cast<int>(id));
            if ((static_cast<u64>(c1) * i + static_cast<u64>(c2) * j) % 2 == 0) {
                H.member[id] = 1;
                H.elems.push_back(static_cast<int>(id));
            }
        }
        H.order = H.elems.size();
        out.push_back(std::move(H));
    }
    return out;
}

std::vector<int> coset_ids(const GroupTable& G, const Subgroup& H, int u_id) {
    std::vector<int> out;
    out.reserve(H.elems.size());
    for (int h : H.elems) out.push_back(G.add_ids(u_id, h));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<int> span_ids(const GroupTable& G, const std::vector<int>& gens) {
    std::vector<char> in(G.N(), 0);
    std::vector<int> queue = {G.identity_id()};
    in[static_cast<size_t>(G.identity_id())] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
        int x = queue[head];
        for (int g : gens) {
            int y = G.add_ids(x, g);
            if (!in[static_cast<size_t>(y)]) {
                in[static_cast<size_t>(y)] = 1;
                queue.push_back(y);
            }
        }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
}

SumsetDP::SumsetDP(const GroupTable& G, const std::vector<int>& S, int k)
    : G_(&G), S_(S), k_(k) {
    {
        std::vector<int> sorted = S;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw DuplicateElements("sumset base set has repeats");
    }
    if (k < 0 || static_cast<size_t>(k) > S.size())
        throw PreconditionFailed("need 0 <= k <= |S|");
    const u64 N = G.N();
    words_ = (N + 63) / 64;
    const size_t T = S.size();
    if ((T + 1) * static_cast<size_t>(k + 1) * words_ * 8 > (size_t{1} << 29))
        throw BudgetExceeded("sumset DP table too large");
    layers_.assign(T + 1, std::vector<std::vector<u64>>(
                              static_cast<size_t>(k + 1), std::vector<u64>(words_, 0)));
    const int id0 = G.identity_id();
    layers_[0][0][static_cast<size_t>(id0) / 64] |= u64{1} << (id0 % 64);
    std::vector<int> perm(N);
    for (size_t t = 1; t <= T; ++t) {
        const int s = S_[t - 1];
        for (u64 id = 0; id < N; ++id)
            perm[id] = G.add_ids(static_cast<int>(id), s);
        for (int j = 0; j <= k_; ++j) {
            auto& dst = layers_[t][static_cast<size_t>(j)];
            dst = layers_[t - 1][static_cast<size_t>(j)];
            if (j == 0) continue;
            const auto& src = layers_[t - 1][static_cast<size_t>(j - 1)];
            for (size_t w = 0; w < words_; ++w) {
                u64 bits = src[w];
                while (bits) {
                    int b = std::countr_zero(bits);
                    bits &= bits - 1;
                    int tgt = perm[w * 64 + static_cast<size_t>(b)];
                    dst[static_cast<size_t>(tgt) / 64] |= u64{1} << (tgt % 64);
                }
            }
        }
    }
}

bool SumsetDP::contains(int target_id) const {
    const auto& row = layers_.back()[static_cast<size_t>(k_)];
    return (row[static_cast<size_t>(target_id) / 64] >> (target_id % 64)) & 1;
}

std::vector<char> SumsetDP::mask() const {
    std::vector<char> out(G_->N(), 0);
    const auto& row = layers_.back()[static_cast<size_t>(k_)];
    for (u64 id = 0; id < G_->N(); ++id)
        out[id] = static_cast<char>((row[id / 64] >> (id % 64)) & 1);
    return out;
}

std::optional<std::vector<int>> SumsetDP::witness(int target_id) const {
    if (!contains(target_id)) return std::nullopt;
    auto has = [&](size_t t, int j, int id) {
        return (layers_[t][static_cast<size_t>(j)][static_cast<size_t>(id) / 64] >>
                (id % 64)) & 1;
    };
    std::vector<int> used;
    int g = target_id, j = k_;
    for (size_t t = layers_.size() - 1; t >= 1; --t) {
        if (has(t - 1, j, g)) continue;
        const int s = S_[t - 1];
        used.push_back(s);
        g = G_->add_ids(g, G_->neg_id(s));
        --j;
        if (j == 0 && g == G_->identity_id()) break;
    }
    if (j != 0 || g != G_->identity_id()) throw Error("sumset backtracking failed");
    std::sort(used.begin(), used.end());
    return used;
}

std::vector<char> k_sumset(const GroupTable& G, const std::vector<int>& S, int k) {
    return SumsetDP(G, S, k).mask();
}

}  // namespace mec
