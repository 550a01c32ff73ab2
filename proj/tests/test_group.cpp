#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "mec/group.hpp"

using namespace mec;

TEST_CASE("admissible traces for small fields") {
    CHECK(admissible_traces(2, 3) ==
          std::set<i64>{-5, -4, -3, -1, 0, 1, 3, 4, 5});
    CHECK(admissible_traces(17, 2).count(34) == 1);
    CHECK(admissible_traces(17, 2).count(0) == 0);  // n even, p = 1 mod 4
    CHECK(admissible_traces(2, 10).count(-63) == 1);
    CHECK(admissible_traces(2, 10).count(-64) == 1);
    CHECK(admissible_traces(2, 10).count(-2) == 0);
    for (i64 t : admissible_traces(5, 3)) CHECK(t * t <= 500);
    // prime fields admit every trace in the Hasse interval
    for (u64 p : {5, 7, 11, 13}) {
        auto s = admissible_traces(p, 1);
        CHECK(s.size() == 2 * isqrt(4 * p) + 1);
    }
}

TEST_CASE("possible structures") {
    auto s289 = possible_structures(17, 2, 324);
    REQUIRE(s289.size() == 1);
    CHECK(s289[0] == std::make_pair(u64{18}, u64{18}));

    auto s1024 = possible_structures(2, 10, 1088);
    REQUIRE(s1024.size() == 1);
    CHECK(s1024[0] == std::make_pair(u64{1}, u64{1088}));

    auto s7 = possible_structures(5, 1, 7);
    REQUIRE(s7.size() == 1);
    CHECK(s7[0] == std::make_pair(u64{1}, u64{7}));

    // q = 25, N = 32 = q + 1 - (-6): v_2(q-1) = 3, h_2 = 5 so a_2 up to 2
    auto s25 = possible_structures(5, 2, 32);
    CHECK(s25 == std::vector<std::pair<u64, u64>>{{1, 32}, {2, 16}, {4, 8}});

    CHECK_THROWS_AS(possible_structures(2, 3, 11), InadmissibleCount);
    for (auto& [d, e] : possible_structures(3, 2, 16)) CHECK(e % d == 0);
}

TEST_CASE("gcd of p^r+1 and p^s-1") {
    CHECK(gcd_plus_minus(2, 2, 6) == 1);
    CHECK(gcd_plus_minus(2, 3, 4) == 3);
    CHECK(gcd_plus_minus(3, 1, 2) == 4);
    for (u64 p : {2, 3, 5})
        for (int r = 1; r <= 12; ++r)
            for (int s = 1; s <= 12; ++s)
                CHECK(gcd_plus_minus(p, r, s) ==
                      std::gcd(ipow(p, r) + 1, ipow(p, s) - 1));
}

TEST_CASE("cyclicity prediction for binary maximal orders") {
    CHECK(predict_cyclic_binary_maximal(5));
    CHECK(predict_cyclic_binary_maximal(3));
    CHECK_FALSE(predict_cyclic_binary_maximal(4));
    for (int m = 1; m <= 10; ++m) {
        u64 q = ipow(2, 2 * m);
        u64 N = q + 2 * ipow(2, m);
        auto structs = possible_structures(2, 2 * m, N);
        bool forced_cyclic =
            structs.size() == 1 && structs[0] == std::make_pair(u64{1}, N);
        CHECK(predict_cyclic_binary_maximal(m) == forced_cyclic);
    }
}

TEST_CASE("group tables from curves") {
    {
        auto F = make_field(17, 2, {3, 16, 1});
        auto E = make_curve(F, F->zero(), F->zero(), F->zero(), F->zero(),
                            F->one());
        GroupTable G = group_table(E);
        CHECK(G.N() == 324);
        CHECK(G.d() == 18);
        CHECK(G.e() == 18);
        CHECK(G.has_points());
        CHECK(G.two_torsion().size() == 4);
        CHECK(G.point(G.identity_id()).inf);
        // generators have the advertised orders and ids round-trip
        std::mt19937_64 rng(3);
        for (int i = 0; i < 200; ++i) {
            int a = static_cast<int>(rng() % G.N());
            int b = static_cast<int>(rng() % G.N());
            CHECK(G.id_of(G.point(a)) == a);
            Point s = E.add(G.point(a), G.point(b));
            CHECK(G.add_ids(a, b) == G.id_of(s));
            CHECK(G.point(G.neg_id(a)) == E.neg(G.point(a)));
            CHECK(G.smul_id(7, a) == G.id_of(E.smul(7, G.point(a))));
        }
        CHECK(G.smul_id(18, G.gen1_id()) == G.identity_id());
        CHECK(G.smul_id(18, G.gen2_id()) == G.identity_id());
        for (int m = 1; m < 18; ++m)
            CHECK(G.smul_id(m, G.gen2_id()) != G.identity_id());
    }
    {
        auto F = make_field(2, 10, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1});
        Elem a6 = F->from_digits({0, 0, 1, 0, 0, 0, 1, 0, 1});
        auto E = make_curve(F, F->one(), F->zero(), F->zero(), F->zero(), a6);
        GroupTable G = group_table(E);
        CHECK(G.N() == 1088);
        CHECK(G.d() == 1);
        CHECK(G.e() == 1088);
        CHECK(G.two_torsion().size() == 2);
    }
    {
        auto F = make_field(3, 2);
        auto E = make_curve(F, F->zero(), F->zero(), F->zero(), F->one(),
                            F->zero());
        GroupTable G = group_table(E);
        CHECK(G.N() == 16);
        CHECK(G.d() == 4);
        CHECK(G.e() == 4);
    }
}

TEST_CASE("synthetic tables and subgroups") {
    GroupTable G = GroupTable::synthetic(4, 12);
    CHECK(G.N() == 48);
    CHECK_FALSE(G.has_points());
    CHECK(G.two_torsion().size() == 4);
    CHECK_THROWS_AS(GroupTable::synthetic(3, 7), PreconditionFailed);
    CHECK_THROWS_AS(G.point(0), Error);

    CHECK(index2_subgroups(GroupTable::synthetic(1, 1088)).size() == 1);
    CHECK(index2_subgroups(GroupTable::synthetic(18, 18)).size() == 3);
    CHECK(index2_subgroups(GroupTable::synthetic(3, 9)).empty());
    for (auto& H : index2_subgroups(G)) {
        CHECK(H.order == 24);
        CHECK(H.contains(G.identity_id()));
        // closed under addition
        std::mt19937_64 rng(7);
        for (int i = 0; i < 100; ++i) {
            int a = H.elems[rng() % H.order];
            int b = H.elems[rng() % H.order];
            CHECK(H.contains(G.add_ids(a, b)));
        }
    }
}

TEST_CASE("cosets and spans") {
    GroupTable G = GroupTable::synthetic(2, 10);
    auto subs = index2_subgroups(G);
    REQUIRE(subs.size() == 3);
    for (auto& H : subs) {
        int u = -1;
        for (u64 id = 0; id < G.N(); ++id)
            if (!H.contains(static_cast<int>(id))) { u = static_cast<int>(id); break; }
        auto C = coset_ids(G, H, u);
        CHECK(C.size() == 10);
        for (int c : C) CHECK_FALSE(H.contains(c));
        CHECK(std::is_sorted(C.begin(), C.end()));
        auto Hs = span_ids(G, H.elems);
        CHECK(Hs == H.elems);
    }
    CHECK(span_ids(G, {}).size() == 1);
    CHECK(span_ids(G, {G.gen1_id(), G.gen2_id()}).size() == 20);
}

TEST_CASE("sumsets match definitions") {
    GroupTable Z10 = GroupTable::synthetic(1, 10);
    std::vector<int> H;
    for (int i = 0; i < 10; i += 2) H.push_back(Z10.id_from_coords(0, i));
    auto m = k_sumset(Z10, H, 4);
    for (u64 id = 0; id < 10; ++id)
        CHECK(m[id] == (Z10.coords(static_cast<int>(id)).second % 2 == 0 ? 1 : 0));

    GroupTable Z5 = GroupTable::synthetic(1, 5);
    std::vector<int> S = {Z5.id_from_coords(0, 1), Z5.id_from_coords(0, 2),
                          Z5.id_from_coords(0, 3)};
    auto m5 = k_sumset(Z5, S, 2);
    CHECK(m5 == std::vector<char>{1, 0, 0, 1, 1});

    auto m1 = k_sumset(Z5, S, 1);
    CHECK(m1 == std::vector<char>{0, 1, 1, 1, 0});
    auto m0 = k_sumset(Z5, S, 0);
    CHECK(m0 == std::vector<char>{1, 0, 0, 0, 0});

    CHECK_THROWS_AS(k_sumset(Z5, {1, 1}, 1), DuplicateElements);
    CHECK_THROWS_AS(k_sumset(Z5, S, 4), PreconditionFailed);
}

TEST_CASE("sumset DP agrees with subset enumeration") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        u64 d = 1 + rng() % 3;
        u64 e = d * (1 + rng() % 5);
        GroupTable G = GroupTable::synthetic(d, e);
        std::vector<int> all(G.N());
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        size_t sz = 1 + rng() % std::min<u64>(G.N(), 12);
        std::vector<int> S(all.begin(), all.begin() + sz);
        int k = static_cast<int>(rng() % std::min<size_t>(sz + 1, 6));
        std::vector<char> brute(G.N(), 0);
        for (u64 bm = 0; bm < (u64{1} << sz); ++bm) {
            if (std::popcount(bm) != k) continue;
            int acc = G.identity_id();
            for (size_t i = 0; i < sz; ++i)
                if ((bm >> i) & 1) acc = G.add_ids(acc, S[i]);
            brute[static_cast<size_t>(acc)] = 1;
        }
        SumsetDP dp(G, S, k);
        CHECK(dp.mask() == brute);
        for (u64 id = 0; id < G.N(); ++id) {
            auto w = dp.witness(static_cast<int>(id));
            CHECK(w.has_value() == (brute[id] != 0));
            if (w) {
                CHECK(w->size() == static_cast<size_t>(k));
                int acc = G.identity_id();
                for (int s : *w) acc = G.add_ids(acc, s);
                CHECK(acc == static_cast<int>(id));
                auto u = *w;
                std::sort(u.begin(), u.end());
                CHECK(std::adjacent_find(u.begin(), u.end()) == u.end());
            }
        }
    }
}

TEST_CASE("large sets saturate 3-sumsets unless confined to an index-2 coset") {
    std::mt19937_64 rng(2024);
    int done = 0;
    while (done < 12) {
        u64 d = 1 + rng() % 4;
        u64 e = d * (1 + rng() % 60);
        if (d * e < 165) continue;
        GroupTable G = GroupTable::synthetic(d, e);
        u64 two = G.two_torsion().size();
        u64 bound = std::max(2 * G.N() / 5, 12 * two + 54);
        if (bound + 1 > G.N()) continue;
        size_t sz = bound + 1 + rng() % (G.N() - bound);
        std::vector<int> all(G.N());
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<int> S(all.begin(), all.begin() + sz);
        auto m = k_sumset(G, S, 3);
        bool full = std::all_of(m.begin(), m.end(), [](char c) { return c; });
        if (!full) {
            bool confined = false;
            for (auto& H : index2_subgroups(G)) {
                int par = (H.c1 * G.coords(S[0]).first +
                           H.c2 * G.coords(S[0]).second) % 2;
                bool same = true;
                for (int s : S)
                    same = same && static_cast<int>((H.c1 * G.coords(s).first +
                                                     H.c2 * G.coords(s).second) % 2) == par;
                confined = confined || same;
            }
            CHECK(confined);
        }
        ++done;
    }
}

TEST_CASE("k-sumsets of large sets cover the group") {
    std::mt19937_64 rng(515);
    int done = 0;
    while (done < 12) {
        u64 d = 1 + rng() % 3;
        u64 e = d * (1 + rng() % 80);
        GroupTable G = GroupTable::synthetic(d, e);
        u64 two = G.two_torsion().size();
        if (G.N() < 30 * two + 135) continue;
        size_t sz = G.N() / 2 + 1 + rng() % (G.N() - G.N() / 2);
        int k = 3 + static_cast<int>(rng() % (G.N() / 10 - 2));
        std::vector<int> all(G.N());
        std::iota(all.begin(), all.end(), 0);
        std::shuffle(all.begin(), all.end(), rng);
        std::vector<int> S(all.begin(), all.begin() + sz);
        auto m = k_sumset(G, S, k);
        CHECK(std::all_of(m.begin(), m.end(), [](char c) { return c; }));
        ++done;
    }
}
