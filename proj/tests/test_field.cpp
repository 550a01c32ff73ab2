#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mec/field.hpp"
#include "mec/poly.hpp"

using namespace mec;

TEST_CASE("make_field rejects bad input") {
    CHECK_THROWS_AS(make_field(4, 1), NonPrimeCharacteristic);
    CHECK_THROWS_AS(make_field(15, 2), NonPrimeCharacteristic);
    CHECK_THROWS_AS(make_field(2, 1, {1, 1, 1}), ReducibleModulus);   // wrong degree
    CHECK_THROWS_AS(make_field(2, 2, {0, 0, 1}), ReducibleModulus);   // x^2 = x*x
    CHECK_THROWS_AS(make_field(2, 17), FieldTooLarge);
}

TEST_CASE("default modulus is the smallest irreducible") {
    auto f8 = make_field(2, 3);
    CHECK(f8->modulus() == std::vector<int>{1, 1, 0, 1});  // x^3 + x + 1
    auto f4 = make_field(2, 2);
    CHECK(f4->modulus() == std::vector<int>{1, 1, 1});     // x^2 + x + 1
    auto f9 = make_field(3, 2);
    CHECK(f9->modulus() == std::vector<int>{1, 0, 1});     // x^2 + 1
}

TEST_CASE("GF(289) with the published modulus") {
    auto F = make_field(17, 2, {3, 16, 1});  // x^2 + 16x + 3
    CHECK(F->q() == 289);
    Elem eta = F->from_digits({0, 1});
    Elem eta2 = F->mul(eta, eta);
    CHECK(eta2 == F->from_digits({14, 1}));  // eta^2 = eta + 14
    CHECK(F->inv(F->one()) == F->one());
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        Elem e = F->elem_at(1 + rng() % (F->q() - 1));
        CHECK(F->mul(e, F->inv(e)) == F->one());
        CHECK(F->pow(e, F->q() - 1) == F->one());
    }
}

TEST_CASE("published moduli for GF(729) and GF(1024) are accepted") {
    auto F729 = make_field(3, 6, {2, 2, 1, 0, 2, 0, 1});
    CHECK(F729->q() == 729);
    auto F1024 = make_field(2, 10, {1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1});
    CHECK(F1024->q() == 1024);
    std::mt19937_64 rng(11);
    for (auto& F : {F729, F1024})
        for (int i = 0; i < 100; ++i) {
            Elem e = F->elem_at(1 + rng() % (F->q() - 1));
            CHECK(F->pow(e, F->q() - 1) == F->one());
        }
}

TEST_CASE("field axioms sampled") {
    for (auto& F : {make_field(2, 10), make_field(3, 3), make_field(13, 1),
                    make_field(17, 2)}) {
        std::mt19937_64 rng(23);
        for (int i = 0; i < 50; ++i) {
            Elem a = F->elem_at(rng() % F->q());
            Elem b = F->elem_at(rng() % F->q());
            Elem c = F->elem_at(rng() % F->q());
            CHECK(F->add(a, b) == F->add(b, a));
            CHECK(F->mul(a, b) == F->mul(b, a));
            CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
            CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            CHECK(F->sub(a, a) == F->zero());
        }
    }
}

TEST_CASE("packed table arithmetic agrees with digit arithmetic") {
    // GF(729) has add/log tables; recompute products from raw digits.
    auto F = make_field(3, 6);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        Elem a = F->elem_at(rng() % F->q());
        Elem b = F->elem_at(rng() % F->q());
        auto da = F->digits(a), db = F->digits(b);
        std::vector<int> ds(6);
        for (int j = 0; j < 6; ++j) ds[j] = (da[j] + db[j]) % 3;
        CHECK(F->add(a, b) == F->from_digits(ds));
    }
}

TEST_CASE("mixing contexts throws") {
    auto F = make_field(5, 1);
    auto G = make_field(5, 1);
    CHECK_THROWS_AS(F->add(F->one(), G->one()), MixedContexts);
}

TEST_CASE("towers embed and project") {
    auto F = make_field(17, 2, {3, 16, 1});
    auto K = extend_field(F, 3);
    CHECK(K->q() == 289ull * 289 * 289);
    CHECK(K->embed(F->one()) == K->one());
    CHECK(K->embed(F->zero()) == K->zero());
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        Elem a = F->elem_at(rng() % F->q());
        Elem b = F->elem_at(rng() % F->q());
        CHECK(K->embed(F->mul(a, b)) == K->mul(K->embed(a), K->embed(b)));
        CHECK(K->embed(F->add(a, b)) == K->add(K->embed(a), K->embed(b)));
        CHECK(K->in_base(K->embed(a)));
        CHECK(K->project(K->embed(a)) == a);
        // Base elements are fixed by the relative Frobenius.
        CHECK(K->frobenius(K->embed(a), *F) == K->embed(a));
    }
    // Frobenius cubed is the identity on the whole tower.
    for (int i = 0; i < 20; ++i) {
        Elem x = K->elem_at(rng() % K->q());
        CHECK(K->frobenius(x, *F, 3) == x);
        Elem y = K->elem_at(rng() % K->q());
        CHECK(K->frobenius(K->mul(x, y), *F) ==
              K->mul(K->frobenius(x, *F), K->frobenius(y, *F)));
        CHECK(K->frobenius(K->add(x, y), *F) ==
              K->add(K->frobenius(x, *F), K->frobenius(y, *F)));
    }
    CHECK_THROWS_AS(K->frobenius(K->one(), *make_field(5, 1)), NotASubfield);
}

TEST_CASE("tower multiplicative group order") {
    auto F = make_field(2, 3);
    auto K = extend_field(F, 3);  // GF(512) over GF(8)
    std::mt19937_64 rng(9);
    for (int i = 0; i < 30; ++i) {
        Elem x = K->elem_at(1 + rng() % (K->q() - 1));
        CHECK(K->pow(x, K->q() - 1) == K->one());
        CHECK(K->mul(x, K->inv(x)) == K->one());
    }
}

TEST_CASE("frobenius over the prime field") {
    auto F = make_field(17, 2, {3, 16, 1});
    auto P = make_field(17, 1);
    Elem eta = F->from_digits({0, 1});
    CHECK(F->frobenius(eta, *P) == F->pow(eta, 17));
    CHECK(F->frobenius(eta, *P, 2) == eta);
}

static void brute_quadratic_check(const FieldRef& F, u64 trials, u64 seed) {
    std::mt19937_64 rng(seed);
    for (u64 t = 0; t < trials; ++t) {
        Elem A = F->elem_at(rng() % F->q());
        Elem B = F->elem_at(rng() % F->q());
        Elem C = F->elem_at(rng() % F->q());
        if (A.v == 0 && B.v == 0) continue;
        auto roots = F->solve_quadratic(A, B, C);
        std::vector<Elem> brute;
        for (u64 y = 0; y < F->q(); ++y) {
            Elem Y = F->elem_at(y);
            Elem val = F->add(F->add(F->mul(A, F->mul(Y, Y)), F->mul(B, Y)), C);
            if (val.v == 0) brute.push_back(Y);
        }
        REQUIRE(roots == brute);
    }
}

TEST_CASE("solve_quadratic matches brute force") {
    brute_quadratic_check(make_field(3, 1), 27, 1);    // exhaustive-ish tiny
    brute_quadratic_check(make_field(7, 1), 200, 2);
    brute_quadratic_check(make_field(13, 1), 200, 3);  // q = 1 mod 4: Tonelli
    brute_quadratic_check(make_field(2, 3), 200, 4);   // char 2, odd degree
    brute_quadratic_check(make_field(2, 4), 200, 5);   // char 2, even degree
    brute_quadratic_check(make_field(3, 2), 200, 6);
    brute_quadratic_check(make_field(2, 10), 50, 7);
}

TEST_CASE("solve_quadratic specific cases") {
    auto F3 = make_field(3, 1);
    CHECK(F3->solve_quadratic(F3->one(), F3->zero(), F3->neg(F3->from_int(2))).empty());
    CHECK(F3->solve_quadratic(F3->one(), F3->zero(), F3->zero()) ==
          std::vector<Elem>{F3->zero()});
    CHECK_THROWS_AS(F3->solve_quadratic(F3->zero(), F3->zero(), F3->one()),
                    DegenerateEquation);
    // Linear fallback when A = 0.
    CHECK(F3->solve_quadratic(F3->zero(), F3->one(), F3->one()) ==
          std::vector<Elem>{F3->from_int(2)});

    auto F = make_field(2, 10);
    std::mt19937_64 rng(13);
    int solvable = 0;
    for (int i = 0; i < 40; ++i) {
        Elem c = F->elem_at(rng() % F->q());
        auto roots = F->solve_quadratic(F->one(), F->one(), c);
        if (F->trace2(c) == 0) {
            ++solvable;
            REQUIRE(roots.size() == 2);
            CHECK(F->add(roots[0], roots[1]) == F->one());
        } else {
            CHECK(roots.empty());
        }
    }
    CHECK(solvable > 0);
}

TEST_CASE("solve_quadratic over towers") {
    auto F = make_field(3, 2);
    auto K = extend_field(F, 3);  // GF(729) as a tower, odd characteristic
    std::mt19937_64 rng(17);
    for (int i = 0; i < 40; ++i) {
        Elem A = K->elem_at(1 + rng() % (K->q() - 1));
        Elem B = K->elem_at(rng() % K->q());
        Elem C = K->elem_at(rng() % K->q());
        auto roots = K->solve_quadratic(A, B, C);
        for (auto& r : roots) {
            Elem val = K->add(K->add(K->mul(A, K->mul(r, r)), K->mul(B, r)), C);
            CHECK(val.v == 0);
        }
        CHECK(roots.size() <= 2);
    }
    auto F2 = make_field(2, 3);
    auto K2 = extend_field(F2, 2);  // abs degree 6: even-degree char-2 solver
    for (int i = 0; i < 40; ++i) {
        Elem C = K2->elem_at(rng() % K2->q());
        auto roots = K2->solve_quadratic(K2->one(), K2->one(), C);
        CHECK(roots.size() == (K2->trace2(C) == 0 ? 2 : 0));
        for (auto& r : roots)
            CHECK(K2->add(K2->mul(r, r), K2->add(r, C)).v == 0);
    }
}

TEST_CASE("sqrt and legendre") {
    for (auto& F : {make_field(13, 1), make_field(17, 2), make_field(3, 4)}) {
        int squares = 0;
        for (u64 v = 1; v < std::min<u64>(F->q(), 200); ++v) {
            Elem e = F->elem_at(v);
            if (F->legendre(e) == 1) {
                ++squares;
                Elem r = F->sqrt(e);
                CHECK(F->mul(r, r) == e);
            }
        }
        CHECK(squares > 0);
    }
    auto F = make_field(2, 10);
    for (u64 v = 1; v < 200; ++v) {
        Elem r = F->sqrt(F->elem_at(v));
        CHECK(F->mul(r, r) == F->elem_at(v));
    }
}

TEST_CASE("polynomial helpers") {
    auto F = make_field(7, 1);
    poly::P a = {F->from_int(1), F->from_int(2), F->one()};   // x^2+2x+1
    poly::P b = {F->from_int(1), F->one()};                   // x+1
    auto q = poly::mul(*F, b, b);
    CHECK(q == a);
    CHECK(poly::deg(poly::mod(*F, a, b)) < 0);
    auto g = poly::gcd(*F, a, b);
    CHECK(g == b);
    CHECK(poly::eval(*F, a, F->from_int(6)).v == 0);  // (-1)^2+2(-1)+1 = 0
    auto pw = poly::powmod(*F, {F->zero(), F->one()}, 49, a);  // x^49 mod (x+1)^2
    CHECK(poly::deg(pw) <= 1);
}
