#include "mec/place.hpp"

#include <algorithm>
#include <random>

#include "mec/poly.hpp"

namespace mec {

namespace {

Point frob_point(const FieldCtx& K, const FieldCtx& base, const Point& P) {
    if (P.inf) return P;
    return Point::affine(K.frobenius(P.x, base), K.frobenius(P.y, base));
}

// Splits a product of three distinct rational linear factors.
std::vector<Elem> split_three(const FieldCtx& K, const poly::P& g) {
    using namespace poly;
    const P x = {K.zero(), K.one()};
    for (u64 s = 0; s < K.q(); ++s) {
        Elem c = K.elem_at(s);
        P w;
        if (K.p() != 2) {
            P h = powmod(K, add(K, x, P{c}), (K.q() - 1) / 2, g);
            h = sub(K, h, P{K.one()});
            w = gcd(K, g, h);
        } else {
            P term = mod(K, P{K.zero(), c}, g);
            P acc = term;
            for (int i = 1; i < K.deg(); ++i) {
                term = mulmod(K, term, term, g);
                acc = add(K, acc, term);
            }
            w = gcd(K, g, acc);
        }
        int dw = deg(w);
        if (dw < 1 || dw > 2) continue;
        P other = monic(K, trim([&] {
            // exact division g / w
            P rem = g, quo(3, K.zero());
            P wm = monic(K, w);
            while (deg(rem) >= dw) {
                int sh = deg(rem) - dw;
                Elem lead = rem[deg(rem)];
                quo[sh] = K.add(quo[sh], lead);
                for (int i = 0; i <= dw; ++i)
                    rem[sh + i] = K.sub(rem[sh + i], K.mul(lead, wm[i]));
                rem = trim(rem);
            }
            return quo;
        }()));
        std::vector<Elem> out;
        for (const P* f : {&w, &other}) {
            P m = monic(K, *f);
            if (deg(m) == 1) {
                out.push_back(K.neg(m[0]));
            } else {
                for (auto& r : K.solve_quadratic(K.one(), m[1], m[0]))
                    out.push_back(r);
            }
        }
        if (out.size() == 3) return out;
    }
    throw SearchExhausted("cubic splitting failed");
}

}  // namespace

std::vector<Elem> low_degree_roots(const FieldCtx& K, const std::vector<Elem>& f) {
    using namespace poly;
    P fm = monic(K, trim(f));
    int n = deg(fm);
    if (n < 0 || n > 3) throw PreconditionFailed("degree must be between 0 and 3");
    std::vector<Elem> distinct;
    if (n == 0) return {};
    if (n == 1) {
        distinct = {K.neg(fm[0])};
    } else if (n == 2) {
        distinct = K.solve_quadratic(K.one(), fm[1], fm[0]);
    } else {
        P x = {K.zero(), K.one()};
        P g = gcd(K, fm, sub(K, powmod(K, x, K.q(), fm), x));
        g = monic(K, g);
        switch (deg(g)) {
            case 0: break;
            case 1: distinct = {K.neg(g[0])}; break;
            case 2: distinct = K.solve_quadratic(K.one(), g[1], g[0]); break;
            default: distinct = split_three(K, g); break;
        }
    }
    std::sort(distinct.begin(), distinct.end(),
              [](const Elem& a, const Elem& b) { return a.v < b.v; });
    std::vector<Elem> out;
    for (const Elem& r : distinct) {
        // multiplicity by repeated synthetic division
        P cur = fm;
        while (true) {
            if (K.is_zero(poly::eval(K, cur, r)) == false) break;
            P quo(cur.size() - 1, K.zero());
            Elem carry = K.zero();
            for (int i = static_cast<int>(cur.size()) - 1; i >= 1; --i) {
                carry = K.add(cur[static_cast<size_t>(i)], K.mul(carry, r));
                quo[static_cast<size_t>(i - 1)] = carry;
            }
            out.push_back(r);
            cur = quo;
            if (poly::deg(cur) < 1) break;
        }
    }
    return out;
}

Divisor& Divisor::add_term(const Place& P, int coeff) {
    if (coeff == 0) return *this;
    auto it = std::lower_bound(
        terms_.begin(), terms_.end(), P,
        [](const std::pair<Place, int>& t, const Place& p) { return place_lt(t.first, p); });
    if (it != terms_.end() && place_eq(it->first, P)) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {P, coeff});
    }
    return *this;
}

int Divisor::coeff_of(const Place& P) const {
    for (auto& [pl, c] : terms_)
        if (place_eq(pl, P)) return c;
    return 0;
}

int Divisor::degree() const {
    int d = 0;
    for (auto& [pl, c] : terms_) d += pl.degree * c;
    return d;
}

Divisor add(const Divisor& A, const Divisor& B) {
    Divisor out = A;
    for (auto& [pl, c] : B.terms()) out.add_term(pl, c);
    return out;
}

Divisor negate(const Divisor& D) {
    Divisor out;
    for (auto& [pl, c] : D.terms()) out.add_term(pl, -c);
    return out;
}

Place make_place(const Curve& E, const Point& P) { return make_place(E, P, E.ctx()); }

Place make_place(const Curve& E, const Point& P, const FieldRef& K) {
    Place pl;
    pl.curve = std::make_shared<Curve>(E);
    if (P.inf) {
        pl.field = E.ctx();
        pl.degree = 1;
        pl.orbit = {P};
        return pl;
    }
    E.require_on_curve(P, *K);
    const FieldCtx& base = *E.ctx();
    if (K->id() == base.id()) {
        pl.field = E.ctx();
        pl.degree = 1;
        pl.orbit = {P};
        return pl;
    }
    std::vector<Point> orbit = {P};
    Point Q = frob_point(*K, base, P);
    while (!(Q == P)) {
        orbit.push_back(Q);
        if (static_cast<int>(orbit.size()) > K->tower_degree())
            throw Error("Frobenius orbit failed to close");
        Q = frob_point(*K, base, Q);
    }
    if (orbit.size() == 1) {
        pl.field = E.ctx();
        pl.degree = 1;
        pl.orbit = {Point::affine(K->project(P.x), K->project(P.y))};
        return pl;
    }
    if (K->tower_degree() % orbit.size() != 0)
        throw Error("orbit size does not divide the ambient degree");
    if (static_cast<int>(orbit.size()) != K->tower_degree())
        throw PreconditionFailed("orbit spans a proper intermediate field");
    auto rep = std::min_element(orbit.begin(), orbit.end(), point_less);
    std::rotate(orbit.begin(), rep, orbit.end());
    pl.field = K;
    pl.degree = static_cast<int>(orbit.size());
    pl.orbit = std::move(orbit);
    return pl;
}

Place place_at_infinity(const Curve& E) { return make_place(E, Point::infinity()); }

Point divisor_sum(const Divisor& D) {
    if (D.empty()) return Point::infinity();
    const Curve& E = *D.terms().front().first.curve;
    Point acc = Point::infinity();
    for (auto& [pl, c] : D.terms()) {
        Point orbit_sum;
        if (pl.degree == 1) {
            orbit_sum = pl.rep();
        } else {
            const FieldCtx& K = *pl.field;
            Point s = Point::infinity();
            for (auto& Q : pl.orbit) s = E.add(s, Q, K);
            if (s.inf) {
                orbit_sum = s;
            } else {
                if (!K.in_base(s.x) || !K.in_base(s.y))
                    throw SumNotRational("orbit sum has irrational coordinates");
                orbit_sum = Point::affine(K.project(s.x), K.project(s.y));
            }
        }
        acc = E.add(acc, E.smul(c, orbit_sum));
    }
    return acc;
}

Divisor line_divisor(const Curve& E, const Line& L) {
    const FieldCtx& F = *E.ctx();
    Divisor D;
    Place O = place_at_infinity(E);
    if (L.vertical) {
        const Elem g = L.gamma;
        Elem B = F.add(F.mul(E.a1(), g), E.a3());
        Elem C = F.neg(F.add(
            F.add(F.mul(F.mul(g, g), F.add(g, E.a2())), F.mul(E.a4(), g)), E.a6()));
        auto ys = F.solve_quadratic(F.one(), B, C);
        if (ys.size() == 2) {
            D.add_term(make_place(E, Point::affine(g, ys[0])), 1);
            D.add_term(make_place(E, Point::affine(g, ys[1])), 1);
        } else if (ys.size() == 1) {
            D.add_term(make_place(E, Point::affine(g, ys[0])), 2);
        } else {
            FieldRef K2 = extend_field(E.ctx(), 2);
            auto ys2 = K2->solve_quadratic(K2->one(), K2->embed(B), K2->embed(C));
            if (ys2.size() != 2) throw Error("quadratic must split over GF(q^2)");
            D.add_term(make_place(E, Point::affine(K2->embed(g), ys2[0]), K2), 1);
        }
        D.add_term(O, -2);
        return D;
    }
    const Elem al = L.alpha, be = L.beta;
    Elem c2 = F.sub(E.a2(), F.mul(al, F.add(al, E.a1())));
    Elem c1 = F.sub(E.a4(),
                    F.add(F.mul(be, F.add(F.add(al, al), E.a1())), F.mul(E.a3(), al)));
    Elem c0 = F.sub(E.a6(), F.mul(be, F.add(be, E.a3())));
    std::vector<Elem> f = {c0, c1, c2, F.one()};
    auto roots = low_degree_roots(F, f);
    auto point_on_line = [&](const FieldCtx& K, const Elem& x) {
        Elem a = K.id() == F.id() ? al : K.embed(al);
        Elem b = K.id() == F.id() ? be : K.embed(be);
        return Point::affine(x, K.add(K.mul(a, x), b));
    };
    if (roots.size() == 3) {
        for (auto& r : roots) D.add_term(make_place(E, point_on_line(F, r)), 1);
    } else if (roots.size() == 1) {
        D.add_term(make_place(E, point_on_line(F, roots[0])), 1);
        // remaining quadratic factor after dividing out the rational root
        Elem r = roots[0];
        Elem q1 = F.add(c2, r);
        Elem q0 = F.add(c1, F.mul(q1, r));
        FieldRef K2 = extend_field(E.ctx(), 2);
        auto xs = K2->solve_quadratic(K2->one(), K2->embed(q1), K2->embed(q0));
        if (xs.size() != 2) throw Error("quadratic must split over GF(q^2)");
        D.add_term(make_place(E, point_on_line(*K2, xs[0]), K2), 1);
    } else if (roots.empty()) {
        FieldRef K3 = extend_field(E.ctx(), 3);
        std::vector<Elem> f3 = {K3->embed(c0), K3->embed(c1), K3->embed(c2),
                                K3->one()};
        auto xs = low_degree_roots(*K3, f3);
        if (xs.size() != 3) throw Error("cubic must split over GF(q^3)");
        D.add_term(make_place(E, point_on_line(*K3, xs[0]), K3), 1);
    } else {
        throw Error("impossible root multiplicity pattern");
    }
    D.add_term(O, -3);
    return D;
}

Place find_degree3_trace(const Curve& E, u64 seed) {
    const FieldCtx& F = *E.ctx();
    if (F.q() < 6) throw PreconditionFailed("need q >= 6");
    FieldRef K3 = extend_field(E.ctx(), 3);
    const FieldCtx& K = *K3;
    auto a = E.coeffs_in(K);
    std::mt19937_64 rng(seed);
    const u64 budget = 100 * F.q();
    for (u64 tries = 0; tries < budget; ++tries) {
        Elem x = K.elem_at(rng() % K.q());
        Elem B = K.add(K.mul(a[0], x), a[2]);
        Elem C = K.neg(K.add(
            K.add(K.mul(K.mul(x, x), K.add(x, a[1])), K.mul(a[3], x)), a[4]));
        for (auto& y : K.solve_quadratic(K.one(), B, C)) {
            if (K.in_base(x) && K.in_base(y)) continue;
            Point P = Point::affine(x, y);
            Point T = E.add(P, frob_point(K, F, P), K);
            T = E.add(T, frob_point(K, F, frob_point(K, F, P)), K);
            if (T.inf) return make_place(E, P, K3);
        }
    }
    throw SampleBudgetExhausted("no degree-3 trace-kernel point found");
}

std::pair<Place, Elem> find_degree3_avoid(const Curve& E) {
    const FieldCtx& F = *E.ctx();
    if (F.p() == 2 || !F.is_zero(E.a1()) || !F.is_zero(E.a3()))
        throw WrongCurveShape("need y^2 = f(x) in odd characteristic");
    std::vector<char> attained(F.q(), 0);
    for (u64 i = 0; i < F.q(); ++i) {
        Elem x = F.elem_at(i);
        Elem v = F.add(
            F.add(F.mul(F.mul(x, x), F.add(x, E.a2())), F.mul(E.a4(), x)), E.a6());
        attained[v.v] = 1;
    }
    for (u64 i = 0; i < F.q(); ++i) {
        Elem b = F.elem_at(i);
        if (attained[F.mul(b, b).v]) continue;
        FieldRef K3 = extend_field(E.ctx(), 3);
        const FieldCtx& K = *K3;
        Elem c0 = K.embed(F.sub(E.a6(), F.mul(b, b)));
        std::vector<Elem> f3 = {c0, K.embed(E.a4()), K.embed(E.a2()), K.one()};
        auto xs = low_degree_roots(K, f3);
        if (xs.size() != 3) throw Error("irreducible cubic must split over GF(q^3)");
        Place R = make_place(E, Point::affine(xs[0], K.embed(b)), K3);
        R.witness_b = b;
        return {R, b};
    }
    throw NoWitnessFound("every b^2 is a value of f");
}

}  // namespace mec
