#include "mec/rr.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

namespace mec {

namespace {

using Ser = std::vector<Elem>;  // truncated power series in the local parameter

Ser s_const(const FieldCtx& K, const Elem& c, size_t len) {
    Ser s(len, K.zero());
    s[0] = c;
    return s;
}

Ser s_add(const FieldCtx& K, const Ser& a, const Ser& b) {
    Ser s(a.size(), K.zero());
    for (size_t i = 0; i < s.size(); ++i) s[i] = K.add(a[i], b[i]);
    return s;
}

Ser s_sub(const FieldCtx& K, const Ser& a, const Ser& b) {
    Ser s(a.size(), K.zero());
    for (size_t i = 0; i < s.size(); ++i) s[i] = K.sub(a[i], b[i]);
    return s;
}

Ser s_mul(const FieldCtx& K, const Ser& a, const Ser& b) {
    Ser s(a.size(), K.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (K.is_zero(a[i])) continue;
        for (size_t j = 0; i + j < b.size(); ++j)
            s[i + j] = K.add(s[i + j], K.mul(a[i], b[j]));
    }
    return s;
}

Ser s_inv(const FieldCtx& K, const Ser& a) {
    if (K.is_zero(a[0])) throw Error("series inverse of a non-unit");
    Ser b(a.size(), K.zero());
    b[0] = K.inv(a[0]);
    for (size_t n = 1; n < a.size(); ++n) {
        Elem acc = K.zero();
        for (size_t i = 1; i <= n; ++i) acc = K.add(acc, K.mul(a[i], b[n - i]));
        b[n] = K.neg(K.mul(acc, b[0]));
    }
    return b;
}

std::pair<int, Elem> s_valuation(const FieldCtx& K, const Ser& s) {
    for (size_t i = 0; i < s.size(); ++i)
        if (!K.is_zero(s[i])) return {static_cast<int>(i), s[i]};
    return {std::numeric_limits<int>::max(), K.zero()};
}

// Weierstrass equation as F(x, y) = 0.
Elem curve_F(const FieldCtx& K, const std::array<Elem, 5>& a, const Elem& x,
             const Elem& y) {
    Elem lhs = K.add(K.mul(y, K.add(y, K.mul(a[0], x))), K.mul(a[2], y));
    Elem rhs = K.add(K.add(K.mul(K.mul(x, x), K.add(x, a[1])), K.mul(a[3], x)), a[4]);
    return K.sub(lhs, rhs);
}

Ser curve_F_series(const FieldCtx& K, const std::array<Elem, 5>& a, const Ser& x,
                   const Ser& y) {
    size_t len = x.size();
    Ser lhs = s_mul(K, y, s_add(K, y, s_add(K, s_mul(K, s_const(K, a[0], len), x),
                                            s_const(K, a[2], len))));
    Ser rhs = s_mul(K, s_mul(K, x, x), s_add(K, x, s_const(K, a[1], len)));
    rhs = s_add(K, rhs, s_mul(K, s_const(K, a[3], len), x));
    rhs = s_add(K, rhs, s_const(K, a[4], len));
    return s_sub(K, lhs, rhs);
}

// Local expansion (x(t), y(t)) at the affine point P; t = x - x0 generically,
// t = y - y0 at 2-torsion where the x-map ramifies.
std::pair<Ser, Ser> local_xy_series(const Curve& E, const FieldCtx& K,
                                    const Point& P, size_t len) {
    auto a = E.coeffs_in(K);
    Elem fy = K.add(K.add(P.y, P.y), K.add(K.mul(a[0], P.x), a[2]));
    int rounds = 1;
    while ((size_t{1} << rounds) < len) ++rounds;
    if (!K.is_zero(fy)) {
        Ser x = s_const(K, P.x, len);
        x[1] = K.one();
        Ser y = s_const(K, P.y, len);
        for (int r = 0; r <= rounds; ++r) {
            Ser F = curve_F_series(K, a, x, y);
            Ser Fy = s_add(K, s_add(K, y, y),
                           s_add(K, s_mul(K, s_const(K, a[0], len), x),
                                 s_const(K, a[2], len)));
            y = s_sub(K, y, s_mul(K, F, s_inv(K, Fy)));
        }
        return {x, y};
    }
    Elem fx = K.sub(K.mul(a[0], P.y),
                    K.add(K.add(K.mul(K.from_int(3), K.mul(P.x, P.x)),
                                K.mul(K.from_int(2), K.mul(a[1], P.x))),
                          a[3]));
    if (K.is_zero(fx)) throw Error("singular local expansion");
    Ser y = s_const(K, P.y, len);
    y[1] = K.one();
    Ser x = s_const(K, P.x, len);
    for (int r = 0; r <= rounds; ++r) {
        Ser F = curve_F_series(K, a, x, y);
        Ser Fx = s_sub(K, s_mul(K, s_const(K, a[0], len), y),
                       s_add(K, s_add(K, s_mul(K, s_const(K, K.from_int(3), len),
                                               s_mul(K, x, x)),
                                      s_mul(K, s_const(K, K.mul(K.from_int(2), a[1]),
                                                       len),
                                            x)),
                             s_const(K, a[3], len)));
        x = s_sub(K, x, s_mul(K, F, s_inv(K, Fx)));
    }
    return {x, y};
}

Elem line_value(const FieldCtx& K, const Line& L, const Elem& x, const Elem& y) {
    if (L.vertical) return K.sub(x, L.gamma);
    return K.sub(y, K.add(K.mul(L.alpha, x), L.beta));
}

Ser line_series(const FieldCtx& K, const Line& L, const Ser& x, const Ser& y) {
    size_t len = x.size();
    if (L.vertical) return s_sub(K, x, s_const(K, L.gamma, len));
    return s_sub(K, y, s_add(K, s_mul(K, s_const(K, L.alpha, len), x),
                             s_const(K, L.beta, len)));
}

Ser pxy_series(const FieldCtx& K, const PolyXY& p, const Ser& x, const Ser& y) {
    size_t len = x.size();
    Ser acc(len, K.zero());
    for (size_t i = p.A.size(); i-- > 0;)
        acc = s_add(K, s_mul(K, acc, x), s_const(K, p.A[i], len));
    Ser accB(len, K.zero());
    for (size_t i = p.B.size(); i-- > 0;)
        accB = s_add(K, s_mul(K, accB, x), s_const(K, p.B[i], len));
    return s_add(K, acc, s_mul(K, y, accB));
}

Line embed_line(const FieldCtx& K, const Line& L) {
    if (L.vertical) return {true, {}, {}, K.embed(L.gamma)};
    return {false, K.embed(L.alpha), K.embed(L.beta), {}};
}

// Canonical factor key for deterministic merging.
using FactorKey = std::tuple<int, u64, u64>;
FactorKey key_of(const Line& L) {
    if (L.vertical) return {0, L.gamma.v, 0};
    return {1, L.alpha.v, L.beta.v};
}

std::vector<std::pair<Line, int>> merge_factors(
    const std::vector<std::pair<Line, int>>& fs) {
    std::map<FactorKey, std::pair<Line, int>> m;
    for (auto& [L, z] : fs) {
        auto k = key_of(L);
        auto it = m.find(k);
        if (it == m.end())
            m.emplace(k, std::make_pair(L, z));
        else
            it->second.second += z;
    }
    std::vector<std::pair<Line, int>> out;
    for (auto& [k, v] : m)
        if (v.second != 0) out.push_back(v);
    return out;
}

size_t series_len_for(const FunctionRep& f) {
    int budget = f.poly.is_zero() ? 0 : f.poly.pole_order();
    for (auto& [L, z] : f.factors) budget += 3 * (z < 0 ? -z : z);
    return static_cast<size_t>(budget + 6);
}

// Valuation data of f along the expansion at an affine point.
std::pair<int, Elem> local_val_lead(const FunctionRep& f, const FieldCtx& K,
                                    const Point& P) {
    size_t len = series_len_for(f);
    auto [xs, ys] = local_xy_series(*f.curve, K, P, len);
    const bool lift = K.id() != f.field->id();
    auto lift_line = [&](const Line& L) { return lift ? embed_line(K, L) : L; };
    int val = 0;
    Elem lead = K.one();
    for (auto& [L0, z] : f.factors) {
        Line L = lift_line(L0);
        Elem quick = line_value(K, L, P.x, P.y);
        if (!K.is_zero(quick)) {
            lead = K.mul(lead, z >= 0 ? K.pow(quick, static_cast<u64>(z))
                                      : K.inv(K.pow(quick, static_cast<u64>(-z))));
            continue;
        }
        auto [v, lc] = s_valuation(K, line_series(K, L, xs, ys));
        if (v == std::numeric_limits<int>::max())
            throw Error("line vanishes identically");
        val += z * v;
        lead = K.mul(lead, z >= 0 ? K.pow(lc, static_cast<u64>(z))
                                  : K.inv(K.pow(lc, static_cast<u64>(-z))));
    }
    PolyXY p = f.poly;
    if (lift) {
        PolyXY q;
        for (auto& c : p.A) q.A.push_back(K.embed(c));
        for (auto& c : p.B) q.B.push_back(K.embed(c));
        p = q;
    }
    Elem quick = p.eval(K, P.x, P.y);
    if (!K.is_zero(quick)) {
        lead = K.mul(lead, quick);
    } else {
        auto [v, lc] = s_valuation(K, pxy_series(K, p, xs, ys));
        if (v == std::numeric_limits<int>::max())
            throw Error("poly part vanishes identically on the expansion");
        val += v;
        lead = K.mul(lead, lc);
    }
    return {val, lead};
}

}  // namespace

PolyXY PolyXY::one(const FieldRef& K) { return {K, {K->one()}, {}}; }

bool PolyXY::is_zero() const {
    for (auto& c : A)
        if (c.v != 0) return false;
    for (auto& c : B)
        if (c.v != 0) return false;
    return true;
}

int PolyXY::pole_order() const {
    int best = -1;
    for (size_t i = 0; i < A.size(); ++i)
        if (A[i].v != 0) best = std::max(best, static_cast<int>(2 * i));
    for (size_t i = 0; i < B.size(); ++i)
        if (B[i].v != 0) best = std::max(best, static_cast<int>(3 + 2 * i));
    if (best < 0) throw Error("pole order of the zero function");
    return best;
}

Elem PolyXY::lead_coeff() const {
    int po = pole_order();
    if (po % 2 == 0) return A[static_cast<size_t>(po / 2)];
    return B[static_cast<size_t>((po - 3) / 2)];
}

Elem PolyXY::eval(const FieldCtx& K, const Elem& x, const Elem& y) const {
    Elem a = K.zero();
    for (size_t i = A.size(); i-- > 0;) a = K.add(K.mul(a, x), A[i]);
    Elem b = K.zero();
    for (size_t i = B.size(); i-- > 0;) b = K.add(K.mul(b, x), B[i]);
    return K.add(a, K.mul(y, b));
}

PolyXY pxy_add(const PolyXY& a, const PolyXY& b) {
    const FieldCtx& K = *a.field;
    PolyXY s;
    s.field = a.field;
    s.A.resize(std::max(a.A.size(), b.A.size()), K.zero());
    s.B.resize(std::max(a.B.size(), b.B.size()), K.zero());
    for (size_t i = 0; i < a.A.size(); ++i) s.A[i] = a.A[i];
    for (size_t i = 0; i < b.A.size(); ++i) s.A[i] = K.add(s.A[i], b.A[i]);
    for (size_t i = 0; i < a.B.size(); ++i) s.B[i] = a.B[i];
    for (size_t i = 0; i < b.B.size(); ++i) s.B[i] = K.add(s.B[i], b.B[i]);
    return s;
}

PolyXY pxy_scale(const PolyXY& a, const Elem& c) {
    const FieldCtx& K = *a.field;
    PolyXY s = a;
    for (auto& e : s.A) e = K.mul(e, c);
    for (auto& e : s.B) e = K.mul(e, c);
    return s;
}

PolyXY pxy_mul(const Curve& E, const PolyXY& a, const PolyXY& b) {
    const FieldCtx& K = *a.field;
    auto cs = E.coeffs_in(K);
    using V = std::vector<Elem>;
    auto vmul = [&](const V& u, const V& v) {
        if (u.empty() || v.empty()) return V{};
        V w(u.size() + v.size() - 1, K.zero());
        for (size_t i = 0; i < u.size(); ++i)
            for (size_t j = 0; j < v.size(); ++j)
                w[i + j] = K.add(w[i + j], K.mul(u[i], v[j]));
        return w;
    };
    auto vadd = [&](V u, const V& v) {
        if (u.size() < v.size()) u.resize(v.size(), K.zero());
        for (size_t i = 0; i < v.size(); ++i) u[i] = K.add(u[i], v[i]);
        return u;
    };
    V rhs = {cs[4], cs[3], cs[1], K.one()};   // x^3 + a2 x^2 + a4 x + a6
    V ny = {cs[2], cs[0]};                    // a1 x + a3
    V bb = vmul(a.B, b.B);
    PolyXY s;
    s.field = a.field;
    s.A = vadd(vmul(a.A, b.A), vmul(bb, rhs));
    s.B = vadd(vmul(a.A, b.B), vmul(a.B, b.A));
    V corr = vmul(bb, ny);
    for (auto& e : corr) e = K.neg(e);
    s.B = vadd(s.B, corr);
    return s;
}

PolyXY pxy_from_line(const FieldRef& K, const Line& L) {
    if (L.vertical) return {K, {K->neg(L.gamma), K->one()}, {}};
    return {K, {K->neg(L.beta), K->neg(L.alpha)}, {K->one()}};
}

PolyXY pole_monomial(const FieldRef& K, int order) {
    if (order == 1 || order < 0) throw PreconditionFailed("no monomial of that order");
    PolyXY p;
    p.field = K;
    if (order % 2 == 0) {
        p.A.assign(static_cast<size_t>(order / 2) + 1, K->zero());
        p.A.back() = K->one();
    } else {
        p.B.assign(static_cast<size_t>((order - 3) / 2) + 1, K->zero());
        p.B.back() = K->one();
    }
    return p;
}

int valuation(const FunctionRep& f, const Place& Q) {
    if (Q.rep().inf) {
        int v = f.poly.is_zero() ? 0 : -f.poly.pole_order();
        for (auto& [L, z] : f.factors) v += z * (L.vertical ? -2 : -3);
        return v;
    }
    FieldRef amb = f.field;
    if (Q.degree > 1) {
        if (f.field->is_tower() && f.field->id() != Q.field->id())
            throw MixedContexts("function and place live in different towers");
        amb = Q.field;
    }
    Point P = Q.rep();
    if (Q.degree == 1 && amb->is_tower())
        P = Point::affine(amb->embed(P.x), amb->embed(P.y));
    return local_val_lead(f, *amb, P).first;
}

void require_in_L(const FunctionRep& f, const Divisor& G) {
    const Curve& E = *f.curve;
    std::vector<Place> spots;
    auto push = [&](const Place& pl) {
        for (auto& s : spots)
            if (place_eq(s, pl)) return;
        spots.push_back(pl);
    };
    push(place_at_infinity(E));
    for (auto& [pl, c] : G.terms()) push(pl);
    const FieldCtx& K = *f.field;
    for (auto& [L, z] : f.factors) {
        if (L.vertical) {
            auto a = E.coeffs_in(K);
            Elem B = K.add(K.mul(a[0], L.gamma), a[2]);
            Elem C = K.neg(K.add(
                K.add(K.mul(K.mul(L.gamma, L.gamma), K.add(L.gamma, a[1])),
                      K.mul(a[3], L.gamma)),
                a[4]));
            auto ys = K.solve_quadratic(K.one(), B, C);
            if (ys.empty() && z < 0)
                throw DimensionMismatch("vertical pole at an inaccessible place");
            for (auto& y : ys)
                push(make_place(E, Point::affine(L.gamma, y),
                               K.is_tower() ? f.field : E.ctx()));
        } else {
            auto a = E.coeffs_in(K);
            Elem c2 = K.sub(a[1], K.mul(L.alpha, K.add(L.alpha, a[0])));
            Elem c1 = K.sub(a[3], K.add(K.mul(L.beta, K.add(K.add(L.alpha, L.alpha),
                                                            a[0])),
                                        K.mul(a[2], L.alpha)));
            Elem c0 = K.sub(a[4], K.mul(L.beta, K.add(L.beta, a[2])));
            auto xs = low_degree_roots(K, {c0, c1, c2, K.one()});
            if (xs.size() < 3 && z < 0)
                throw DimensionMismatch("chord pole at an inaccessible place");
            for (auto& x : xs)
                push(make_place(E,
                                Point::affine(x, K.add(K.mul(L.alpha, x), L.beta)),
                                K.is_tower() ? f.field : E.ctx()));
        }
    }
    for (auto& pl : spots) {
        int v = valuation(f, pl) + G.coeff_of(pl);
        if (v < 0) throw DimensionMismatch("div(f) + G fails at a place");
    }
}

std::pair<FunctionRep, Point> miller_reduce(const Curve& E, const Divisor& D0) {
    if (D0.degree() != 0) throw PreconditionFailed("divisor must have degree 0");
    FieldRef amb = E.ctx();
    for (auto& [pl, c] : D0.terms()) {
        if (pl.degree == 1) continue;
        if (amb->is_tower() && amb->id() != pl.field->id())
            throw MixedContexts("divisor mixes distinct extension fields");
        amb = pl.field;
    }
    const FieldCtx& K = *amb;
    const bool lift = amb->is_tower();
    auto a = E.coeffs_in(K);
    std::vector<std::pair<Line, int>> factors;
    std::vector<Point> todo;
    for (auto& [pl, c] : D0.terms()) {
        if (pl.rep().inf) continue;
        for (auto& Q0 : pl.orbit) {
            Point Q = Q0;
            if (pl.degree == 1 && lift)
                Q = Point::affine(K.embed(Q.x), K.embed(Q.y));
            if (c > 0) {
                for (int i = 0; i < c; ++i) todo.push_back(Q);
            } else {
                factors.push_back({vertical_line(Q.x), c});
                Point nQ = E.neg(Q, K);
                for (int i = 0; i < -c; ++i) todo.push_back(nQ);
            }
        }
    }
    Point T = Point::infinity();
    for (const Point& Q : todo) {
        if (T.inf) { T = Q; continue; }
        Point S = E.add(T, Q, K);
        if (S.inf) {
            factors.push_back({vertical_line(T.x), 1});
            T = S;
            continue;
        }
        Elem lam;
        if (T == Q) {
            Elem den = K.add(K.add(T.y, T.y), K.add(K.mul(a[0], T.x), a[2]));
            if (K.is_zero(den)) throw DegenerateStep("vertical tangent in a chord step");
            Elem num = K.sub(K.add(K.add(K.mul(K.from_int(3), K.mul(T.x, T.x)),
                                         K.mul(K.mul(K.from_int(2), a[1]), T.x)),
                                   a[3]),
                             K.mul(a[0], T.y));
            lam = K.div(num, den);
        } else {
            if (T.x == Q.x) throw DegenerateStep("distinct points on a vertical");
            lam = K.div(K.sub(Q.y, T.y), K.sub(Q.x, T.x));
        }
        Elem beta = K.sub(T.y, K.mul(lam, T.x));
        factors.push_back({affine_line(lam, beta), 1});
        factors.push_back({vertical_line(S.x), -1});
        T = S;
    }
    FunctionRep h;
    h.curve = std::make_shared<Curve>(E);
    h.field = amb;
    h.poly = PolyXY::one(amb);
    h.factors = merge_factors(factors);
    if (!T.inf && lift) {
        if (!K.in_base(T.x) || !K.in_base(T.y))
            throw SumNotRational("reduction endpoint is not rational");
        T = Point::affine(K.project(T.x), K.project(T.y));
    }
    return {h, T};
}

std::vector<FunctionRep> rr_basis(const Curve& E, const Divisor& G) {
    int d = G.degree();
    if (d < 1) throw PreconditionFailed("need deg G >= 1");
    Divisor D0 = G;
    D0.add_term(place_at_infinity(E), -d);
    auto [h, T] = miller_reduce(E, D0);
    FieldRef K = h.field;
    std::vector<FunctionRep> out;
    auto finish = [&](FunctionRep w) {
        for (auto& [L, z] : h.factors) w.factors.push_back({L, -z});
        w.factors = merge_factors(w.factors);
        require_in_L(w, G);
        out.push_back(std::move(w));
    };
    if (T.inf) {
        for (int o = 0; o <= d; ++o) {
            if (o == 1) continue;
            FunctionRep w;
            w.curve = h.curve;
            w.field = K;
            w.poly = pole_monomial(K, o);
            finish(std::move(w));
        }
    } else {
        Elem mx = K->is_tower() ? K->embed(T.x) : T.x;
        Point mT = E.neg(T);
        Elem ex = K->is_tower() ? K->embed(mT.x) : mT.x;
        Elem ey = K->is_tower() ? K->embed(mT.y) : mT.y;
        for (int o = 2; o <= d + 1; ++o) {
            PolyXY mono = pole_monomial(K, o);
            Elem val = mono.eval(*K, ex, ey);
            FunctionRep w;
            w.curve = h.curve;
            w.field = K;
            w.poly = pxy_add(mono, pxy_scale(PolyXY::one(K), K->neg(val)));
            w.factors.push_back({vertical_line(mx), -1});
            finish(std::move(w));
        }
    }
    if (static_cast<int>(out.size()) != d)
        throw DimensionMismatch("basis size disagrees with deg G");
    return out;
}

Elem evaluate_fn(const FunctionRep& f, const Point& P) {
    const Curve& E = *f.curve;
    const FieldCtx& K = *f.field;
    if (P.inf) {
        PolyXY num = f.poly, den = PolyXY::one(f.field);
        for (auto& [L, z] : f.factors) {
            PolyXY lp = pxy_from_line(f.field, L);
            for (int i = 0; i < (z < 0 ? -z : z); ++i) {
                if (z > 0)
                    num = pxy_mul(E, num, lp);
                else
                    den = pxy_mul(E, den, lp);
            }
        }
        int v = den.pole_order() - num.pole_order();
        if (v > 0) return K.zero();
        if (v < 0) throw PoleAtPoint("pole at the point at infinity");
        return K.div(num.lead_coeff(), den.lead_coeff());
    }
    Point Pk = P;
    if (K.is_tower() && P.x.ctx != K.id())
        Pk = Point::affine(K.embed(P.x), K.embed(P.y));
    bool need_series = false;
    Elem acc = f.poly.eval(K, Pk.x, Pk.y);
    for (auto& [L, z] : f.factors) {
        Elem lv = line_value(K, L, Pk.x, Pk.y);
        if (K.is_zero(lv)) {
            need_series = true;
            break;
        }
        acc = K.mul(acc, z >= 0 ? K.pow(lv, static_cast<u64>(z))
                                : K.inv(K.pow(lv, static_cast<u64>(-z))));
    }
    if (!need_series) return acc;
    auto [v, lead] = local_val_lead(f, K, Pk);
    if (v > 0) return K.zero();
    if (v < 0) throw PoleAtPoint("pole at an evaluation point");
    return lead;
}

}  // namespace mec
