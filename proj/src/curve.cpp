#include "mec/curve.hpp"

#include <random>

#include "mec/group.hpp"

namespace mec {

Curve::Curve(FieldRef ctx, Elem a1, Elem a2, Elem a3, Elem a4, Elem a6)
    : ctx_(std::move(ctx)), a_{a1, a2, a3, a4, a6} {
    const FieldCtx& F = *ctx_;
    for (const Elem& c : a_) F.check(c);
    Elem b2 = F.add(F.mul(a1, a1), F.mul(F.from_int(4), a2));
    Elem b4 = F.add(F.mul(F.from_int(2), a4), F.mul(a1, a3));
    Elem b6 = F.add(F.mul(a3, a3), F.mul(F.from_int(4), a6));
    Elem b8 = F.add(F.add(F.mul(F.mul(a1, a1), a6), F.mul(F.mul(F.from_int(4), a2), a6)),
                    F.add(F.sub(F.mul(a2, F.mul(a3, a3)), F.mul(a1, F.mul(a3, a4))),
                          F.neg(F.mul(a4, a4))));
    Elem d = F.sub(F.sub(F.neg(F.mul(F.mul(b2, b2), b8)),
                         F.mul(F.from_int(8), F.mul(b4, F.mul(b4, b4)))),
                   F.sub(F.mul(F.from_int(27), F.mul(b6, b6)),
                         F.mul(F.from_int(9), F.mul(b2, F.mul(b4, b6)))));
    disc_ = d;
    if (disc_.v == 0) throw SingularCurve("zero discriminant");
}

Curve make_curve(const FieldRef& ctx, const Elem& a1, const Elem& a2,
                 const Elem& a3, const Elem& a4, const Elem& a6) {
    return Curve(ctx, a1, a2, a3, a4, a6);
}

std::array<Elem, 5> Curve::coeffs_in(const FieldCtx& K) const {
    if (K.id() == ctx_->id()) return a_;
    if (K.is_tower() && K.base()->id() == ctx_->id()) {
        std::array<Elem, 5> out;
        for (int i = 0; i < 5; ++i) out[i] = K.embed(a_[i]);
        return out;
    }
    throw MixedContexts("coordinate field is not the curve field or a tower over it");
}

bool Curve::on_curve(const Point& P, const FieldCtx& K) const {
    if (P.inf) return true;
    K.check(P.x);
    K.check(P.y);
    auto a = coeffs_in(K);
    Elem lhs = K.add(K.mul(P.y, P.y),
                     K.add(K.mul(a[0], K.mul(P.x, P.y)), K.mul(a[2], P.y)));
    Elem x2 = K.mul(P.x, P.x);
    Elem rhs = K.add(K.add(K.mul(x2, P.x), K.mul(a[1], x2)),
                     K.add(K.mul(a[3], P.x), a[4]));
    return lhs == rhs;
}

void Curve::require_on_curve(const Point& P, const FieldCtx& K) const {
    if (!on_curve(P, K)) throw PointNotOnCurve("point fails the curve equation");
}

Point Curve::neg(const Point& P, const FieldCtx& K) const {
    if (P.inf) return P;
    auto a = coeffs_in(K);
    // -(x, y) = (x, -y - a1 x - a3)
    return Point::affine(P.x, K.neg(K.add(P.y, K.add(K.mul(a[0], P.x), a[2]))));
}

Point Curve::add_unchecked(const Point& P, const Point& Q, const FieldCtx& K,
                           const std::array<Elem, 5>& a) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    // -Q has the same x and y' = -y - a1 x - a3.
    Elem negqy = K.neg(K.add(Q.y, K.add(K.mul(a[0], Q.x), a[2])));
    if (P.x == Q.x && P.y == negqy) return Point::infinity();
    Elem lam;
    if (P.x == Q.x) {
        // Tangent slope.
        Elem num = K.sub(K.add(K.mul(K.from_int(3), K.mul(P.x, P.x)),
                               K.add(K.mul(K.mul(K.from_int(2), a[1]), P.x), a[3])),
                         K.mul(a[0], P.y));
        Elem den = K.add(K.mul(K.from_int(2), P.y), K.add(K.mul(a[0], P.x), a[2]));
        lam = K.div(num, den);
    } else {
        lam = K.div(K.sub(Q.y, P.y), K.sub(Q.x, P.x));
    }
    Elem nu = K.sub(P.y, K.mul(lam, P.x));
    Elem x3 = K.sub(K.sub(K.add(K.mul(lam, lam), K.mul(a[0], lam)), a[1]),
                    K.add(P.x, Q.x));
    Elem y3 = K.neg(K.add(K.add(K.mul(K.add(lam, a[0]), x3), nu), a[2]));
    return Point::affine(x3, y3);
}

Point Curve::add(const Point& P, const Point& Q, const FieldCtx& K) const {
    require_on_curve(P, K);
    require_on_curve(Q, K);
    return add_unchecked(P, Q, K, coeffs_in(K));
}

Point Curve::smul(i64 m, const Point& P, const FieldCtx& K) const {
    require_on_curve(P, K);
    auto a = coeffs_in(K);
    Point base = P;
    if (m < 0) {
        base = neg(P, K);
        m = -m;
    }
    Point acc = Point::infinity();
    u64 e = static_cast<u64>(m);
    while (e) {
        if (e & 1) acc = add_unchecked(acc, base, K, a);
        base = add_unchecked(base, base, K, a);
        e >>= 1;
    }
    return acc;
}

namespace {

constexpr u64 kEnumLimit = u64{1} << 12;

bool hasse_ok(u64 q, u64 N) {
    i64 t = static_cast<i64>(q) + 1 - static_cast<i64>(N);
    return t * t <= static_cast<i64>(4 * q);
}

// Number of y with y^2 + (a1 x + a3) y = rhs, via quadratic-character lookups.
int y_count(const FieldCtx& F, const Elem& B, const Elem& rhs) {
    if (F.p() != 2) {
        // Complete the square: y' = y + B/2 gives y'^2 = rhs + B^2/4.
        Elem s = F.add(rhs, F.div(F.mul(B, B), F.from_int(4)));
        return 1 + F.legendre(s);
    }
    if (B.v == 0) return 1;
    // y = B z turns it into z^2 + z = rhs / B^2.
    return F.trace2(F.div(rhs, F.mul(B, B))) == 0 ? 2 : 0;
}

}  // namespace

std::pair<std::vector<Point>, u64> enumerate_points(const Curve& E) {
    const FieldCtx& F = *E.ctx();
    if (F.q() > kEnumLimit) throw FieldTooLarge("point enumeration beyond 2^12");
    std::vector<Point> pts;
    for (u64 xv = 0; xv < F.q(); ++xv) {
        Elem x = F.elem_at(xv);
        Elem x2 = F.mul(x, x);
        Elem rhs = F.add(F.add(F.mul(x2, x), F.mul(E.a2(), x2)),
                         F.add(F.mul(E.a4(), x), E.a6()));
        Elem B = F.add(F.mul(E.a1(), x), E.a3());
        for (const Elem& y : F.solve_quadratic(F.one(), B, F.neg(rhs)))
            pts.push_back(Point::affine(x, y));
    }
    pts.push_back(Point::infinity());
    u64 N = pts.size();
    if (!hasse_ok(F.q(), N)) throw Error("Hasse bound violated by enumeration");
    return {pts, N};
}

u64 count_points(const Curve& E) {
    const FieldCtx& F = *E.ctx();
    u64 n = 1;  // O
    for (u64 xv = 0; xv < F.q(); ++xv) {
        Elem x = F.elem_at(xv);
        Elem x2 = F.mul(x, x);
        Elem rhs = F.add(F.add(F.mul(x2, x), F.mul(E.a2(), x2)),
                         F.add(F.mul(E.a4(), x), E.a6()));
        n += static_cast<u64>(y_count(F, F.add(F.mul(E.a1(), x), E.a3()), rhs));
    }
    return n;
}

namespace {

u64 fast_count_short(const FieldCtx& F, const Elem& a2, const Elem& a4, const Elem& a6) {
    // y^2 = x^3 + a2 x^2 + a4 x + a6, odd characteristic.
    i64 n = 1 + static_cast<i64>(F.q());
    for (u64 xv = 0; xv < F.q(); ++xv) {
        Elem x = F.elem_at(xv);
        Elem x2 = F.mul(x, x);
        Elem rhs = F.add(F.add(F.mul(x2, x), F.mul(a2, x2)),
                         F.add(F.mul(a4, x), a6));
        n += F.legendre(rhs);
    }
    return static_cast<u64>(n);
}

bool nonsingular(const FieldRef& ctx, const Elem& a1, const Elem& a2,
                 const Elem& a3, const Elem& a4, const Elem& a6) {
    try {
        Curve probe(ctx, a1, a2, a3, a4, a6);
        return true;
    } catch (const SingularCurve&) {
        return false;
    }
}

}  // namespace

std::set<u64> realized_point_counts(const FieldRef& ctx) {
    const FieldCtx& F = *ctx;
    std::set<u64> out;
    Elem z = F.zero();
    if (F.p() != 2) {
        const bool need_a2 = F.p() == 3;
        for (u64 a2v = 0; a2v < (need_a2 ? F.q() : 1); ++a2v)
            for (u64 a4v = 0; a4v < F.q(); ++a4v)
                for (u64 a6v = 0; a6v < F.q(); ++a6v) {
                    Elem a2 = F.elem_at(a2v), a4 = F.elem_at(a4v), a6 = F.elem_at(a6v);
                    if (!nonsingular(ctx, z, a2, z, a4, a6)) continue;
                    out.insert(fast_count_short(F, a2, a4, a6));
                }
        return out;
    }
    for (u64 a2v = 0; a2v < F.q(); ++a2v)
        for (u64 a6v = 1; a6v < F.q(); ++a6v) {
            Elem a2 = F.elem_at(a2v), a6 = F.elem_at(a6v);
            if (!nonsingular(ctx, F.one(), a2, z, z, a6)) continue;
            out.insert(count_points(Curve(ctx, F.one(), a2, z, z, a6)));
        }
    for (u64 a3v = 1; a3v < F.q(); ++a3v)
        for (u64 a4v = 0; a4v < F.q(); ++a4v)
            for (u64 a6v = 0; a6v < F.q(); ++a6v) {
                Elem a3 = F.elem_at(a3v), a4 = F.elem_at(a4v), a6 = F.elem_at(a6v);
                if (!nonsingular(ctx, z, z, a3, a4, a6)) continue;
                out.insert(count_points(Curve(ctx, z, z, a3, a4, a6)));
            }
    return out;
}

Curve find_curve(const FieldRef& ctx, u64 target_N, SearchStrategy strategy, u64 seed) {
    const FieldCtx& F = *ctx;
    const u64 q = F.q();
    i64 t = static_cast<i64>(q) + 1 - static_cast<i64>(target_N);
    if (!trace_admissible(F.p(), F.deg(), t))
        throw InadmissibleCount("no elliptic curve over GF(" + std::to_string(q) +
                                ") has " + std::to_string(target_N) + " points");
    Elem z = F.zero();
    auto try_curve = [&](const Elem& a1, const Elem& a2, const Elem& a3,
                         const Elem& a4, const Elem& a6) -> bool {
        return nonsingular(ctx, a1, a2, a3, a4, a6) &&
               count_points(Curve(ctx, a1, a2, a3, a4, a6)) == target_N;
    };

    if (strategy == SearchStrategy::family) {
        u64 r = isqrt(q);
        if (F.deg() % 2 != 0 || r * r != q || target_N != q + 1 + 2 * r)
            throw PreconditionFailed("family strategy needs even degree and a maximal target");
        if (F.p() == 3) {
            if (try_curve(z, z, z, F.one(), z)) return Curve(ctx, z, z, z, F.one(), z);
            throw SearchExhausted("y^2 = x^3 + x is not maximal here");
        }
        if (F.p() % 3 != 2)
            throw PreconditionFailed("family strategy needs p = 2 mod 3 or p = 3");
        for (u64 tv = 1; tv < q; ++tv) {
            Elem theta = F.elem_at(tv);
            Elem a6 = F.mul(theta, F.mul(theta, theta));
            if (try_curve(z, z, z, z, a6)) return Curve(ctx, z, z, z, z, a6);
        }
        throw SearchExhausted("no maximal curve in the theta family");
    }

    if (strategy == SearchStrategy::exhaustive) {
        if (F.p() != 2) {
            const bool need_a2 = F.p() == 3;
            for (u64 a2v = 0; a2v < (need_a2 ? q : 1); ++a2v)
                for (u64 a4v = 0; a4v < q; ++a4v)
                    for (u64 a6v = 0; a6v < q; ++a6v) {
                        Elem a2 = F.elem_at(a2v), a4 = F.elem_at(a4v), a6 = F.elem_at(a6v);
                        if (try_curve(z, a2, z, a4, a6)) return Curve(ctx, z, a2, z, a4, a6);
                    }
        } else {
            for (u64 a2v = 0; a2v < q; ++a2v)
                for (u64 a6v = 1; a6v < q; ++a6v) {
                    Elem a2 = F.elem_at(a2v), a6 = F.elem_at(a6v);
                    if (try_curve(F.one(), a2, z, z, a6))
                        return Curve(ctx, F.one(), a2, z, z, a6);
                }
            for (u64 a3v = 1; a3v < q; ++a3v)
                for (u64 a4v = 0; a4v < q; ++a4v)
                    for (u64 a6v = 0; a6v < q; ++a6v) {
                        Elem a3 = F.elem_at(a3v), a4 = F.elem_at(a4v), a6 = F.elem_at(a6v);
                        if (try_curve(z, z, a3, a4, a6)) return Curve(ctx, z, z, a3, a4, a6);
                    }
        }
        throw SearchExhausted("exhaustive scan found no curve with the target count");
    }

    std::mt19937_64 rng(seed);
    for (u64 iter = 0; iter < 200000; ++iter) {
        if (F.p() != 2) {
            Elem a2 = F.p() == 3 ? F.elem_at(rng() % q) : z;
            Elem a4 = F.elem_at(rng() % q), a6 = F.elem_at(rng() % q);
            if (try_curve(z, a2, z, a4, a6)) return Curve(ctx, z, a2, z, a4, a6);
        } else if (iter % 2 == 0) {
            Elem a2 = F.elem_at(rng() % q), a6 = F.elem_at(1 + rng() % (q - 1));
            if (try_curve(F.one(), a2, z, z, a6)) return Curve(ctx, F.one(), a2, z, z, a6);
        } else {
            Elem a3 = F.elem_at(1 + rng() % (q - 1));
            Elem a4 = F.elem_at(rng() % q), a6 = F.elem_at(rng() % q);
            if (try_curve(z, z, a3, a4, a6)) return Curve(ctx, z, z, a3, a4, a6);
        }
    }
    throw SearchExhausted("random scan budget exhausted");
}

}  // namespace mec
