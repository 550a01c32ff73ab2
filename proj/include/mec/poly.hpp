#pragma once

#include <vector>

#include "mec/field.hpp"

namespace mec::poly {

// Dense univariate polynomials over a FieldCtx, constant term first.
using P = std::vector<Elem>;

inline int deg(const P& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i].v != 0) return i;
    return -1;
}

inline P trim(P a) {
    while (!a.empty() && a.back().v == 0) a.pop_back();
    return a;
}

inline P add(const FieldCtx& F, const P& a, const P& b) {
    P r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < r.size(); ++i) {
        Elem x = i < a.size() ? a[i] : F.zero();
        Elem y = i < b.size() ? b[i] : F.zero();
        r[i] = F.add(x, y);
    }
    return trim(std::move(r));
}

inline P sub(const FieldCtx& F, const P& a, const P& b) {
    P r(std::max(a.size(), b.size()), F.zero());
    for (size_t i = 0; i < r.size(); ++i) {
        Elem x = i < a.size() ? a[i] : F.zero();
        Elem y = i < b.size() ? b[i] : F.zero();
        r[i] = F.sub(x, y);
    }
    return trim(std::move(r));
}

inline P mul(const FieldCtx& F, const P& a, const P& b) {
    if (deg(a) < 0 || deg(b) < 0) return {};
    P r(a.size() + b.size() - 1, F.zero());
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].v == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    return trim(std::move(r));
}

inline P scale(const FieldCtx& F, const P& a, const Elem& c) {
    P r = a;
    for (auto& x : r) x = F.mul(x, c);
    return trim(std::move(r));
}

inline P mod(const FieldCtx& F, P a, const P& m) {
    int dm = deg(m);
    Elem lead_inv = F.inv(m[dm]);
    a = trim(std::move(a));
    while (deg(a) >= dm) {
        int da = deg(a);
        Elem c = F.mul(a[da], lead_inv);
        for (int j = 0; j <= dm; ++j)
            a[da - dm + j] = F.sub(a[da - dm + j], F.mul(c, m[j]));
        a = trim(std::move(a));
    }
    return a;
}

inline P mulmod(const FieldCtx& F, const P& a, const P& b, const P& m) {
    return mod(F, mul(F, a, b), m);
}

inline P powmod(const FieldCtx& F, P b, u64 e, const P& m) {
    P r = {F.one()};
    b = mod(F, std::move(b), m);
    while (e) {
        if (e & 1) r = mulmod(F, r, b, m);
        b = mulmod(F, b, b, m);
        e >>= 1;
    }
    return r;
}

inline P monic(const FieldCtx& F, P a) {
    a = trim(std::move(a));
    if (a.empty()) return a;
    return scale(F, a, F.inv(a.back()));
}

inline P gcd(const FieldCtx& F, P a, P b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        P r = mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, std::move(a));
}

inline Elem eval(const FieldCtx& F, const P& a, const Elem& x) {
    Elem r = F.zero();
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        r = F.add(F.mul(r, x), a[i]);
    return r;
}

}  // namespace mec::poly
