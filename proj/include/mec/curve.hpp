#pragma once

#include <array>
#include <set>
#include <utility>
#include <vector>

#include "mec/field.hpp"

namespace mec {

struct Point {
    bool inf = true;
    Elem x{}, y{};

    static Point infinity() { return {}; }
    static Point affine(const Elem& x, const Elem& y) { return {false, x, y}; }
    friend bool operator==(const Point&, const Point&) = default;
};

// Lexicographic order on packed coordinates; O sorts after affine points.
inline bool point_less(const Point& a, const Point& b) {
    if (a.inf != b.inf) return b.inf;
    if (a.x.v != b.x.v) return a.x.v < b.x.v;
    return a.y.v < b.y.v;
}

class Curve {
public:
    Curve(FieldRef ctx, Elem a1, Elem a2, Elem a3, Elem a4, Elem a6);

    const FieldRef& ctx() const { return ctx_; }
    Elem a1() const { return a_[0]; }
    Elem a2() const { return a_[1]; }
    Elem a3() const { return a_[2]; }
    Elem a4() const { return a_[3]; }
    Elem a6() const { return a_[4]; }
    Elem discriminant() const { return disc_; }

    // Coefficients moved into a coordinate field (the curve's own field or a
    // tower over it).
    std::array<Elem, 5> coeffs_in(const FieldCtx& K) const;

    bool on_curve(const Point& P, const FieldCtx& K) const;
    void require_on_curve(const Point& P, const FieldCtx& K) const;

    Point neg(const Point& P, const FieldCtx& K) const;
    Point add(const Point& P, const Point& Q, const FieldCtx& K) const;
    Point smul(i64 m, const Point& P, const FieldCtx& K) const;

    // Base-field convenience overloads.
    bool on_curve(const Point& P) const { return on_curve(P, *ctx_); }
    Point neg(const Point& P) const { return neg(P, *ctx_); }
    Point add(const Point& P, const Point& Q) const { return add(P, Q, *ctx_); }
    Point smul(i64 m, const Point& P) const { return smul(m, P, *ctx_); }

private:
    Point add_unchecked(const Point& P, const Point& Q, const FieldCtx& K,
                        const std::array<Elem, 5>& a) const;

    FieldRef ctx_;
    std::array<Elem, 5> a_;
    Elem disc_;
};

Curve make_curve(const FieldRef& ctx, const Elem& a1, const Elem& a2,
                 const Elem& a3, const Elem& a4, const Elem& a6);

// All rational points: affine points ordered by (x, y) packed index, then O.
std::pair<std::vector<Point>, u64> enumerate_points(const Curve& E);

// Point count without materializing the list.
u64 count_points(const Curve& E);

enum class SearchStrategy { family, exhaustive, random_scan };

Curve find_curve(const FieldRef& ctx, u64 target_N, SearchStrategy strategy,
                 u64 seed = 0);

// Every N attained by some curve over the field (exhausts all Weierstrass
// shapes up to isomorphism).
std::set<u64> realized_point_counts(const FieldRef& ctx);

}  // namespace mec
