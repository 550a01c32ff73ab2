#pragma once

#include <utility>
#include <vector>

#include "mec/place.hpp"

namespace mec {

// Polynomial function on the curve with y-degree at most 1: A(x) + y*B(x).
// Multiplication reduces y^2 through the curve equation. The only pole is at
// O, of order max(2*deg A, 3 + 2*deg B); the two parities never collide, so
// the leading monomial is unambiguous.
struct PolyXY {
    FieldRef field;
    std::vector<Elem> A, B;

    static PolyXY one(const FieldRef& K);
    bool is_zero() const;
    int pole_order() const;
    Elem lead_coeff() const;
    Elem eval(const FieldCtx& K, const Elem& x, const Elem& y) const;
};

PolyXY pxy_add(const PolyXY& a, const PolyXY& b);
PolyXY pxy_scale(const PolyXY& a, const Elem& c);
PolyXY pxy_mul(const Curve& E, const PolyXY& a, const PolyXY& b);
PolyXY pxy_from_line(const FieldRef& K, const Line& L);

// Function in factored form: poly * prod line_i^z_i, coefficients in `field`
// (the curve's base field or one tower over it).
struct FunctionRep {
    std::shared_ptr<const Curve> curve;
    FieldRef field;
    PolyXY poly;
    std::vector<std::pair<Line, int>> factors;
};

// Pole/zero order of f at the place (any orbit point; conjugates agree).
int valuation(const FunctionRep& f, const Place& Q);

// Every place where div(f) + G could fail to be effective is inspected
// through exact valuations; throws DimensionMismatch on failure.
void require_in_L(const FunctionRep& f, const Divisor& G);

// Chord-and-tangent accumulation of the affine part of D0 = sum n_Q [Q] - d[O].
// Returns (h, T) with div(h) = D0 - [T] + [O] and T = sum of the affine part.
std::pair<FunctionRep, Point> miller_reduce(const Curve& E, const Divisor& D0);

// Basis of L(G), |basis| = deg G >= 1.
std::vector<FunctionRep> rr_basis(const Curve& E, const Divisor& G);

// Value at a rational point of the curve (including O); embeds into f.field
// when the coefficients live in a tower.
Elem evaluate_fn(const FunctionRep& f, const Point& P);

// Monomial of the standard pole-order ladder 1, x, y, x^2, xy, x^3, ... as a
// PolyXY; order must be 0 or >= 2.
PolyXY pole_monomial(const FieldRef& K, int order);

}  // namespace mec
