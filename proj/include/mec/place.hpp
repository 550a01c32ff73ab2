#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mec/curve.hpp"

namespace mec {

// A closed Frobenius orbit of curve points; degree = orbit size. Coordinates
// live in the curve's base field (degree 1) or in a tower over it.
struct Place {
    std::shared_ptr<const Curve> curve;
    FieldRef field;
    int degree = 0;
    std::vector<Point> orbit;  // canonical representative first, then its images
    std::optional<Elem> witness_b;

    const Point& rep() const { return orbit.front(); }
};

inline bool place_eq(const Place& a, const Place& b) {
    return a.degree == b.degree && a.rep().inf == b.rep().inf &&
           (a.rep().inf || (a.rep().x.v == b.rep().x.v && a.rep().y.v == b.rep().y.v));
}
inline bool place_lt(const Place& a, const Place& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    return point_less(a.rep(), b.rep());
}

// Weighted formal sum of places with nonzero coefficients, kept sorted.
class Divisor {
public:
    Divisor() = default;
    Divisor& add_term(const Place& P, int coeff);
    const std::vector<std::pair<Place, int>>& terms() const { return terms_; }
    int coeff_of(const Place& P) const;
    int degree() const;
    bool empty() const { return terms_.empty(); }

private:
    std::vector<std::pair<Place, int>> terms_;
};

Divisor add(const Divisor& A, const Divisor& B);
Divisor negate(const Divisor& D);

Place make_place(const Curve& E, const Point& P);
Place make_place(const Curve& E, const Point& P, const FieldRef& K);
Place place_at_infinity(const Curve& E);

// Weighted sum of all orbit points as an element of E(F_q).
Point divisor_sum(const Divisor& D);

struct Line {
    bool vertical;          // x = gamma
    Elem alpha, beta;       // y = alpha*x + beta
    Elem gamma;
};
inline Line vertical_line(const Elem& gamma) { return {true, {}, {}, gamma}; }
inline Line affine_line(const Elem& alpha, const Elem& beta) {
    return {false, alpha, beta, {}};
}

// Principal divisor of the line function on the curve.
Divisor line_divisor(const Curve& E, const Line& L);

// Rational roots (with multiplicity, ascending index) of a monic polynomial of
// degree at most 3 over K.
std::vector<Elem> low_degree_roots(const FieldCtx& K, const std::vector<Elem>& f);

// Degree-3 place with orbit sum O, found by sampling the trace kernel of
// E(GF(q^3)) -> E(GF(q)).
Place find_degree3_trace(const Curve& E, u64 seed = 0);

// Degree-3 place from div(y-b) = [R] - 3[O] where f(x) - b^2 has no rational
// root; returns the place and the witness b. Needs y^2 = f(x) in odd
// characteristic.
std::pair<Place, Elem> find_degree3_avoid(const Curve& E);

}  // namespace mec
