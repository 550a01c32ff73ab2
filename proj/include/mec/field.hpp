#pragma once

#include <compare>
#include <memory>
#include <vector>

#include "mec/errors.hpp"
#include "mec/numeric.hpp"

namespace mec {

// A field element is a packed index into its field: v = sum of base-p digits
// times p^i. For a tower GF(q^d) over GF(q) the packed index of a coefficient
// vector (c_0..c_{d-1}) is sum index(c_i)*q^i, which coincides with the base-p
// digit encoding, so embedding GF(q) into GF(q^d) is the identity on v.
struct Elem {
    u64 v = 0;
    u32 ctx = 0;

    friend bool operator==(const Elem&, const Elem&) = default;
    friend std::strong_ordering operator<=>(const Elem&, const Elem&) = default;
};

class FieldCtx;
using FieldRef = std::shared_ptr<const FieldCtx>;

class FieldCtx {
public:
    u64 p() const { return p_; }
    int deg() const { return deg_; }       // degree over the prime field
    u64 q() const { return q_; }
    u32 id() const { return id_; }
    const std::vector<int>& modulus() const { return modulus_; }
    const FieldRef& base() const { return base_; }      // null for base fields
    bool is_tower() const { return base_ != nullptr; }
    int tower_degree() const { return d_; }
    const std::vector<Elem>& tower_modulus() const { return tmod_; }

    Elem zero() const { return {0, id_}; }
    Elem one() const { return {1, id_}; }
    Elem elem_at(u64 index) const;
    Elem from_int(u64 n) const { return {n % p_, id_}; }

    std::vector<int> digits(const Elem& e) const;       // base-p, length deg()
    Elem from_digits(const std::vector<int>& ds) const;
    std::vector<Elem> coeffs(const Elem& e) const;      // towers: base coords
    Elem from_coeffs(const std::vector<Elem>& cs) const;

    bool is_zero(const Elem& e) const { check(e); return e.v == 0; }
    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem neg(const Elem& x) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem inv(const Elem& x) const;
    Elem div(const Elem& x, const Elem& y) const;
    Elem pow(const Elem& x, u64 e) const;

    // Towers: move elements across the base/extension boundary.
    Elem embed(const Elem& base_elem) const;
    bool in_base(const Elem& e) const;
    Elem project(const Elem& e) const;

    Elem frobenius(const Elem& e, const FieldCtx& relative_to, int times = 1) const;

    // Roots of A*y^2 + B*y + C, sorted by packed index. A=B=0 is degenerate;
    // A=0 solves the linear equation.
    std::vector<Elem> solve_quadratic(const Elem& A, const Elem& B, const Elem& C) const;
    bool has_sqrt(const Elem& e) const;
    Elem sqrt(const Elem& e) const;

    // Fast counting hooks for point enumeration (base fields with tables).
    int legendre(const Elem& e) const;          // 0 for 0, else +-1 (odd p)
    int trace2(const Elem& e) const;            // absolute trace, char 2

    void check(const Elem& e) const {
        if (e.ctx != id_)
            throw MixedContexts("element of field #" + std::to_string(e.ctx) +
                                " used in field #" + std::to_string(id_));
    }

private:
    FieldCtx() = default;
    friend FieldRef make_field(u64 p, int a);
    friend FieldRef make_field(u64 p, int a, const std::vector<int>& modulus);
    friend FieldRef extend_field(const FieldRef& base, int d);

    u64 pack(const std::vector<int>& ds) const;
    std::vector<int> unpack(u64 v) const;
    Elem mul_generic(const Elem& x, const Elem& y) const;
    Elem tonelli_shanks(const Elem& e) const;
    void build_tables();

    u64 p_ = 0, q_ = 0;
    int deg_ = 0;
    std::vector<int> modulus_;
    FieldRef base_;
    int d_ = 0;
    std::vector<Elem> tmod_;
    u32 id_ = 0;

    bool tables_ = false;
    u64 gen_ = 0;
    std::vector<u32> log_, exp_;
    std::vector<u32> negt_;
    std::vector<u16> addt_;
    std::vector<u16> tr2_;
};

FieldRef make_field(u64 p, int a);
FieldRef make_field(u64 p, int a, const std::vector<int>& modulus);
FieldRef extend_field(const FieldRef& base, int d);

}  // namespace mec
