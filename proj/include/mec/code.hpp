#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mec/bounds.hpp"
#include "mec/group.hpp"
#include "mec/rr.hpp"

namespace mec {

struct Provenance {
    std::string construction = "manual";
    u64 seed = 0;
    int c1 = -1, c2 = -1;            // index-2 character used, -1 when none
    std::optional<Elem> witness_b;   // avoid-method witness
    int citation = 0;                // bound-table row targeted, 0 otherwise
    bool extension = false;          // parity outside the table's stated row
};

// Evaluation data of an elliptic code: an ordered list D of distinct rational
// points and a divisor G with Supp(G) disjoint from D and 0 < deg G < |D|.
struct CodeSpec {
    std::shared_ptr<const Curve> curve;
    std::vector<Point> D;
    Divisor G;
    int k = 0;
    Provenance prov;

    const FieldRef& field() const { return curve->ctx(); }
    int n() const { return static_cast<int>(D.size()); }
};

CodeSpec make_code_spec(const Curve& E, std::vector<Point> D, Divisor G,
                        Provenance prov = {});

struct GenMatrix {
    FieldRef field;
    int k = 0, n = 0;
    std::vector<Elem> a;  // row-major

    const Elem& at(int r, int c) const { return a[static_cast<size_t>(r) * n + c]; }
    Elem& at(int r, int c) { return a[static_cast<size_t>(r) * n + c]; }
};

// Evaluates a basis of L(G) at D. With non-rational support in G the matrix is
// computed over the tower, row-reduced, checked entrywise for base-field
// membership and projected down; rational support keeps the raw evaluations.
GenMatrix generator_matrix(const CodeSpec& spec);

struct Verdict {
    bool mds = true;
    std::vector<int> witness;  // ascending D/column indices proving NotMDS
};

// Group-theoretic criterion: NotMDS iff sum(G) is a sum of exactly k distinct
// points of D. The table must enumerate the points of spec's curve.
Verdict mds_combinatorial(const CodeSpec& spec, const GroupTable& T);

inline constexpr u64 kDefaultMinorBudget = 1000000000;

enum class MatrixMode { exhaustive_minors, sampled_minors, exhaustive_distance };

// exhaustive_minors: every k-subset of columns in colexicographic order with
// early exit; refuses when C(n,k) exceeds minor_budget. sampled_minors: count
// seeded random subsets. exhaustive_distance: full codeword enumeration
// (q^k <= 10^6), MDS iff d = n-k+1.
Verdict mds_matrix(const GenMatrix& M, MatrixMode mode, u64 count = 0,
                   u64 seed = 0, u64 minor_budget = kDefaultMinorBudget);

// Minimum distance by codeword enumeration; requires q^k <= 10^6.
int min_distance(const GenMatrix& M);

// Tight restricted-support construction on a curve with N even. Even k:
// D = (u+H) \ {u}, G = (k+1)[O] - [u], length N/2 - 1. Odd k (extension; the
// restricted bound equals the unrestricted one): D = u+H, G = k[O], length
// N/2. H is the first index-2 subgroup, u the first point outside it.
CodeSpec construct_coset_code(const Curve& E, const GroupTable& T, int k);

// Length-N/2 construction from a degree-3 place R with sum([R]) = O. Even k:
// D = H, G = [R] + the first k-3 points of u+H. Odd k: D = u+H,
// G = [R] + (k-3)[O].
CodeSpec construct_deg3_code(const Curve& E, const GroupTable& T, int k,
                             const Place& R);

// End-to-end: bound, curve search for the target count, group table, then the
// matching construction; the result length equals mec_bound(q,k,restricted).
CodeSpec build_max_code(u64 p, int a, int k, bool restricted, u64 seed = 0);

struct AuditReport {
    u64 N = 0;
    int n = 0, k = 0;
    bool n_half_N = false;
    bool d_coset = false;  // D equals H or u+H for some index-2 subgroup H
    int coset_c1 = -1, coset_c2 = -1;
    bool higher_degree_place = false;
    bool k_even = false;
    bool odd_N = false;
    bool odd_regime = false;  // odd N with n >= 2N/5+1 and 3 <= k <= n-2N/5+2
    bool predicts_not_mds = false;
};

AuditReport audit_code(const CodeSpec& spec, const GroupTable& T);

}  // namespace mec
