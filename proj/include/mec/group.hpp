#pragma once

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "mec/curve.hpp"

namespace mec {

// Waterhouse admissibility of the trace t for q = p^n.
bool trace_admissible(u64 p, int n, i64 t);
std::set<i64> admissible_traces(u64 p, int n);

// All invariant-factor pairs (d, e), d | e, allowed for a curve group of
// order N over GF(p^n); sorted by d.
std::vector<std::pair<u64, u64>> possible_structures(u64 p, int n, u64 N);

// gcd(p^r + 1, p^s - 1) in closed form.
u64 gcd_plus_minus(u64 p, int r, int s);

// Cyclicity guarantee for |E| = q + 2*sqrt(q) over q = 2^(2m).
bool predict_cyclic_binary_maximal(int m);

// The abelian group Z/d x Z/e, optionally realized by curve points.
// Element handles are ids 0..N-1; for curve tables the id order is the point
// enumeration order (affine by coordinates, then O).
class GroupTable {
public:
    static GroupTable synthetic(u64 d, u64 e);

    u64 N() const { return N_; }
    u64 d() const { return d_; }
    u64 e() const { return e_; }
    bool has_points() const { return curve_ != nullptr; }
    const Curve& curve() const { return *curve_; }
    const std::vector<Point>& points() const { return points_; }

    int identity_id() const { return id_from_coords(0, 0); }
    int gen1_id() const { return d_ > 1 ? id_from_coords(1, 0) : identity_id(); }
    int gen2_id() const { return id_from_coords(0, 1); }
    std::pair<u64, u64> coords(int id) const { return coords_[id]; }
    int id_from_coords(u64 i, u64 j) const {
        return coord_to_id_[(i % d_) * e_ + (j % e_)];
    }
    int add_ids(int a, int b) const {
        return coord_to_id_[((coords_[a].first + coords_[b].first) % d_) * e_ +
                            (coords_[a].second + coords_[b].second) % e_];
    }
    int neg_id(int a) const {
        return coord_to_id_[((d_ - coords_[a].first) % d_) * e_ +
                            (e_ - coords_[a].second) % e_];
    }
    int smul_id(i64 m, int a) const;

    const Point& point(int id) const;
    int id_of(const Point& P) const;

    const std::vector<int>& two_torsion() const { return two_torsion_; }

private:
    GroupTable() = default;
    friend GroupTable group_table(const Curve& E);

    u64 N_ = 0, d_ = 0, e_ = 0;
    std::shared_ptr<const Curve> curve_;
    std::vector<Point> points_;
    std::vector<std::pair<u64, u64>> coords_;  // by id
    std::vector<int> coord_to_id_;             // [i*e + j] -> id
    std::vector<int> two_torsion_;
};

GroupTable group_table(const Curve& E);

struct Subgroup {
    int c1 = 0, c2 = 0;  // character bits: H = {(i,j) : c1*i + c2*j even}
    u64 order = 0;
    std::vector<char> member;  // by id
    std::vector<int> elems;    // ids, ascending

    bool contains(int id) const { return member[id] != 0; }
};

std::vector<Subgroup> index2_subgroups(const GroupTable& G);

// Ascending ids of the coset u + H.
std::vector<int> coset_ids(const GroupTable& G, const Subgroup& H, int u_id);

// Subgroup generated by the given elements (ascending ids).
std::vector<int> span_ids(const GroupTable& G, const std::vector<int>& gens);

// Exact k-sumsets over the group: which elements are a sum of exactly k
// distinct members of S.
class SumsetDP {
public:
    SumsetDP(const GroupTable& G, const std::vector<int>& S, int k);

    bool contains(int target_id) const;
    std::vector<char> mask() const;  // by id
    // A witness k-subset of S summing to target (ids), if any.
    std::optional<std::vector<int>> witness(int target_id) const;

private:
    const GroupTable* G_;
    std::vector<int> S_;
    int k_;
    size_t words_;
    // layers_[t][j] = bitset over ids reachable as j-subsets of S[0..t).
    std::vector<std::vector<std::vector<u64>>> layers_;
};

std::vector<char> k_sumset(const GroupTable& G, const std::vector<int>& S, int k);

}  // namespace mec
