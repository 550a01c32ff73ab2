#pragma once

#include "mec/errors.hpp"
#include "mec/numeric.hpp"

namespace mec {

// Maximal length of a nontrivial MDS elliptic code of dimension k over GF(q),
// per the ten-row bound table in the README. `restricted` asks for Supp(G)
// inside E(F_q); for odd k the restricted and unrestricted values coincide.
struct BoundResult {
    u64 q = 0;
    int k = 0;
    bool restricted = false;
    bool even_regime = false;  // q + 1 + floor(2*sqrt(q)) even
    u64 value = 0;
    int citation = 0;          // table row, 1-based
};

// Requires q a prime power, q >= 289, and 3 <= k <= (q+1-2*sqrt(q))/10 with
// the k-range compared exactly (no floating point).
BoundResult mec_bound(u64 q, int k, bool restricted);

}  // namespace mec
