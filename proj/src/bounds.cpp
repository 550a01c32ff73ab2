#include "mec/bounds.hpp"

#include <string>

namespace mec {

BoundResult mec_bound(u64 q, int k, bool restricted) {
    auto fs = factorize(q);
    if (fs.size() != 1)
        throw PreconditionFailed("q = " + std::to_string(q) + " is not a prime power");
    u64 p = fs[0].first;
    int a = fs[0].second;
    if (q < 289)
        throw PreconditionFailed("q >= 289 required, got " + std::to_string(q));
    if (k < 3)
        throw PreconditionFailed("k >= 3 required, got " + std::to_string(k));
    // k <= (q+1-2*sqrt(q))/10  <=>  q+1-10k >= 0 and (q+1-10k)^2 >= 4q
    i64 m = static_cast<i64>(q) + 1 - 10 * static_cast<i64>(k);
    if (m < 0 || m * m < static_cast<i64>(4 * q))
        throw PreconditionFailed("k <= (q+1-2*sqrt(q))/10 required, got k = " +
                                 std::to_string(k));

    u64 s = isqrt(4 * q);
    bool even_regime = (q + 1 + s) % 2 == 0;
    u64 value = even_regime ? (q + 1 + s) / 2 : (q + s) / 2;
    bool k_even = k % 2 == 0;
    if (restricted && k_even) value -= 1;

    int row;
    if (p == 2 && a % 2 == 0)
        row = !k_even ? 10 : (restricted ? 8 : 9);
    else if (p != 2 && a % 2 == 0 && !k_even)
        row = 1;
    else if (even_regime)
        row = !k_even ? 2 : (restricted ? 3 : 4);
    else
        row = !k_even ? 5 : (restricted ? 6 : 7);

    return {q, k, restricted, even_regime, value, row};
}

}  // namespace mec
