#pragma once

#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace mec {

using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::pair<u64, int>> factorize(u64 n) {
    std::vector<std::pair<u64, int>> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) { n /= d; ++e; }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline u64 isqrt(u64 n) {
    if (n == 0) return 0;
    // Newton iteration on integers; converges from any positive start.
    u64 x = std::bit_floor(n);
    while (true) {
        u64 y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    while ((x + 1) * (x + 1) <= n) ++x;
    while (x * x > n) --x;
    return x;
}

inline u64 ipow(u64 b, unsigned e) {
    u64 r = 1;
    while (e--) r *= b;
    return r;
}

inline u64 gcd_u64(u64 a, u64 b) {
    while (b) { a %= b; std::swap(a, b); }
    return a;
}

}  // namespace mec
