#include "mec/field.hpp"

#include <algorithm>
#include <atomic>
#include <map>

#include "mec/poly.hpp"

namespace mec {
namespace {

std::atomic<u32> next_ctx_id{1};

constexpr u64 kBaseFieldLimit = 1u << 16;
constexpr u64 kAddTableLimit = 1024;

// Polynomials over GF(p) as int vectors, constant term first.
std::vector<int> ptrim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<int> pmul(const std::vector<int>& a, const std::vector<int>& b, u64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> acc(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            acc[i + j] += static_cast<u64>(a[i]) * b[j];
    std::vector<int> r(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<int>(acc[i] % p);
    return ptrim(std::move(r));
}

std::vector<int> pmod(std::vector<int> a, const std::vector<int>& m, u64 p) {
    a = ptrim(std::move(a));
    const int dm = static_cast<int>(m.size()) - 1;
    // m is monic.
    while (static_cast<int>(a.size()) - 1 >= dm) {
        int da = static_cast<int>(a.size()) - 1;
        u64 c = static_cast<u64>(a[da]);
        if (c) {
            for (int j = 0; j <= dm; ++j) {
                u64 t = (static_cast<u64>(a[da - dm + j]) + p * p -
                         c * static_cast<u64>(m[j]) % p) % p;
                a[da - dm + j] = static_cast<int>(t % p);
            }
        }
        a.pop_back();
        a = ptrim(std::move(a));
    }
    return a;
}

bool p_irreducible(const std::vector<int>& m, u64 p) {
    const int d = static_cast<int>(m.size()) - 1;
    if (d < 1 || m[d] != 1) return false;
    if (d == 1) return true;
    // No roots in GF(p).
    for (u64 r = 0; r < p; ++r) {
        u64 val = 0;
        for (int i = d; i >= 0; --i) val = (val * r + static_cast<u64>(m[i])) % p;
        if (val == 0) return false;
    }
    if (d <= 3) return true;
    // Trial division by monic polynomials of degree 2..d/2.
    for (int dd = 2; dd <= d / 2; ++dd) {
        u64 total = 1;
        for (int i = 0; i < dd; ++i) total *= p;
        for (u64 idx = 0; idx < total; ++idx) {
            std::vector<int> f(dd + 1);
            u64 t = idx;
            for (int i = 0; i < dd; ++i) { f[i] = static_cast<int>(t % p); t /= p; }
            f[dd] = 1;
            if (pmod(m, f, p).empty()) return false;
        }
    }
    return true;
}

std::vector<int> smallest_irreducible(u64 p, int a) {
    u64 total = 1;
    for (int i = 0; i < a; ++i) total *= p;
    for (u64 idx = 0; idx < total; ++idx) {
        std::vector<int> m(a + 1);
        u64 t = idx;
        for (int i = 0; i < a; ++i) { m[i] = static_cast<int>(t % p); t /= p; }
        m[a] = 1;
        if (p_irreducible(m, p)) return m;
    }
    throw SearchExhausted("no irreducible polynomial found");  // unreachable
}

}  // namespace

Elem FieldCtx::elem_at(u64 index) const {
    if (index >= q_) throw Error("element index " + std::to_string(index) +
                                 " out of range for field of size " + std::to_string(q_));
    return {index, id_};
}

u64 FieldCtx::pack(const std::vector<int>& ds) const {
    u64 v = 0;
    for (int i = static_cast<int>(ds.size()) - 1; i >= 0; --i) v = v * p_ + static_cast<u64>(ds[i]);
    return v;
}

std::vector<int> FieldCtx::unpack(u64 v) const {
    std::vector<int> ds(deg_);
    for (int i = 0; i < deg_; ++i) { ds[i] = static_cast<int>(v % p_); v /= p_; }
    return ds;
}

std::vector<int> FieldCtx::digits(const Elem& e) const {
    check(e);
    return unpack(e.v);
}

Elem FieldCtx::from_digits(const std::vector<int>& ds) const {
    if (static_cast<int>(ds.size()) > deg_)
        throw Error("digit vector longer than field degree");
    u64 v = 0;
    for (int i = static_cast<int>(ds.size()) - 1; i >= 0; --i) {
        int d = ds[i] % static_cast<int>(p_);
        if (d < 0) d += static_cast<int>(p_);
        v = v * p_ + static_cast<u64>(d);
    }
    return {v, id_};
}

std::vector<Elem> FieldCtx::coeffs(const Elem& e) const {
    check(e);
    if (!base_) throw Error("coeffs() requires a tower field");
    std::vector<Elem> cs(d_);
    u64 v = e.v;
    const u64 qb = base_->q();
    for (int i = 0; i < d_; ++i) { cs[i] = {v % qb, base_->id()}; v /= qb; }
    return cs;
}

Elem FieldCtx::from_coeffs(const std::vector<Elem>& cs) const {
    if (!base_) throw Error("from_coeffs() requires a tower field");
    if (static_cast<int>(cs.size()) > d_) throw Error("coefficient vector too long");
    u64 v = 0;
    const u64 qb = base_->q();
    for (int i = static_cast<int>(cs.size()) - 1; i >= 0; --i) {
        base_->check(cs[i]);
        v = v * qb + cs[i].v;
    }
    return {v, id_};
}

Elem FieldCtx::add(const Elem& x, const Elem& y) const {
    check(x); check(y);
    if (p_ == 2) return {x.v ^ y.v, id_};
    if (!addt_.empty()) return {addt_[x.v * q_ + y.v], id_};
    if (!base_) {
        if (deg_ == 1) return {(x.v + y.v) % p_, id_};
        std::vector<int> a = unpack(x.v), b = unpack(y.v);
        for (int i = 0; i < deg_; ++i) a[i] = static_cast<int>((static_cast<u64>(a[i]) + b[i]) % p_);
        return {pack(a), id_};
    }
    u64 v = 0, xv = x.v, yv = y.v;
    const u64 qb = base_->q();
    u64 mult = 1;
    for (int i = 0; i < d_; ++i) {
        Elem s = base_->add({xv % qb, base_->id()}, {yv % qb, base_->id()});
        v += s.v * mult;
        mult *= qb;
        xv /= qb; yv /= qb;
    }
    return {v, id_};
}

Elem FieldCtx::neg(const Elem& x) const {
    check(x);
    if (p_ == 2) return x;
    if (!negt_.empty()) return {negt_[x.v], id_};
    if (!base_) {
        if (deg_ == 1) return {(p_ - x.v) % p_, id_};
        std::vector<int> a = unpack(x.v);
        for (auto& d : a) d = static_cast<int>((p_ - static_cast<u64>(d)) % p_);
        return {pack(a), id_};
    }
    u64 v = 0, xv = x.v;
    const u64 qb = base_->q();
    u64 mult = 1;
    for (int i = 0; i < d_; ++i) {
        v += base_->neg({xv % qb, base_->id()}).v * mult;
        mult *= qb;
        xv /= qb;
    }
    return {v, id_};
}

Elem FieldCtx::sub(const Elem& x, const Elem& y) const { return add(x, neg(y)); }

Elem FieldCtx::mul_generic(const Elem& x, const Elem& y) const {
    std::vector<int> r = pmod(pmul(unpack(x.v), unpack(y.v), p_), modulus_, p_);
    r.resize(deg_, 0);
    return {pack(r), id_};
}

Elem FieldCtx::mul(const Elem& x, const Elem& y) const {
    check(x); check(y);
    if (x.v == 0 || y.v == 0) return zero();
    if (tables_) return {exp_[log_[x.v] + log_[y.v]], id_};
    if (!base_) return mul_generic(x, y);
    // Tower: schoolbook product of coefficient vectors, reduced by tmod_.
    std::vector<Elem> a = coeffs(x), b = coeffs(y);
    std::vector<Elem> prod(2 * d_ - 1, base_->zero());
    for (int i = 0; i < d_; ++i) {
        if (a[i].v == 0) continue;
        for (int j = 0; j < d_; ++j)
            prod[i + j] = base_->add(prod[i + j], base_->mul(a[i], b[j]));
    }
    for (int i = 2 * d_ - 2; i >= d_; --i) {
        if (prod[i].v == 0) continue;
        Elem c = prod[i];
        for (int j = 0; j < d_; ++j)
            prod[i - d_ + j] = base_->sub(prod[i - d_ + j], base_->mul(c, tmod_[j]));
        prod[i] = base_->zero();
    }
    prod.resize(d_);
    return from_coeffs(prod);
}

Elem FieldCtx::pow(const Elem& x, u64 e) const {
    check(x);
    if (x.v == 0) return e == 0 ? one() : zero();
    if (e >= q_ - 1) e %= (q_ - 1);
    if (tables_) {
        u64 l = (static_cast<u64>(log_[x.v]) * e) % (q_ - 1);
        return {exp_[l], id_};
    }
    Elem r = one(), b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

Elem FieldCtx::inv(const Elem& x) const {
    check(x);
    if (x.v == 0) throw DivisionByZero("inverse of zero");
    if (tables_) return {exp_[(q_ - 1) - log_[x.v]], id_};
    return pow(x, q_ - 2);
}

Elem FieldCtx::div(const Elem& x, const Elem& y) const { return mul(x, inv(y)); }

Elem FieldCtx::embed(const Elem& base_elem) const {
    if (!base_) throw NotASubfield("embed() requires a tower field");
    base_->check(base_elem);
    return {base_elem.v, id_};
}

bool FieldCtx::in_base(const Elem& e) const {
    check(e);
    if (!base_) throw NotASubfield("in_base() requires a tower field");
    return e.v < base_->q();
}

Elem FieldCtx::project(const Elem& e) const {
    if (!in_base(e))
        throw NotASubfield("element is not in the base field");
    return {e.v, base_->id()};
}

Elem FieldCtx::frobenius(const Elem& e, const FieldCtx& relative_to, int times) const {
    check(e);
    const bool is_prime_field = relative_to.q() == p_;
    const bool is_base = base_ && relative_to.id() == base_->id();
    if (!is_prime_field && !is_base && relative_to.id() != id_)
        throw NotASubfield("frobenius relative to a non-subfield");
    Elem r = e;
    for (int t = 0; t < times; ++t) r = pow(r, relative_to.q());
    return r;
}

int FieldCtx::legendre(const Elem& e) const {
    check(e);
    if (e.v == 0) return 0;
    if (p_ == 2) return 1;
    if (tables_) return (log_[e.v] & 1) ? -1 : 1;
    return pow(e, (q_ - 1) / 2) == one() ? 1 : -1;
}

int FieldCtx::trace2(const Elem& e) const {
    check(e);
    if (p_ != 2) throw Error("trace2 requires characteristic 2");
    if (!tr2_.empty()) return tr2_[e.v];
    Elem acc = e, t = e;
    for (int i = 1; i < deg_; ++i) {
        t = mul(t, t);
        acc = add(acc, t);
    }
    return static_cast<int>(acc.v);
}

bool FieldCtx::has_sqrt(const Elem& e) const {
    if (p_ == 2 || e.v == 0) return true;
    return legendre(e) == 1;
}

Elem FieldCtx::tonelli_shanks(const Elem& e) const {
    // Odd q, chi(e) = 1, no tables.
    u64 m = q_ - 1;
    int s = 0;
    while ((m & 1) == 0) { m >>= 1; ++s; }
    Elem z = zero();
    for (u64 i = 2; i < q_; ++i) {
        z = elem_at(i);
        if (legendre(z) == -1) break;
    }
    Elem c = pow(z, m);
    Elem t = pow(e, m);
    Elem r = pow(e, (m + 1) / 2);
    int rank = s;
    while (t != one()) {
        Elem tt = t;
        int i = 0;
        while (tt != one()) { tt = mul(tt, tt); ++i; }
        Elem b = c;
        for (int j = 0; j < rank - i - 1; ++j) b = mul(b, b);
        r = mul(r, b);
        c = mul(b, b);
        t = mul(t, c);
        rank = i;
    }
    return r;
}

Elem FieldCtx::sqrt(const Elem& e) const {
    check(e);
    if (e.v == 0) return zero();
    if (p_ == 2) return pow(e, q_ / 2);
    if (!has_sqrt(e)) throw Error("sqrt of a non-square");
    if (tables_) {
        u64 l = log_[e.v];
        return {exp_[l / 2], id_};
    }
    if (q_ % 4 == 3) return pow(e, (q_ + 1) / 4);
    return tonelli_shanks(e);
}

std::vector<Elem> FieldCtx::solve_quadratic(const Elem& A, const Elem& B, const Elem& C) const {
    check(A); check(B); check(C);
    if (A.v == 0 && B.v == 0) throw DegenerateEquation("A = B = 0");
    if (A.v == 0) return {div(neg(C), B)};
    std::vector<Elem> roots;
    if (p_ != 2) {
        Elem disc = sub(mul(B, B), mul(from_int(4), mul(A, C)));
        Elem two_a = mul(from_int(2), A);
        if (disc.v == 0) {
            roots = {div(neg(B), two_a)};
        } else if (has_sqrt(disc)) {
            Elem r = sqrt(disc);
            roots = {div(sub(r, B), two_a), div(sub(neg(r), B), two_a)};
        }
    } else if (B.v == 0) {
        roots = {sqrt(div(C, A))};
    } else {
        // z = (A/B) y turns the equation into z^2 + z = AC/B^2.
        Elem e = div(mul(A, C), mul(B, B));
        if (trace2(e) == 0) {
            Elem z = zero();
            if (deg_ % 2 == 1) {
                // Half trace: e + e^4 + e^16 + ... + e^(2^(deg-1)).
                Elem t = e;
                z = e;
                for (int i = 0; i < (deg_ - 1) / 2; ++i) {
                    t = mul(t, t);
                    t = mul(t, t);
                    z = add(z, t);
                }
            } else {
                // Solve the F2-linear system (z^2 + z) = e on packed bits.
                const int m = deg_;
                std::vector<u64> col(m);
                for (int j = 0; j < m; ++j) {
                    Elem bj{u64{1} << j, id_};
                    Elem im = add(mul(bj, bj), bj);
                    col[j] = im.v;
                }
                std::vector<u64> row(m, 0);
                std::vector<int> rhs(m, 0);
                for (int r = 0; r < m; ++r) {
                    for (int j = 0; j < m; ++j)
                        if ((col[j] >> r) & 1) row[r] |= u64{1} << j;
                    rhs[r] = static_cast<int>((e.v >> r) & 1);
                }
                u64 zz = 0;
                std::vector<int> pivot_col;
                int rank = 0;
                for (int cidx = 0; cidx < m; ++cidx) {
                    int sel = -1;
                    for (int r = rank; r < m; ++r)
                        if ((row[r] >> cidx) & 1) { sel = r; break; }
                    if (sel < 0) continue;
                    std::swap(row[rank], row[sel]);
                    std::swap(rhs[rank], rhs[sel]);
                    for (int r = 0; r < m; ++r) {
                        if (r != rank && ((row[r] >> cidx) & 1)) {
                            row[r] ^= row[rank];
                            rhs[r] ^= rhs[rank];
                        }
                    }
                    pivot_col.push_back(cidx);
                    ++rank;
                }
                for (int r = rank; r < m; ++r)
                    if (rhs[r]) throw Error("inconsistent Artin-Schreier system");
                for (int r = 0; r < rank; ++r)
                    if (rhs[r]) zz |= u64{1} << pivot_col[r];
                z = {zz, id_};
            }
            Elem y0 = div(mul(B, z), A);
            roots = {y0, add(y0, div(B, A))};
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const Elem& a, const Elem& b) { return a.v < b.v; });
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    // Exactness guard: every claimed root must satisfy the equation.
    for (const Elem& r : roots) {
        Elem val = add(add(mul(A, mul(r, r)), mul(B, r)), C);
        if (val.v != 0) throw Error("solve_quadratic produced a non-root");
    }
    return roots;
}

void FieldCtx::build_tables() {
    if (q_ > kBaseFieldLimit) return;
    // Multiplicative generator by deterministic scan.
    auto fac = factorize(q_ - 1);
    auto order_ok = [&](u64 g) {
        Elem ge{g, id_};
        for (auto& [f, e] : fac) {
            Elem r{1, id_};
            u64 exp = (q_ - 1) / f;
            Elem b = ge;
            while (exp) {
                if (exp & 1) r = mul_generic(r, b);
                b = mul_generic(b, b);
                exp >>= 1;
            }
            if (r.v == 1) return false;
        }
        return true;
    };
    for (u64 g = 2; g < q_; ++g)
        if (order_ok(g)) { gen_ = g; break; }
    exp_.assign(2 * (q_ - 1), 0);
    log_.assign(q_, 0);
    Elem cur = one();
    for (u64 i = 0; i < q_ - 1; ++i) {
        exp_[i] = static_cast<u32>(cur.v);
        exp_[i + q_ - 1] = static_cast<u32>(cur.v);
        log_[cur.v] = static_cast<u32>(i);
        cur = mul_generic(cur, {gen_, id_});
    }
    tables_ = true;
    if (p_ != 2) {
        negt_.assign(q_, 0);
        for (u64 v = 0; v < q_; ++v) {
            std::vector<int> a = unpack(v);
            for (auto& d : a) d = static_cast<int>((p_ - static_cast<u64>(d)) % p_);
            negt_[v] = static_cast<u32>(pack(a));
        }
        if (q_ <= kAddTableLimit && deg_ > 1) {
            addt_.assign(q_ * q_, 0);
            for (u64 x = 0; x < q_; ++x) {
                std::vector<int> a = unpack(x);
                for (u64 y = 0; y < q_; ++y) {
                    std::vector<int> b = unpack(y);
                    std::vector<int> s(deg_);
                    for (int i = 0; i < deg_; ++i)
                        s[i] = static_cast<int>((static_cast<u64>(a[i]) + b[i]) % p_);
                    addt_[x * q_ + y] = static_cast<u16>(pack(s));
                }
            }
        }
    } else {
        tr2_.assign(q_, 0);
        for (u64 v = 0; v < q_; ++v) {
            Elem acc{v, id_}, t{v, id_};
            for (int i = 1; i < deg_; ++i) {
                t = mul(t, t);
                acc = add(acc, t);
            }
            tr2_[v] = static_cast<u16>(acc.v);
        }
    }
}

FieldRef make_field(u64 p, int a, const std::vector<int>& modulus) {
    if (!is_prime(p)) throw NonPrimeCharacteristic(std::to_string(p));
    if (a < 1) throw PreconditionFailed("extension degree must be positive");
    u64 q = 1;
    for (int i = 0; i < a; ++i) {
        q *= p;
        if (q > kBaseFieldLimit) throw FieldTooLarge("base field beyond 2^16");
    }
    std::vector<int> m = modulus;
    if (m.empty()) {
        m = smallest_irreducible(p, a);
    } else {
        if (static_cast<int>(m.size()) != a + 1 || m[a] != 1)
            throw ReducibleModulus("modulus must be monic of degree " + std::to_string(a));
        for (auto& c : m) {
            c %= static_cast<int>(p);
            if (c < 0) c += static_cast<int>(p);
        }
        if (!p_irreducible(m, p)) throw ReducibleModulus("supplied modulus factors over GF(p)");
    }
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = p;
    ctx->deg_ = a;
    ctx->q_ = q;
    ctx->modulus_ = m;
    ctx->id_ = next_ctx_id.fetch_add(1);
    ctx->build_tables();
    return ctx;
}

FieldRef make_field(u64 p, int a) { return make_field(p, a, {}); }

FieldRef extend_field(const FieldRef& base, int d) {
    if (!base) throw Error("null base field");
    if (base->is_tower()) throw NotASubfield("nested towers are not supported");
    if (d < 2) throw PreconditionFailed("extension degree must be at least 2");
    // One context per (base, d) so elements from independent calls interoperate.
    static std::map<std::pair<u32, int>, std::weak_ptr<const FieldCtx>> cache;
    auto key = std::make_pair(base->id(), d);
    if (auto it = cache.find(key); it != cache.end())
        if (auto hit = it->second.lock()) return hit;
    u64 q = 1;
    for (int i = 0; i < d; ++i) {
        q *= base->q();
        if (q > (u64{1} << 48)) throw FieldTooLarge("tower beyond 2^48");
    }
    const FieldCtx& B = *base;
    // Deterministic modulus: smallest packed coefficient vector giving an
    // irreducible monic polynomial of degree d over the base.
    std::vector<Elem> chosen;
    for (u64 idx = 0; idx < q && chosen.empty(); ++idx) {
        std::vector<Elem> cand(d + 1, B.zero());
        u64 t = idx;
        for (int i = 0; i < d; ++i) { cand[i] = {t % B.q(), B.id()}; t /= B.q(); }
        cand[d] = B.one();
        bool irred = true;
        for (u64 r = 0; r < B.q() && irred; ++r)
            if (poly::eval(B, cand, {r, B.id()}).v == 0) irred = false;
        if (irred && d > 3) {
            for (int dd = 2; dd <= d / 2 && irred; ++dd) {
                u64 total = 1;
                for (int i = 0; i < dd; ++i) total *= B.q();
                for (u64 fidx = 0; fidx < total && irred; ++fidx) {
                    std::vector<Elem> f(dd + 1, B.zero());
                    u64 ft = fidx;
                    for (int i = 0; i < dd; ++i) { f[i] = {ft % B.q(), B.id()}; ft /= B.q(); }
                    f[dd] = B.one();
                    if (poly::deg(poly::mod(B, cand, f)) < 0) irred = false;
                }
            }
        }
        if (irred) chosen = cand;
    }
    if (chosen.empty()) throw SearchExhausted("no irreducible tower modulus");
    auto ctx = std::shared_ptr<FieldCtx>(new FieldCtx());
    ctx->p_ = B.p();
    ctx->deg_ = B.deg() * d;
    ctx->q_ = q;
    ctx->base_ = base;
    ctx->d_ = d;
    ctx->tmod_ = chosen;
    ctx->id_ = next_ctx_id.fetch_add(1);
    cache[key] = ctx;
    return ctx;
}

}  // namespace mec
