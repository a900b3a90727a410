#include "hyperlat/arith.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hl {

i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}

i128 checked_add(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}

i64 gcd(i64 a, i64 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i64 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i128 gcd(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

i64 lcm(i64 a, i64 b) {
    if (a == 0 || b == 0) return 0;
    return std::abs(a / gcd(a, b) * b);
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

i128 isqrt(i128 n) {
    if (n < 0) throw std::domain_error("isqrt of negative");
    if (n <= static_cast<i128>(UINT64_MAX >> 2)) return static_cast<i128>(isqrt(static_cast<u64>(n)));
    i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_square(i128 n) {
    if (n < 0) return false;
    static constexpr bool qr64[64] = {1, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0,
                                      0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0,
                                      0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0};
    if (!qr64[static_cast<int>(n & 63)]) return false;
    i128 r = isqrt(n);
    return r * r == n;
}

namespace {

const std::vector<u64>& small_primes() {
    static const std::vector<u64> primes = [] {
        constexpr unsigned limit = 1u << 16;
        std::vector<bool> comp(limit, false);
        std::vector<u64> out;
        for (unsigned i = 2; i < limit; ++i) {
            if (comp[i]) continue;
            out.push_back(i);
            for (unsigned j = i * i; j < limit; j += i) comp[j] = true;
        }
        return out;
    }();
    return primes;
}

}  // namespace

Factorization factor(u64 n) {
    if (n == 0) throw std::domain_error("factor(0)");
    Factorization f;
    for (u64 p : small_primes()) {
        if (p * p > n) break;
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1) {
        u64 p = small_primes().back() + 2;
        while (p <= n / p) {
            if (n % p == 0) {
                int e = 0;
                while (n % p == 0) {
                    n /= p;
                    ++e;
                }
                f.emplace_back(p, e);
            }
            p += 2;
        }
        if (n > 1) f.emplace_back(n, 1);
    }
    return f;
}

Factorization factor(const mpz_class& n) {
    mpz_class m = abs(n);
    if (m == 0) throw std::domain_error("factor(0)");
    if (m.fits_ulong_p()) return factor(static_cast<u64>(m.get_ui()));
    Factorization f;
    for (u64 p : small_primes()) {
        if (mpz_divisible_ui_p(m.get_mpz_t(), p) == 0) continue;
        int e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p) != 0) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        f.emplace_back(p, e);
        if (m.fits_ulong_p()) break;
    }
    if (!m.fits_ulong_p()) throw std::runtime_error("factor: cofactor too large");
    for (auto pe : factor(static_cast<u64>(m.get_ui()))) {
        auto it = std::find_if(f.begin(), f.end(), [&](auto& q) { return q.first == pe.first; });
        if (it != f.end())
            it->second += pe.second;
        else
            f.push_back(pe);
    }
    std::sort(f.begin(), f.end());
    return f;
}

bool is_squarefree(i128 n) {
    if (n == 0) return false;
    if (n < 0) n = -n;
    if (n > static_cast<i128>(UINT64_MAX)) return is_squarefree(to_mpz(n));
    for (auto& pe : factor(static_cast<u64>(n)))
        if (pe.second > 1) return false;
    return true;
}

bool is_squarefree(const mpz_class& n) {
    if (n == 0) return false;
    for (auto& pe : factor(n))
        if (pe.second > 1) return false;
    return true;
}

u64 squarefree_part(const mpz_class& n) {
    u64 d = 1;
    for (auto& pe : factor(n))
        if (pe.second % 2) d *= pe.first;
    return d;
}

std::vector<i64> divisors(i64 n) {
    if (n < 0) n = -n;
    std::vector<i64> out;
    if (n == 0) return out;
    out.push_back(1);
    for (auto& pe : factor(static_cast<u64>(n))) {
        std::size_t base = out.size();
        i64 pk = 1;
        for (int e = 1; e <= pe.second; ++e) {
            pk *= static_cast<i64>(pe.first);
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int kronecker(const mpz_class& a, const mpz_class& n) { return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t()); }

int kronecker(i64 a, i64 n) { return kronecker(mpz_class(static_cast<long>(a)), mpz_class(static_cast<long>(n))); }

std::vector<u64> odd_primes(u64 n) {
    std::vector<u64> out;
    for (auto& pe : factor(n))
        if (pe.first != 2) out.push_back(pe.first);
    return out;
}

std::string to_string(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string s;
    while (u) {
        s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
        u /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

mpz_class to_mpz(i128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(static_cast<u64>(u >> 64)));
    mpz_class lo(static_cast<unsigned long>(static_cast<u64>(u)));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

i128 to_i128(const mpz_class& v) {
    if (mpz_sizeinbase(v.get_mpz_t(), 2) > 126) throw Overflow{};
    mpz_class a = abs(v);
    mpz_class hi = a >> 64;
    mpz_class lo = a - (hi << 64);
    i128 r = (static_cast<i128>(hi.get_ui()) << 64) | static_cast<i128>(static_cast<u64>(lo.get_ui()));
    return v < 0 ? -r : r;
}

}  // namespace hl
