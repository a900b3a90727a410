#include <cmath>
#include <stdexcept>

#include "hyperlat/smith.hpp"
#include "narrow_internal.hpp"

namespace hl::detail {

namespace {

using ld = long double;

// Printed bound tables used as loop limits.
constexpr ld kRh1Square[4][4] = {{12.25000000L, 13.37793021L, 14.23012096L, 14.94097150L},
                                 {13.37793021L, 14.57106781L, 15.47225159L, 16.22381115L},
                                 {14.23012096L, 15.47225159L, 16.41025403L, 17.19241152L},
                                 {14.94097150L, 16.22381115L, 17.19241152L, 18.00000000L}};
constexpr ld kRh1Zero[4] = {9.412375826L, 10.37390342L, 11.10113930L, 11.70820393L};
constexpr ld kRh2[4] = {38.68043607L, 41.73090517L, 44.05297726L, 46.0L};
constexpr ld kRh4[4] = {1.191398091L, 1.095286061L, 1.022736500L, 0.962423650L};

// for(x = lo, bound) runs while x <= bound
inline i64 loop_top(ld bound) { return static_cast<i64>(std::floor(bound)); }

inline ld sq(ld x) { return x * x; }

ld ach_bound(i64 x) {
    ld t = std::sqrt(static_cast<ld>(x)) / 8 - 5.0L / 4;
    if (t < 1 + 0.000001L) return 0;
    return std::acosh(t);
}

constexpr i64 kAlphaCap = 22 * 22;

class Builder {
public:
    explicit Builder(int k) : k_(k) {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                num_[i][j] = i == j ? -2 : 0;
                den_[i][j] = 1;
            }
        for (int i = 0; i < k; ++i) {
            dn_[i] = 1;
            dd_[i] = 1;
        }
    }
    void set(int i, int j, i128 v) {
        num_[i - 1][j - 1] = v;
        den_[i - 1][j - 1] = 1;
    }
    void set(int i, int j, i128 n, i128 d) {
        num_[i - 1][j - 1] = n;
        den_[i - 1][j - 1] = d;
    }
    void scale(int j, i128 v) {
        dn_[j - 1] = v;
        dd_[j - 1] = 1;
    }
    void scale(int j, i128 n, i128 d) {
        dn_[j - 1] = n;
        dd_[j - 1] = d;
    }

    // b = a * diag divided by its (positive) content
    void finish(NarrowPartRecord& r) const {
        i128 bn[5][5], bd[5][5];
        i128 l = 1;
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) {
                i128 n = checked_mul(num_[i][j], dn_[j]);
                i128 d = checked_mul(den_[i][j], dd_[j]);
                if (d < 0) {
                    n = -n;
                    d = -d;
                }
                i128 g = gcd(n, d);
                if (g > 1) {
                    n /= g;
                    d /= g;
                }
                bn[i][j] = n;
                bd[i][j] = d;
                if (d != 1) l = checked_mul(l / gcd(l, d), d);
            }
        i128 c = 0;
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) {
                bn[i][j] = checked_mul(bn[i][j], l / bd[i][j]);
                c = gcd(c, bn[i][j]);
            }
        if (c == 0) throw std::logic_error("narrow part: zero matrix");
        r.k = k_;
        for (int i = 0; i < k_; ++i)
            for (int j = 0; j < k_; ++j) r.b[i * k_ + j] = bn[i][j] / c;
    }

private:
    int k_;
    i128 num_[5][5], den_[5][5];
    i128 dn_[5], dd_[5];
};

template <class F>
void cartan3(NarrowType t, i64 al12, i64 al23, i64 al13, F& f) {
    // divisor loops a12 | al12, a23 | al23, a13 | al13 with the cycle condition
    const std::vector<i64> one{0};
    auto d12 = al12 == 0 ? one : divisors(al12);
    auto d23 = divisors(al23);
    auto d13 = divisors(al13);
    for (i64 a12 : d12)
        for (i64 a23 : d23)
            for (i64 a13 : d13) {
                i64 a21 = al12 == 0 ? 0 : al12 / a12;
                i64 a32 = al23 / a23, a31 = al13 / a13;
                if (a12 * a23 * a31 != a21 * a13 * a32) continue;
                Builder m(3);
                m.set(1, 2, a12);
                m.set(2, 1, a21);
                m.set(2, 3, a23);
                m.set(3, 2, a32);
                m.set(1, 3, a13);
                m.set(3, 1, a31);
                m.scale(1, a13 * a32);
                m.scale(2, a23 * a31);
                m.scale(3, a31 * a32);
                NarrowPartRecord r;
                r.type = t;
                r.alpha12 = static_cast<int>(al12);
                r.alpha23 = static_cast<int>(al23);
                m.finish(r);
                f(r);
            }
}

bool triangle_ok(i64 al12, i64 al23, i64 al13) {
    i64 p = al12 * al23 * al13;
    if (al23 == 0 || !is_square(p)) return false;
    return -8 + 2 * static_cast<i64>(isqrt(static_cast<u64>(p))) + 2 * al12 + 2 * al13 + 2 * al23 > 0;
}

// Shared 4x4 shape of the AII1, BII1 and BIII programs: alpha13, alpha14,
// alpha24, alpha34 nonzero, with a41 = s / (a13 a34).
template <class F>
void chain4(NarrowType t, i64 al13, i64 al14, i64 al24, i64 al34, i64 s, F& f) {
    for (i64 a34 : divisors(al34))
        for (i64 a13 : divisors(al13))
            for (i64 a24 : divisors(al24)) {
                if (s % (a13 * a34) != 0) continue;
                i64 a41 = s / (a13 * a34);
                i64 a14 = 0;
                if (a41 != 0) {
                    if (al14 % a41 != 0) continue;
                    a14 = al14 / a41;
                }
                i64 a43 = al34 / a34, a42 = al24 / a24, a31 = al13 / a13;
                Builder m(4);
                m.set(3, 4, a34);
                m.set(4, 3, a43);
                m.set(2, 4, a24);
                m.set(4, 2, a42);
                m.set(1, 3, a13);
                m.set(3, 1, a31);
                m.set(4, 1, a41);
                m.set(1, 4, a14);
                m.scale(1, static_cast<i128>(a13) * a34 * a42);
                m.scale(2, static_cast<i128>(a31) * a43 * a24);
                m.scale(3, static_cast<i128>(a31) * a34 * a42);
                m.scale(4, static_cast<i128>(a31) * a43 * a42);
                NarrowPartRecord r;
                r.type = t;
                r.alpha34 = static_cast<int>(al34);
                m.finish(r);
                f(r);
            }
}

template <class F>
void run_ai1(const Unit& u, F& f) {
    i64 al12 = u.x, al23 = u.y;
    i64 top = loop_top(sq(kRh1Square[al12 - 1][al23 - 1] + 0.1L));
    for (i64 al13 = 5; al13 <= top; ++al13)
        if (triangle_ok(al12, al23, al13)) cartan3(NarrowType::AI1, al12, al23, al13, f);
}

template <class F>
void run_ai0(const Unit& u, F& f) {
    i64 al23 = u.x;
    i64 top = loop_top(sq(kRh1Zero[al23 - 1] + 0.1L));
    for (i64 al13 = 5; al13 <= top; ++al13)
        if (triangle_ok(0, al23, al13)) cartan3(NarrowType::AI0, 0, al23, al13, f);
}

template <class F>
void run_aii1(const Unit& u, F& f) {
    i64 al34 = u.x, al14 = u.y;
    for (i64 al13 = 5; al13 <= loop_top(sq(7 + 0.1L)); ++al13) {
        i64 uu = al13 * al34 * al14;
        if (!is_square(uu)) continue;
        i64 s = static_cast<i64>(isqrt(static_cast<u64>(uu)));
        i64 num = 4 * (al14 + al34 + s), den = al13 - 4;
        if (num % den != 0) continue;
        i64 al24 = 4 + num / den;
        if (static_cast<ld>(al24) <= sq(kRh1Zero[al34 - 1] - 0.1L)) continue;
        chain4(NarrowType::AII1, al13, al14, al24, al34, s, f);
    }
}

template <class F>
void run_aii0(const Unit& u, F& f) {
    i64 al14 = u.x;
    for (i64 aa : divisors(4 * al14)) {
        if (aa * aa > 4 * al14) continue;
        i64 al13 = 4 + aa;
        i64 al24 = 4 * al14 / aa + 4;
        if (static_cast<ld>(al13) > sq(7 + 0.1L)) continue;
        for (i64 a13 : divisors(al13))
            for (i64 a24 : divisors(al24))
                for (i64 a14 : divisors(al14)) {
                    i64 a31 = al13 / a13, a41 = al14 / a14, a42 = al24 / a24;
                    Builder m(4);
                    m.set(1, 3, a13);
                    m.set(3, 1, a31);
                    m.set(1, 4, a14);
                    m.set(4, 1, a41);
                    m.set(2, 4, a24);
                    m.set(4, 2, a42);
                    m.scale(1, static_cast<i128>(a13) * a14 * a42);
                    m.scale(2, static_cast<i128>(a13) * a41 * a24);
                    m.scale(3, static_cast<i128>(a31) * a14 * a42);
                    m.scale(4, static_cast<i128>(a13) * a42 * a41);
                    NarrowPartRecord r;
                    r.type = NarrowType::AII0;
                    m.finish(r);
                    f(r);
                }
    }
}

template <class F>
void run_aiii(const Unit& u, F& f) {
    const i64 al15 = u.x;
    const ld lower = sq(31.15549442L - 0.1L);
    const i64 top = loop_top(sq(7 + 0.1L));
    for (i64 al13 = 5; al13 <= top; ++al13)
        for (i64 al35 = al13; al35 <= top; ++al35) {
            i64 q = al13 * al35 * al15;
            if (!is_square(q)) continue;
            i64 s = static_cast<i64>(isqrt(static_cast<u64>(q)));
            i64 dsum = (al13 + al35 + al15 - 4 + s) * 4;
            if (dsum % (al35 - 4) != 0) continue;
            i64 al14 = dsum / (al35 - 4);
            if (static_cast<ld>(al14) <= lower) continue;
            if (dsum % (al13 - 4) != 0) continue;
            i64 al25 = dsum / (al13 - 4);
            if (static_cast<ld>(al25) <= lower) continue;
            i64 n24 = (al13 * al35 + 4 * al15 + 4 * s) * 4, d24 = (al35 - 4) * (al13 - 4);
            if (n24 % d24 != 0) continue;
            i64 al24 = n24 / d24;
            i128 q1 = static_cast<i128>(al13) * al35 * al25 * al24 * al14;
            if (!is_square(q1)) continue;
            const i128 s1 = isqrt(q1);
            for (i64 a13 : divisors(al13))
                for (i64 a35 : divisors(al35)) {
                    // a51 = s / (a13 a35) as a reduced fraction
                    i128 n51 = s, d51 = static_cast<i128>(a13) * a35;
                    i128 g = gcd(n51, d51);
                    n51 /= g;
                    d51 /= g;
                    if (n51 == 0) continue;
                    if ((static_cast<i128>(al15) * d51) % n51 != 0) continue;
                    i128 a15 = static_cast<i128>(al15) * d51 / n51;
                    for (i64 a14 : divisors(al14))
                        for (i64 a24 : divisors(al24)) {
                            i128 n52 = checked_mul(s1, a14);
                            i128 d52 = static_cast<i128>(a13) * a35 * a24 * al14;
                            i128 g2 = gcd(n52, d52);
                            n52 /= g2;
                            d52 /= g2;
                            if ((static_cast<i128>(al25) * d52) % n52 != 0) continue;
                            i128 a25 = static_cast<i128>(al25) * d52 / n52;
                            i128 a31 = al13 / a13, a41 = al14 / a14, a42 = al24 / a24, a53 = al35 / a35;
                            Builder m(5);
                            m.set(1, 3, a13);
                            m.set(3, 1, a31);
                            m.set(1, 4, a14);
                            m.set(4, 1, a41);
                            m.set(1, 5, a15);
                            m.set(5, 1, n51, d51);
                            m.set(2, 4, a24);
                            m.set(4, 2, a42);
                            m.set(2, 5, a25);
                            m.set(5, 2, n52, d52);
                            m.set(3, 5, a35);
                            m.set(5, 3, a53);
                            m.scale(1, checked_mul(checked_mul(a14, a13), checked_mul(a42, a25)));
                            m.scale(2, checked_mul(checked_mul(a41, a13), checked_mul(a24, a25)));
                            m.scale(3, checked_mul(checked_mul(a14, a31), checked_mul(a42, a25)));
                            m.scale(4, checked_mul(checked_mul(a41, a13), checked_mul(a42, a25)));
                            m.scale(5, checked_mul(checked_mul(a41, a13), checked_mul(a24, n52)), d52);
                            NarrowPartRecord r;
                            r.type = NarrowType::AIII;
                            m.finish(r);
                            f(r);
                        }
                }
        }
}

template <class F>
void run_bi(const Unit& u, F& f) {
    i64 al12 = u.x, al23 = u.y;
    ld ach2 = ach_bound(al23);
    for (i64 al13 = 5; al13 <= al23; ++al13) {
        ld ach1 = ach_bound(al13);
        if (ach1 + ach2 > kRh4[al12 - 1] + 0.1L) continue;
        if (triangle_ok(al12, al23, al13)) cartan3(NarrowType::BI, al12, al23, al13, f);
    }
}

ld bii_top(i64 x) {
    ld v = sq(8 * (std::cosh(1.429914377L - ach_bound(x)) + 5.0L / 4)) + 0.1L;
    return std::min(v, static_cast<ld>(kAlphaCap));
}

template <class F>
void run_bii1(const Unit& u, F& f) {
    const i64 al24 = u.x;
    const i64 top = loop_top(bii_top(al24));
    for (i64 al14 = 5; al14 <= top; ++al14)
        for (i64 al34 = al14; al34 <= top; ++al34) {
            i64 p = al14 * al34;
            i128 disc = static_cast<i128>(p) * (p + (al24 - 4) * (al14 + al24 + al34 - 4));
            if (!is_square(disc)) continue;
            i128 num = 2 * static_cast<i128>(p) + 2 * isqrt(disc);
            if (num % (al24 - 4) != 0) continue;
            i128 uu = num / (al24 - 4);
            if ((uu * uu) % p != 0) continue;
            i64 al13 = static_cast<i64>(uu * uu / p);
            chain4(NarrowType::BII1, al13, al14, al24, al34, static_cast<i64>(uu), f);
        }
}

template <class F>
void run_bii2(const Unit& u, F& f) {
    const i64 al23 = u.x;
    const i64 top = loop_top(bii_top(al23));
    for (i64 al13 = 5; al13 <= top; ++al13)
        for (i64 al24 = al13; al24 <= top; ++al24) {
            i128 p = static_cast<i128>(al13) * al23 * al24;
            i128 disc = p * (p - static_cast<i128>(al23 - 4) * ((al13 - 4) * (al24 - 4) - 4 * al23));
            if (!is_square(disc)) continue;
            i128 sd = isqrt(disc);
            for (int tau = -1; tau <= 1; tau += 2) {
                i128 num = p + tau * sd;
                if (num % (al23 - 4) != 0) continue;
                i128 uu = num / (al23 - 4);
                if ((uu * uu) % p != 0) continue;
                i128 al14 = uu * uu / p;
                if (al14 <= 4) continue;
                for (i64 a13 : divisors(al13))
                    for (i64 a32 : divisors(al23))
                        for (i64 a24 : divisors(al24)) {
                            i128 den = static_cast<i128>(a13) * a32 * a24;
                            if (uu % den != 0) continue;
                            i128 a41 = uu / den;
                            if (al14 % a41 != 0) continue;
                            i128 a14 = al14 / a41;
                            i128 a31 = al13 / a13, a23 = al23 / a32, a42 = al24 / a24;
                            Builder m(4);
                            m.set(1, 3, a13);
                            m.set(3, 1, a31);
                            m.set(3, 2, a32);
                            m.set(2, 3, a23);
                            m.set(2, 4, a24);
                            m.set(4, 2, a42);
                            m.set(4, 1, a41);
                            m.set(1, 4, a14);
                            m.scale(1, checked_mul(checked_mul(a13, a14), a32));
                            m.scale(2, checked_mul(checked_mul(a31, a14), a23));
                            m.scale(3, checked_mul(checked_mul(a31, a14), a32));
                            m.scale(4, checked_mul(checked_mul(a13, a41), a32));
                            NarrowPartRecord r;
                            r.type = NarrowType::BII2;
                            m.finish(r);
                            f(r);
                        }
            }
        }
}

template <class F>
void run_biii(const Unit& u, F& f) {
    const i64 al14 = u.x;
    const ld cap = sq(31.70820393L) + 0.1L;
    ld v = sq(8 * (std::cosh(1.9248473002L - ach_bound(al14)) + 5.0L / 4)) + 0.1L;
    const i64 top = loop_top(std::min(v, cap));
    for (i64 al34 = al14; al34 <= top; ++al34)
        for (i64 al13 = 5; al13 <= loop_top(sq(7 + 0.1L)); ++al13) {
            i64 uu = al13 * al34 * al14;
            if (!is_square(uu)) continue;
            i64 s = static_cast<i64>(isqrt(static_cast<u64>(uu)));
            i64 num = 4 * (al14 + al34 + s), den = al13 - 4;
            if (num % den != 0) continue;
            i64 al24 = 4 + num / den;
            chain4(NarrowType::BIII, al13, al14, al24, al34, s, f);
        }
}

}  // namespace

std::vector<Unit> outer_units(NarrowType t) {
    std::vector<Unit> out;
    switch (t) {
        case NarrowType::AI1:
            for (int a = 1; a <= 4; ++a)
                for (int b = a; b <= 4; ++b) out.push_back({a, b});
            break;
        case NarrowType::AI0:
            for (int a = 1; a <= 4; ++a) out.push_back({a, 0});
            break;
        case NarrowType::AII1:
            for (int a = 1; a <= 4; ++a) {
                i64 top = loop_top(sq(kRh2[a - 1] + 0.1L));
                for (i64 b = 5; b <= top; ++b) out.push_back({a, b});
            }
            break;
        case NarrowType::AII0: {
            i64 top = loop_top(sq(31.15549442L + 0.1L));
            for (i64 a = 5; a <= top; ++a) out.push_back({a, 0});
            break;
        }
        case NarrowType::AIII: {
            i64 top = loop_top(sq(68.1815011826L + 0.1L));
            for (i64 a = 5; a <= top; ++a) out.push_back({a, 0});
            break;
        }
        case NarrowType::BI:
            for (int a = 1; a <= 4; ++a)
                for (i64 b = 5; b <= kAlphaCap; ++b) out.push_back({a, b});
            break;
        case NarrowType::BII1:
        case NarrowType::BII2:
            for (i64 a = 5; a <= kAlphaCap; ++a) out.push_back({a, 0});
            break;
        case NarrowType::BIII: {
            i64 top = loop_top(sq(31.70820393L) + 0.1L);
            for (i64 a = 5; a <= top; ++a) out.push_back({a, 0});
            break;
        }
    }
    return out;
}

void run_unit(NarrowType t, const Unit& u, const std::function<void(NarrowPartRecord&)>& sink) {
    auto f = [&](NarrowPartRecord& r) { sink(r); };
    switch (t) {
        case NarrowType::AI1: run_ai1(u, f); break;
        case NarrowType::AI0: run_ai0(u, f); break;
        case NarrowType::AII1: run_aii1(u, f); break;
        case NarrowType::AII0: run_aii0(u, f); break;
        case NarrowType::AIII: run_aiii(u, f); break;
        case NarrowType::BI: run_bi(u, f); break;
        case NarrowType::BII1: run_bii1(u, f); break;
        case NarrowType::BII2: run_bii2(u, f); break;
        case NarrowType::BIII: run_biii(u, f); break;
    }
}

}  // namespace hl::detail
