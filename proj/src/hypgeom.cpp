#include "hyperlat/hypgeom.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hl::hyp {

namespace {

using ld = long double;

const ld kPi = 3.141592653589793238462643383279502884L;

void check_code(int c) {
    if (c < 0 || c >= kAngleCodes) throw std::invalid_argument("angle code must be in 0..4");
}

ld g_ld(ld a, ld u, ld v) {
    ld ch_sum = std::cosh(u + v), ch_diff = std::cosh(u - v);
    ld q = a * ch_sum + (1 - a) * ch_diff;
    ld root = std::sqrt(std::max<ld>(q * q - 1, 0));
    ld th = (std::sinh(u + v) - root) / ((a + 1) * ch_sum + (1 - a) * ch_diff);
    ld x = std::atanh(th);
    return std::clamp<ld>(x, 0, std::min(u, v));
}

template <class F>
double bisect(F f, double lo, double hi) {
    double flo = f(lo);
    if ((flo > 0) == (f(hi) > 0)) throw std::logic_error("root is not bracketed");
    for (int i = 0; i < 200 && hi - lo > 1e-15; ++i) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double angle_of_code(int code) {
    check_code(code);
    static const double angles[] = {double(kPi / 2), double(kPi / 3), double(kPi / 4), double(kPi / 6), 0.0};
    return angles[code];
}

double a_of_code(int code) {
    check_code(code);
    return double((2 + std::sqrt(ld(code))) / 4);
}

double a_of_angle(double alpha) { return (1 + std::cos(alpha)) / 2; }

double g(double a, double u, double v) {
    if (u < 0 || v < 0) throw std::invalid_argument("g: u and v must be non-negative");
    if (a < 0 || a > 1) throw std::invalid_argument("g: a must lie in [0, 1]");
    return double(g_ld(a, u, v));
}

double g_inf(double a, double u) {
    if (u < 0) throw std::invalid_argument("g_inf: u must be non-negative");
    return double(ld(u) - std::asinh(ld(a) * std::sinh(ld(u))));
}

double f_h1(double a1, double a2, double theta) {
    if (!(theta > 0)) throw std::invalid_argument("f_h1: theta must be positive");
    ld th = theta;
    ld q = th / 4;
    ld s = std::sinh(th / 2 - g_ld(a1, q, q) - g_ld(a2, q, q)) / std::sinh(q);
    return double(s * s);
}

double f_h2(double a1, double a2, double a3, double theta, double t) {
    if (!(theta > 0) || t < 0 || t > theta) throw std::invalid_argument("f_h2: need theta > 0 and 0 <= t <= theta");
    ld th = theta, tt = t;
    ld gs = g_ld(a1, (th + tt) / 4, (th - tt) / 4) + g_ld(a2, (th - tt) / 4, (th + tt) / 4) +
            g_ld(a3, (th + tt) / 4, th / 4);
    ld num = std::sinh(3 * th / 4 + tt / 4 - gs) * std::sinh(3 * th / 4 - gs);
    return double(num / (std::sinh((th + tt) / 4) * std::sinh(th / 4)));
}

double f_h3(double a1, double a2, double a3, double a4, double theta, double z, double w) {
    if (!(theta > 0) || w < 0 || w > z || z > theta)
        throw std::invalid_argument("f_h3: need theta > 0 and 0 <= w <= z <= theta");
    ld th = theta, zz = z, ww = w;
    ld gs = g_ld(a1, (th + zz) / 4, (th - zz) / 4) + g_ld(a2, (th - zz) / 4, (th + zz) / 4) +
            g_ld(a3, (th + zz) / 4, (th - ww) / 4) + g_ld(a4, (th - ww) / 4, (th + ww) / 4);
    ld num = std::sinh(th + (zz - ww) / 4 - gs) * std::sinh(th - gs);
    return double(num / (std::sinh((th + zz) / 4) * std::sinh((th + ww) / 4)));
}

double ach(double x) { return x < 1 ? 0.0 : std::acosh(x); }

double eta0() { return double(2 * std::acosh(1.5L)); }

double r_h1(int code1, int code2) { return 4 * f_h1(a_of_code(code1), a_of_code(code2), eta0()) - 2; }

double r_h2(int code3) {
    double h = 0.5, a3 = a_of_code(code3), e = eta0();
    return 4 * std::max(f_h2(h, h, a3, e, 0), f_h2(h, h, a3, e, e)) - 2;
}

double r_h3() {
    double h = 0.5, e = eta0();
    return 4 * std::max({f_h3(h, h, h, h, e, 0, 0), f_h3(h, h, h, h, e, e, 0), f_h3(h, h, h, h, e, e, e)}) - 2;
}

double r_h4(int code) {
    double e = eta0();
    return e / 2 + 2 * g_inf(a_of_code(code), e / 4);
}

double beta1_residual(double beta) {
    ld c = std::cosh(ld(beta) / 2);
    return double(32 * (c * c * c + c * c) - 2 - (8 * c + 10 + 8 / (c - 1)));
}

namespace {

ld beta2_rhs(ld b) {
    ld c = std::cosh(b / 2);
    return (c + std::cosh(b - 2 * g_ld(0.5L, b / 4, b / 4))) / (c - 1);
}

}  // namespace

double beta2_residual(double beta) {
    double h = 0.5;
    double lhs = std::max({f_h3(h, h, h, h, beta, 0, 0), f_h3(h, h, h, h, beta, beta, 0), f_h3(h, h, h, h, beta, beta, beta)});
    return double(lhs - beta2_rhs(beta));
}

BetaConstants solve_beta_constants() {
    BetaConstants b;
    b.beta1 = bisect(beta1_residual, 0.5, 1.5);
    ld c = std::cosh(ld(b.beta1) / 2);
    b.bound1 = double(32 * (c * c * c + c * c) - 2);
    b.beta2 = bisect(beta2_residual, 1.0, 2.0);
    b.bound2 = double(4 * beta2_rhs(b.beta2) - 2);
    return b;
}

double crossratio_pairing(double theta1, double theta2, double theta12, bool same_side, bool intersecting) {
    if (!(theta1 > 0) || !(theta2 > 0)) throw std::invalid_argument("crossratio: angles must be positive");
    if (!same_side && intersecting) throw std::invalid_argument("crossratio: lines on opposite sides do not meet");
    ld t1 = theta1, t2 = theta2, t = theta12;
    ld den = std::sinh(t1 / 2) * std::sinh(t2 / 2);
    if (!same_side) return double(4 * std::cosh((t1 + t) / 2) * std::cosh((t2 - t) / 2) / den - 2);
    if (intersecting) return double(4 * std::sinh((t1 - t) / 2) * std::sinh((t2 - t) / 2) / den - 2);
    return double(4 * std::sinh((t1 + t) / 2) * std::sinh((t2 + t) / 2) / den - 2);
}

std::vector<std::pair<std::string, double>> bound_constants() {
    static const char* names[] = {"pi/2", "pi/3", "pi/4", "pi/6", "0"};
    std::vector<std::pair<std::string, double>> out;
    out.emplace_back("eta0", eta0());
    for (int i = 0; i < kAngleCodes; ++i)
        for (int j = i; j < kAngleCodes; ++j)
            out.emplace_back(std::string("r_h1(") + names[i] + "," + names[j] + ")", r_h1(i, j));
    for (int i = 0; i < kAngleCodes; ++i) out.emplace_back(std::string("r_h2(") + names[i] + ")", r_h2(i));
    out.emplace_back("r_h3", r_h3());
    for (int i = 0; i < kAngleCodes; ++i) out.emplace_back(std::string("r_h4(") + names[i] + ")", r_h4(i));
    BetaConstants b = solve_beta_constants();
    out.emplace_back("beta1", b.beta1);
    out.emplace_back("bound1", b.bound1);
    out.emplace_back("beta2", b.beta2);
    out.emplace_back("bound2", b.bound2);
    return out;
}

}  // namespace hl::hyp
