#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace hl::hyp {

// Angle codes 0..4 stand for pi/2, pi/3, pi/4, pi/6, 0, i.e. code = 4 cos^2(alpha).
inline constexpr int kAngleCodes = 5;

double angle_of_code(int code);
// a = cos^2(alpha/2) = (2 + sqrt(code)) / 4
double a_of_code(int code);
double a_of_angle(double alpha);

// Smallest root x of sinh(u-x) sinh(v-x) = a sinh(u) sinh(v).
// Throws std::invalid_argument for negative u or v, or a outside [0,1].
double g(double a, double u, double v);
// Limit of g(a, u, v) as v grows.
double g_inf(double a, double u);

double f_h1(double a1, double a2, double theta);
double f_h2(double a1, double a2, double a3, double theta, double t);
double f_h3(double a1, double a2, double a3, double a4, double theta, double z, double w);

// arccosh(x) for x >= 1, else 0
double ach(double x);

double eta0();

// 4 f_h1(a1, a2, eta0) - 2
double r_h1(int code1, int code2);
// 4 max(f_h2(pi/2, pi/2, a3, eta0, 0), f_h2(pi/2, pi/2, a3, eta0, eta0)) - 2
double r_h2(int code3);
// 4 max over the three corner cases of f_h3 at right angles - 2
double r_h3();
// eta0/2 + 2 g_inf(a, eta0/4)
double r_h4(int code);

struct BetaConstants {
    double beta1 = 0, bound1 = 0;
    double beta2 = 0, bound2 = 0;
};

// Residuals whose roots define beta1 and beta2.
double beta1_residual(double beta);
double beta2_residual(double beta);
// Bisection to 1e-12 on [0.5, 1.5] and [1, 2].
BetaConstants solve_beta_constants();

// Pairing (d1, d2) of the unit normals (square -2) of two lines given by
// their cross-ratio angles. For lines on one side of the axis, `theta12`
// is theta(B, C) when the lines do not meet and theta(C, B) when they meet
// at an angle. Lines on opposite sides never meet; passing
// `intersecting` with `same_side == false` throws std::invalid_argument.
double crossratio_pairing(double theta1, double theta2, double theta12, bool same_side, bool intersecting);

// Named constants in a fixed order.
std::vector<std::pair<std::string, double>> bound_constants();

}  // namespace hl::hyp
