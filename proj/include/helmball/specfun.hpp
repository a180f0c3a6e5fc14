#pragma once

// Real-order Bessel functions J_nu and I_nu, the normalized mean-value
// kernels a_m and b_m, and positive zeros of J_nu.
//
// Scope: 0 <= nu <= 6, 0 <= t <= 50 at full accuracy. I_nu is usable up
// to t = 300 before overflow becomes a concern.

#include <stdexcept>

namespace helmball {

/// Order of a Bessel function. Always finite and non-negative.
class BesselOrder {
public:
    explicit BesselOrder(double nu);

    static BesselOrder half(int twice_nu) { return BesselOrder(0.5 * twice_nu); }

    double value() const { return nu_; }

private:
    double nu_;
};

/// Gamma function. Half-integer arguments are computed exactly by
/// recurrence from Gamma(1/2) = sqrt(pi) and Gamma(1) = 1.
double gamma_fn(double x);

double bessel_j(BesselOrder order, double t);
double bessel_i(BesselOrder order, double t);

/// a_m(t) = Gamma(m/2 + 1) J_{m/2}(t) / (t/2)^{m/2}, with a_m(0) = 1.
double a_norm(int m, double t);

/// b_m(t) = Gamma(m/2 + 1) I_{m/2}(t) / (t/2)^{m/2}, with b_m(0) = 1.
double b_norm(int m, double t);

/// n-th positive zero j_{nu,n} of J_nu.
double bessel_zero(BesselOrder order, int n);

/// Largest argument accepted by bessel_i / b_norm.
inline constexpr double kBesselIMaxArgument = 300.0;

}  // namespace helmball
