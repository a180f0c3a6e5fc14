#include "helmball/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace helmball {

namespace {

constexpr double kSeriesRangeMin = 12.0;
constexpr double kTinyArgument = 1e-6;

void require_nonnegative(double t, const char* who)
{
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::domain_error(std::string(who) + ": argument must be finite and >= 0");
}

bool in_series_range(double nu, double t) { return t <= std::max(kSeriesRangeMin, 2.0 * nu); }

// sum_k (sign * t^2/4)^k / (k! (nu+1)_k); equals a_{2nu}(t) for sign = -1
// and b_{2nu}(t) for sign = +1.
double normalized_series(double nu, double t, double sign)
{
    const double q = sign * 0.25 * t * t;
    double term = 1.0;
    double sum = 1.0;
    double abs_sum = 1.0;
    for (int k = 1; k < 2000; ++k) {
        term *= q / (k * (nu + k));
        sum += term;
        abs_sum += std::abs(term);
        if (k > 0.5 * t && std::abs(term) <= 1e-17 * abs_sum)
            break;
    }
    return sum;
}

// J_nu(t) by downward recurrence, normalized with
//   (t/2)^nu = sum_k (nu + 2k) Gamma(nu + k) / k! J_{nu+2k}(t).
double bessel_j_miller(double nu, double t)
{
    const int top = static_cast<int>(1.3 * t + 4.0 * std::cbrt(t) + 40.0);
    double f_next = 0.0;   // order nu + k + 1
    double f = 1e-300;     // order nu + k
    double f_at_nu = 0.0;
    double norm = 0.0;

    // g[j] = Gamma(nu + j) / j! for j >= 1.
    std::vector<double> g(top / 2 + 1);
    const double gamma_nu1 = gamma_fn(nu + 1.0);
    if (g.size() > 1)
        g[1] = gamma_nu1;
    for (std::size_t j = 2; j < g.size(); ++j)
        g[j] = g[j - 1] * (nu + static_cast<double>(j) - 1.0) / static_cast<double>(j);

    for (int k = top; k >= 0; --k) {
        if (k % 2 == 0) {
            const int j = k / 2;
            // nu * Gamma(nu) = Gamma(nu + 1) at j = 0, which also covers nu = 0.
            const double w = (j == 0) ? gamma_nu1 : (nu + 2.0 * j) * g[j];
            norm += w * f;
        }
        if (k == 0) {
            f_at_nu = f;
            break;
        }
        const double f_prev = 2.0 * (nu + k) / t * f - f_next;
        f_next = f;
        f = f_prev;
        if (std::abs(f) > 1e250) {
            f *= 1e-250;
            f_next *= 1e-250;
            norm *= 1e-250;
        }
    }
    return f_at_nu * std::pow(0.5 * t, nu) / norm;
}

}  // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu)
{
    if (!std::isfinite(nu) || nu < 0.0)
        throw std::domain_error("BesselOrder: order must be finite and >= 0");
}

double gamma_fn(double x)
{
    if (!(x > 0.0) || !std::isfinite(x))
        throw std::domain_error("gamma_fn: argument must be finite and > 0");
    const double twice = 2.0 * x;
    if (twice == std::floor(twice) && twice < 400.0) {
        const int n = static_cast<int>(twice);
        // Gamma(n/2) from Gamma(1) or Gamma(1/2), stepping by one.
        double value = (n % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
        for (double y = (n % 2 == 0) ? 1.0 : 0.5; y + 0.5 < x; y += 1.0)
            value *= y;
        return value;
    }
    return std::tgamma(x);
}

double bessel_j(BesselOrder order, double t)
{
    require_nonnegative(t, "bessel_j");
    const double nu = order.value();
    if (t == 0.0)
        return nu == 0.0 ? 1.0 : 0.0;
    if (in_series_range(nu, t))
        return std::pow(0.5 * t, nu) / gamma_fn(nu + 1.0) * normalized_series(nu, t, -1.0);
    return bessel_j_miller(nu, t);
}

double bessel_i(BesselOrder order, double t)
{
    require_nonnegative(t, "bessel_i");
    if (t > kBesselIMaxArgument)
        throw std::domain_error("bessel_i: argument above overflow bound");
    const double nu = order.value();
    if (t == 0.0)
        return nu == 0.0 ? 1.0 : 0.0;
    return std::pow(0.5 * t, nu) / gamma_fn(nu + 1.0) * normalized_series(nu, t, 1.0);
}

double a_norm(int m, double t)
{
    require_nonnegative(t, "a_norm");
    if (m < 0)
        throw std::domain_error("a_norm: m must be >= 0");
    if (t == 0.0)
        return 1.0;
    const double nu = 0.5 * m;
    if (t < kTinyArgument)
        return 1.0 - t * t / (2.0 * (m + 2));
    if (in_series_range(nu, t))
        return normalized_series(nu, t, -1.0);
    return gamma_fn(nu + 1.0) * bessel_j_miller(nu, t) / std::pow(0.5 * t, nu);
}

double b_norm(int m, double t)
{
    require_nonnegative(t, "b_norm");
    if (m < 0)
        throw std::domain_error("b_norm: m must be >= 0");
    if (t == 0.0)
        return 1.0;
    if (t < kTinyArgument)
        return 1.0 + t * t / (2.0 * (m + 2));
    const double value = normalized_series(0.5 * m, t, 1.0);
    if (!std::isfinite(value))
        throw std::domain_error("b_norm: argument too large, result overflows");
    return value;
}

namespace {

double refine_zero(double nu, double lo, double hi)
{
    const BesselOrder order(nu);
    double f_lo = bessel_j(order, lo);
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = bessel_j(order, x);
        if (f == 0.0)
            return x;
        if ((f < 0.0) == (f_lo < 0.0)) {
            lo = x;
            f_lo = f;
        } else {
            hi = x;
        }
        const double df = nu / x * f - bessel_j(BesselOrder(nu + 1.0), x);
        double next = x - f / df;
        // Newton step only while it stays inside the current bracket.
        if (!(df != 0.0) || !(next > lo && next < hi))
            next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 1e-15 * x || hi - lo <= 4e-16 * x)
            return next;
        x = next;
    }
    return x;
}

// Zeros of J_nu are at least ~3.1 apart for nu >= 0, so sign changes on a
// 0.05 grid identify each zero exactly once.
int zeros_below(double nu, double t)
{
    constexpr double step = 0.05;
    const BesselOrder order(nu);
    int count = 0;
    double x = step;
    double f = bessel_j(order, x);
    while (x + step < t) {
        const double x_next = x + step;
        const double f_next = bessel_j(order, x_next);
        if ((f < 0.0) != (f_next < 0.0))
            ++count;
        x = x_next;
        f = f_next;
    }
    return count;
}

// Finds a sign change scanning from `start` in `direction` (+1 or -1).
double next_zero(double nu, double start, int direction)
{
    constexpr double step = 0.25;
    const BesselOrder order(nu);
    double a = start;
    double fa = bessel_j(order, a);
    for (int it = 0; it < 1000; ++it) {
        const double b = a + direction * step;
        if (b <= 0.0)
            break;
        const double fb = bessel_j(order, b);
        if ((fa < 0.0) != (fb < 0.0))
            return direction > 0 ? refine_zero(nu, a, b) : refine_zero(nu, b, a);
        a = b;
        fa = fb;
    }
    throw std::runtime_error("bessel_zero: failed to bracket a zero");
}

}  // namespace

double bessel_zero(BesselOrder order, int n)
{
    if (n < 1)
        throw std::domain_error("bessel_zero: index must be >= 1");
    const double nu = order.value();
    const double guess = (n + 0.5 * nu - 0.25) * std::numbers::pi;

    double root = 0.0;
    double lo = std::max(guess - 1.5, 0.05);
    double hi = guess + 1.5;
    const double f_lo = bessel_j(order, lo);
    const double f_hi = bessel_j(order, hi);
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
        root = refine_zero(nu, lo, hi);
    } else {
        // Widen outward one small step at a time so the bracket holds one zero.
        constexpr double step = 0.25;
        double f_l = f_lo;
        double f_h = f_hi;
        bool found = false;
        for (int it = 0; it < 400 && !found; ++it) {
            const double h2 = hi + step;
            const double f_h2 = bessel_j(order, h2);
            if ((f_h < 0.0) != (f_h2 < 0.0)) {
                root = refine_zero(nu, hi, h2);
                found = true;
                break;
            }
            hi = h2;
            f_h = f_h2;
            if (lo - step > 0.05) {
                const double l2 = lo - step;
                const double f_l2 = bessel_j(order, l2);
                if ((f_l < 0.0) != (f_l2 < 0.0)) {
                    root = refine_zero(nu, l2, lo);
                    found = true;
                    break;
                }
                lo = l2;
                f_l = f_l2;
            }
        }
        if (!found)
            throw std::runtime_error("bessel_zero: failed to bracket a zero");
    }

    // The asymptotic guess can land on a neighbouring zero for small n and
    // large nu; step to the requested index.
    int index = zeros_below(nu, root - 0.5) + 1;
    while (index < n) {
        root = next_zero(nu, root + 0.5, +1);
        ++index;
    }
    while (index > n) {
        root = next_zero(nu, root - 0.5, -1);
        --index;
    }
    return root;
}

}  // namespace helmball
