#include "helmball/quadrature.hpp"

#include "helmball/gauss_legendre.hpp"
#include "sampling.hpp"
#include "summation.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace helmball {

namespace {

void check_radius(double r, const char* who)
{
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::domain_error(std::string(who) + ": radius must be finite and > 0");
}

// Weighted mean over a product rule on the ball; weights are renormalised so
// that f = 1 reproduces 1 exactly.
double spectral_ball_mean(const Integrand& f, const Point& center, double r, int radial, int angular)
{
    const int m = center.dimension();
    const GaussRule rad = gauss_legendre(radial, 0.0, 1.0);
    detail::NeumaierSum sum;
    detail::NeumaierSum weight_sum;
    std::array<double, kMaxDimension> y{};
    const std::span<const double> ys(y.data(), m);

    if (m == 2) {
        for (int i = 0; i < radial; ++i) {
            const double s = rad.nodes[i];
            const double w_r = 2.0 * s * rad.weights[i];
            for (int k = 0; k < angular; ++k) {
                const double th = 2.0 * std::numbers::pi * (k + 0.5) / angular;
                y[0] = center[0] + r * s * std::cos(th);
                y[1] = center[1] + r * s * std::sin(th);
                const double w = w_r / angular;
                sum.add(w * f(ys));
                weight_sum.add(w);
            }
        }
    } else {
        const GaussRule polar = gauss_legendre(angular);
        const int azimuthal = angular;
        for (int i = 0; i < radial; ++i) {
            const double s = rad.nodes[i];
            const double w_r = 3.0 * s * s * rad.weights[i];
            for (int j = 0; j < angular; ++j) {
                const double c = polar.nodes[j];
                const double sn = std::sqrt(1.0 - c * c);
                const double w_rp = w_r * 0.5 * polar.weights[j];
                for (int k = 0; k < azimuthal; ++k) {
                    const double ph = 2.0 * std::numbers::pi * (k + 0.5) / azimuthal;
                    y[0] = center[0] + r * s * sn * std::cos(ph);
                    y[1] = center[1] + r * s * sn * std::sin(ph);
                    y[2] = center[2] + r * s * c;
                    const double w = w_rp / azimuthal;
                    sum.add(w * f(ys));
                    weight_sum.add(w);
                }
            }
        }
    }
    return sum.value() / weight_sum.value();
}

double tensor_box_mean(const Integrand& f, const Point& low, const Point& high, int n)
{
    const int m = low.dimension();
    std::vector<GaussRule> rules;
    rules.reserve(m);
    for (int d = 0; d < m; ++d)
        rules.push_back(gauss_legendre(n, 0.0, 1.0));
    std::vector<int> idx(m, 0);
    std::array<double, kMaxDimension> y{};
    const std::span<const double> ys(y.data(), m);
    detail::NeumaierSum sum;
    detail::NeumaierSum weight_sum;
    while (true) {
        double w = 1.0;
        for (int d = 0; d < m; ++d) {
            y[d] = low[d] + (high[d] - low[d]) * rules[d].nodes[idx[d]];
            w *= rules[d].weights[idx[d]];
        }
        sum.add(w * f(ys));
        weight_sum.add(w);
        int d = 0;
        while (d < m && ++idx[d] == n) {
            idx[d] = 0;
            ++d;
        }
        if (d == m)
            break;
    }
    return sum.value() / weight_sum.value();
}

}  // namespace

const char* to_string(QuadratureMethod method)
{
    switch (method) {
    case QuadratureMethod::ball_spectral: return "ball_spectral";
    case QuadratureMethod::box_gauss: return "box_gauss";
    case QuadratureMethod::monte_carlo: return "monte_carlo";
    }
    return "unknown";
}

MeanValueEstimate ball_mean(const Integrand& f, const Point& center, double r, int radial_nodes,
                            int angular_resolution, const QuadratureOptions& fallback)
{
    check_radius(r, "ball_mean");
    const int m = center.dimension();
    if (m != 2 && m != 3) {
        MeanValueEstimate est = mc_mean(f, ball(center, r), fallback.samples, fallback.seed);
        est.note = "spectral ball rule supports m = 2, 3 only; used monte_carlo";
        return est;
    }
    if (radial_nodes < 2 || angular_resolution < 2)
        throw std::domain_error("ball_mean: resolution must be >= 2");
    const double fine = spectral_ball_mean(f, center, r, radial_nodes, angular_resolution);
    const double coarse = spectral_ball_mean(f, center, r, radial_nodes / 2, angular_resolution / 2);
    const std::int64_t nodes = static_cast<std::int64_t>(radial_nodes) * angular_resolution *
                               (m == 3 ? angular_resolution : 1);
    return MeanValueEstimate{fine, std::abs(fine - coarse), QuadratureMethod::ball_spectral, nodes,
                             std::nullopt, {}};
}

MeanValueEstimate box_mean(const Integrand& f, const Point& low, const Point& high, int nodes_per_axis)
{
    if (low.dimension() != high.dimension() || low.dimension() < 1)
        throw std::domain_error("box_mean: corner dimension mismatch");
    for (int i = 0; i < low.dimension(); ++i)
        if (!(low[i] < high[i]))
            throw std::domain_error("box_mean: degenerate box");
    if (nodes_per_axis < 2)
        throw std::domain_error("box_mean: need at least two nodes per axis");
    const double fine = tensor_box_mean(f, low, high, nodes_per_axis);
    const double coarse = tensor_box_mean(f, low, high, nodes_per_axis / 2);
    return MeanValueEstimate{fine, std::abs(fine - coarse), QuadratureMethod::box_gauss,
                             static_cast<std::int64_t>(std::pow(nodes_per_axis, low.dimension())),
                             std::nullopt, {}};
}

MeanValueEstimate mc_mean(const Integrand& f, const Domain& d, std::int64_t samples, std::uint64_t seed)
{
    if (samples < 2)
        throw std::domain_error("mc_mean: need at least two samples");
    const int m = d.dimension();
    detail::BoxSampler sampler(d.bounding_box(), seed);
    std::array<double, kMaxDimension> y{};
    const std::span<double> ys(y.data(), m);
    detail::NeumaierSum sum;
    detail::NeumaierSum sum_sq;
    std::int64_t accepted = 0;
    for (std::int64_t k = 0; k < samples; ++k) {
        sampler.next(ys);
        if (!d.contains(ys))
            continue;
        const double v = f(ys);
        sum.add(v);
        sum_sq.add(v * v);
        ++accepted;
    }
    if (static_cast<double>(accepted) < 1e-4 * static_cast<double>(samples) || accepted < 2)
        throw std::runtime_error("mc_mean: acceptance rate below 1e-4; bounding box too loose");
    const double n = static_cast<double>(accepted);
    const double mean = sum.value() / n;
    const double var = std::max(0.0, (sum_sq.value() - n * mean * mean) / (n - 1.0));
    return MeanValueEstimate{mean, 3.0 * std::sqrt(var / n), QuadratureMethod::monte_carlo, samples, seed, {}};
}

MeanValueEstimate domain_mean(const Integrand& f, const Domain& d, const QuadratureOptions& opts)
{
    const int m = d.dimension();
    if (auto b = d.as_ball(); b && (m == 2 || m == 3))
        return ball_mean(f, b->center, b->radius, opts.radial_nodes, opts.angular_resolution, opts);
    if (auto bx = d.as_box())
        return box_mean(f, Point(bx->low), Point(bx->high), opts.box_nodes);
    return mc_mean(f, d, opts.samples, opts.seed);
}

FluxEstimate surface_flux(const SolutionField& u, const Point& center, double r, int angular_resolution)
{
    check_radius(r, "surface_flux");
    const int m = center.dimension();
    if (m != 2 && m != 3)
        throw std::logic_error("surface_flux: not implemented for m other than 2 and 3");
    if (u.dimension() != m)
        throw std::domain_error("surface_flux: field dimension mismatch");
    if (angular_resolution < 2)
        throw std::domain_error("surface_flux: resolution must be >= 2");

    const double h = 1e-5 * r;
    std::array<double, kMaxDimension> y{};
    const std::span<const double> ys(y.data(), m);
    auto at = [&](const std::array<double, 3>& dir, double rho) {
        for (int i = 0; i < m; ++i)
            y[i] = center[i] + rho * dir[i];
        return u(ys);
    };
    detail::NeumaierSum flux;
    detail::NeumaierSum flux_wide;
    auto accumulate = [&](const std::array<double, 3>& dir, double dS) {
        const double d1 = (at(dir, r + h) - at(dir, r - h)) / (2.0 * h);
        const double d2 = (at(dir, r + 2.0 * h) - at(dir, r - 2.0 * h)) / (4.0 * h);
        flux.add(dS * d1);
        flux_wide.add(dS * d2);
    };

    int nodes = 0;
    if (m == 2) {
        const double dS = 2.0 * std::numbers::pi * r / angular_resolution;
        for (int k = 0; k < angular_resolution; ++k) {
            const double th = 2.0 * std::numbers::pi * (k + 0.5) / angular_resolution;
            accumulate({std::cos(th), std::sin(th), 0.0}, dS);
        }
        nodes = angular_resolution;
    } else {
        const GaussRule polar = gauss_legendre(angular_resolution);
        for (int j = 0; j < angular_resolution; ++j) {
            const double c = polar.nodes[j];
            const double sn = std::sqrt(1.0 - c * c);
            const double dS = r * r * polar.weights[j] * 2.0 * std::numbers::pi / angular_resolution;
            for (int k = 0; k < angular_resolution; ++k) {
                const double ph = 2.0 * std::numbers::pi * (k + 0.5) / angular_resolution;
                accumulate({sn * std::cos(ph), sn * std::sin(ph), c}, dS);
            }
        }
        nodes = angular_resolution * angular_resolution;
    }
    // Central differences are O(h^2): error(h) ~ (D(2h) - D(h)) / 3.
    return FluxEstimate{flux.value(), std::abs(flux_wide.value() - flux.value()) / 3.0, nodes};
}

}  // namespace helmball
