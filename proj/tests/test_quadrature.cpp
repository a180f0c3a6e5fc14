#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helmball/quadrature.hpp"
#include "helmball/specfun.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace helmball;

namespace {
const double pi = std::numbers::pi;

double one(std::span<const double>) { return 1.0; }

// Composite Simpson on [0, 1] of m s^{m-1} g(s): the radial mean over the unit ball.
template <class G>
double radial_oracle(int m, G g)
{
    const int n = 20'000;
    const double h = 1.0 / n;
    double sum = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double s = k * h;
        const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        sum += w * m * std::pow(s, m - 1) * g(s);
    }
    return sum * h / 3.0;
}

// Midpoint grid over [-1, 1]^2 restricted to the open unit disk.
template <class F>
double disk_grid_mean(F f, int n)
{
    const double h = 2.0 / n;
    double sum = 0.0;
    long count = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double x = -1.0 + (i + 0.5) * h, y = -1.0 + (j + 0.5) * h;
            if (x * x + y * y < 1.0) {
                sum += f(x, y);
                ++count;
            }
        }
    return sum / static_cast<double>(count);
}
}  // namespace

TEST_CASE("constants are reproduced exactly")
{
    CHECK(ball_mean(one, Point{0, 0}, 1.0).value == 1.0);
    CHECK(ball_mean(one, Point{0.3, -2, 1}, 0.4).value == 1.0);
    CHECK(box_mean(one, Point{0, 0}, Point{1, 1}).value == 1.0);
    CHECK(box_mean(one, Point{-1, 0, 2}, Point{1, 3, 2.5}, 16).value == 1.0);
    const MeanValueEstimate mc = mc_mean(one, difference(ball(Point{0, 0}, 1.0), ball(Point{0, 0}, 0.3)), 100'000, 5);
    CHECK(mc.value == 1.0);
    CHECK(mc.abs_error_estimate == 0.0);
    CHECK(mc.method == QuadratureMethod::monte_carlo);
    REQUIRE(mc.seed);
    CHECK(*mc.seed == 5);
}

TEST_CASE("ball mean of the radial solution")
{
    const SolutionField u = radial_solution(2, 1.0, Point{0, 0});
    const MeanValueEstimate e = ball_mean([&](auto x) { return u(x); }, Point{0, 0}, 1.0);
    const double oracle = radial_oracle(2, [](double s) { return std::cyl_bessel_j(0.0, s); });
    CHECK(e.method == QuadratureMethod::ball_spectral);
    CHECK(std::abs(e.value - oracle) <= 1e-10);
    CHECK(std::abs(e.value - 2.0 * std::cyl_bessel_j(1.0, 1.0)) <= 1e-12);
    CHECK(e.value == doctest::Approx(0.8801012).epsilon(1e-7));
    CHECK(e.abs_error_estimate <= 1e-10);

    const SolutionField u3 = radial_solution(3, 1.0, Point{1, 1, 1});
    const MeanValueEstimate e3 = ball_mean([&](auto x) { return u3(x); }, Point{1, 1, 1}, 1.0);
    const double oracle3 = radial_oracle(3, [](double s) { return s == 0.0 ? 1.0 : std::sin(s) / s; });
    CHECK(std::abs(e3.value - oracle3) <= 1e-10);
    CHECK(std::abs(e3.value - 3.0 * (std::sin(1.0) - std::cos(1.0))) <= 1e-12);
}

TEST_CASE("ball mean of a plane wave")
{
    const SolutionField w = plane_wave(2, 1.0, Point{1, 0}, 0.0);
    const MeanValueEstimate e = ball_mean([&](auto x) { return w(x); }, Point{0, 0}, 1.0);
    CHECK(std::abs(e.value - a_norm(2, 1.0)) <= 1e-12);
    const double brute = disk_grid_mean([](double x, double) { return std::cos(x); }, 2000);
    CHECK(std::abs(e.value - brute) <= 1e-4);
    CHECK(std::abs(brute - 0.8801012) <= 1e-4);
}

TEST_CASE("box means")
{
    const SolutionField u21 = membrane_eigenfunction(2, 1, 1.0);
    const MeanValueEstimate e21 = box_mean([&](auto x) { return u21(x); }, Point{0, 0}, Point{1, 1});
    CHECK(std::abs(e21.value) <= 1e-12);
    CHECK(e21.method == QuadratureMethod::box_gauss);
    const SolutionField u11 = membrane_eigenfunction(1, 1, 1.0);
    const MeanValueEstimate e11 = box_mean([&](auto x) { return u11(x); }, Point{0, 0}, Point{1, 1});
    CHECK(std::abs(e11.value - 4.0 / (pi * pi)) <= 1e-14);
    CHECK(e11.value == doctest::Approx(0.4052847).epsilon(1e-7));
    CHECK_THROWS_AS(box_mean(one, Point{0, 0}, Point{0, 1}), std::domain_error);

    // Exponential: mean of e^{x+y} over [0,1]^2 is (e - 1)^2.
    const MeanValueEstimate ex = box_mean([](auto x) { return std::exp(x[0] + x[1]); }, Point{0, 0}, Point{1, 1});
    CHECK(std::abs(ex.value - std::pow(std::exp(1.0) - 1.0, 2)) <= 1e-13);
}

TEST_CASE("Monte Carlo means")
{
    const Domain disk = ball(Point{0, 0}, 1.0);
    const MeanValueEstimate odd = mc_mean([](auto x) { return x[0]; }, disk, 400'000, 3);
    CHECK(std::abs(odd.value) <= odd.abs_error_estimate);

    const SolutionField u = radial_solution(2, 1.0, Point{0, 0});
    const Integrand fu = [&](auto x) { return u(x); };
    const Domain square = box(Point{-0.5, -0.5}, Point{0.5, 0.5});
    const MeanValueEstimate mc = mc_mean(fu, square, 400'000, 4);
    const MeanValueEstimate gauss = box_mean(fu, Point{-0.5, -0.5}, Point{0.5, 0.5});
    CHECK(std::abs(mc.value - gauss.value) <= mc.abs_error_estimate);

    // Reproducible per seed; different seeds differ.
    const MeanValueEstimate again = mc_mean(fu, square, 400'000, 4);
    CHECK(again.value == mc.value);
    CHECK(again.abs_error_estimate == mc.abs_error_estimate);
    CHECK(mc_mean(fu, square, 400'000, 5).value != mc.value);

    // Acceptance far below 1e-4 is refused.
    const Domain sliver = custom_domain(
        2, [](auto y) { return y[0] * y[0] + y[1] * y[1] < 1e-6; }, Box{{-10, -10}, {10, 10}});
    CHECK_THROWS_AS(mc_mean(one, sliver, 100'000, 1), std::runtime_error);
}

TEST_CASE("domain_mean picks the best rule")
{
    CHECK(domain_mean(one, translate(ball(Point{0, 0}, 1.0), Point{1, 1})).method == QuadratureMethod::ball_spectral);
    CHECK(domain_mean(one, box(Point{0, 0}, Point{1, 2})).method == QuadratureMethod::box_gauss);
    QuadratureOptions o;
    o.samples = 10'000;
    CHECK(domain_mean(one, difference(ball(Point{0, 0}, 1.0), box(Point{0, 0}, Point{1, 1})), o).method ==
          QuadratureMethod::monte_carlo);
}

TEST_CASE("ball mean falls back to Monte Carlo above three dimensions")
{
    QuadratureOptions o;
    o.samples = 200'000;
    const MeanValueEstimate e = ball_mean([](auto x) { return x[0] * x[0]; }, Point{0, 0, 0, 0}, 1.0, 64, 64, o);
    CHECK(e.method == QuadratureMethod::monte_carlo);
    CHECK_FALSE(e.note.empty());
    // Mean of x1^2 over the unit 4-ball is 1 / (m + 2).
    CHECK(std::abs(e.value - 1.0 / 6.0) <= e.abs_error_estimate);
    CHECK_THROWS_AS(ball_mean(one, Point{0, 0}, 0.0), std::domain_error);
}

TEST_CASE("odd integrands vanish on symmetric domains")
{
    const auto odd = [](std::span<const double> x) { return x[0] * std::cos(x[1]) + std::sin(3.0 * x[1]); };
    CHECK(std::abs(ball_mean(odd, Point{0, 0}, 1.5).value) <= 1e-14);
    CHECK(std::abs(box_mean(odd, Point{-1, -2}, Point{1, 2}).value) <= 1e-14);
    const auto odd3 = [](std::span<const double> x) { return x[2] * x[2] * x[2] + x[0] * x[1]; };
    CHECK(std::abs(ball_mean(odd3, Point{0, 0, 0}, 2.0).value) <= 1e-14);
}

TEST_CASE("convergence order")
{
    // Integrand with a known mean: mean of cos(3 x1) over the unit disk = 2 J_1(3)/3.
    const auto f = [](std::span<const double> x) { return std::cos(3.0 * x[0]); };
    const double exact = 2.0 * std::cyl_bessel_j(1.0, 3.0) / 3.0;
    double prev = 1.0;
    for (int n : {2, 4, 8, 16}) {
        const double err = std::abs(ball_mean(f, Point{0, 0}, 1.0, n, 2 * n).value - exact);
        if (prev > 1e-12)
            CHECK(err <= std::max(prev / 4.0, 1e-12));
        prev = err;
    }
    CHECK(prev <= 1e-12);

    const auto g = [](std::span<const double> x) { return std::exp(2.0 * x[0]) * std::cos(x[1]); };
    const double box_exact = (std::exp(2.0) - 1.0) / 2.0 * std::sin(1.0);
    prev = 1.0;
    for (int n : {2, 4, 8, 16}) {
        const double err = std::abs(box_mean(g, Point{0, 0}, Point{1, 1}, n).value - box_exact);
        if (prev > 1e-12)
            CHECK(err <= std::max(prev / 4.0, 1e-12));
        prev = err;
    }
    CHECK(prev <= 1e-12);
}

TEST_CASE("ball and Monte Carlo agree on 20 seeded cases")
{
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const int m = 2 + k % 2;
        std::vector<double> c(m), dir(m);
        for (int i = 0; i < m; ++i) {
            c[i] = u(gen);
            dir[i] = u(gen);
        }
        double norm = 0.0;
        for (double d : dir)
            norm += d * d;
        for (double& d : dir)
            d /= std::sqrt(norm);
        const double lambda = 0.5 + 2.0 * (u(gen) + 1.0);
        const double r = 0.3 + (u(gen) + 1.0);
        const SolutionField w = plane_wave(m, lambda, Point(dir), u(gen));
        const Integrand f = [&](auto x) { return w(x); };
        const MeanValueEstimate spectral = ball_mean(f, Point(c), r);
        const MeanValueEstimate mc = mc_mean(f, ball(Point(c), r), 200'000, 1000 + k);
        CAPTURE(k);
        CHECK(std::abs(spectral.value - mc.value) <= mc.abs_error_estimate);
    }
}

TEST_CASE("surface flux")
{
    const SolutionField c = custom_field(2, 1.0, Equation::helmholtz, [](auto) { return 3.0; });
    CHECK(std::abs(surface_flux(c, Point{0, 0}, 1.0).value) <= 1e-12);

    const SolutionField w = plane_wave(2, 1.0, Point{1, 0}, 0.0);
    const FluxEstimate f = surface_flux(w, Point{0, 0}, 1.0);
    CHECK(f.value == doctest::Approx(-pi * a_norm(2, 1.0)).epsilon(1e-6));
    CHECK(f.value == doctest::Approx(-2.7649).epsilon(1e-4));

    // Radial m = 3 on the sphere of radius pi: area 4 pi^3 times U'(pi), U = sin s / s.
    const SolutionField u3 = radial_solution(3, 1.0, Point{0, 0, 0});
    const double dU = (pi * std::cos(pi) - std::sin(pi)) / (pi * pi);
    const FluxEstimate f3 = surface_flux(u3, Point{0, 0, 0}, pi);
    CHECK(f3.value == doctest::Approx(4.0 * pi * pi * pi * dU).epsilon(1e-6));
    CHECK(f3.abs_error_estimate <= 1e-6 * std::abs(f3.value));

    CHECK_THROWS_AS(surface_flux(plane_wave(4, 1.0, Point{1, 0, 0, 0}, 0.0), Point{0, 0, 0, 0}, 1.0),
                    std::logic_error);
}

TEST_CASE("divergence theorem on balls")
{
    const std::vector<std::pair<SolutionField, std::pair<Point, double>>> cases{
        {plane_wave(2, 1.7, Point{0.6, -0.8}, 0.3), {Point{0.2, 0.1}, 1.3}},
        {radial_solution(2, 2.0, Point{0, 0}), {Point{0.5, 0}, 0.8}},
        {plane_wave(3, 1.2, Point{0, 0.6, 0.8}, 1.1), {Point{0, 0, 0}, 1.0}},
        {radial_solution(3, 1.0, Point{0, 0, 0}), {Point{0, 0, 0}, pi}},
    };
    for (const auto& [u, geo] : cases) {
        const auto& [center, r] = geo;
        const double lambda = u.wavenumber();
        const double integral =
            unit_ball_volume(u.dimension()) * std::pow(r, u.dimension()) *
            ball_mean([&](auto x) { return u(x); }, center, r).value;
        const double flux = surface_flux(u, center, r).value;
        CAPTURE(u.describe());
        CHECK(std::abs(integral + flux / (lambda * lambda)) <= 1e-5 * std::abs(integral));
    }
}
