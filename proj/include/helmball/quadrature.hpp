#pragma once

// Volume means M(f, D) = |D|^{-1} int_D f over balls (spectral product
// rules), boxes (tensor Gauss-Legendre) and general implicit regions
// (seeded rejection Monte Carlo), plus outward flux through spheres.

#include "helmball/geometry.hpp"
#include "helmball/solutions.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

namespace helmball {

using Integrand = std::function<double(std::span<const double>)>;

enum class QuadratureMethod { ball_spectral, box_gauss, monte_carlo };

const char* to_string(QuadratureMethod method);

struct MeanValueEstimate {
    double value = 0.0;
    /// Spectral/Gauss: difference against the half-resolution rule.
    /// Monte Carlo: three standard errors.
    double abs_error_estimate = 0.0;
    QuadratureMethod method = QuadratureMethod::ball_spectral;
    std::int64_t samples_or_nodes = 0;
    std::optional<std::uint64_t> seed;
    /// Set when a requested method was replaced by another.
    std::string note;
};

struct QuadratureOptions {
    int radial_nodes = 64;
    int angular_resolution = 64;
    int box_nodes = 32;
    std::int64_t samples = 2'000'000;
    std::uint64_t seed = kDefaultSeed;
};

/// Mean over B_r(center). Spectral for m = 2 and m = 3, Monte Carlo otherwise.
MeanValueEstimate ball_mean(const Integrand& f, const Point& center, double r, int radial_nodes = 64,
                            int angular_resolution = 64, const QuadratureOptions& fallback = {});

MeanValueEstimate box_mean(const Integrand& f, const Point& low, const Point& high, int nodes_per_axis = 32);

/// Rejection sampling over the bounding box. Reproducible for a fixed seed.
MeanValueEstimate mc_mean(const Integrand& f, const Domain& d, std::int64_t samples = 2'000'000,
                          std::uint64_t seed = kDefaultSeed);

/// Best available rule for the region: ball, box, then Monte Carlo.
MeanValueEstimate domain_mean(const Integrand& f, const Domain& d, const QuadratureOptions& opts = {});

struct FluxEstimate {
    double value = 0.0;
    double abs_error_estimate = 0.0;
    int nodes = 0;
};

/// int over the sphere |y - center| = r of the outward normal derivative of
/// u, m in {2, 3}. The normal derivative is a central difference with step
/// 1e-5 r; the error estimate compares it with step 2e-5 r.
FluxEstimate surface_flux(const SolutionField& u, const Point& center, double r, int angular_resolution = 64);

}  // namespace helmball
