#pragma once

// Mean-value identities and the ball characterization as executable checks.
//
// Every check returns a VerificationReport. Verdicts never claim more than
// the numerics support: when the integration error bar exceeds the
// tolerance the verdict is inconclusive rather than fail, unless the
// residual exceeds tolerance plus error bar outright.

#include "helmball/geometry.hpp"
#include "helmball/quadrature.hpp"
#include "helmball/solutions.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace helmball {

enum class Verdict { pass, fail, inconclusive };

const char* to_string(Verdict v);

using DiagnosticValue = std::variant<bool, std::int64_t, double, std::string>;

struct VerificationReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;  // lhs - rhs
    double tolerance = 0.0;
    double error_bar = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::map<std::string, DiagnosticValue> diagnostics;
    std::vector<VerificationReport> children;
};

/// fail if |residual| > tolerance + error_bar; otherwise inconclusive if
/// error_bar > tolerance; otherwise pass.
Verdict derive_verdict(double residual, double tolerance, double error_bar);

inline constexpr double kSpectralTolerance = 1e-8;
inline constexpr std::int64_t kDefaultBudget = 1'000'000;
inline constexpr std::int64_t kDiscrepancySamples = 4'000'000;

/// (D, lambda, x0) together with the derived equivalent radius r
/// (|B_r| = |D|) and critical radius r0 (lambda r0 = j_{m/2,1}).
struct CharacterizationProblem {
    Domain domain;
    double lambda;
    Point x0;
    double r;
    double r0;
    VolumeEstimate volume;
};

/// r is always recomputed from the volume of D.
CharacterizationProblem make_problem(const Domain& d, double lambda, const Point& x0,
                                     std::int64_t volume_samples = kDefaultVolumeSamples,
                                     std::uint64_t seed = kDefaultSeed);

/// a_m(lambda r) u(x) against M(u, B_r(x)).
VerificationReport check_mean_value_formula(const SolutionField& u, const Point& x, double r,
                                            const QuadratureOptions& opts = {},
                                            double tolerance = kSpectralTolerance);

/// u(x0) a_m(lambda r) against M(u, D).
VerificationReport check_identity(const SolutionField& u, const CharacterizationProblem& p,
                                  const QuadratureOptions& opts = {},
                                  double tolerance = kSpectralTolerance);

/// D inside B_{r0}(x0). Reported in dimensionless form: lhs = lambda * (enclosing
/// radius about x0), rhs = j_{m/2,1}; passes iff lhs <= rhs.
VerificationReport check_size_condition(const CharacterizationProblem& p,
                                        std::int64_t budget = kDefaultBudget,
                                        std::uint64_t seed = kDefaultSeed);

enum class Outcome { consistent_with_ball, not_a_ball, outside_theorem_scope, inconclusive };

const char* to_string(Outcome o);

struct Characterization {
    VerificationReport report;
    Outcome outcome;
    /// Description of the first field whose identity failed.
    std::optional<std::string> witness;
};

/// Radial U at x0, 2m axis-aligned plane waves (phases 0 and pi/2) and
/// `random_waves` seeded random-direction plane waves, all centred at x0.
std::vector<SolutionField> default_family(int m, double lambda, const Point& x0, int random_waves = 8,
                                          std::uint64_t seed = kDefaultSeed);

/// Runs check_identity over the family plus the radial U at x0, and the size
/// condition. A finite family can only ever support "consistent with".
Characterization characterize(const CharacterizationProblem& p, const std::vector<SolutionField>& family,
                              double tolerance = kSpectralTolerance, const QuadratureOptions& opts = {},
                              std::int64_t budget = kDefaultBudget);

enum class Kernel { oscillatory, monotone };

/// int_{G_i} U - int_{G_e} U with G_i = D \ B_r(x0), G_e = B_r(x0) \ D.
/// With Kernel::oscillatory U = a_{m-2}(lambda |y - x0|) and the value is
/// predicted negative when the size condition holds; with Kernel::monotone
/// U = b_{m-2}(lambda |y - x0|) and it is predicted positive. pass means the
/// predicted sign holds beyond the error bar (three standard errors).
VerificationReport proof_discrepancy(const CharacterizationProblem& p,
                                     std::int64_t samples = kDiscrepancySamples,
                                     std::uint64_t seed = kDefaultSeed,
                                     Kernel kernel = Kernel::oscillatory);

/// The square membrane (0, a)^2 at lambda_21: identity holds for u_21 and u_12
/// about the centre while the size condition fails.
VerificationReport membrane_counterexample(double a, const QuadratureOptions& opts = {});

/// lambda -> 0: a_m(lambda r) -> 1 at the rate of its t^2 coefficient, and
/// plane-wave identity residuals tend to the harmonic mean-value residuals.
VerificationReport kuran_limit_check(const Domain& d, const Point& x0, const std::vector<double>& lambdas,
                                     const QuadratureOptions& opts = {});

/// |B_r| M(u, B_r) against -/+ wavenumber^{-2} times the outward flux.
VerificationReport flux_identity_check(const SolutionField& u, const Point& center, double r,
                                       const QuadratureOptions& opts = {}, double relative_tolerance = 1e-5);

/// b_m(mu r) against the ball mean of b_{m-2}(mu |y - x0|), plus strict
/// monotonicity of b_m on a grid of [0, 10].
VerificationReport theorem1_identity_check(double mu, const Point& x0, double r,
                                           const QuadratureOptions& opts = {},
                                           double tolerance = kSpectralTolerance);

}  // namespace helmball
