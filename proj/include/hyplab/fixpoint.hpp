#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hyplab/mapping.hpp"

namespace hyplab {

struct FixedPointReport {
    std::size_t iterations = 0;
    Point final_point;
    double residual = 0.0;  // rho(x, f(x)) at the final point
    std::vector<std::pair<std::size_t, double>> trajectory_sample;
    bool converged = false;
    /// For claimed_lip = L < 1, residual / (1 - L) bounds the distance to the
    /// true fixed point.
    std::optional<double> error_bound;
};

/// Picard iteration x_{k+1} = f(x_k) until rho(x, f(x)) <= tol or max_iter.
FixedPointReport iterate(const NonexpMap& f, const Point& x0, double tol,
                         std::size_t max_iter = 1000000);

struct BallInvarianceResult {
    bool invariant = false;
    double worst_margin = 0.0;  // max over samples of rho(f(x), theta) - M
};

/// Samples x in B(theta, M) (including boundary extremes) and checks that the
/// image stays inside the ball.
BallInvarianceResult ball_invariance_check(const NonexpMap& f, const Point& theta, double M,
                                           std::size_t budget, std::uint64_t seed);

struct RakotchAuditReport {
    FixedPointReport run;
    FixedPointReport second_run;
    bool step_gauge_ok = false;      // per-step contraction respects the gauge
    double worst_step_violation = 0.0;
    bool unique_limit = false;       // both starts agree within 10*tol
    double limit_gap = 0.0;
};

/// Runs the iteration from x0 and a second start, checks the per-step
/// contraction against the step gauge, and audits uniqueness of the limit.
RakotchAuditReport rakotch_convergence_audit(const NonexpMap& f, const Point& theta,
                                             const Point& x0, const RakotchGauge& gauge,
                                             double tol);

}  // namespace hyplab
