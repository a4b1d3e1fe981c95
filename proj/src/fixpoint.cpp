#include "hyplab/fixpoint.hpp"

#include <algorithm>
#include <cmath>

namespace hyplab {

FixedPointReport iterate(const NonexpMap& f, const Point& x0, double tol, std::size_t max_iter) {
    if (tol <= 0.0) throw invalid_input("iterate: tol must be positive");
    if (max_iter < 1) throw invalid_input("iterate: max_iter must be >= 1");
    const SpaceModel& m = f.model();

    FixedPointReport rep;
    Point x = x0;
    Point fx = f(x);
    double res = m.dist(x, fx);
    std::size_t next_record = 0;

    for (std::size_t k = 0;; ++k) {
        if (k >= next_record) {
            rep.trajectory_sample.emplace_back(k, res);
            // record every iteration up to 1000, then thin geometrically
            next_record = k < 1000 ? k + 1 : k + k / 8 + 1;
        }
        rep.iterations = k;
        if (res <= tol) {
            rep.converged = true;
            break;
        }
        if (k + 1 > max_iter) break;
        x = fx;
        fx = f(x);
        res = m.dist(x, fx);
    }
    rep.final_point = x;
    rep.residual = res;
    if (f.claimed_lip() < 1.0) rep.error_bound = res / (1.0 - f.claimed_lip());
    return rep;
}

BallInvarianceResult ball_invariance_check(const NonexpMap& f, const Point& theta, double M,
                                           std::size_t budget, std::uint64_t seed) {
    if (M <= 0.0) throw invalid_input("ball_invariance_check: M must be positive");
    const SpaceModel& m = f.model();
    double worst = m.dist(f(theta), theta) - M;

    for (int i = 0; i < m.ambient_dim(); ++i) {
        for (double sign : {1.0, -1.0}) {
            Point hint = theta;
            hint[static_cast<std::size_t>(i)] += sign;
            Point p = m.point_at_distance(theta, M, hint).point;
            worst = std::max(worst, m.dist(f(p), theta) - M);
        }
    }
    for (const Point& p : m.ball_sampler(theta, M, budget, seed))
        worst = std::max(worst, m.dist(f(p), theta) - M);

    BallInvarianceResult res;
    res.worst_margin = worst;
    res.invariant = worst <= m.tolerance();
    return res;
}

RakotchAuditReport rakotch_convergence_audit(const NonexpMap& f, const Point& theta,
                                             const Point& x0, const RakotchGauge& gauge,
                                             double tol) {
    if (gauge.gauges.empty()) throw invalid_input("rakotch_convergence_audit: empty gauge");
    const SpaceModel& m = f.model();
    RakotchAuditReport rep;
    rep.run = iterate(f, x0, tol);

    // per-step check: rho(x_{k+1}, x_{k+2}) <= step(rho(x_k, x_{k+1})) * rho(...)
    Point x = x0;
    Point fx = f(x);
    double worst = 0.0;
    std::size_t steps = std::min<std::size_t>(rep.run.iterations, 2000);
    for (std::size_t k = 0; k < steps; ++k) {
        double d1 = m.dist(x, fx);
        if (d1 <= m.tolerance()) break;
        Point ffx = f(fx);
        double d2 = m.dist(fx, ffx);
        worst = std::max(worst, d2 - gauge.step(d1) * d1);
        x = fx;
        fx = ffx;
    }
    rep.worst_step_violation = worst;
    rep.step_gauge_ok = worst <= tol;

    // second start: shoot a deterministic point away from theta
    Point second = m.point_at_distance(theta, 1.0 + m.dist(x0, theta) * 2.0).point;
    rep.second_run = iterate(f, second, tol);
    if (rep.run.converged && rep.second_run.converged) {
        rep.limit_gap = m.dist(rep.run.final_point, rep.second_run.final_point);
        rep.unique_limit = rep.limit_gap <= 10.0 * tol;
    }
    return rep;
}

}  // namespace hyplab
