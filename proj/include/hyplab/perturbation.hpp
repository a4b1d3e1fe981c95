#pragma once

#include <memory>
#include <vector>

#include "hyplab/mapping.hpp"

namespace hyplab {

/// Cutoff field equal to 1 on B(z, R), affinely decreasing to 0 at radius
/// R + 1/eps, with Lipschitz constant at most eps.
struct BumpField {
    std::shared_ptr<const SpaceModel> model;
    Point z;
    double R = 0.0;
    double eps = 0.0;

    double operator()(const Point& x) const;
};

BumpField bump_lambda(std::shared_ptr<const SpaceModel> model, Point z, double R, double eps);

/// Collapses B(z, R) to the single point z, is the identity outside
/// B(z, R(1 + 1/eps)), moves no point by more than R, and is
/// (1+eps)-Lipschitz.
NonexpMap radial_collapse(std::shared_ptr<const SpaceModel> model, const Point& z, double R,
                          double eps);

/// Nonexpansive map constant equal to v outside B(x0, t0) whose values at x0
/// and y0 (with rho(x0, y0) = t0) are lam*t0 + (1-lam)*t0/2 apart; all values
/// stay within t0 of v.
NonexpMap spike_map(std::shared_ptr<const SpaceModel> model, const Point& x0, const Point& y0,
                    const Point& v, double t0, double lam);

struct EnlargeResult {
    NonexpMap g;
    Point x0;
    Point y0;
};

/// Given a strict contraction f with Lip f <= 1-gamma, produces a nonexpansive
/// g equal to f on B(z, R), within 2*t0 of f everywhere, together with points
/// x0, y0 at distance t0 with rho(g(x0), g(y0)) > lam*t0.
EnlargeResult enlarge_modulus(const NonexpMap& f, const Point& z, double gamma, double lam,
                              double t0, double R);

struct SeparatedNet {
    std::vector<Point> points;
    double a = 0.0;
};

/// Greedy pass in input order: keeps a point iff it is at distance >= a from
/// every point kept so far; the result is a-separated and maximal in the cloud.
SeparatedNet greedy_separated_net(const SpaceModel& model, const std::vector<Point>& cloud,
                                  double a);

/// Nonexpansive perturbation of f that is an exact isometry on the balls
/// B(z, eps*a/32) around each net point z while staying within
/// (3*eps/4)*max{1, rho(x, theta)} of f everywhere.
NonexpMap isometry_patch(const NonexpMap& f, const SeparatedNet& net, double a, double eps,
                         const Point& theta);

}  // namespace hyplab
