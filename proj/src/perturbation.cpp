#include "hyplab/perturbation.hpp"

#include <algorithm>
#include <cmath>

namespace hyplab {

double BumpField::operator()(const Point& x) const {
    double d = model->dist(x, z);
    if (d <= R) return 1.0;
    if (d >= R + 1.0 / eps) return 0.0;
    return 1.0 - eps * (d - R);
}

BumpField bump_lambda(std::shared_ptr<const SpaceModel> model, Point z, double R, double eps) {
    if (R <= 0.0 || eps <= 0.0) throw invalid_input("bump_lambda: R and eps must be positive");
    model->require_valid(z);
    return BumpField{std::move(model), std::move(z), R, eps};
}

NonexpMap radial_collapse(std::shared_ptr<const SpaceModel> model, const Point& z, double R,
                          double eps) {
    if (R <= 0.0 || eps <= 0.0) throw invalid_input("radial_collapse: R and eps must be positive");
    BumpField lam = bump_lambda(model, z, R, eps / R);
    auto m = model;
    Point center = z;
    auto fn = [m, lam, center, R](const Point& x) {
        double d = m->dist(x, center);
        if (d < R) return center;
        double mu = R * lam(x) / d;
        return m->combine(x, center, mu);
    };
    return NonexpMap::from_function(std::move(model), std::move(fn), 1.0 + eps,
                                    "radial-collapse(R=" + std::to_string(R) + ")");
}

NonexpMap spike_map(std::shared_ptr<const SpaceModel> model, const Point& x0, const Point& y0,
                    const Point& v, double t0, double lam) {
    if (t0 <= 0.0) throw invalid_input("spike_map: t0 must be positive");
    if (lam <= 0.0 || lam >= 1.0) throw invalid_input("spike_map: lam must lie in (0,1)");
    if (std::abs(model->dist(x0, y0) - t0) > 1e-6 * std::max(1.0, t0))
        throw invalid_input("spike_map: rho(x0, y0) must equal t0");
    double eps = 0.5 * (1.0 - lam) * t0;
    double du = lam * t0 + eps;
    // prefer the ray from x0 through v extended past v, so the spike target
    // points away from the active ball; any u at distance du from v works
    Point u = model->point_at_distance(v, du).point;
    double dx0v = model->dist(x0, v);
    if (dx0v > model->tolerance()) {
        RayResult away = model->point_at_distance(x0, dx0v + du, v);
        if (!away.fallback && std::abs(model->dist(away.point, v) - du) <= 1e-9 * (1.0 + du))
            u = away.point;
    }
    auto m = model;
    Point base = x0;
    auto fn = [m, base, v, u, t0](const Point& x) {
        double g = std::max((t0 - m->dist(x, base)) / t0, 0.0);
        if (g == 0.0) return v;
        return m->combine(v, u, g);
    };
    return NonexpMap::from_function(std::move(model), std::move(fn), 1.0,
                                    "spike(t0=" + std::to_string(t0) + ")");
}

EnlargeResult enlarge_modulus(const NonexpMap& f, const Point& z, double gamma, double lam,
                              double t0, double R) {
    if (gamma <= 0.0 || gamma >= 1.0 || lam <= 0.0 || lam >= 1.0)
        throw invalid_input("enlarge_modulus: gamma and lam must lie in (0,1)");
    if (t0 <= 0.0 || R <= 0.0) throw invalid_input("enlarge_modulus: t0 and R must be positive");
    if (f.claimed_lip() > 1.0 - gamma + 1e-12)
        throw invalid_input("enlarge_modulus: f must satisfy Lip f <= 1-gamma");

    auto model = f.model_ptr();
    double delta = gamma / (1.0 - gamma);
    double S = t0 / gamma;

    Point x0 = model->point_at_distance(z, R + S).point;
    // y0 on the segment [z, x0] at distance t0 from x0
    Point y0 = model->combine(z, x0, (R + S - t0) / (R + S));

    NonexpMap pi = radial_collapse(model, x0, t0, delta);
    NonexpMap tau = spike_map(model, x0, y0, f(x0), t0, lam);

    NonexpMap base = f;
    auto m = model;
    auto fn = [m, base, pi, tau, x0, t0](const Point& x) {
        if (m->dist(x, x0) <= t0) return tau(x);
        return base(pi(x));
    };
    NonexpMap g = NonexpMap::from_function(model, std::move(fn), 1.0,
                                           "enlarge-modulus(" + base.provenance() + ")");
    return EnlargeResult{std::move(g), std::move(x0), std::move(y0)};
}

SeparatedNet greedy_separated_net(const SpaceModel& model, const std::vector<Point>& cloud,
                                  double a) {
    if (a <= 0.0) throw invalid_input("greedy_separated_net: a must be positive");
    if (cloud.empty()) throw invalid_input("greedy_separated_net: cloud is empty");
    SeparatedNet net;
    net.a = a;
    for (const Point& p : cloud) {
        bool keep = true;
        for (const Point& q : net.points) {
            if (model.dist(p, q) < a) {
                keep = false;
                break;
            }
        }
        if (keep) net.points.push_back(p);
    }
    return net;
}

NonexpMap isometry_patch(const NonexpMap& f, const SeparatedNet& net, double a, double eps,
                         const Point& theta) {
    if (a <= 0.0 || a >= 1.0 || eps <= 0.0 || eps >= 1.0)
        throw invalid_input("isometry_patch: a and eps must lie in (0,1)");
    if (net.points.size() < 2)
        throw invalid_input("isometry_patch: net must contain at least two points");
    auto model = f.model_ptr();
    for (std::size_t i = 0; i < net.points.size(); ++i)
        for (std::size_t j = i + 1; j < net.points.size(); ++j)
            if (model->dist(net.points[i], net.points[j]) < a - 1e-12)
                throw invalid_input("isometry_patch: net is not a-separated");

    double r = eps * a / 16.0;
    double R = a / 4.0;
    double delta = eps / (4.0 - eps);

    std::vector<NonexpMap> collapses;
    collapses.reserve(net.points.size());
    for (const Point& z : net.points) collapses.push_back(radial_collapse(model, z, r, delta));

    auto m = model;
    NonexpMap base = f;
    std::vector<Point> centers = net.points;
    auto g0 = [m, base, collapses, centers, R](const Point& x) {
        for (std::size_t i = 0; i < centers.size(); ++i)
            if (m->dist(x, centers[i]) < R) return base(collapses[i](x));
        return base(x);
    };

    Point g0_theta = g0(theta);
    double w = eps / 4.0;
    auto g1 = [g0, g0_theta, w, m](const Point& x) { return m->combine(g0(x), g0_theta, w); };

    // spike targets at distance a/3 from the constant value on each micro-ball
    std::vector<Point> pz;
    pz.reserve(centers.size());
    for (const Point& z : centers) pz.push_back(m->point_at_distance(g1(z), a / 3.0).point);

    auto fn = [m, g1, centers, pz, r, a](const Point& x) {
        for (std::size_t i = 0; i < centers.size(); ++i) {
            double d = m->dist(x, centers[i]);
            if (d >= r) continue;
            Point at = g1(centers[i]);
            double mu = d < r / 2.0 ? 3.0 * d / a : 3.0 * (r - d) / a;
            return m->combine(at, pz[i], mu);
        }
        return g1(x);
    };
    return NonexpMap::from_function(model, std::move(fn), 1.0,
                                    "isometry-patch(" + base.provenance() + ")");
}

}  // namespace hyplab
