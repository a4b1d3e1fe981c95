#include "hyplab/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hyplab {

namespace {

Point random_direction_hint(const SpaceModel& m, const Point& at, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Point h = at;
    for (double& c : h.coords) c += gauss(rng);
    return h;
}

// Boundary points of B(center, R) along the +/- coordinate directions.
std::vector<Point> axis_extremes(const SpaceModel& m, const Point& center, double R) {
    std::vector<Point> out;
    for (int i = 0; i < m.ambient_dim(); ++i) {
        for (double sign : {1.0, -1.0}) {
            Point hint = center;
            hint[static_cast<std::size_t>(i)] += sign;
            out.push_back(m.point_at_distance(center, R, hint).point);
        }
    }
    return out;
}

struct BestPair {
    Point x, y;
    double value = -1.0;

    void offer(const Point& a, const Point& b, double v) {
        if (v > value) {
            x = a;
            y = b;
            value = v;
        }
    }
};

// Local refinement: shrinking random proposals around the best pair.
template <typename Objective, typename Constraint>
void refine_pair(const SpaceModel& m, BestPair& best, double scale, Objective obj,
                 Constraint ok, std::mt19937_64& rng) {
    if (best.value < 0) return;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int round = 0; round < 5; ++round) {
        double sigma = scale * std::pow(0.5, round + 1);
        for (int k = 0; k < 16; ++k) {
            Point nx = m.point_at_distance(best.x, sigma * std::abs(gauss(rng)),
                                           random_direction_hint(m, best.x, rng))
                           .point;
            Point ny = m.point_at_distance(best.y, sigma * std::abs(gauss(rng)),
                                           random_direction_hint(m, best.y, rng))
                           .point;
            if (!ok(nx, ny)) continue;
            best.offer(nx, ny, obj(nx, ny));
        }
    }
}

}  // namespace

NonexpMap NonexpMap::identity(std::shared_ptr<const SpaceModel> model) {
    return from_function(std::move(model), [](const Point& x) { return x; }, 1.0, "identity");
}

NonexpMap NonexpMap::constant(std::shared_ptr<const SpaceModel> model, Point value) {
    model->require_valid(value);
    return from_function(std::move(model), [value](const Point&) { return value; }, 0.0,
                         "constant");
}

NonexpMap NonexpMap::affine(std::shared_ptr<const SpaceModel> model, double a,
                            std::vector<double> b) {
    if (model->kind() == ModelKind::Hyperboloid2)
        throw invalid_input("affine: not available on the hyperboloid model");
    if (static_cast<int>(b.size()) != model->dim())
        throw invalid_input("affine: shift has wrong dimension");
    if (std::abs(a) > 1.0 + kLipSlack) throw invalid_input("affine: |a| too large");
    auto fn = [a, b](const Point& x) {
        Point r = x;
        for (std::size_t i = 0; i < b.size(); ++i) r[i] = a * x[i] + b[i];
        return r;
    };
    return from_function(std::move(model), std::move(fn), std::abs(a), "affine");
}

NonexpMap NonexpMap::from_function(std::shared_ptr<const SpaceModel> model,
                                   std::function<Point(const Point&)> fn, double claimed_lip,
                                   std::string provenance) {
    NonexpMap f;
    f.model_ = std::move(model);
    f.eval_ = std::move(fn);
    f.claimed_lip_ = claimed_lip;
    f.provenance_ = std::move(provenance);
    return f;
}

Point NonexpMap::operator()(const Point& x) const {
    model_->require_valid(x);
    return eval_(x);
}

NonexpMap contract_toward(const NonexpMap& f, const Point& theta, double gamma) {
    if (gamma <= 0.0 || gamma >= 1.0) throw invalid_input("contract_toward: gamma outside (0,1)");
    auto model = f.model_ptr();
    model->require_valid(theta);
    Point anchor = f(theta);
    NonexpMap inner = f;
    auto fn = [inner, anchor, gamma, model](const Point& x) {
        return model->combine(inner(x), anchor, gamma);
    };
    return NonexpMap::from_function(model, std::move(fn), (1.0 - gamma) * f.claimed_lip(),
                                    "contract(" + f.provenance() + ")");
}

double RakotchGauge::step(double t) const {
    if (gauges.empty()) return 1.0;
    if (t <= 0.0) return gauges.back();
    double inv = std::ceil(1.0 / t);
    std::size_t n = inv < 1.0 ? 1 : static_cast<std::size_t>(inv);
    n = std::min(std::max<std::size_t>(n, 1), n_max);
    return gauges[n - 1];
}

LipEstimate modulus_of_continuity(const NonexpMap& f, double t0, double region_radius,
                                  std::size_t budget, std::uint64_t seed) {
    if (t0 <= 0.0 || budget < 1) throw invalid_input("modulus_of_continuity: bad parameters");
    const SpaceModel& m = f.model();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    BestPair best;
    auto obj = [&](const Point& a, const Point& b) { return m.dist(f(a), f(b)); };

    // deterministic pairs at distance exactly t0 so affine cases are exact
    std::vector<Point> anchors = {m.origin()};
    auto boundary = axis_extremes(m, m.origin(), std::max(region_radius, t0));
    anchors.insert(anchors.end(), boundary.begin(), boundary.end());
    for (const Point& x : anchors) {
        for (const Point& y : axis_extremes(m, x, t0)) best.offer(x, y, obj(x, y));
    }

    auto cloud = m.ball_sampler(m.origin(), region_radius, budget, seed);
    for (const Point& x : cloud) {
        double d = t0 * (1.0 - unif(rng) * unif(rng));  // biased toward t0
        Point y = m.point_at_distance(x, d, random_direction_hint(m, x, rng)).point;
        best.offer(x, y, obj(x, y));
    }

    auto ok = [&](const Point& a, const Point& b) { return m.dist(a, b) <= t0; };
    refine_pair(m, best, t0 / 4.0, obj, ok, rng);

    LipEstimate est;
    est.value = std::max(best.value, 0.0);
    est.pairs_tested = anchors.size() * 2 * m.ambient_dim() + cloud.size();
    est.region = "pairs at distance <= " + std::to_string(t0);
    est.seed = seed;
    return est;
}

LipEstimate local_lipschitz(const NonexpMap& f, const Point& x, double r, std::size_t budget,
                            std::uint64_t seed) {
    if (r <= 0.0) throw invalid_input("local_lipschitz: r must be positive");
    const SpaceModel& m = f.model();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    Point fx = f(x);

    double best = 0.0;
    std::size_t tested = 0;
    const int kScales = 21;
    std::size_t per_scale = std::max<std::size_t>(1, budget / kScales);
    for (int k = 0; k < kScales; ++k) {
        double s = r * std::pow(0.5, k);
        for (const Point& y : axis_extremes(m, x, s * 0.999)) {
            double d = m.dist(x, y);
            if (d > 1e-300) best = std::max(best, m.dist(fx, f(y)) / d);
            ++tested;
        }
        for (std::size_t i = 0; i < per_scale; ++i) {
            double d = s * (0.5 + 0.499 * unif(rng));
            Point y = m.point_at_distance(x, d, random_direction_hint(m, x, rng)).point;
            double dd = m.dist(x, y);
            if (dd > 1e-300) best = std::max(best, m.dist(fx, f(y)) / dd);
            ++tested;
        }
    }

    LipEstimate est;
    est.value = best;
    est.pairs_tested = tested;
    est.region = "ball radius " + std::to_string(r);
    est.seed = seed;
    return est;
}

LipEstimate empirical_lipschitz(const NonexpMap& f, const Point& region_center,
                                double region_radius, std::size_t budget, std::uint64_t seed) {
    if (region_radius <= 0.0) throw invalid_input("empirical_lipschitz: radius must be positive");
    const SpaceModel& m = f.model();
    std::mt19937_64 rng(seed);

    BestPair best;
    auto quotient = [&](const Point& a, const Point& b) {
        double d = m.dist(a, b);
        return d > 1e-12 ? m.dist(f(a), f(b)) / d : 0.0;
    };

    auto ext = axis_extremes(m, region_center, region_radius);
    for (std::size_t i = 0; i < ext.size(); ++i)
        for (std::size_t j = i + 1; j < ext.size(); ++j)
            best.offer(ext[i], ext[j], quotient(ext[i], ext[j]));
    for (const Point& e : ext) best.offer(region_center, e, quotient(region_center, e));

    auto cloud = m.ball_sampler(region_center, region_radius, 2 * budget, seed);
    for (std::size_t i = 0; i + 1 < cloud.size(); i += 2)
        best.offer(cloud[i], cloud[i + 1], quotient(cloud[i], cloud[i + 1]));

    auto ok = [&](const Point& a, const Point& b) {
        double slack = 1e-9 * std::max(1.0, region_radius);
        return m.dist(region_center, a) <= region_radius + slack &&
               m.dist(region_center, b) <= region_radius + slack && m.dist(a, b) > 1e-12;
    };
    refine_pair(m, best, region_radius / 8.0, quotient, ok, rng);

    LipEstimate est;
    est.value = std::max(best.value, 0.0);
    est.pairs_tested = budget + ext.size() * ext.size();
    est.region = "ball radius " + std::to_string(region_radius);
    est.seed = seed;
    return est;
}

RakotchGauge rakotch_gauges(const NonexpMap& f, const Point& theta, std::size_t n_max,
                            std::size_t budget, std::uint64_t seed) {
    if (n_max < 1) throw invalid_input("rakotch_gauges: n_max must be >= 1");
    const SpaceModel& m = f.model();
    RakotchGauge g;
    g.n_max = n_max;
    g.gauges.reserve(n_max);

    for (std::size_t n = 1; n <= n_max; ++n) {
        std::mt19937_64 rng(seed + 0x100 * n);
        double sep = 1.0 / static_cast<double>(n);
        double R = static_cast<double>(n);
        BestPair best;
        best.value = 0.0;
        auto quotient = [&](const Point& a, const Point& b) {
            double d = m.dist(a, b);
            return d >= sep ? m.dist(f(a), f(b)) / d : 0.0;
        };

        auto ext = axis_extremes(m, theta, R);
        for (std::size_t i = 0; i < ext.size(); ++i)
            for (std::size_t j = i + 1; j < ext.size(); ++j)
                best.offer(ext[i], ext[j], quotient(ext[i], ext[j]));

        auto cloud = m.ball_sampler(theta, R, 2 * budget, seed + n);
        for (std::size_t i = 0; i + 1 < cloud.size(); i += 2)
            best.offer(cloud[i], cloud[i + 1], quotient(cloud[i], cloud[i + 1]));

        auto ok = [&](const Point& a, const Point& b) {
            double slack = 1e-9 * std::max(1.0, R);
            return m.dist(theta, a) <= R + slack && m.dist(theta, b) <= R + slack &&
                   m.dist(a, b) >= sep;
        };
        refine_pair(m, best, R / 8.0, quotient, ok, rng);
        g.gauges.push_back(std::max(best.value, 0.0));
    }

    // the true sequence is nondecreasing; sampling noise is not
    for (std::size_t i = 1; i < g.gauges.size(); ++i)
        g.gauges[i] = std::max(g.gauges[i], g.gauges[i - 1]);
    return g;
}

}  // namespace hyplab
