#include "hyplab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hyplab {

namespace {

Point random_hint(const SpaceModel& m, const Point& at, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Point h = at;
    for (double& c : h.coords) c += gauss(rng);
    return h;
}

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

// sup over x of objective(x), seeded with candidates and refined locally
template <typename Objective, typename Constraint>
double refine_sup(const SpaceModel& m, std::vector<Point> candidates, double scale, Objective obj,
                  Constraint ok, std::mt19937_64& rng) {
    double best = 0.0;
    Point arg;
    for (const Point& p : candidates) {
        double v = obj(p);
        if (v > best) {
            best = v;
            arg = p;
        }
    }
    if (arg.size() == 0) return best;
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int round = 0; round < 5; ++round) {
        double sigma = scale * std::pow(0.5, round + 1);
        for (int k = 0; k < 16; ++k) {
            Point nx =
                m.point_at_distance(arg, sigma * std::abs(gauss(rng)), random_hint(m, arg, rng))
                    .point;
            if (!ok(nx)) continue;
            double v = obj(nx);
            if (v > best) {
                best = v;
                arg = nx;
            }
        }
    }
    return best;
}

}  // namespace

MetricValue d_n_theta(const NonexpMap& f, const NonexpMap& g, std::size_t n, const Point& theta,
                      std::size_t budget, std::uint64_t seed) {
    if (n < 1) throw invalid_input("d_n_theta: n must be >= 1");
    const SpaceModel& m = f.model();
    std::mt19937_64 rng(seed);
    double R = static_cast<double>(n);

    auto obj = [&](const Point& x) { return m.dist(f(x), g(x)); };
    auto ok = [&](const Point& x) { return m.dist(theta, x) <= R + 1e-9 * std::max(1.0, R); };

    std::vector<Point> cand = axis_extremes(m, theta, R);
    cand.push_back(theta);
    auto cloud = m.ball_sampler(theta, R, budget, seed);
    cand.insert(cand.end(), cloud.begin(), cloud.end());

    MetricValue v;
    v.value = refine_sup(m, std::move(cand), R / 8.0, obj, ok, rng);
    v.tail_bound = 0.0;
    v.budget_used = budget;
    return v;
}

MetricValue series_metric(const NonexpMap& f, const NonexpMap& g, const Point& theta,
                          const Gauge& gauge, std::size_t N, std::size_t budget,
                          std::uint64_t seed) {
    if (N < 1) throw invalid_input("series_metric: N must be >= 1");
    if (!gauge.summable())
        throw invalid_input("series_metric: gauge '" + gauge.name +
                            "' has no summable tail majorant");
    std::size_t per_n = std::max<std::size_t>(16, budget / N);
    MetricValue out;
    for (std::size_t n = 1; n <= N; ++n) {
        double w = gauge.phi_inv(1.0 / static_cast<double>(n));
        if (w <= 0.0) continue;
        MetricValue dn = d_n_theta(f, g, n, theta, per_n, seed + 0x1000 * n);
        out.value += w * dn.value / (1.0 + dn.value);
        out.budget_used += dn.budget_used;
    }
    out.tail_bound = gauge.tail_bound(N);
    return out;
}

MetricValue weighted_sup_metric(const NonexpMap& f, const NonexpMap& g, const Point& theta,
                                double s, std::size_t budget, std::uint64_t seed) {
    if (s < 1.0) throw invalid_input("weighted_sup_metric: s must be >= 1");
    const SpaceModel& m = f.model();
    std::mt19937_64 rng(seed);

    auto obj = [&](const Point& x) {
        return m.dist(f(x), g(x)) / (1.0 + std::pow(m.dist(x, theta), s));
    };
    auto ok = [&](const Point&) { return true; };

    const int kShells = 17;
    std::size_t per_shell = std::max<std::size_t>(8, budget / kShells);
    std::vector<Point> cand = {theta};
    for (int j = 0; j < kShells; ++j) {
        double R = std::exp2(static_cast<double>(j));
        auto ext = axis_extremes(m, theta, R);
        cand.insert(cand.end(), ext.begin(), ext.end());
        auto cloud = m.ball_sampler(theta, R, per_shell, seed + 7 * static_cast<unsigned>(j));
        cand.insert(cand.end(), cloud.begin(), cloud.end());
    }

    MetricValue out;
    out.value = refine_sup(m, std::move(cand), 1.0, obj, ok, rng);
    out.budget_used = per_shell * kShells;

    // beyond the last shell: rho(f(x),g(x)) <= 2 rho(x,theta) + rho(f(theta),g(theta))
    double T = std::exp2(16.0);
    double c0 = m.dist(f(theta), g(theta));
    double beyond = (2.0 * T + c0) / (1.0 + std::pow(T, s));
    out.tail_bound = std::max(0.0, beyond - out.value);
    return out;
}

MetricValue pointwise_metric(const NonexpMap& f, const NonexpMap& g, const DenseSequence& seq,
                             std::size_t N) {
    if (N < 1) throw invalid_input("pointwise_metric: N must be >= 1");
    const SpaceModel& m = f.model();
    MetricValue out;
    for (std::size_t n = 1; n <= N; ++n) {
        double d = m.dist(f(seq.at(n)), g(seq.at(n)));
        out.value += std::exp2(-static_cast<double>(n)) * d / (1.0 + d);
    }
    out.tail_bound = std::exp2(-static_cast<double>(N));
    out.budget_used = N;
    return out;
}

LocalBound local_from_global(double d_val, std::size_t m, const Gauge& gauge) {
    if (m < 1 || d_val < 0) throw invalid_input("local_from_global: bad inputs");
    double w = gauge.phi_inv(1.0 / static_cast<double>(m));
    LocalBound b;
    if (d_val <= 0.5 * w) {
        b.has_bound = true;
        b.bound = 2.0 * d_val / w;
    }
    return b;
}

bool local_from_global_r_form(double d_val, std::size_t m, double r, const Gauge& gauge) {
    double w = gauge.phi_inv(1.0 / static_cast<double>(m));
    return d_val <= 0.5 * r * w;
}

std::optional<bool> local_from_global_2m_form(double d_val, std::size_t m, double r,
                                              const Gauge& gauge) {
    if (static_cast<double>(m) < 1.0 / gauge.phi(gauge.eta_phi)) return std::nullopt;
    double w = gauge.phi_inv(1.0 / (2.0 * static_cast<double>(m)));
    return d_val <= r * w;
}

EquivalenceReport basepoint_equivalence_check(
    MetricFamily kind, const Gauge& gauge, double s, const Point& theta1, const Point& theta2,
    const std::vector<std::pair<NonexpMap, NonexpMap>>& map_pairs, std::size_t budget,
    std::uint64_t seed) {
    if (map_pairs.empty()) throw invalid_input("basepoint_equivalence_check: no map pairs");
    EquivalenceReport rep;
    rep.all_hold = true;
    const SpaceModel& m = map_pairs.front().first.model();
    double sep = m.dist(theta1, theta2);

    for (const auto& [f, g] : map_pairs) {
        EquivalenceRow row;
        if (kind == MetricFamily::WeightedSup) {
            row.factor = std::pow(2.0, s) * (1.0 + std::pow(sep, s));
            row.d1 = weighted_sup_metric(f, g, theta1, s, budget, seed).value;
            row.d2 = weighted_sup_metric(f, g, theta2, s, budget, seed + 1).value;
        } else {
            int k = std::max(1, static_cast<int>(std::ceil(sep)));
            row.factor = gauge.closed_form_ck ? gauge.closed_form_ck(k) : 0.0;
            row.d1 = series_metric(f, g, theta1, gauge, 60, budget, seed).value;
            row.d2 = series_metric(f, g, theta2, gauge, 60, budget, seed + 1).value;
        }
        // sampled sups only weaken the true inequality; allow slack for it
        double slack = 1e-7 + 0.05 * std::max(row.d1, row.d2);
        row.holds = row.factor > 0.0 && row.d2 <= row.factor * row.d1 + slack &&
                    row.d1 <= row.factor * row.d2 + slack;
        rep.all_hold = rep.all_hold && row.holds;
        rep.rows.push_back(row);
    }
    return rep;
}

NonexpMap divergence_demo_map(const std::shared_ptr<const SpaceModel>& model, const Point& theta,
                              std::size_t n) {
    double dn = static_cast<double>(n);
    Point xn = model->point_at_distance(theta, 2.0 * dn).point;
    auto fn = [model, theta, xn, dn](const Point& x) {
        double lam = 0.5 * std::max(1.0 - model->dist(x, xn) / dn, 0.0);
        return model->combine(theta, xn, lam);
    };
    return NonexpMap::from_function(model, std::move(fn), 1.0,
                                    "divergence-demo(n=" + std::to_string(n) + ")");
}

DivergenceReport d_theta1_divergence_demo(std::size_t n_max) {
    if (n_max < 3) throw invalid_input("d_theta1_divergence_demo: n_max must be >= 3");
    auto model = std::make_shared<const SpaceModel>(SpaceModel::euclidean(1));
    Point theta = model->origin();
    DivergenceReport rep;
    rep.all_above_third = true;

    for (std::size_t n = 3; n <= n_max; ++n) {
        double dn = static_cast<double>(n);
        NonexpMap fn = divergence_demo_map(model, theta, n);
        Point xn = model->point_at_distance(theta, 2.0 * dn).point;

        DivergenceRow row;
        row.n = n;
        row.expected = dn / (1.0 + 2.0 * dn);
        double num = model->dist(fn(xn), theta);
        row.ratio_at_xn = num / (1.0 + model->dist(xn, theta));

        double sup = 0.0;
        auto cloud = model->ball_sampler(theta, dn * (1.0 - 1e-12), 512, 11 * n);
        for (const Point& x : cloud) sup = std::max(sup, model->dist(fn(x), theta));
        row.sup_on_inner_ball = sup;

        row.empirical_lip =
            empirical_lipschitz(fn, theta, 3.0 * dn, 2000, 13 * n + 1).value;

        rep.all_above_third = rep.all_above_third && row.ratio_at_xn >= 1.0 / 3.0 - 1e-12;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace hyplab
