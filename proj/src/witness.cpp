#include "hyplab/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace hyplab {

namespace {

// sum phi_inv(1/n) over n >= 1; bounded by C_phi, used in closed-form bounds
double phi_inv_sum(const Gauge& g, std::size_t upto = 2000) {
    double s = 0.0;
    for (std::size_t n = 1; n <= upto; ++n) s += g.phi_inv(1.0 / static_cast<double>(n));
    return s + (g.tail_bound ? g.tail_bound(upto) : 0.0);
}

double dist_between(const PorosityWitness& w, const NonexpMap& a, const NonexpMap& b,
                    std::size_t budget, std::uint64_t seed, double* tail) {
    MetricValue v;
    switch (w.metric_kind) {
        case MetricFamily::Series:
            v = series_metric(a, b, w.theta, w.gauge, 60, budget, seed);
            break;
        case MetricFamily::WeightedSup:
            v = weighted_sup_metric(a, b, w.theta, w.s, budget, seed);
            break;
        case MetricFamily::Pointwise:
            v = pointwise_metric(a, b, *w.seq, w.trunc_N);
            break;
    }
    if (tail) *tail = v.tail_bound;
    return v.value;
}

struct Member {
    NonexpMap h;
    std::string construction;
    double certified = 0.0;
};

// h(x) = (1-t) g(x) (+) t q with q at distance c from g(theta); the image
// displacement is at most t (rho(x,theta) + c), giving the closed-form bounds.
NonexpMap comb_with_constant(const NonexpMap& g, const Point& q, double t) {
    auto m = g.model_ptr();
    NonexpMap base = g;
    auto fn = [m, base, q, t](const Point& x) { return m->combine(base(x), q, t); };
    return NonexpMap::from_function(m, std::move(fn), (1.0 - t) * g.claimed_lip(),
                                    "comb-const(" + base.provenance() + ")");
}

Member make_member(const PorosityWitness& w, std::size_t i, std::uint64_t seed) {
    const NonexpMap& g = w.center_g;
    auto model = g.model_ptr();
    double target = w.radius / 1.1;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.3, 0.9);
    double diversify = uni(rng);

    double sum_pi = 0.0;
    if (w.metric_kind == MetricFamily::Series) sum_pi = phi_inv_sum(w.gauge);

    // closed-form certified distance bound for a map whose image displacement
    // relative to g is at most k1*rho(x,theta) + k0 everywhere
    auto bound_for = [&](const NonexpMap& h, double k1, double k0) {
        switch (w.metric_kind) {
            case MetricFamily::Series:
                return k1 * w.gauge.C_phi + k0 * sum_pi;
            case MetricFamily::WeightedSup:
                return k1 + k0;
            case MetricFamily::Pointwise: {
                MetricValue v = pointwise_metric(g, h, *w.seq, w.trunc_N);
                return v.value + v.tail_bound;
            }
        }
        return 0.0;
    };

    int type = i == 0 ? -1 : static_cast<int>(i % 3);
    double L = g.claimed_lip();
    if (type == 1 && L >= 1.0 - 1e-12) type = 2;  // collapse-compose needs slack below 1

    if (type == -1) return Member{g, "center", 0.0};

    if (type == 0) {
        // small contraction toward the basepoint value
        double gamma = std::min(0.5, target * diversify);
        for (int k = 0; k < 300; ++k) {
            NonexpMap h = contract_toward(g, w.theta, gamma);
            double b = bound_for(h, gamma, 0.0);
            if (b <= target) return Member{std::move(h), "contract", b};
            gamma *= 0.5;
        }
        throw invalid_input("verify_witness: could not fit contract member in radius");
    }

    if (type == 1) {
        // compose with a small radial collapse far from the basepoint
        double eps_c = (1.0 - L) / std::max(L, 0.5);
        Point far = model->point_at_distance(w.theta, 5.0 + static_cast<double>(i % 7)).point;
        double R = std::min(0.5, target * diversify);
        for (int k = 0; k < 300; ++k) {
            NonexpMap pi = radial_collapse(model, far, R, eps_c);
            NonexpMap base = g;
            NonexpMap pim = pi;
            auto fn = [base, pim](const Point& x) { return base(pim(x)); };
            NonexpMap h = NonexpMap::from_function(model, std::move(fn), L * (1.0 + eps_c),
                                                   "collapse-compose(" + g.provenance() + ")");
            double b = bound_for(h, 0.0, R);
            if (b <= target) return Member{std::move(h), "collapse-compose", b};
            R *= 0.5;
        }
        throw invalid_input("verify_witness: could not fit collapse member in radius");
    }

    // convex combination with a constant value near g(theta)
    double c = 0.5;
    Point q = model->point_at_distance(g(w.theta), c).point;
    double t = std::min(0.5, target * diversify / (1.0 + c));
    for (int k = 0; k < 300; ++k) {
        NonexpMap h = comb_with_constant(g, q, t);
        double b = bound_for(h, t, t * c);
        if (b <= target) return Member{std::move(h), "comb-const", b};
        t *= 0.5;
    }
    throw invalid_input("verify_witness: could not fit comb-const member in radius");
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

WitnessMemberRow eval_predicate(const PorosityWitness& w, const Member& mem, std::size_t budget,
                                std::uint64_t seed) {
    WitnessMemberRow row;
    row.construction = mem.construction;
    row.certified_distance = mem.certified;
    const NonexpMap& h = mem.h;
    const SpaceModel& m = h.model();
    const double strict = 1e-9;

    switch (w.kind) {
        case WitnessKind::BallInvariance: {
            double worst = m.dist(h(w.theta), w.theta);
            for (const Point& p : axis_extremes(m, w.theta, w.M_f))
                worst = std::max(worst, m.dist(h(p), w.theta));
            for (const Point& p : m.ball_sampler(w.theta, w.M_f, budget, seed))
                worst = std::max(worst, m.dist(h(p), w.theta));
            row.measured = worst;
            row.margin = w.M_f - worst;
            row.passed = worst <= w.M_f + strict;
            break;
        }
        case WitnessKind::RakotchGaugeBelowOne: {
            double R = static_cast<double>(w.n);
            double min_sep = 1.0 / static_cast<double>(w.n);
            std::vector<Point> pts = axis_extremes(m, w.theta, R);
            auto cloud = m.ball_sampler(w.theta, R, budget, seed);
            pts.insert(pts.end(), cloud.begin(), cloud.end());
            double worst = 0.0;
            for (std::size_t a = 0; a + 1 < pts.size(); ++a) {
                for (std::size_t b = a + 1; b < std::min(pts.size(), a + 32); ++b) {
                    double d = m.dist(pts[a], pts[b]);
                    if (d < min_sep) continue;
                    worst = std::max(worst, m.dist(h(pts[a]), h(pts[b])) / d);
                }
            }
            row.measured = worst;
            row.margin = 1.0 - worst;
            row.passed = worst < 1.0 - strict;
            break;
        }
        case WitnessKind::ModulusExceeds: {
            double v = m.dist(h(w.x0), h(w.y0));
            row.measured = v;
            row.margin = v - w.mu * w.t0;
            row.passed = v > w.mu * w.t0 + strict;
            break;
        }
        case WitnessKind::ShrinkPair: {
            auto xi = m.ball_sampler(w.pair_x, w.r_pair, std::min<std::size_t>(budget, 400), seed);
            auto eta =
                m.ball_sampler(w.pair_y, w.r_pair, std::min<std::size_t>(budget, 400), seed + 1);
            xi.push_back(w.pair_x);
            eta.push_back(w.pair_y);
            double worst = std::numeric_limits<double>::infinity();
            for (const Point& a : xi) {
                for (const Point& b : eta) {
                    double d = m.dist(a, b);
                    if (d <= 0.0) continue;
                    worst = std::min(worst, d - m.dist(h(a), h(b)));
                }
            }
            row.measured = worst;
            row.margin = worst;
            row.passed = worst > 1e-12;
            break;
        }
    }
    return row;
}

}  // namespace

PorosityWitness ball_invariance_witness(const NonexpMap& f, double r, const Point& theta,
                                        MetricFamily metric_kind, const Gauge& gauge, double s) {
    PorosityWitness w;
    w.kind = WitnessKind::BallInvariance;
    w.metric_kind = metric_kind;
    w.gauge = gauge;
    w.s = s;
    w.base_f = f;
    w.theta = theta;
    w.r = r;
    const SpaceModel& m = f.model();
    double c0 = m.dist(f(theta), theta);

    if (metric_kind == MetricFamily::Series) {
        double r0 = std::min(1.0, gauge.phi(gauge.eta_phi));
        if (r <= 0.0 || r >= r0) throw invalid_input("ball_invariance_witness: r outside (0,r0)");
        double C = gauge.C_phi;
        double gamma = r / (3.0 * C);
        double alpha = 1.0 / std::sqrt(12.0 * C * (c0 + 2.0));
        double alpha_tilde = 1.0 / (12.0 * C * (c0 + 2.0) + 1.0);
        w.center_g = contract_toward(f, theta, gamma);
        w.M_f = (1.0 + c0) / gamma;
        w.radius = gauge.condition_flags[4] ? gauge.phi_inv(alpha_tilde * r)
                                            : gauge.phi_inv(alpha * r * alpha * r);
        w.center_dist_bound = C * gamma;
        w.params = {{"gamma", gamma},   {"M_f", w.M_f},
                    {"alpha", alpha},   {"alpha_tilde", alpha_tilde},
                    {"C_phi", C},       {"r0", r0},
                    {"c0", c0}};
    } else if (metric_kind == MetricFamily::WeightedSup) {
        if (r <= 0.0 || r >= 1.0) throw invalid_input("ball_invariance_witness: r outside (0,1)");
        double gamma = r / 3.0;
        double alpha_s = 1.0 / (6.0 * (2.0 + c0));
        w.center_g = contract_toward(f, theta, gamma);
        w.M_f = (1.0 + c0) / gamma;
        w.radius = std::pow(alpha_s * r, s);
        w.center_dist_bound = gamma;
        w.params = {{"gamma", gamma}, {"M_f", w.M_f}, {"alpha_s", alpha_s}, {"s", s}, {"c0", c0}};
    } else {
        throw invalid_input("ball_invariance_witness: pointwise metric not supported");
    }
    return w;
}

PorosityWitness rakotch_witness(const NonexpMap& f, double r, std::size_t n, const Point& theta,
                                MetricFamily metric_kind, const Gauge& gauge, double s) {
    if (r <= 0.0 || r >= 1.0) throw invalid_input("rakotch_witness: r outside (0,1)");
    if (n < 1) throw invalid_input("rakotch_witness: n must be >= 1");
    PorosityWitness w;
    w.kind = WitnessKind::RakotchGaugeBelowOne;
    w.metric_kind = metric_kind;
    w.gauge = gauge;
    w.s = s;
    w.base_f = f;
    w.theta = theta;
    w.r = r;
    w.n = n;
    double dn = static_cast<double>(n);

    if (metric_kind == MetricFamily::Series) {
        double C = gauge.C_phi;
        double alpha = gauge.phi_inv(1.0 / dn) / (8.0 * dn * C);
        double gamma = 0.75 * r / C;  // midpoint of (r/(2C), r/C)
        w.center_g = contract_toward(f, theta, gamma);
        w.radius = alpha * r;
        w.center_dist_bound = C * gamma;
        w.quotient_bound = 1.0 - gamma + r / (2.0 * C);
        w.params = {{"gamma", gamma}, {"alpha", alpha}, {"C_phi", C}, {"n", dn}};
    } else if (metric_kind == MetricFamily::WeightedSup) {
        double alpha = 1.0 / (4.0 * dn * (1.0 + std::pow(dn, s)));
        double gamma = 0.75 * r;  // midpoint of (r/2, r)
        w.center_g = contract_toward(f, theta, gamma);
        w.radius = alpha * r;
        w.center_dist_bound = gamma;
        w.quotient_bound = 1.0 - gamma + r / 2.0;
        w.params = {{"gamma", gamma}, {"alpha", alpha}, {"s", s}, {"n", dn}};
    } else {
        throw invalid_input("rakotch_witness: pointwise metric not supported");
    }
    return w;
}

PorosityWitness modcont_witness(const NonexpMap& f, double r, double t0, double mu,
                                const Point& theta, MetricFamily metric_kind, const Gauge& gauge,
                                double s) {
    if (t0 <= 0.0) throw invalid_input("modcont_witness: t0 must be positive");
    if (mu <= 0.0 || mu >= 1.0) throw invalid_input("modcont_witness: mu outside (0,1)");
    PorosityWitness w;
    w.kind = WitnessKind::ModulusExceeds;
    w.metric_kind = metric_kind;
    w.gauge = gauge;
    w.s = s;
    w.base_f = f;
    w.theta = theta;
    w.r = r;
    w.t0 = t0;
    w.mu = mu;
    double eps = std::min(t0 * (1.0 - mu) / 8.0, 0.5);
    double lam = 0.5 * (1.0 + mu);

    if (metric_kind == MetricFamily::Series) {
        double r0 = std::min(1.0, gauge.phi(gauge.eta_phi));
        if (r <= 0.0 || r >= r0) throw invalid_input("modcont_witness: r outside (0,r0)");
        double C = gauge.C_phi;
        double alpha = eps / (4.0 + 16.0 * t0 * C);
        double N = std::ceil(4.0 * C * t0 / r);
        double gamma = r / (4.0 * C);
        NonexpMap ftilde = contract_toward(f, theta, gamma);
        EnlargeResult er = enlarge_modulus(ftilde, theta, gamma, lam, t0, N);
        w.center_g = er.g;
        w.x0 = er.x0;
        w.y0 = er.y0;
        w.radius = gauge.phi_inv(alpha * r);
        w.center_dist_bound = C * gamma + 2.0 * t0 * C / N;
        w.params = {{"eps", eps},     {"alpha", alpha}, {"N", N},
                    {"gamma", gamma}, {"lambda", lam},  {"C_phi", C}};
    } else if (metric_kind == MetricFamily::WeightedSup) {
        if (r <= 0.0 || r >= 1.0) throw invalid_input("modcont_witness: r outside (0,1)");
        double alpha = std::pow(eps, 1.0 / s) / (1.0 + 2.0 * t0 + std::pow(4.0 * t0, 1.0 / s));
        double R = std::pow(4.0 * t0, 1.0 / s) / r;
        double gamma = r / 2.0;
        NonexpMap ftilde = contract_toward(f, theta, gamma);
        EnlargeResult er = enlarge_modulus(ftilde, theta, gamma, lam, t0, R);
        w.center_g = er.g;
        w.x0 = er.x0;
        w.y0 = er.y0;
        w.radius = std::pow(alpha * r, s);
        w.center_dist_bound = gamma + 2.0 * t0 / (1.0 + std::pow(R, s));
        w.params = {{"eps", eps},     {"alpha", alpha}, {"R", R},
                    {"gamma", gamma}, {"lambda", lam},  {"s", s}};
    } else {
        throw invalid_input("modcont_witness: pointwise metric not supported");
    }
    return w;
}

PorosityWitness shrink_witness(const NonexpMap& f, const Point& x, const Point& y,
                               std::shared_ptr<DenseSequence> seq, double gamma, double eps) {
    const SpaceModel& m = f.model();
    double dxy = m.dist(x, y);
    if (dxy <= m.tolerance()) throw invalid_input("shrink_witness: x and y must be distinct");
    if (gamma <= 0.0 || gamma >= 1.0) throw invalid_input("shrink_witness: gamma outside (0,1)");
    if (eps <= 0.0) throw invalid_input("shrink_witness: eps must be positive");

    PorosityWitness w;
    w.kind = WitnessKind::ShrinkPair;
    w.metric_kind = MetricFamily::Pointwise;
    w.base_f = f;
    w.theta = m.origin();
    w.seq = std::move(seq);
    w.r = eps;
    w.pair_x = x;
    w.pair_y = y;

    w.center_g = contract_toward(f, w.theta, gamma);
    double L = w.center_g.claimed_lip();
    w.r_pair = (1.0 - L) * dxy / 10.0;

    // locate dense-sequence points inside the two pair balls
    const std::size_t kScanLimit = 20000;
    std::size_t m1 = 0, m2 = 0;
    for (std::size_t i = 1; i <= kScanLimit && (m1 == 0 || m2 == 0); ++i) {
        const Point& z = w.seq->at(i);
        if (m1 == 0 && m.dist(x, z) < w.r_pair) m1 = i;
        if (m2 == 0 && m.dist(y, z) < w.r_pair) m2 = i;
    }
    if (m1 == 0 || m2 == 0)
        throw invalid_input("shrink_witness: no dense-sequence point found near the pair");

    std::size_t m_max = std::max(m1, m2);
    w.radius = std::exp2(-static_cast<double>(m_max)) * w.r_pair / (1.0 + w.r_pair);
    w.trunc_N = m_max + 40;

    MetricValue cd = pointwise_metric(f, w.center_g, *w.seq, w.trunc_N);
    w.center_dist_bound = cd.value + cd.tail_bound;
    w.params = {{"gamma", gamma},
                {"L", L},
                {"r_pair", w.r_pair},
                {"m1", static_cast<double>(m1)},
                {"m2", static_cast<double>(m2)}};
    return w;
}

WitnessReport verify_witness(const PorosityWitness& w, std::size_t member_count,
                             std::uint64_t seed, std::size_t budget) {
    WitnessReport rep;
    rep.center_distance_estimate =
        dist_between(w, w.base_f, w.center_g, budget, seed, &rep.center_distance_tail);
    rep.center_distance_bound = w.center_dist_bound;
    rep.center_certified = w.center_dist_bound < w.r &&
                           rep.center_distance_estimate + rep.center_distance_tail <
                               w.r * (1.0 + 1e-9);

    for (std::size_t i = 0; i < member_count; ++i) {
        Member mem = make_member(w, i, seed + 0x9E3779B97F4A7C15ull * (i + 1));
        WitnessMemberRow row = eval_predicate(w, mem, budget, seed + 31 * i);
        row.index = i;
        if (row.passed)
            ++rep.passes;
        else
            ++rep.failures;
        rep.rows.push_back(std::move(row));
    }
    rep.all_passed = rep.center_certified && rep.failures == 0;
    return rep;
}

}  // namespace hyplab
