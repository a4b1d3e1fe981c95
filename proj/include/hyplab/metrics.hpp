#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hyplab/dense_sequence.hpp"
#include "hyplab/gauge.hpp"
#include "hyplab/mapping.hpp"

namespace hyplab {

struct MetricValue {
    double value = 0.0;       // lower estimate for sup-based parts
    double tail_bound = 0.0;  // certified bound on what truncation can miss
    std::size_t budget_used = 0;
};

/// Lower estimate of sup rho(f(x), g(x)) over the closed ball B(theta, n).
MetricValue d_n_theta(const NonexpMap& f, const NonexpMap& g, std::size_t n, const Point& theta,
                      std::size_t budget, std::uint64_t seed);

/// Truncated series metric sum phi_inv(1/n) d_n/(1+d_n), n = 1..N, with a
/// certified tail bound. Refuses gauges without a summable majorant.
MetricValue series_metric(const NonexpMap& f, const NonexpMap& g, const Point& theta,
                          const Gauge& gauge, std::size_t N, std::size_t budget,
                          std::uint64_t seed);

/// Lower estimate of sup_x rho(f(x), g(x)) / (1 + rho(x, theta)^s) over radius
/// shells 2^0..2^16; for s > 1 the contribution beyond the last shell is
/// certified negligible via rho(f(x), g(x)) <= 2 rho(x, theta) + rho(f(theta), g(theta)).
MetricValue weighted_sup_metric(const NonexpMap& f, const NonexpMap& g, const Point& theta,
                                double s, std::size_t budget, std::uint64_t seed);

/// Truncated pointwise metric sum 2^-n rho(f(z_n), g(z_n))/(1+...), tail 2^-N.
MetricValue pointwise_metric(const NonexpMap& f, const NonexpMap& g, const DenseSequence& seq,
                             std::size_t N);

struct LocalBound {
    bool has_bound = false;
    double bound = 0.0;
};

/// Pointwise bound from a series-metric distance: if d <= phi_inv(1/m)/2 then
/// rho(f(z), g(z)) <= 2 d / phi_inv(1/m) on B(theta, m); otherwise no bound.
LocalBound local_from_global(double d_val, std::size_t m, const Gauge& gauge);

/// Corollary form: d <= (r/2) phi_inv(1/m) implies rho <= r on B(theta, m).
bool local_from_global_r_form(double d_val, std::size_t m, double r, const Gauge& gauge);

/// Variant for m >= 1/phi(eta): d <= r phi_inv(1/(2m)) implies rho <= r.
std::optional<bool> local_from_global_2m_form(double d_val, std::size_t m, double r,
                                              const Gauge& gauge);

enum class MetricFamily { Series, WeightedSup, Pointwise };

struct EquivalenceRow {
    double d1 = 0.0;  // distance w.r.t. theta1
    double d2 = 0.0;  // distance w.r.t. theta2
    double factor = 0.0;
    bool holds = false;
};

struct EquivalenceReport {
    std::vector<EquivalenceRow> rows;
    bool all_hold = false;
};

/// Checks the two-basepoint comparison: d_{theta1} >= d_{theta2} / factor and
/// symmetrically, with factor 2^s (1 + rho(theta1,theta2)^s) for the weighted
/// metric and C_k, k = ceil(rho(theta1,theta2)), for the series metric.
EquivalenceReport basepoint_equivalence_check(MetricFamily kind, const Gauge& gauge, double s,
                                              const Point& theta1, const Point& theta2,
                                              const std::vector<std::pair<NonexpMap, NonexpMap>>& map_pairs,
                                              std::size_t budget, std::uint64_t seed);

struct DivergenceRow {
    std::size_t n = 0;
    double ratio_at_xn = 0.0;        // rho(f_n(x_n), theta) / (1 + rho(x_n, theta))
    double expected = 0.0;           // n / (1 + 2n)
    double sup_on_inner_ball = 0.0;  // sup over sampled B(theta, n) of rho(f_n(x), theta)
    double empirical_lip = 0.0;
};

struct DivergenceReport {
    std::vector<DivergenceRow> rows;
    bool all_above_third = false;
};

/// Reproduces the sequence f_n(x) = (1-lam_n(x)) theta (+) lam_n(x) x_n with
/// rho(theta, x_n) = 2n: uniform convergence to the constant map on bounded
/// sets while d_{theta,1}(f_n, const) stays >= 1/3.
DivergenceReport d_theta1_divergence_demo(std::size_t n_max);

/// The mapping f_n of the demo, exposed for tests.
NonexpMap divergence_demo_map(const std::shared_ptr<const SpaceModel>& model, const Point& theta,
                              std::size_t n);

}  // namespace hyplab
