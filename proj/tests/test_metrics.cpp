#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "hyplab/metrics.hpp"

using namespace hyplab;

namespace {
std::shared_ptr<const SpaceModel> e1() {
    return std::make_shared<const SpaceModel>(SpaceModel::euclidean(1));
}
}  // namespace

TEST_CASE("ball sup distance between two maps") {
    auto m = e1();
    NonexpMap f = NonexpMap::identity(m);
    NonexpMap g = NonexpMap::affine(m, 0.5, {0.0});
    // sup |x - x/2| over |x| <= 4 is exactly 2, attained at the boundary
    MetricValue v = d_n_theta(f, g, 4, Point{0.0}, 200, 17);
    CHECK(v.value == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(v.value <= 2.0 + 1e-9);
    CHECK_THROWS_AS(d_n_theta(f, g, 0, Point{0.0}, 10, 1), invalid_input);
}

TEST_CASE("series metric against a direct-summation oracle") {
    auto m = e1();
    NonexpMap f = NonexpMap::identity(m);
    NonexpMap g = NonexpMap::affine(m, 1.0, {1.0});  // constant gap 1 everywhere
    Gauge log_g = make_log_gauge();

    const std::size_t N = 60;
    MetricValue v = series_metric(f, g, Point{0.0}, log_g, N, 2000, 23);

    // oracle: every d_n equals 1 exactly, so the sum is sum w_n * 1/2
    double oracle = 0.0;
    for (std::size_t n = 1; n <= N; ++n) oracle += log_g.phi_inv(1.0 / n) * 0.5;
    CHECK(v.value == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(v.tail_bound == doctest::Approx(std::exp2(-60.0)));

    // truncation stability: a shorter sum differs by at most its tail bound
    MetricValue v40 = series_metric(f, g, Point{0.0}, log_g, 40, 2000, 23);
    CHECK(std::abs(v.value - v40.value) <= log_g.tail_bound(40) + 1e-15);

    CHECK_THROWS_AS(series_metric(f, g, Point{0.0}, make_psi_gauge(2.0), 10, 100, 1),
                    invalid_input);
}

TEST_CASE("weighted sup metric finds the peak at the basepoint") {
    auto m = e1();
    NonexpMap f = NonexpMap::identity(m);
    NonexpMap g = NonexpMap::affine(m, 1.0, {1.0});
    // sup 1 / (1 + |x|^2) = 1 at x = 0
    MetricValue v = weighted_sup_metric(f, g, Point{0.0}, 2.0, 400, 31);
    CHECK(v.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(v.value <= 1.0 + 1e-9);
    CHECK(v.tail_bound >= 0.0);
    CHECK_THROWS_AS(weighted_sup_metric(f, g, Point{0.0}, 0.5, 100, 1), invalid_input);
}

TEST_CASE("pointwise metric over the dense sequence") {
    auto m = e1();
    DenseSequence seq(m);
    NonexpMap f = NonexpMap::identity(m);

    MetricValue zero = pointwise_metric(f, f, seq, 30);
    CHECK(zero.value == doctest::Approx(0.0));
    CHECK(zero.tail_bound == doctest::Approx(std::exp2(-30.0)));

    // constant gap 1: the series is exactly sum 2^-n * 1/2 = (1 - 2^-N)/2
    NonexpMap g = NonexpMap::affine(m, 1.0, {1.0});
    MetricValue v = pointwise_metric(f, g, seq, 30);
    CHECK(v.value == doctest::Approx(0.5 * (1.0 - std::exp2(-30.0))).epsilon(1e-12));
}

TEST_CASE("dense sequence is deterministic and stays in the model") {
    auto h = std::make_shared<const SpaceModel>(SpaceModel::hyperboloid2());
    DenseSequence a(h), b(h);
    for (std::size_t n = 1; n <= 64; ++n) {
        CHECK(h->contains(a.at(n), 1e-6));
        // determinism is bitwise: two sequences over the same model agree exactly
        const Point &p = a.at(n), &q = b.at(n);
        REQUIRE(p.size() == q.size());
        for (std::size_t k = 0; k < p.size(); ++k) CHECK(p[k] == q[k]);
    }
}

TEST_CASE("small global distance gives a pointwise bound on balls") {
    Gauge log_g = make_log_gauge();
    // m = 1: weight phi_inv(1) = 1/2, threshold d <= 1/4
    LocalBound b = local_from_global(0.2, 1, log_g);
    CHECK(b.has_bound);
    CHECK(b.bound == doctest::Approx(0.8).epsilon(1e-12));
    CHECK_FALSE(local_from_global(0.3, 1, log_g).has_bound);
    CHECK_THROWS_AS(local_from_global(-0.1, 1, log_g), invalid_input);

    CHECK(local_from_global_r_form(0.2, 1, 0.8, log_g));
    CHECK_FALSE(local_from_global_r_form(0.21, 1, 0.8, log_g));

    // the 2m variant needs m >= 1/phi(eta) ~ 2.885 for the log gauge
    CHECK_FALSE(local_from_global_2m_form(0.1, 2, 0.5, log_g).has_value());
    auto ok = local_from_global_2m_form(0.0, 3, 0.5, log_g);
    REQUIRE(ok.has_value());
    CHECK(*ok);
}

TEST_CASE("pointwise bound is sound for a concrete pair") {
    auto m = e1();
    Gauge log_g = make_log_gauge();
    NonexpMap f = NonexpMap::identity(m);
    double eps = 1e-3;
    NonexpMap g = NonexpMap::affine(m, 1.0, {eps});

    for (std::size_t mm : {1, 2, 5}) {
        MetricValue d = series_metric(f, g, Point{0.0}, log_g, 60, 1000, 7);
        LocalBound b = local_from_global(d.value + d.tail_bound, mm, log_g);
        REQUIRE(b.has_bound);
        // the true pointwise gap on B(0, m) is eps everywhere
        CHECK(b.bound >= eps - 1e-15);
    }
}

TEST_CASE("changing the basepoint changes the metric by a bounded factor") {
    auto m = e1();
    std::vector<std::pair<NonexpMap, NonexpMap>> pairs;
    pairs.emplace_back(NonexpMap::identity(m), NonexpMap::affine(m, 1.0, {1.0}));
    pairs.emplace_back(NonexpMap::affine(m, 0.5, {0.0}), NonexpMap::affine(m, 0.5, {2.0}));

    Point t1{0.0}, t2{1.0};
    EquivalenceReport w =
        basepoint_equivalence_check(MetricFamily::WeightedSup, make_log_gauge(), 2.0, t1, t2,
                                    pairs, 300, 5);
    CHECK(w.all_hold);
    for (const auto& row : w.rows) CHECK(row.factor == doctest::Approx(8.0));  // 2^2 (1 + 1^2)

    EquivalenceReport s = basepoint_equivalence_check(MetricFamily::Series, make_log_gauge(), 0.0,
                                                      t1, t2, pairs, 300, 5);
    CHECK(s.all_hold);
    for (const auto& row : s.rows) CHECK(row.factor == doctest::Approx(2.0));  // C_1 = 2
}

TEST_CASE("divergence demo: uniform convergence but normalized gap >= 1/3") {
    DivergenceReport rep = d_theta1_divergence_demo(8);
    REQUIRE(rep.rows.size() == 6);  // n = 3..8
    CHECK(rep.all_above_third);
    for (const auto& row : rep.rows) {
        double expected = static_cast<double>(row.n) / (1.0 + 2.0 * static_cast<double>(row.n));
        CHECK(row.expected == doctest::Approx(expected).epsilon(1e-15));
        CHECK(std::abs(row.ratio_at_xn - expected) <= 1e-9);
        // f_n collapses B(theta, n) to theta: the maps converge uniformly there
        CHECK(row.sup_on_inner_ball <= 1e-12);
        CHECK(row.empirical_lip <= 1.0 + 1e-6);
    }
    CHECK_THROWS_AS(d_theta1_divergence_demo(2), invalid_input);
}
