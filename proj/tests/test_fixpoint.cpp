#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "hyplab/fixpoint.hpp"

using namespace hyplab;

namespace {
std::shared_ptr<const SpaceModel> e1() {
    return std::make_shared<const SpaceModel>(SpaceModel::euclidean(1));
}
}  // namespace

TEST_CASE("picard iteration converges for a strict contraction") {
    auto m = e1();
    NonexpMap f = NonexpMap::affine(m, 0.5, {1.0});  // fixed point at 2
    for (double start : {0.0, 100.0}) {
        FixedPointReport rep = iterate(f, Point{start}, 1e-8);
        CHECK(rep.converged);
        CHECK(rep.iterations <= 60);
        CHECK(std::abs(rep.final_point[0] - 2.0) <= 1e-7);
        REQUIRE(rep.error_bound.has_value());
        CHECK(std::abs(rep.final_point[0] - 2.0) <= *rep.error_bound + 1e-15);
        // residuals are recorded from step 0 and decrease for this map
        REQUIRE_FALSE(rep.trajectory_sample.empty());
        CHECK(rep.trajectory_sample.front().first == 0);
        for (std::size_t i = 1; i < rep.trajectory_sample.size(); ++i)
            CHECK(rep.trajectory_sample[i].second <= rep.trajectory_sample[i - 1].second + 1e-15);
    }
    CHECK_THROWS_AS(iterate(f, Point{0.0}, 0.0), invalid_input);
}

TEST_CASE("picard iteration reports non-convergence for a translation") {
    auto m = e1();
    NonexpMap f = NonexpMap::affine(m, 1.0, {1.0});
    FixedPointReport rep = iterate(f, Point{0.0}, 1e-8, 2000);
    CHECK_FALSE(rep.converged);
    CHECK(rep.residual == doctest::Approx(1.0));
    CHECK_FALSE(rep.error_bound.has_value());
}

TEST_CASE("trajectory thinning keeps the record small on long runs") {
    auto m = e1();
    // slow contraction from far away: many iterations but few records
    NonexpMap f = NonexpMap::affine(m, 0.999, {0.0});
    FixedPointReport rep = iterate(f, Point{1000.0}, 1e-6, 50000);
    CHECK(rep.converged);
    CHECK(rep.iterations > 1000);
    CHECK(rep.trajectory_sample.size() < 1200);
}

TEST_CASE("ball invariance check") {
    auto m = e1();
    NonexpMap f = NonexpMap::affine(m, 11.0 / 12.0, {1.0});  // maps [-24,24] into [-21,23]
    BallInvarianceResult r24 = ball_invariance_check(f, Point{0.0}, 24.0, 2000, 3);
    CHECK(r24.invariant);
    CHECK(r24.worst_margin <= -1.0 + 1e-9);

    BallInvarianceResult r30 = ball_invariance_check(f, Point{0.0}, 30.0, 2000, 3);
    CHECK(r30.invariant);  // every larger ball still maps into itself

    NonexpMap shift = NonexpMap::affine(m, 1.0, {1.0});
    BallInvarianceResult bad = ball_invariance_check(shift, Point{0.0}, 5.0, 2000, 3);
    CHECK_FALSE(bad.invariant);
    CHECK(bad.worst_margin == doctest::Approx(1.0).epsilon(1e-9));

    CHECK_THROWS_AS(ball_invariance_check(f, Point{0.0}, 0.0, 10, 1), invalid_input);
}

TEST_CASE("rakotch convergence audit: step gauge and unique limit") {
    auto m = e1();
    NonexpMap f = NonexpMap::affine(m, 0.5, {1.0});
    RakotchGauge gauge = rakotch_gauges(f, Point{0.0}, 4, 300, 9);
    // affine contraction reports its Lipschitz constant in every slot
    for (double v : gauge.gauges) CHECK(v == doctest::Approx(0.5).epsilon(1e-6));

    RakotchAuditReport audit = rakotch_convergence_audit(f, Point{0.0}, Point{10.0}, gauge, 1e-8);
    CHECK(audit.run.converged);
    CHECK(audit.second_run.converged);
    CHECK(audit.step_gauge_ok);
    CHECK(audit.worst_step_violation <= 1e-8);
    CHECK(audit.unique_limit);
    CHECK(audit.limit_gap <= 1e-7);

    CHECK_THROWS_AS(rakotch_convergence_audit(f, Point{0.0}, Point{0.0}, RakotchGauge{}, 1e-8),
                    invalid_input);
}
