#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>

#include "hyplab/witness.hpp"

using namespace hyplab;

namespace {
std::shared_ptr<const SpaceModel> e1() {
    return std::make_shared<const SpaceModel>(SpaceModel::euclidean(1));
}
NonexpMap shift_map() { return NonexpMap::affine(e1(), 1.0, {1.0}); }
}  // namespace

TEST_CASE("ball-invariance witness constants (series metric)") {
    NonexpMap f = shift_map();
    Gauge log_g = make_log_gauge();
    double r = 0.3;  // must stay below min{1, phi(eta)} = ln(2)/2 for this gauge
    PorosityWitness w =
        ball_invariance_witness(f, r, Point{0.0}, MetricFamily::Series, log_g, 2.0);

    // oracle arithmetic: c0 = 1, C_phi = 2
    CHECK(w.params.at("gamma") == doctest::Approx(r / 6.0).epsilon(1e-12));
    CHECK(w.M_f == doctest::Approx(2.0 / (r / 6.0)).epsilon(1e-12));
    CHECK(w.params.at("alpha_tilde") == doctest::Approx(1.0 / 73.0).epsilon(1e-12));
    CHECK(w.center_dist_bound == doctest::Approx(r / 3.0).epsilon(1e-12));
    CHECK(w.center_dist_bound < w.r);
    CHECK(w.radius == doctest::Approx(std::exp2(-73.0 / r)).epsilon(1e-9));
    CHECK(w.radius > 0.0);

    // the precondition rejects radii at or beyond phi(eta)
    CHECK_THROWS_AS(ball_invariance_witness(f, 0.5, Point{0.0}, MetricFamily::Series, log_g, 2.0),
                    invalid_input);

    WitnessReport rep = verify_witness(w, 7, 42);
    CHECK(rep.center_certified);
    CHECK(rep.all_passed);
    REQUIRE(rep.rows.size() == 7);
    CHECK(rep.rows[0].construction == "center");
    CHECK(rep.rows[0].certified_distance == doctest::Approx(0.0));
    for (const auto& row : rep.rows) {
        CHECK(row.passed);
        CHECK(row.certified_distance <= w.radius * (1.0 + 1e-12));
        CHECK(row.measured <= w.M_f + 1e-9);
    }
}

TEST_CASE("ball-invariance witness constants (weighted metric)") {
    NonexpMap f = shift_map();
    PorosityWitness w =
        ball_invariance_witness(f, 0.5, Point{0.0}, MetricFamily::WeightedSup, make_log_gauge(),
                                2.0);
    CHECK(w.params.at("gamma") == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(w.M_f == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(w.params.at("alpha_s") == doctest::Approx(1.0 / 18.0).epsilon(1e-12));
    CHECK(w.radius == doctest::Approx(std::pow(0.5 / 18.0, 2.0)).epsilon(1e-12));

    WitnessReport rep = verify_witness(w, 7, 7);
    CHECK(rep.center_certified);
    CHECK(rep.all_passed);
}

TEST_CASE("rakotch witness constants and member verification") {
    NonexpMap f = shift_map();
    Gauge log_g = make_log_gauge();
    PorosityWitness ws = rakotch_witness(f, 0.5, 2, Point{0.0}, MetricFamily::Series, log_g, 2.0);
    // alpha = phi_inv(1/2) / (8 * 2 * C_phi) = 0.25 / 32
    CHECK(ws.params.at("alpha") == doctest::Approx(1.0 / 128.0).epsilon(1e-12));
    CHECK(ws.params.at("gamma") == doctest::Approx(0.1875).epsilon(1e-12));
    CHECK(ws.radius == doctest::Approx(0.5 / 128.0).epsilon(1e-12));
    CHECK(ws.quotient_bound == doctest::Approx(1.0 - 0.1875 + 0.125).epsilon(1e-12));
    CHECK(ws.quotient_bound < 1.0);

    WitnessReport rs = verify_witness(ws, 7, 11);
    CHECK(rs.center_certified);
    CHECK(rs.all_passed);
    for (const auto& row : rs.rows) CHECK(row.measured < 1.0);

    PorosityWitness ww =
        rakotch_witness(f, 0.5, 2, Point{0.0}, MetricFamily::WeightedSup, log_g, 2.0);
    CHECK(ww.params.at("alpha") == doctest::Approx(1.0 / 40.0).epsilon(1e-12));
    CHECK(ww.params.at("gamma") == doctest::Approx(0.375).epsilon(1e-12));
    WitnessReport rw = verify_witness(ww, 7, 13);
    CHECK(rw.center_certified);
    CHECK(rw.all_passed);

    CHECK_THROWS_AS(rakotch_witness(f, 1.5, 2, Point{0.0}, MetricFamily::Series, log_g, 2.0),
                    invalid_input);
    CHECK_THROWS_AS(rakotch_witness(f, 0.5, 0, Point{0.0}, MetricFamily::Series, log_g, 2.0),
                    invalid_input);
}

TEST_CASE("modulus witness constants and member verification") {
    NonexpMap f = shift_map();
    // the power gauge keeps phi_inv(alpha r) representable in doubles
    Gauge pow_g = make_power_gauge();
    PorosityWitness w =
        modcont_witness(f, 0.5, 1.0, 0.5, Point{0.0}, MetricFamily::Series, pow_g, 2.0);
    double C = pow_g.C_phi;
    CHECK(w.params.at("eps") == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
    CHECK(w.params.at("alpha") == doctest::Approx((1.0 / 16.0) / (4.0 + 16.0 * C)).epsilon(1e-12));
    CHECK(w.params.at("N") == doctest::Approx(std::ceil(8.0 * C)).epsilon(1e-12));
    CHECK(w.params.at("lambda") == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(w.center_dist_bound < w.r);

    WitnessReport rep = verify_witness(w, 7, 17);
    CHECK(rep.center_certified);
    CHECK(rep.all_passed);
    for (const auto& row : rep.rows) CHECK(row.measured > 0.5);  // gap exceeds mu * t0

    PorosityWitness ww =
        modcont_witness(f, 0.5, 1.0, 0.5, Point{0.0}, MetricFamily::WeightedSup, pow_g, 2.0);
    CHECK(ww.params.at("alpha") == doctest::Approx(0.25 / 5.0).epsilon(1e-12));
    CHECK(ww.params.at("R") == doctest::Approx(4.0).epsilon(1e-12));
    WitnessReport rw = verify_witness(ww, 7, 19);
    CHECK(rw.center_certified);
    CHECK(rw.all_passed);

    // cap in the eps formula
    PorosityWitness cap =
        modcont_witness(f, 0.5, 8.0, 0.9, Point{0.0}, MetricFamily::WeightedSup, pow_g, 2.0);
    CHECK(cap.params.at("eps") == doctest::Approx(0.1).epsilon(1e-12));

    CHECK_THROWS_AS(
        modcont_witness(f, 0.5, -1.0, 0.5, Point{0.0}, MetricFamily::Series, pow_g, 2.0),
        invalid_input);
    CHECK_THROWS_AS(
        modcont_witness(f, 0.5, 1.0, 1.2, Point{0.0}, MetricFamily::Series, pow_g, 2.0),
        invalid_input);
}

TEST_CASE("shrinking-pair witness") {
    auto m = e1();
    NonexpMap f = NonexpMap::identity(m);
    auto seq = std::make_shared<DenseSequence>(m);
    PorosityWitness w = shrink_witness(f, Point{0.0}, Point{10.0}, seq, 0.1, 0.5);

    CHECK(w.params.at("L") == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(w.r_pair == doctest::Approx(0.1).epsilon(1e-12));  // (1 - 0.9) * 10 / 10
    CHECK(w.radius > 0.0);

    WitnessReport rep = verify_witness(w, 5, 23, 200);
    CHECK(rep.center_certified);
    CHECK(rep.all_passed);
    for (const auto& row : rep.rows) CHECK(row.measured > 0.0);  // strict shrinkage margin

    CHECK_THROWS_AS(shrink_witness(f, Point{1.0}, Point{1.0}, seq, 0.1, 0.5), invalid_input);
    CHECK_THROWS_AS(shrink_witness(f, Point{0.0}, Point{10.0}, seq, 1.5, 0.5), invalid_input);
}
