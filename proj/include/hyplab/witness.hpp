#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hyplab/metrics.hpp"
#include "hyplab/perturbation.hpp"

namespace hyplab {

enum class WitnessKind { BallInvariance, RakotchGaugeBelowOne, ModulusExceeds, ShrinkPair };

/// A center mapping and a radius such that (verifiably, on sampled members of
/// the ball around the center) every mapping in the ball has the advertised
/// good property; the executable core of a porosity argument.
struct PorosityWitness {
    WitnessKind kind;
    MetricFamily metric_kind;
    Gauge gauge;    // used when metric_kind == Series
    double s = 2.0; // used when metric_kind == WeightedSup

    NonexpMap base_f;
    NonexpMap center_g;
    Point theta;
    double r = 0.0;       // ball around base_f containing the center
    double radius = 0.0;  // ball around center_g on which the predicate holds

    /// Closed-form certified upper bound on metric(base_f, center_g); must be < r.
    double center_dist_bound = 0.0;

    // predicate data
    double M_f = 0.0;                   // BallInvariance
    std::size_t n = 0;                  // RakotchGaugeBelowOne
    double quotient_bound = 1.0;        // RakotchGaugeBelowOne: proof-chain bound < 1
    double t0 = 0.0, mu = 0.0;          // ModulusExceeds
    Point x0, y0;                       // ModulusExceeds
    Point pair_x, pair_y;               // ShrinkPair
    double r_pair = 0.0;                // ShrinkPair
    std::shared_ptr<DenseSequence> seq; // ShrinkPair (pointwise metric)
    std::size_t trunc_N = 60;

    std::map<std::string, double> params;  // all constants used, by name
};

PorosityWitness ball_invariance_witness(const NonexpMap& f, double r, const Point& theta,
                                        MetricFamily metric_kind, const Gauge& gauge, double s);

PorosityWitness rakotch_witness(const NonexpMap& f, double r, std::size_t n, const Point& theta,
                                MetricFamily metric_kind, const Gauge& gauge, double s);

PorosityWitness modcont_witness(const NonexpMap& f, double r, double t0, double mu,
                                const Point& theta, MetricFamily metric_kind, const Gauge& gauge,
                                double s);

/// gamma is the contraction weight used to build the strict-contraction center.
PorosityWitness shrink_witness(const NonexpMap& f, const Point& x, const Point& y,
                               std::shared_ptr<DenseSequence> seq, double gamma, double eps);

struct WitnessMemberRow {
    std::size_t index = 0;
    std::string construction;
    double certified_distance = 0.0;  // upper bound on metric(center, member)
    double measured = 0.0;            // predicate-specific measurement
    double margin = 0.0;              // positive iff the predicate holds strictly
    bool passed = false;
};

struct WitnessReport {
    std::vector<WitnessMemberRow> rows;
    double center_distance_estimate = 0.0;  // sampled metric(base_f, center_g)
    double center_distance_tail = 0.0;
    double center_distance_bound = 0.0;     // closed-form certificate
    bool center_certified = false;          // bound < r
    std::size_t passes = 0;
    std::size_t failures = 0;
    bool all_passed = false;
};

/// Generates member_count mappings with certified distance to the center at
/// most the witness radius and evaluates the witness predicate on each.
WitnessReport verify_witness(const PorosityWitness& w, std::size_t member_count,
                             std::uint64_t seed, std::size_t budget = 2000);

}  // namespace hyplab
