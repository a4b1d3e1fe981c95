#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hyplab/geometry.hpp"

namespace hyplab {

/// Maps built as perturbation intermediates may carry a Lipschitz bound
/// slightly above one; anything exported as nonexpansive must stay <= 1.
constexpr double kLipSlack = 0.25;

/// An evaluable self-mapping of a space model together with its claimed
/// Lipschitz bound and a short provenance string describing how it was built.
class NonexpMap {
public:
    NonexpMap() = default;

    static NonexpMap identity(std::shared_ptr<const SpaceModel> model);
    static NonexpMap constant(std::shared_ptr<const SpaceModel> model, Point value);
    /// f(x) = a*x + b componentwise; |a| must not exceed 1 + slack.
    static NonexpMap affine(std::shared_ptr<const SpaceModel> model, double a,
                            std::vector<double> b);
    static NonexpMap from_function(std::shared_ptr<const SpaceModel> model,
                                   std::function<Point(const Point&)> fn, double claimed_lip,
                                   std::string provenance);

    Point operator()(const Point& x) const;

    const SpaceModel& model() const { return *model_; }
    std::shared_ptr<const SpaceModel> model_ptr() const { return model_; }
    double claimed_lip() const { return claimed_lip_; }
    const std::string& provenance() const { return provenance_; }
    bool valid() const { return static_cast<bool>(eval_); }

private:
    std::shared_ptr<const SpaceModel> model_;
    std::function<Point(const Point&)> eval_;
    double claimed_lip_ = 1.0;
    std::string provenance_;
};

/// f_gamma(x) = (1-gamma) f(x) (+) gamma f(theta); Lip <= (1-gamma) Lip f.
NonexpMap contract_toward(const NonexpMap& f, const Point& theta, double gamma);

struct LipEstimate {
    double value = 0.0;  // maximum sampled quotient, a lower bound for the sup
    std::size_t pairs_tested = 0;
    std::string region;
    std::uint64_t seed = 0;
};

struct RakotchGauge {
    std::size_t n_max = 0;
    std::vector<double> gauges;  // gauges[n-1] estimates c_{f,n}; nondecreasing

    /// Decreasing step function built from the gauges; values for arguments
    /// below 1/n_max are clamped to the last computed gauge.
    double step(double t) const;
};

/// Lower-bound estimate of sup rho(f(x), f(y)) over pairs at distance <= t0
/// with x in the ball of radius region_radius around the model origin.
LipEstimate modulus_of_continuity(const NonexpMap& f, double t0, double region_radius,
                                  std::size_t budget, std::uint64_t seed);

/// Lower-bound estimate of the local Lipschitz constant at x with radius r,
/// probing scales r, r/2, ..., r * 2^-20.
LipEstimate local_lipschitz(const NonexpMap& f, const Point& x, double r, std::size_t budget,
                            std::uint64_t seed);

/// Maximum sampled difference quotient over pairs in the given ball.
LipEstimate empirical_lipschitz(const NonexpMap& f, const Point& region_center,
                                double region_radius, std::size_t budget, std::uint64_t seed);

/// Sampled estimates of the gauges c_{f,n} over pairs in B(theta, n) with
/// rho(x, y) >= 1/n, made nondecreasing by a running maximum.
RakotchGauge rakotch_gauges(const NonexpMap& f, const Point& theta, std::size_t n_max,
                            std::size_t budget, std::uint64_t seed);

}  // namespace hyplab
