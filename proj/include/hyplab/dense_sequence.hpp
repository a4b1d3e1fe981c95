#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hyplab/geometry.hpp"

namespace hyplab {

/// Deterministic enumeration of a dense sequence (z_n), n >= 1.
///
/// Index i = 24*q + m is mapped to the Halton point number q+1 scaled to the
/// box [-2^m, 2^m]^dim; every box is visited infinitely often with refining
/// mesh, so the sequence is dense in the flat models. On the hyperboloid the
/// planar point is pushed through the exponential map at the basepoint.
/// The enumeration is version 1 of the scheme; values are reproducible
/// bit-for-bit for a fixed model.
class DenseSequence {
public:
    explicit DenseSequence(std::shared_ptr<const SpaceModel> model);

    /// 1-based, matching the series index of the pointwise metric.
    const Point& at(std::size_t n) const;

    const SpaceModel& model() const { return *model_; }

private:
    std::shared_ptr<const SpaceModel> model_;
    mutable std::vector<Point> cache_;
};

}  // namespace hyplab
