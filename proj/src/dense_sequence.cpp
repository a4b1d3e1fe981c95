#include "hyplab/dense_sequence.hpp"

#include <cmath>

namespace hyplab {

namespace {

double halton(std::uint64_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19};

}  // namespace

DenseSequence::DenseSequence(std::shared_ptr<const SpaceModel> model)
    : model_(std::move(model)) {}

const Point& DenseSequence::at(std::size_t n) const {
    if (n == 0) throw invalid_input("DenseSequence: indices are 1-based");
    while (cache_.size() < n) {
        std::size_t i = cache_.size();  // 0-based enumeration index
        std::uint64_t q = i / 24;
        unsigned m = static_cast<unsigned>(i % 24);
        // the ambient hyperboloid constraint -<p,p> = 1 can only be verified to
        // absolute 1e-6 while cosh(r)^2 * eps stays below it, i.e. r <~ 12, so
        // the refinement boxes stop growing at that horizon
        if (model_->kind() == ModelKind::Hyperboloid2 && m > 3) m = 3;
        double scale = std::exp2(static_cast<double>(m));

        int d = model_->kind() == ModelKind::Hyperboloid2 ? 2 : model_->dim();
        std::vector<double> v(static_cast<std::size_t>(d));
        for (int k = 0; k < d; ++k)
            v[static_cast<std::size_t>(k)] =
                (2.0 * halton(q + 1, kPrimes[k % 8]) - 1.0) * scale;

        if (model_->kind() == ModelKind::Hyperboloid2) {
            double t = std::hypot(v[0], v[1]);
            if (t < 1e-15) {
                cache_.push_back(model_->origin());
            } else {
                Point hint{v[0] / t, v[1] / t, 1.0};  // tangent direction at the apex
                hint[2] = std::sqrt(1.0 + hint[0] * hint[0] + hint[1] * hint[1]);
                cache_.push_back(model_->point_at_distance(model_->origin(), t, hint).point);
            }
        } else if (model_->kind() == ModelKind::HalfSpace) {
            v[0] = std::abs(v[0]);  // fold into the closed half-space
            cache_.push_back(Point(std::move(v)));
        } else {
            cache_.push_back(Point(std::move(v)));
        }
    }
    return cache_[n - 1];
}

}  // namespace hyplab
