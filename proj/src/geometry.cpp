#include "hyplab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hyplab {

namespace {

double minkowski(const Point& a, const Point& b) {
    return a[0] * b[0] + a[1] * b[1] - a[2] * b[2];
}

Point renormalize_hyperboloid(Point p) {
    double q = -minkowski(p, p);
    double s = 1.0 / std::sqrt(q);
    for (double& c : p.coords) c *= s;
    if (p[2] < 0) {
        for (double& c : p.coords) c = -c;
    }
    return p;
}

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

double norm1(const std::vector<double>& v) {
    double s = 0;
    for (double c : v) s += std::abs(c);
    return s;
}

double halton(std::uint64_t index, unsigned base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

constexpr unsigned kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29};

// Orthonormal basis of the tangent plane at a hyperboloid point.
void tangent_basis(const Point& c, Point& e1, Point& e2) {
    Point cand[3] = {Point{1, 0, 0}, Point{0, 1, 0}, Point{0, 0, 1}};
    std::vector<Point> basis;
    for (auto& v : cand) {
        Point u = v;
        double pv = minkowski(c, v);
        for (int i = 0; i < 3; ++i) u[i] += pv * c[i];
        for (const auto& b : basis) {
            double ub = minkowski(u, b);
            for (int i = 0; i < 3; ++i) u[i] -= ub * b[i];
        }
        double q = minkowski(u, u);
        if (q > 1e-12) {
            double s = 1.0 / std::sqrt(q);
            for (double& x : u.coords) x *= s;
            basis.push_back(u);
            if (basis.size() == 2) break;
        }
    }
    e1 = basis[0];
    e2 = basis[1];
}

}  // namespace

SpaceModel SpaceModel::euclidean(int dim) {
    if (dim < 1) throw invalid_input("euclidean: dim must be positive");
    return SpaceModel(ModelKind::Euclidean, dim);
}

SpaceModel SpaceModel::half_space(int dim) {
    if (dim < 1) throw invalid_input("half_space: dim must be positive");
    return SpaceModel(ModelKind::HalfSpace, dim);
}

SpaceModel SpaceModel::l1(int dim) {
    if (dim < 1 || dim > 8) throw invalid_input("l1: dim must be in [1, 8]");
    return SpaceModel(ModelKind::L1, dim);
}

SpaceModel SpaceModel::hyperboloid2() { return SpaceModel(ModelKind::Hyperboloid2, 2); }

int SpaceModel::ambient_dim() const {
    return kind_ == ModelKind::Hyperboloid2 ? 3 : dim_;
}

std::string SpaceModel::name() const {
    switch (kind_) {
        case ModelKind::Euclidean: return "euclidean(" + std::to_string(dim_) + ")";
        case ModelKind::HalfSpace: return "half-space(" + std::to_string(dim_) + ")";
        case ModelKind::L1: return "l1(" + std::to_string(dim_) + ")";
        case ModelKind::Hyperboloid2: return "hyperboloid2";
    }
    return "?";
}

Point SpaceModel::origin() const {
    if (kind_ == ModelKind::Hyperboloid2) return Point{0, 0, 1};
    Point p;
    p.coords.assign(static_cast<std::size_t>(dim_), 0.0);
    return p;
}

double SpaceModel::tolerance() const {
    return kind_ == ModelKind::Hyperboloid2 ? 1e-6 : 1e-9;
}

bool SpaceModel::contains(const Point& p, double tol) const {
    if (static_cast<int>(p.size()) != ambient_dim()) return false;
    switch (kind_) {
        case ModelKind::Euclidean:
        case ModelKind::L1:
            return true;
        case ModelKind::HalfSpace:
            return p[0] >= -tol;
        case ModelKind::Hyperboloid2:
            return std::abs(minkowski(p, p) + 1.0) <= tol && p[2] > 0;
    }
    return false;
}

void SpaceModel::require_valid(const Point& p) const {
    if (static_cast<int>(p.size()) != ambient_dim())
        throw invalid_input(name() + ": point has wrong dimension");
    if (!contains(p, 1e-6)) throw invalid_input(name() + ": point outside model");
}

double SpaceModel::dist(const Point& x, const Point& y) const {
    require_valid(x);
    require_valid(y);
    switch (kind_) {
        case ModelKind::Euclidean:
        case ModelKind::HalfSpace: {
            double s = 0;
            for (int i = 0; i < dim_; ++i) s += (x[i] - y[i]) * (x[i] - y[i]);
            return std::sqrt(s);
        }
        case ModelKind::L1: {
            double s = 0;
            for (int i = 0; i < dim_; ++i) s += std::abs(x[i] - y[i]);
            return s;
        }
        case ModelKind::Hyperboloid2: {
            double c = -minkowski(x, y);
            return std::acosh(std::max(1.0, c));
        }
    }
    return 0;
}

Point SpaceModel::combine(const Point& x, const Point& y, double lam) const {
    if (lam < 0.0 || lam > 1.0) throw invalid_input("combine: lam outside [0,1]");
    require_valid(x);
    require_valid(y);
    if (kind_ != ModelKind::Hyperboloid2) {
        Point r = x;
        for (int i = 0; i < dim_; ++i) r[i] = (1.0 - lam) * x[i] + lam * y[i];
        return r;
    }
    double d = dist(x, y);
    if (d < 1e-14 || lam == 0.0) return x;
    if (lam == 1.0) return y;
    double sd = std::sinh(d);
    double a = std::sinh((1.0 - lam) * d) / sd;
    double b = std::sinh(lam * d) / sd;
    Point r = x;
    for (int i = 0; i < 3; ++i) r[i] = a * x[i] + b * y[i];
    return renormalize_hyperboloid(std::move(r));
}

RayResult SpaceModel::point_at_distance(const Point& from, double d,
                                        const std::optional<Point>& direction_hint) const {
    if (d < 0) throw invalid_input("point_at_distance: d must be nonnegative");
    require_valid(from);
    if (d == 0) return {from, false};

    if (kind_ == ModelKind::Hyperboloid2) {
        Point u{1, 0, 0};
        double q = 0.0;
        if (direction_hint && direction_hint->size() == 3) {
            const Point& h = *direction_hint;
            double ph = minkowski(from, h);
            for (int i = 0; i < 3; ++i) u[i] = h[i] + ph * from[i];
            q = minkowski(u, u);
        }
        if (q < 1e-18) {
            double pe = minkowski(from, Point{1, 0, 0});
            for (int i = 0; i < 3; ++i) u[i] = (i == 0 ? 1.0 : 0.0) + pe * from[i];
            q = minkowski(u, u);
        }
        double s = 1.0 / std::sqrt(q);
        for (double& c : u.coords) c *= s;
        Point r = from;
        for (int i = 0; i < 3; ++i) r[i] = std::cosh(d) * from[i] + std::sinh(d) * u[i];
        return {renormalize_hyperboloid(std::move(r)), false};
    }

    std::vector<double> dir(static_cast<std::size_t>(dim_), 0.0);
    if (direction_hint) {
        for (int i = 0; i < dim_; ++i) dir[i] = (*direction_hint)[i] - from[i];
    }
    double n = kind_ == ModelKind::L1 ? norm1(dir) : norm2(dir);
    if (n < 1e-14) {
        dir.assign(static_cast<std::size_t>(dim_), 0.0);
        dir[0] = 1.0;
        n = 1.0;
    }
    for (double& c : dir) c /= n;

    bool fallback = false;
    if (kind_ == ModelKind::HalfSpace && from[0] + d * dir[0] < 0) {
        // hinted ray exits the half-space: shoot parallel to the boundary
        fallback = true;
        dir[0] = 0.0;
        double m = kind_ == ModelKind::L1 ? norm1(dir) : norm2(dir);
        if (m < 1e-14) {
            if (dim_ >= 2) {
                dir.assign(static_cast<std::size_t>(dim_), 0.0);
                dir[1] = 1.0;
            } else {
                dir[0] = 1.0;  // 1-d half-line: only the inward direction is unbounded
            }
        } else {
            for (double& c : dir) c /= m;
        }
    }
    Point r = from;
    for (int i = 0; i < dim_; ++i) r[i] = from[i] + d * dir[i];
    return {std::move(r), fallback};
}

std::vector<Point> SpaceModel::ball_sampler(const Point& center, double radius, std::size_t count,
                                            std::uint64_t seed, bool quasi) const {
    if (radius <= 0) throw invalid_input("ball_sampler: radius must be positive");
    require_valid(center);
    std::vector<Point> out;
    out.reserve(count);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    if (kind_ == ModelKind::Hyperboloid2) {
        Point e1, e2;
        tangent_basis(center, e1, e2);
        double ch = std::cosh(radius) - 1.0;
        for (std::size_t i = 0; i < count; ++i) {
            double u1 = quasi ? halton(i + 1, 2) : unif(rng);
            double u2 = quasi ? halton(i + 1, 3) : unif(rng);
            double ang = 2.0 * M_PI * u1;
            double t = std::acosh(1.0 + u2 * ch);
            Point r = center;
            for (int k = 0; k < 3; ++k) {
                double u = std::cos(ang) * e1[k] + std::sin(ang) * e2[k];
                r[k] = std::cosh(t) * center[k] + std::sinh(t) * u;
            }
            out.push_back(renormalize_hyperboloid(std::move(r)));
        }
        return out;
    }

    std::uint64_t qindex = 1;
    while (out.size() < count) {
        Point p = center;
        for (int i = 0; i < dim_; ++i) {
            double u = quasi ? halton(qindex, kPrimes[i % 10]) : unif(rng);
            p[i] = center[i] + (2.0 * u - 1.0) * radius;
        }
        ++qindex;
        if (kind_ == ModelKind::HalfSpace && p[0] < 0) continue;
        if (dist(center, p) > radius) continue;
        out.push_back(std::move(p));
    }
    return out;
}

AxiomReport SpaceModel::verify_hyperbolicity(std::size_t sample_count, std::uint64_t seed) const {
    if (sample_count < 1) throw invalid_input("verify_hyperbolicity: sample_count must be >= 1");
    AxiomReport rep;
    rep.samples = sample_count;
    rep.tolerance = tolerance();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    // smaller cloud for the hyperboloid keeps acosh conditioning well below tolerance
    const double R = kind_ == ModelKind::Hyperboloid2 ? 5.0 : 10.0;
    auto cloud = ball_sampler(origin(), R, 3 * sample_count, seed ^ 0x9e3779b97f4a7c15ull);

    double worst = 0.0;
    for (std::size_t i = 0; i < sample_count; ++i) {
        const Point& x = cloud[3 * i];
        const Point& y = cloud[3 * i + 1];
        const Point& z = cloud[3 * i + 2];
        double lam = unif(rng);
        double mu = unif(rng);

        Point cxy = combine(x, y, lam);
        // segment reparametrisation: rho(x, (1-lam)x + lam y) = lam rho(x, y)
        worst = std::max(worst, std::abs(dist(x, cxy) - lam * dist(x, y)));
        worst = std::max(worst, std::abs(dist(cxy, y) - (1.0 - lam) * dist(x, y)));
        // convexity inequality
        Point cxz = combine(x, z, lam);
        worst = std::max(worst, dist(cxy, cxz) - lam * dist(y, z));
        // two parameters on one segment
        Point cxy2 = combine(x, y, mu);
        worst = std::max(worst, std::abs(dist(cxy2, cxy) - std::abs(lam - mu) * dist(x, y)));
    }
    rep.max_violation = worst;
    rep.passed = worst <= rep.tolerance;
    return rep;
}

}  // namespace hyplab
