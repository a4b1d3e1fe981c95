#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyplab {

/// A point of one of the concrete space models. For the hyperboloid model the
/// coordinates are ambient Minkowski coordinates (x, y, t) with t > 0.
struct Point {
    std::vector<double> coords;

    Point() = default;
    explicit Point(std::vector<double> c) : coords(std::move(c)) {}
    Point(std::initializer_list<double> c) : coords(c) {}

    double operator[](std::size_t i) const { return coords[i]; }
    double& operator[](std::size_t i) { return coords[i]; }
    std::size_t size() const { return coords.size(); }
};

struct AxiomReport {
    std::size_t samples = 0;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Result of shooting a geodesic ray; `fallback` is set when the requested
/// direction would have left the model's point set and a boundary-parallel
/// direction was used instead.
struct RayResult {
    Point point;
    bool fallback = false;
};

class invalid_input : public std::runtime_error {
public:
    explicit invalid_input(const std::string& msg) : std::runtime_error(msg) {}
};

enum class ModelKind { Euclidean, HalfSpace, L1, Hyperboloid2 };

/// A concrete unbounded geodesic space with a distinguished segment family.
///
/// Euclidean(dim) and HalfSpace(dim) carry the l2 metric, L1(dim) the l1
/// metric; all three use straight segments. Hyperboloid2 is the hyperbolic
/// plane in the hyperboloid model with sinh-interpolated geodesics.
class SpaceModel {
public:
    static SpaceModel euclidean(int dim);
    static SpaceModel half_space(int dim);
    static SpaceModel l1(int dim);
    static SpaceModel hyperboloid2();

    ModelKind kind() const { return kind_; }
    int dim() const { return dim_; }
    /// Length of the coordinate vector of a point (3 for the hyperboloid).
    int ambient_dim() const;
    std::string name() const;

    /// Distinguished basepoint: the origin, (0,...,0), or (0,0,1).
    Point origin() const;

    bool contains(const Point& p, double tol = 1e-9) const;
    void require_valid(const Point& p) const;

    double dist(const Point& x, const Point& y) const;
    Point combine(const Point& x, const Point& y, double lam) const;
    RayResult point_at_distance(const Point& from, double d,
                                const std::optional<Point>& direction_hint = std::nullopt) const;

    /// Deterministic sampling of the closed ball B(center, radius).
    /// quasi = true uses a Halton low-discrepancy sequence instead of a PRNG.
    std::vector<Point> ball_sampler(const Point& center, double radius, std::size_t count,
                                    std::uint64_t seed, bool quasi = false) const;

    /// Checks the convex-combination identities and the convexity inequality
    /// on random samples and reports the worst violation.
    AxiomReport verify_hyperbolicity(std::size_t sample_count, std::uint64_t seed) const;

    /// 1e-9 for the exact-formula models, 1e-6 for the hyperboloid.
    double tolerance() const;

private:
    SpaceModel(ModelKind kind, int dim) : kind_(kind), dim_(dim) {}

    ModelKind kind_;
    int dim_;
};

}  // namespace hyplab
