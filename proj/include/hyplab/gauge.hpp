#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <string>

namespace hyplab {

enum class GaugeKind { Log, Power, PorosityPower, Custom };

/// An admissible modulus phi with explicit inverse. The five admissibility
/// conditions are: (C1) concavity near zero with phi(eta) >= eta, (C2)
/// phi(0+) = 0 and phi attains 1, (C3) phi_inv(1/m) <= C_k phi_inv(1/(k+m)),
/// (C4) summability of n phi_inv(1/n) with constant C_phi, and (C5)
/// submultiplicativity phi_inv(t/(a+b)) <= phi_inv(t/a) phi_inv(t/b).
struct Gauge {
    GaugeKind kind = GaugeKind::Custom;
    std::string name;
    std::function<double(double)> phi;
    std::function<double(double)> phi_inv;
    double domain_hi = 1.0;
    bool domain_closed = false;  // true for (0,1]
    double eta_phi = 1.0;
    double C_phi = 1.0;
    double s = 0.0;  // exponent for PorosityPower
    std::array<bool, 5> condition_flags{};

    /// Certified upper bound on sum_{n>N} phi_inv(1/n); negative if the gauge
    /// has no summable majorant (then the series metric refuses it).
    std::function<double(std::size_t)> tail_bound;
    /// Closed-form C_k of condition (C3) when known.
    std::function<double(int)> closed_form_ck;

    bool summable() const { return static_cast<bool>(tail_bound); }
};

/// phi(t) = -1/log2(t) with phi_inv(t) = 2^(-1/t); eta = e^-2, C_phi = 2.
Gauge make_log_gauge();

/// phi(t) = t^(1/4) with phi_inv(t) = t^4; C_phi = sum n^-3.
Gauge make_power_gauge();

/// psi_s(t) = t^(1/s); used for the porosity radii of the weighted metric.
Gauge make_psi_gauge(double s);

/// A user-supplied gauge. Without a summable tail majorant it is rejected by
/// the series metric; conditions are evaluated by sampling.
Gauge make_custom_gauge(std::string name, std::function<double(double)> phi,
                        std::function<double(double)> phi_inv, double eta_phi,
                        std::function<double(std::size_t)> tail_majorant = nullptr);

struct ConditionReport {
    std::array<bool, 5> passed{};
    double c1_worst_second_difference = 0.0;
    double c5_worst_residual = 0.0;  // max of lhs - rhs over the sample grid
    double reported_C_phi = 0.0;
    std::array<double, 16> observed_C_k{};  // sup ratio for k = 1..16
    std::string witness;                    // describes the first failure found

    bool all_of_c1_to_c4() const {
        return passed[0] && passed[1] && passed[2] && passed[3];
    }
};

/// Checks (C1)-(C5) on sampled arguments; grid >= 10.
ConditionReport check_gauge_conditions(const Gauge& g, std::size_t sample_grid);

}  // namespace hyplab
