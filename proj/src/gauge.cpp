#include "hyplab/gauge.hpp"

#include <cmath>
#include <limits>

#include "hyplab/geometry.hpp"

namespace hyplab {

namespace {

double partial_sum_c_phi(const std::function<double(double)>& phi_inv, std::size_t upto) {
    double s = 0.0;
    for (std::size_t n = 1; n <= upto; ++n)
        s += static_cast<double>(n) * phi_inv(1.0 / static_cast<double>(n));
    return s;
}

}  // namespace

Gauge make_log_gauge() {
    Gauge g;
    g.kind = GaugeKind::Log;
    g.name = "log";
    g.phi = [](double t) { return -1.0 / std::log2(t); };
    g.phi_inv = [](double t) { return std::exp2(-1.0 / t); };
    g.domain_hi = 1.0;
    g.domain_closed = false;
    g.eta_phi = std::exp(-2.0);
    // sum n 2^-n = 2; partial sums to n = 200 plus the exact geometric tail
    double partial = partial_sum_c_phi(g.phi_inv, 200);
    double tail = std::exp2(-200.0) * 202.0;
    g.C_phi = std::max(1.0, partial + tail);
    g.condition_flags = {true, true, true, true, true};
    g.tail_bound = [](std::size_t N) { return std::exp2(-static_cast<double>(N)); };
    g.closed_form_ck = [](int k) { return std::exp2(static_cast<double>(k)); };
    return g;
}

Gauge make_power_gauge() {
    Gauge g;
    g.kind = GaugeKind::Power;
    g.name = "power-1/4";
    g.phi = [](double t) { return std::pow(t, 0.25); };
    g.phi_inv = [](double t) { return t * t * t * t; };
    g.domain_hi = 1.0;
    g.domain_closed = true;
    g.eta_phi = 1.0;
    // sum n^-3, partial sums plus the integral tail bound 1/(2N^2)
    const std::size_t N = 100000;
    double partial = partial_sum_c_phi(g.phi_inv, N);
    g.C_phi = std::max(1.0, partial + 0.5 / (static_cast<double>(N) * static_cast<double>(N)));
    g.condition_flags = {true, true, true, true, false};
    g.tail_bound = [](std::size_t N) {
        double n = static_cast<double>(N);
        return 1.0 / (3.0 * n * n * n);
    };
    g.closed_form_ck = [](int k) {
        double b = 1.0 + static_cast<double>(k);
        return b * b * b * b;
    };
    return g;
}

Gauge make_psi_gauge(double s) {
    if (s < 1.0) throw invalid_input("make_psi_gauge: s must be >= 1");
    Gauge g;
    g.kind = GaugeKind::PorosityPower;
    g.name = "psi-" + std::to_string(s);
    g.s = s;
    g.phi = [s](double t) { return std::pow(t, 1.0 / s); };
    g.phi_inv = [s](double t) { return std::pow(t, s); };
    g.domain_hi = 1.0;
    g.domain_closed = true;
    g.eta_phi = 1.0;
    if (s > 2.0) {
        // sum n^(1-s) converges; integral tail bound
        double partial = partial_sum_c_phi(g.phi_inv, 100000);
        double tail = std::pow(1e5, 2.0 - s) / (s - 2.0);
        g.C_phi = std::max(1.0, partial + tail);
        g.tail_bound = [s](std::size_t N) {
            double n = static_cast<double>(N);
            return std::pow(n, 1.0 - s) / (s - 1.0);
        };
    }
    g.condition_flags = {true, true, true, s > 2.0, false};
    return g;
}

Gauge make_custom_gauge(std::string name, std::function<double(double)> phi,
                        std::function<double(double)> phi_inv, double eta_phi,
                        std::function<double(std::size_t)> tail_majorant) {
    Gauge g;
    g.kind = GaugeKind::Custom;
    g.name = std::move(name);
    g.phi = std::move(phi);
    g.phi_inv = std::move(phi_inv);
    g.eta_phi = eta_phi;
    g.tail_bound = std::move(tail_majorant);
    if (g.summable()) {
        double partial = partial_sum_c_phi(g.phi_inv, 10000);
        g.C_phi = std::max(1.0, partial + 10001.0 * g.tail_bound(10000));
    }
    return g;
}

ConditionReport check_gauge_conditions(const Gauge& g, std::size_t sample_grid) {
    if (sample_grid < 10) throw invalid_input("check_gauge_conditions: grid must be >= 10");
    ConditionReport rep;
    const double hi = g.domain_closed ? g.domain_hi : g.domain_hi * (1.0 - 1e-9);

    // (C1): concavity on (0, eta) via second differences, and phi(eta) >= eta
    {
        bool ok = g.phi(std::min(g.eta_phi, hi)) >= g.eta_phi - 1e-12;
        double worst = 0.0;
        double h = g.eta_phi / static_cast<double>(sample_grid + 1);
        double delta = h / 2.0;
        for (std::size_t i = 1; i <= sample_grid; ++i) {
            double t = static_cast<double>(i) * h;
            if (t - delta <= 0 || t + delta >= g.eta_phi) continue;
            double d2 = g.phi(t - delta) + g.phi(t + delta) - 2.0 * g.phi(t);
            worst = std::max(worst, d2);
        }
        rep.c1_worst_second_difference = worst;
        ok = ok && worst <= 1e-10;
        rep.passed[0] = ok;
        if (!ok && rep.witness.empty()) rep.witness = "(C1) concavity/eta check failed";
    }

    // (C2): phi tends to 0 at 0 and attains the value 1
    {
        bool to_zero = g.phi(1e-300) < 1e-2;
        bool attains_one = false;
        for (std::size_t i = 1; i <= 4 * sample_grid; ++i) {
            double t = hi * static_cast<double>(i) / static_cast<double>(4 * sample_grid);
            if (g.phi(t) >= 1.0 - 1e-9) {
                attains_one = true;
                break;
            }
        }
        rep.passed[1] = to_zero && attains_one;
        if (!rep.passed[1] && rep.witness.empty()) rep.witness = "(C2) limit/attainment failed";
    }

    // (C3): observed C_k = sup_m phi_inv(1/m) / phi_inv(1/(k+m)) for m <= 1000
    {
        bool ok = true;
        for (int k = 1; k <= 16; ++k) {
            double worst = 0.0;
            for (int m = 1; m <= 1000; ++m) {
                double num = g.phi_inv(1.0 / m);
                double den = g.phi_inv(1.0 / (k + m));
                if (den <= 0.0) {
                    ok = false;
                    break;
                }
                worst = std::max(worst, num / den);
            }
            rep.observed_C_k[static_cast<std::size_t>(k - 1)] = worst;
            if (g.closed_form_ck && worst > g.closed_form_ck(k) * (1.0 + 1e-9)) ok = false;
            if (!std::isfinite(worst)) ok = false;
        }
        rep.passed[2] = ok;
        if (!ok && rep.witness.empty()) rep.witness = "(C3) ratio bound failed";
    }

    // (C4): summability of n phi_inv(1/n)
    {
        if (g.summable()) {
            rep.passed[3] = true;
            rep.reported_C_phi = g.C_phi;
        } else {
            // decay probe: terms of a convergent series of this shape must decay
            double a1024 = 1024.0 * g.phi_inv(1.0 / 1024.0);
            double a4096 = 4096.0 * g.phi_inv(1.0 / 4096.0);
            rep.passed[3] = a4096 <= 0.7 * a1024;
            if (!rep.passed[3] && rep.witness.empty())
                rep.witness = "(C4) divergence: term at n=4096 is " + std::to_string(a4096) +
                              " vs " + std::to_string(a1024) + " at n=1024";
        }
    }

    // (C5): phi_inv(t/(a+b)) <= phi_inv(t/a) phi_inv(t/b) on a sample grid
    {
        bool ok = true;
        double worst = -std::numeric_limits<double>::infinity();
        const double as[] = {1.0, 1.5, 2.0, 4.0, 8.0, 16.0};
        for (double a : as) {
            for (double b : as) {
                for (std::size_t i = 1; i <= sample_grid; ++i) {
                    double t = static_cast<double>(i) / static_cast<double>(sample_grid + 1);
                    double lhs = g.phi_inv(t / (a + b));
                    double rhs = g.phi_inv(t / a) * g.phi_inv(t / b);
                    worst = std::max(worst, lhs - rhs);
                    if (lhs > rhs + 1e-12) ok = false;
                }
            }
        }
        rep.c5_worst_residual = worst;
        rep.passed[4] = ok;
        if (!ok && rep.witness.empty()) rep.witness = "(C5) submultiplicativity failed";
    }

    return rep;
}

}  // namespace hyplab
