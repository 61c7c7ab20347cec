// grids.hpp — quadrature grids for the field plane and the Bloch sphere

#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace dicke {

/// Uniform x-p grid, both ends included; integrals use the trapezoid rule.
struct PlaneGrid {
    double x_min{-5.0}, x_max{5.0};
    double p_min{-5.0}, p_max{5.0};
    int nx{201}, np{201};

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dp() const { return (p_max - p_min) / (np - 1); }
    double x(int i) const { return i + 1 == nx ? x_max : x_min + i * dx(); }
    double p(int j) const { return j + 1 == np ? p_max : p_min + j * dp(); }

    double weight(int i, int j) const {
        const double wx = (i == 0 || i + 1 == nx) ? 0.5 : 1.0;
        const double wp = (j == 0 || j + 1 == np) ? 0.5 : 1.0;
        return wx * wp * dx() * dp();
    }

    void validate() const {
        for (double v : {x_min, x_max, p_min, p_max})
            if (!std::isfinite(v)) throw std::invalid_argument("invalid grid: ranges must be finite");
        if (!(x_max > x_min) || !(p_max > p_min)) throw std::invalid_argument("invalid grid: empty range");
        if (nx < 2 || np < 2) throw std::invalid_argument("invalid grid: need at least 2 points per axis");
    }

    bool operator==(const PlaneGrid&) const = default;
};

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
            }
            dp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        nodes[i] = z;
        nodes[n - 1 - i] = -z;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

/// Gauss-Legendre in cos(theta) times a uniform periodic rule in phi. Exact for band-limited fields
/// up to degree 2 n_theta - 1 in theta and n_phi - 1 in phi.
class SphereGrid {
public:
    SphereGrid(int n_theta = 64, int n_phi = 128) : n_theta_(n_theta), n_phi_(n_phi) {
        if (n_theta < 1) throw std::invalid_argument("invalid sphere grid: n_theta must be >= 1");
        if (n_phi < 2 || n_phi % 2 != 0) throw std::invalid_argument("invalid sphere grid: n_phi must be even and >= 2");
        std::vector<double> z;
        gauss_legendre(n_theta, z, wz_);
        theta_.resize(n_theta);
        // nodes are returned with cos(theta) descending, so theta ascends from the north pole
        for (int i = 0; i < n_theta; ++i) theta_[i] = std::acos(z[i]);
    }

    int n_theta() const { return n_theta_; }
    int n_phi() const { return n_phi_; }
    double theta(int i) const { return theta_[i]; }
    double phi(int j) const { return 2.0 * std::numbers::pi * j / n_phi_; }
    double weight(int i, int) const { return wz_[i] * 2.0 * std::numbers::pi / n_phi_; }

    double total_weight() const {
        double s = 0.0;
        for (int i = 0; i < n_theta_; ++i) s += weight(i, 0) * n_phi_;
        return s;
    }

private:
    int n_theta_, n_phi_;
    std::vector<double> theta_, wz_;
};

} // namespace dicke
