// dopri5.hpp — Dormand-Prince 5(4) with PI step control, for Eigen dense states

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <Eigen/Dense>

namespace dicke {

struct StepperStats {
    long accepted{0};
    long rejected{0};
    long rhs_evals{0};
};

class StepSizeUnderflow : public std::runtime_error {
public:
    StepSizeUnderflow(double t, double h)
        : std::runtime_error(message(t, h)), t_(t), h_(h) {}
    double time() const { return t_; }
    double step() const { return h_; }

private:
    static std::string message(double t, double h) {
        std::ostringstream os;
        os.precision(17);
        os << "step size underflow at t=" << t << " (h=" << h << ")";
        return os.str();
    }
    double t_, h_;
};

/// Rhs: void(double t, const T& y, T& dydt). T is an Eigen dense vector or matrix.
template <class T, class Rhs>
class Dopri5 {
public:
    Dopri5(Rhs rhs, double t0, T y0, double rtol, double atol, double max_step = std::numeric_limits<double>::infinity(),
           long max_steps = 100'000'000)
        : f_(std::move(rhs)), t_(t0), y_(std::move(y0)), rtol_(rtol), atol_(atol), hmax_(max_step),
          max_steps_(max_steps) {
        for (auto* k : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &ytmp_, &ynew_}) k->resizeLike(y_);
    }

    double time() const { return t_; }
    const T& state() const { return y_; }
    T& state() { return y_; }
    const StepperStats& stats() const { return stats_; }
    double step_size() const { return h_; }

    /// Replace the state (e.g. after projection); the FSAL derivative is recomputed on the next step.
    void reset_state(T y) {
        y_ = std::move(y);
        fsal_valid_ = false;
    }

    /// Integrate up to exactly t_end.
    void advance_to(double t_end) {
        if (t_end <= t_) return;
        if (!fsal_valid_) {
            eval(t_, y_, k1_);
            fsal_valid_ = true;
        }
        if (h_ <= 0) h_ = initial_step(t_end - t_);

        while (t_ < t_end) {
            const double remaining = t_end - t_;
            bool last = false;
            double h = std::min(h_, hmax_);
            if (h >= remaining * (1 - 1e-12)) {
                h = remaining;
                last = true;
            }
            if (h < 10 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t_)))
                throw StepSizeUnderflow(t_, h);
            if (stats_.accepted + stats_.rejected >= max_steps_)
                throw std::runtime_error("integrator exceeded the maximum number of steps");

            const double err = attempt(h);
            if (err <= 1.0) {
                const double fac11 = std::pow(err, kExpo1);
                double fac = fac11 / std::pow(facold_, kBeta);
                fac = std::clamp(fac / kSafe, 1.0 / kFacMax, 1.0 / kFacMin);
                facold_ = std::max(err, 1e-4);
                t_ = last ? t_end : t_ + h;
                std::swap(y_, ynew_);
                std::swap(k1_, k7_);
                ++stats_.accepted;
                const double hnew = h / fac;
                h_ = reject_last_ ? std::min(hnew, h) : hnew;
                reject_last_ = false;
            } else {
                const double fac11 = std::pow(err, kExpo1);
                h_ = h / std::min(1.0 / kFacMin, fac11 / kSafe);
                reject_last_ = true;
                ++stats_.rejected;
            }
        }
    }

private:
    static constexpr double kBeta = 0.04;
    static constexpr double kExpo1 = 0.2 - kBeta * 0.75;
    static constexpr double kSafe = 0.9;
    static constexpr double kFacMin = 0.2;   // largest shrink 1/5
    static constexpr double kFacMax = 10.0;  // largest growth

    void eval(double t, const T& y, T& dy) {
        f_(t, y, dy);
        ++stats_.rhs_evals;
    }

    double error_norm(const T& err, const T& y0, const T& y1) const {
        const auto sc = (atol_ + rtol_ * y0.array().abs().max(y1.array().abs())).eval();
        return std::sqrt((err.array().abs() / sc).square().mean());
    }

    double initial_step(double span) {
        const auto sk = (atol_ + rtol_ * y_.array().abs()).eval();
        const double dnf = (k1_.array().abs() / sk).square().mean();
        const double dny = (y_.array().abs() / sk).square().mean();
        double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : std::sqrt(dny / dnf) * 0.01;
        h = std::min({h, hmax_, span});
        ytmp_ = y_ + h * k1_;
        eval(t_ + h, ytmp_, k2_);
        const double der2 = std::sqrt(((k2_ - k1_).array().abs() / sk).square().mean()) / h;
        const double der12 = std::max(der2, std::sqrt(dnf));
        const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
        return std::min({100 * h, h1, hmax_});
    }

    /// One trial step of size h from (t_, y_); fills ynew_ and k7_, returns the scaled error.
    double attempt(double h) {
        constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        constexpr double a21 = 1.0 / 5;
        constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                         a65 = -5103.0 / 18656;
        constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                         a76 = 11.0 / 84;
        constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                         e6 = 22.0 / 525, e7 = -1.0 / 40;

        ytmp_ = y_ + (h * a21) * k1_;
        eval(t_ + c2 * h, ytmp_, k2_);
        ytmp_ = y_ + h * (a31 * k1_ + a32 * k2_);
        eval(t_ + c3 * h, ytmp_, k3_);
        ytmp_ = y_ + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
        eval(t_ + c4 * h, ytmp_, k4_);
        ytmp_ = y_ + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
        eval(t_ + c5 * h, ytmp_, k5_);
        ytmp_ = y_ + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
        eval(t_ + h, ytmp_, k6_);
        ynew_ = y_ + h * (a71 * k1_ + a73 * k3_ + a74 * k4_ + a75 * k5_ + a76 * k6_);
        eval(t_ + h, ynew_, k7_);
        ytmp_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
        return error_norm(ytmp_, y_, ynew_);
    }

    Rhs f_;
    double t_;
    T y_;
    T k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, ynew_;
    double rtol_, atol_, hmax_;
    long max_steps_;
    double h_{0.0};
    double facold_{1e-4};
    bool reject_last_{false};
    bool fsal_valid_{false};
    StepperStats stats_;
};

template <class T, class Rhs>
Dopri5<T, Rhs> make_dopri5(Rhs rhs, double t0, T y0, double rtol, double atol,
                           double max_step = std::numeric_limits<double>::infinity(),
                           long max_steps = 100'000'000) {
    return Dopri5<T, Rhs>(std::move(rhs), t0, std::move(y0), rtol, atol, max_step, max_steps);
}

} // namespace dicke
