// wigner3j.hpp — Wigner 3j symbols by the Racah formula

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace dicke {

namespace detail {

/// log(n!) for n >= 0, tabulated once.
inline long double log_factorial(int n) {
    static const std::vector<long double> table = [] {
        std::vector<long double> t(1024);
        t[0] = 0.0L;
        for (std::size_t k = 1; k < t.size(); ++k) t[k] = t[k - 1] + std::log(static_cast<long double>(k));
        return t;
    }();
    if (n < static_cast<int>(table.size())) return table[n];
    return std::lgamma(static_cast<long double>(n) + 1.0L);
}

/// Twice a half-integer, or -1 when x is not a half-integer.
inline int twice(double x) {
    const double t = 2.0 * x;
    const double r = std::round(t);
    return std::abs(t - r) < 1e-9 ? static_cast<int>(r) : -1 - (1 << 30);
}

} // namespace detail

struct Wigner3jResult {
    double value{0.0};
    bool valid{false};  // arguments are proper angular-momentum labels
};

/// (j1 j2 j3; m1 m2 m3). Invalid labels give zero with valid == false; selection-rule zeros are valid.
inline Wigner3jResult wigner_3j_checked(double j1, double j2, double j3, double m1, double m2, double m3) {
    const int a = detail::twice(j1), b = detail::twice(j2), c = detail::twice(j3);
    const int x = detail::twice(m1), y = detail::twice(m2), z = detail::twice(m3);
    const int bad = -1 - (1 << 30);
    if (a == bad || b == bad || c == bad || x == bad || y == bad || z == bad) return {};
    if (a < 0 || b < 0 || c < 0) return {};
    if (std::abs(x) > a || std::abs(y) > b || std::abs(z) > c) return {};
    if ((a + x) % 2 || (b + y) % 2 || (c + z) % 2) return {};

    Wigner3jResult out{0.0, true};
    if (x + y + z != 0) return out;
    if ((a + b + c) % 2) return out;
    if (c > a + b || c < std::abs(a - b)) return out;

    // everything below is in plain integers
    const int J1 = a, J2 = b, J3 = c;
    auto h = [](int twice_value) { return twice_value / 2; };
    const int s1 = h(J1 + J2 - J3), s2 = h(J1 - J2 + J3), s3 = h(-J1 + J2 + J3), s4 = h(J1 + J2 + J3) + 1;
    const int j1pm = h(J1 + x), j1mm = h(J1 - x), j2pm = h(J2 + y), j2mm = h(J2 - y), j3pm = h(J3 + z), j3mm = h(J3 - z);
    using detail::log_factorial;
    const long double log_pref =
        0.5L * (log_factorial(s1) + log_factorial(s2) + log_factorial(s3) - log_factorial(s4) + log_factorial(j1pm) +
                log_factorial(j1mm) + log_factorial(j2pm) + log_factorial(j2mm) + log_factorial(j3pm) +
                log_factorial(j3mm));

    const int t1 = h(J3 - J2 + x), t2 = h(J3 - J1 - y);
    const int kmin = std::max({0, -t1, -t2});
    const int kmax = std::min({s1, j1mm, j2pm});
    long double sum = 0.0L;
    for (int k = kmin; k <= kmax; ++k) {
        const long double log_den = log_factorial(k) + log_factorial(t1 + k) + log_factorial(t2 + k) +
                                    log_factorial(s1 - k) + log_factorial(j1mm - k) + log_factorial(j2pm - k);
        const long double term = std::exp(log_pref - log_den);
        sum += (k % 2 ? -term : term);
    }
    const int phase_exp = h(J1 - J2 - z);
    out.value = static_cast<double>((((phase_exp % 2) + 2) % 2 ? -sum : sum));
    return out;
}

inline double wigner_3j(double j1, double j2, double j3, double m1, double m2, double m3) {
    return wigner_3j_checked(j1, j2, j3, m1, m2, m3).value;
}

} // namespace dicke
