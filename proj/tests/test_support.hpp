#pragma once

// Shared helpers for the test binaries. The integrators here are deliberately
// independent of the library's quadrature so they can serve as oracles.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

namespace testsupport {

inline std::string data_dir() {
    const char* d = std::getenv("UNITLINKED_DATA_DIR");
    return d ? std::string(d) : std::string("data");
}

inline std::string data_file(const std::string& name) {
    return data_dir() + "/" + name;
}

inline bool close_abs(double a, double b, double tol) {
    return std::fabs(a - b) <= tol;
}

inline bool close_rel(double a, double b, double tol) {
    const double scale = std::max(std::fabs(a), std::fabs(b));
    return std::fabs(a - b) <= tol * std::max(scale, 1e-300);
}

// Romberg integration (trapezoid + Richardson extrapolation).
template <class F>
double romberg(const F& f, double a, double b, int max_levels = 22,
               double tol = 1e-13) {
    std::vector<std::vector<double>> table;
    double h = b - a;
    table.push_back({0.5 * h * (f(a) + f(b))});
    for (int i = 1; i < max_levels; ++i) {
        h *= 0.5;
        double sum = 0.0;
        const long n = 1L << (i - 1);
        for (long j = 0; j < n; ++j) sum += f(a + (2.0 * j + 1.0) * h);
        std::vector<double> row(static_cast<std::size_t>(i) + 1);
        row[0] = 0.5 * table[i - 1][0] + h * sum;
        double p4 = 1.0;
        for (int k = 1; k <= i; ++k) {
            p4 *= 4.0;
            row[k] = row[k - 1] + (row[k - 1] - table[i - 1][k - 1]) / (p4 - 1.0);
        }
        table.push_back(row);
        if (i > 4 && std::fabs(table[i][i] - table[i - 1][i - 1]) <=
                         tol * (1.0 + std::fabs(table[i][i])))
            return table[i][i];
    }
    return table.back().back();
}

// Two-sided Kolmogorov-Smirnov statistic against a given CDF.
template <class Cdf>
double ks_statistic(std::vector<double> sample, const Cdf& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
        d = std::max(d, std::fabs(f - (static_cast<double>(i) + 1.0) / n));
    }
    return d;
}

inline double std_normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
}

}  // namespace testsupport
