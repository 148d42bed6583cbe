#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <vector>

#include "doctest.h"
#include "test_support.hpp"
#include "unitlinked/market_models.hpp"
#include "unitlinked/rng.hpp"

using namespace unitlinked;

TEST_CASE("deterministic pure function of the four indices") {
    CHECK(gaussian_stream(42, 7, 1, 1000) == gaussian_stream(42, 7, 1, 1000));
    CHECK(gaussian_stream(42, 7, 1, 1000) != gaussian_stream(42, 7, 1, 1001));
    CHECK(gaussian_stream(42, 7, 1, 1000) != gaussian_stream(42, 8, 1, 1000));
    CHECK(gaussian_stream(42, 7, 0, 1000) != gaussian_stream(42, 7, 1, 1000));
    CHECK(gaussian_stream(42, 7, 1, 1000) != gaussian_stream(43, 7, 1, 1000));
}

TEST_CASE("sample moments over a million draws") {
    const std::size_t n = 1'000'000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double z = gaussian_stream(20180527, i / 100, i % 100 / 34, i % 34);
        sum += z;
        sum_sq += z * z;
    }
    const double mean = sum / static_cast<double>(n);
    const double var =
        (sum_sq - static_cast<double>(n) * mean * mean) / (n - 1.0);
    CHECK(std::fabs(mean) <= 4e-3);
    CHECK(std::fabs(var - 1.0) <= 6e-3);
}

TEST_CASE("cross-stream correlation is noise-level") {
    const std::size_t n = 200'000;
    double s01 = 0.0, s02 = 0.0, s_lag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = gaussian_stream(99, i, 0, 0);
        const double b = gaussian_stream(99, i, 1, 0);
        const double c = gaussian_stream(99, i, 2, 0);
        const double d = gaussian_stream(99, i, 0, 1);
        s01 += a * b;
        s02 += a * c;
        s_lag += a * d;
    }
    const double bound = 4.0 / std::sqrt(static_cast<double>(n));
    CHECK(std::fabs(s01 / n) <= bound);
    CHECK(std::fabs(s02 / n) <= bound);
    CHECK(std::fabs(s_lag / n) <= bound);
}

TEST_CASE("marginal is standard normal (KS at 1%)") {
    std::vector<double> sample(10'000);
    for (std::size_t i = 0; i < sample.size(); ++i)
        sample[i] = gaussian_stream(7, i, 2, 5);
    const double d = testsupport::ks_statistic(sample, normal_cdf);
    // Asymptotic 1% critical value 1.628/sqrt(n).
    CHECK(d <= 1.628 / std::sqrt(static_cast<double>(sample.size())));
}
