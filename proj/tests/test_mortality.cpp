#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "unitlinked/mortality.hpp"

using namespace unitlinked;
namespace ts = testsupport;

namespace {

std::vector<HazardObservation> synthetic_observations(double a, double b, double c,
                                                      double age_lo, double age_hi) {
    std::vector<HazardObservation> obs;
    for (double age = age_lo; age <= age_hi; age += 1.0)
        obs.push_back({age, a + b * std::exp(c * age)});
    return obs;
}

void check_message(const std::string& input, const std::string& fragment) {
    std::istringstream in(input);
    try {
        load_mortality_table(in, "test.csv");
        FAIL("expected invalid_argument for: " << fragment);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
}

}  // namespace

TEST_CASE("bundled table loads") {
    const auto rows =
        load_mortality_table_file(ts::data_file("mortality_norway_2018.csv"));
    REQUIRE(rows.size() == 19);
    CHECK(rows[0].age == 4.0);
    CHECK(rows[0].men == 50.0);
    CHECK(rows[0].women == 45.0);
    CHECK(rows[0].total == 95.0);
    CHECK(rows[12].age == 64.0);
    CHECK(rows[12].total == 1232.0);
    CHECK(rows[17].age == 89.0);
    CHECK(rows[17].total == 21522.0);
    CHECK(rows[18].age == 90.0);
    CHECK(rows[18].total == 46139.0);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i - 1].age < rows[i].age);
}

TEST_CASE("table parse errors cite source and line") {
    check_message("", "empty input");
    check_message("age,sex,total\n4,1,2\n", ":1: expected header");
    check_message("age,men,women,total\n4,1,2\n", ":2: expected 4 fields, got 3");
    check_message("age,men,women,total\n4,1,2,3\n9,x,2,3\n", ":3: not a number");
    check_message("age,men,women,total\n4,1,-2,3\n", ":2: negative death count");
    check_message("age,men,women,total\n9,1,2,3\n4,1,2,3\n",
                  ":3: ages must be strictly increasing");
    check_message("age,men,women,total\n9,1,2,3\n9,1,2,3\n",
                  ":3: ages must be strictly increasing");
    check_message("age,men,women,total\n", "no data rows");

    // blank lines are skipped but still counted for diagnostics
    {
        std::istringstream in("age,men,women,total\n\n4,1,2,3\n\n");
        const auto rows = load_mortality_table(in, "test.csv");
        CHECK(rows.size() == 1);
    }
    check_message("age,men,women,total\n\nbad,1,2\n", ":3: expected 4 fields");

    CHECK_THROWS_WITH_AS(load_mortality_table_file("/no/such/dir/table.csv"),
                         "cannot open mortality table: /no/such/dir/table.csv",
                         std::invalid_argument);
}

TEST_CASE("empirical hazard is deaths per capita") {
    const auto rows =
        load_mortality_table_file(ts::data_file("mortality_norway_2018.csv"));
    const auto obs = empirical_hazard(rows);
    REQUIRE(obs.size() == rows.size());
    CHECK(obs[0].age == 4.0);
    CHECK(obs[0].rate == doctest::Approx(95.0 / 100000.0).epsilon(1e-15));
    CHECK(obs[1].rate == doctest::Approx(9e-5).epsilon(1e-15));
    CHECK(obs[12].rate == doctest::Approx(0.01232).epsilon(1e-15));

    std::istringstream in("age,men,women,total\n4,0,0,0\n9,1,2,3\n");
    const auto zero = empirical_hazard(load_mortality_table(in, "z"));
    CHECK(zero[0].rate == 0.0);
}

TEST_CASE("hazard evaluation") {
    GompertzMakehamFit fit;
    fit.a = 5e-4;
    fit.b = 2e-5;
    fit.c = 0.1;
    CHECK(hazard(fit, 0.0) == fit.a + fit.b);
    CHECK(ts::close_rel(hazard(fit, 70.0), 0.022432663168569171985, 1e-15));

    fit.b = 0.0;
    CHECK(hazard(fit, 0.0) == fit.a);
    CHECK(hazard(fit, 90.0) == fit.a);
}

TEST_CASE("survival probability") {
    GompertzMakehamFit fit;
    fit.a = 5e-4;
    fit.b = 2e-5;
    fit.c = 0.1;

    SUBCASE("zero horizon survives surely") {
        for (double x : {0.0, 17.5, 30.0, 88.0})
            CHECK(survival_probability(fit, x, 0.0) == 1.0);
    }

    SUBCASE("pure baseline hazard gives the exponential law") {
        GompertzMakehamFit flat;
        flat.a = 0.013;
        flat.b = 0.0;
        flat.c = 0.1;
        for (double T : {0.5, 3.0, 42.0})
            CHECK(ts::close_rel(survival_probability(flat, 20.0, T),
                                std::exp(-flat.a * T), 1e-15));
    }

    SUBCASE("consistent under splitting the horizon") {
        for (double x : {0.0, 10.5, 33.0, 60.0})
            for (double s : {0.5, 7.0, 20.0})
                for (double t : {1.0, 12.25, 30.0}) {
                    const double joint = survival_probability(fit, x, s + t);
                    const double split = survival_probability(fit, x, s) *
                                         survival_probability(fit, x + s, t);
                    CHECK(ts::close_rel(joint, split, 1e-12));
                }
    }

    SUBCASE("strictly decreasing in the horizon") {
        double prev = survival_probability(fit, 40.0, 0.0);
        for (double T = 1.0; T <= 60.0; T += 1.0) {
            const double cur = survival_probability(fit, 40.0, T);
            CHECK(cur < prev);
            prev = cur;
        }
    }

    SUBCASE("matches direct quadrature of the hazard") {
        // Compare cumulative hazards; survival-space comparison needs the
        // quadrature to 1e-10 absolute even when the integral is ~200.
        for (double x : {0.0, 12.0, 30.0, 55.5, 80.0})
            for (double T : {0.25, 5.0, 22.0, 60.0}) {
                const double integral = ts::romberg(
                    [&](double s) { return hazard(fit, x + s); }, 0.0, T);
                const double p = survival_probability(fit, x, T);
                CHECK(ts::close_abs(std::log(p), -integral,
                                    1e-12 * std::max(1.0, integral)));
                if (integral < 20.0)
                    CHECK(ts::close_rel(p, std::exp(-integral), 1e-10));
            }
    }

    SUBCASE("survival and death exhaust the probability mass") {
        // d/ds p(x,s) = -mu(x+s) p(x,s), so p + integral of p mu must be 1
        for (double x : {25.0, 50.0}) {
            const double T = 45.0;
            const double dead = ts::romberg(
                [&](double s) {
                    return survival_probability(fit, x, s) * hazard(fit, x + s);
                },
                0.0, T);
            CHECK(ts::close_abs(survival_probability(fit, x, T) + dead, 1.0, 1e-8));
        }
    }

    SUBCASE("domain checks") {
        CHECK_THROWS_AS(survival_probability(fit, -1.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(survival_probability(fit, 1.0, -1.0), std::invalid_argument);
    }
}

TEST_CASE("fit recovers synthetic parameters") {
    const double a = 5e-4, b = 2e-5, c = 0.1;
    const auto obs = synthetic_observations(a, b, c, 30.0, 80.0);
    const auto fit = fit_gompertz_makeham(obs, 30.0, 80.0);
    CHECK(ts::close_rel(fit.a, a, 1e-3));
    CHECK(ts::close_rel(fit.b, b, 1e-3));
    CHECK(ts::close_rel(fit.c, c, 1e-3));
    CHECK(fit.sse < 1e-14);
    CHECK(fit.window_lo == 30.0);
    CHECK(fit.window_hi == 80.0);
}

TEST_CASE("fit handles a vanishing baseline") {
    const auto obs = synthetic_observations(0.0, 3e-5, 0.09, 20.0, 90.0);
    const auto fit = fit_gompertz_makeham(obs, 20.0, 90.0);
    CHECK(std::abs(fit.a) <= 1e-5);
    CHECK(ts::close_rel(fit.b, 3e-5, 1e-3));
    CHECK(ts::close_rel(fit.c, 0.09, 1e-3));
}

TEST_CASE("fit on the bundled table") {
    const auto rows =
        load_mortality_table_file(ts::data_file("mortality_norway_2018.csv"));
    const auto obs = empirical_hazard(rows);
    const auto fit = fit_gompertz_makeham(obs, 9.0, 89.0);

    CHECK(ts::close_rel(fit.a, 0.0011878838000147255, 1e-7));
    CHECK(ts::close_rel(fit.b, 2.7330264009842925e-06, 1e-6));
    CHECK(ts::close_rel(fit.c, 0.12656519204775996, 1e-9));
    CHECK(ts::close_rel(fit.sse, 2.1428748752231476e-05, 1e-7));
    CHECK(fit.a > 0.0);
    CHECK(fit.b > 0.0);

    SUBCASE("open-ended 90+ band sits outside the default window") {
        const auto with90 = fit_gompertz_makeham(obs, 9.0, 90.0);
        CHECK(with90.c != fit.c);
    }

    SUBCASE("fitted hazard increases through adult ages") {
        double prev = hazard(fit, 30.0);
        for (double age = 31.0; age <= 90.0; age += 1.0) {
            const double cur = hazard(fit, age);
            CHECK(cur > prev);
            prev = cur;
        }
    }

    SUBCASE("fit is deterministic") {
        const auto again = fit_gompertz_makeham(obs, 9.0, 89.0);
        CHECK(again.a == fit.a);
        CHECK(again.b == fit.b);
        CHECK(again.c == fit.c);
        CHECK(again.sse == fit.sse);
    }
}

TEST_CASE("fit input validation") {
    const auto obs = synthetic_observations(5e-4, 2e-5, 0.1, 30.0, 80.0);
    CHECK_THROWS_AS(fit_gompertz_makeham(obs, 50.0, 52.0), std::invalid_argument);
    CHECK_THROWS_AS(fit_gompertz_makeham(obs, 80.0, 30.0), std::invalid_argument);

    std::vector<HazardObservation> zeros;
    for (double age = 10.0; age <= 20.0; age += 1.0) zeros.push_back({age, 0.0});
    CHECK_THROWS_AS(fit_gompertz_makeham(zeros, 10.0, 20.0), std::invalid_argument);
}
