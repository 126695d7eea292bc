#include "enercast/series.hpp"

#include "enercast/errors.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace enercast;

TEST_CASE("construction rejects non-finite and empty inputs") {
    CHECK_THROWS_AS(TimeSeries(2000, {}), Error);
    CHECK_THROWS_AS(TimeSeries(2000, {1.0, std::nan(""), 3.0}), Error);
    CHECK_THROWS_AS(TimeSeries(2000, {1.0, std::numeric_limits<double>::infinity()}), Error);
    const TimeSeries ok(1960, {1.0, 2.0}, "x");
    CHECK(ok.end_year() == 1961);
    CHECK(ok.year_at(1) == 1961);
}

TEST_CASE("difference matches direct arithmetic") {
    const TimeSeries x(1960, {1, 3, 6, 10});
    CHECK(difference(x, 1).values() == std::vector<double>{2, 3, 4});
    CHECK(difference(x, 1).start_year() == 1961);
    CHECK(difference(x, 2).values() == std::vector<double>{1, 1});
    CHECK(difference(x, 2).start_year() == 1962);
    CHECK(difference(x, 0).values() == x.values());

    CHECK_THROWS_AS(difference(TimeSeries(1960, {5.0}), 1), Error);
    CHECK_THROWS_WITH_AS(difference(x, 4), doctest::Contains("too short"), Error);
}

TEST_CASE("integrate inverts difference") {
    const TimeSeries x(1960, {1, 3, 6, 10});

    SUBCASE("first order") {
        const TimeSeries diffs = difference(x, 1);
        const TimeSeries rebuilt = integrate(diffs, difference_pivots(x, 1), 1);
        CHECK(rebuilt.values() == x.values());
        CHECK(rebuilt.start_year() == 1960);
        // New values beyond the pivot.
        CHECK(std::vector<double>(rebuilt.values().begin() + 1, rebuilt.values().end()) ==
              std::vector<double>{3, 6, 10});
    }
    SUBCASE("identity at d = 0") {
        const TimeSeries same = integrate(x, {}, 0);
        CHECK(same.values() == x.values());
    }
    SUBCASE("second order, verified by differencing twice") {
        const TimeSeries diffs(1962, {1, 1});
        const auto pivots = difference_pivots(x, 2);
        CHECK(pivots == std::vector<double>{1, 2});
        const TimeSeries rebuilt = integrate(diffs, pivots, 2);
        CHECK(difference(rebuilt, 2).values() == diffs.values());
        CHECK(rebuilt.values() == x.values());
    }
    SUBCASE("pivot count must match d") {
        CHECK_THROWS_AS(integrate(difference(x, 1), {1.0, 2.0}, 1), Error);
    }
}

TEST_CASE("round trip holds exactly for random series") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss(0.0, 10.0);
    std::uniform_int_distribution<int> len(15, 80);
    for (int rep = 0; rep < 200; ++rep) {
        std::vector<double> values(static_cast<std::size_t>(len(rng)));
        for (double& v : values) v = gauss(rng);
        const TimeSeries x(1950, values);
        for (int d = 0; d <= 2; ++d) {
            const TimeSeries rebuilt = integrate(difference(x, d), difference_pivots(x, d), d);
            REQUIRE(rebuilt.values() == x.values()); // exact, no tolerance
            REQUIRE(rebuilt.start_year() == x.start_year());
        }
    }
}

TEST_CASE("integrate_from_tail continues a series") {
    const TimeSeries x(1960, {1, 3, 6, 10});
    // Future second differences of the quadratic-ish cascade.
    const auto continued = integrate_from_tail({1, 1}, difference_tail(x, 2));
    // w_5 = 4+1 = 5, x_5 = 15; w_6 = 6, x_6 = 21.
    CHECK(continued == std::vector<double>{15, 21});
    // d = 0 passes values through.
    CHECK(integrate_from_tail({2.5, 3.5}, {}) == std::vector<double>{2.5, 3.5});
}

TEST_CASE("difference is linear") {
    const TimeSeries x(1960, {1.5, -2.0, 4.25, 8.0, 3.0});
    const TimeSeries y(1960, {0.5, 1.0, -1.0, 2.0, 7.5});
    const double a = 2.5, b = -1.25;
    std::vector<double> combo(x.size());
    for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = a * x[i] + b * y[i];
    const auto lhs = difference(TimeSeries(1960, combo), 1).values();
    const auto dx = difference(x, 1).values();
    const auto dy = difference(y, 1).values();
    for (std::size_t i = 0; i < lhs.size(); ++i) {
        CHECK(std::abs(lhs[i] - (a * dx[i] + b * dy[i])) <= 1e-12);
    }
}

TEST_CASE("sample_acf matches the hand formula") {
    SUBCASE("1..5 lag 1") {
        const auto acf = sample_acf(TimeSeries(2000, {1, 2, 3, 4, 5}), 1);
        CHECK(acf.size() == 1);
        CHECK(acf[0] == doctest::Approx(0.4).epsilon(1e-12));
    }
    SUBCASE("constant series is degenerate") {
        CHECK_THROWS_AS(sample_acf(TimeSeries(2000, {3, 3, 3, 3}), 1), Error);
    }
    SUBCASE("alternating series, exact hand evaluation") {
        // x = (1,-1,1,-1,1,-1): mean 0, c0 = 6, c1 = sum of 5 products = -5.
        const auto acf = sample_acf(TimeSeries(2000, {1, -1, 1, -1, 1, -1}), 1);
        CHECK(acf[0] == doctest::Approx(-5.0 / 6.0).epsilon(1e-12));
        CHECK(acf[0] < 0);
        CHECK(acf[0] >= -1.0);
    }
    SUBCASE("magnitude never exceeds one") {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> gauss;
        for (int rep = 0; rep < 50; ++rep) {
            std::vector<double> v(40);
            for (double& u : v) u = gauss(rng);
            for (double r : sample_acf(TimeSeries(1900, v), 10)) {
                CHECK(std::abs(r) <= 1.0 + 1e-12);
            }
        }
    }
}

TEST_CASE("align_panel trims to the common overlap") {
    const TimeSeries a(1960, std::vector<double>(62, 1.0), "A"); // 1960-2021
    const TimeSeries b(1970, std::vector<double>(52, 2.0), "B"); // 1970-2021

    SUBCASE("mixed vintages trim to 1970-2021") {
        const auto aligned = align_panel({a, b});
        for (const auto& s : aligned) {
            CHECK(s.start_year() == 1970);
            CHECK(s.end_year() == 2021);
            CHECK(s.size() == 52);
        }
    }
    SUBCASE("single series unchanged") {
        const auto aligned = align_panel({a});
        CHECK(aligned.front().values() == a.values());
    }
    SUBCASE("disjoint ranges fail") {
        const TimeSeries c(1960, std::vector<double>(11, 0.0), "C"); // 1960-1970
        const TimeSeries d(1980, std::vector<double>(11, 0.0), "D"); // 1980-1990
        CHECK_THROWS_AS(align_panel({c, d}), Error);
    }
    SUBCASE("alignment is idempotent") {
        const auto once = align_panel({a, b});
        const auto twice = align_panel(once);
        for (std::size_t i = 0; i < once.size(); ++i) {
            CHECK(twice[i].values() == once[i].values());
            CHECK(twice[i].start_year() == once[i].start_year());
        }
    }
}
