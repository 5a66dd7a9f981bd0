#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gaslab/diagnostics.hpp"
#include "gaslab/rng.hpp"

using namespace gaslab;

namespace {

std::vector<double> log_spaced(double t0, double t1, int per_decade) {
    std::vector<double> t;
    double decades = std::log10(t1 / t0);
    int n = static_cast<int>(decades * per_decade) + 1;
    for (int i = 0; i <= n; ++i) t.push_back(t0 * std::pow(10.0, decades * i / n));
    return t;
}

}  // namespace

TEST_CASE("pure power law gives the exact exponent everywhere", "[diagnostics]") {
    auto t = log_spaced(1.0, 1e4, 60);
    std::vector<double> v;
    for (double x : t) v.push_back(3.7 * std::pow(x, 0.66));
    std::vector<double> ft;
    auto a = loglog_slope(t, v, 0.25, &ft);
    REQUIRE(a.size() == t.size());
    REQUIRE(ft.size() == t.size());
    for (double s : a) CHECK(s == Catch::Approx(0.66).margin(1e-12));
}

TEST_CASE("shifted power law converges to its asymptotic exponent", "[diagnostics]") {
    auto t = log_spaced(1.0, 1e6, 40);
    std::vector<double> v;
    for (double x : t) v.push_back(std::pow(x + 1.0, 0.5));
    double late = slope_at(t, v, 1e6, 0.25);
    CHECK(late == Catch::Approx(0.5).margin(1e-3));
    // early on the local exponent is visibly depressed
    double early = slope_at(t, v, 2.0, 0.25);
    CHECK(early < 0.40);
}

TEST_CASE("slope fitting survives multiplicative noise", "[diagnostics]") {
    auto t = log_spaced(1.0, 1e4, 300);
    std::vector<double> v;
    Rng rng(20260814);
    for (double x : t) {
        double noise = 1.0 + 0.01 * (2.0 * rng.uniform01() - 1.0);
        v.push_back(std::pow(x + 1.0, 0.66) * noise);
    }
    auto a = loglog_slope(t, v, 0.3);
    for (size_t i = 0; i < t.size(); ++i) {
        double expected = 0.66 * t[i] / (t[i] + 1.0);
        CHECK(std::fabs(a[i] - expected) < 0.03);
    }
}

TEST_CASE("nonpositive data is refused with a usable message", "[diagnostics]") {
    std::vector<double> t{1, 2, 3}, v{1.0, -2.0, 3.0};
    CHECK_THROWS_WITH(loglog_slope(t, v, 0.25),
                      Catch::Matchers::ContainsSubstring("-2") &&
                          Catch::Matchers::ContainsSubstring("t=2"));
    // t <= 0 samples are skipped, not fatal
    std::vector<double> t2{0.0, 1.0, 2.0, 4.0}, v2{5.0, 1.0, 2.0, 4.0};
    std::vector<double> ft;
    auto a = loglog_slope(t2, v2, 0.25, &ft);
    CHECK(ft.size() == 3);
    CHECK(a.front() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("trailing average is exact on linear data", "[diagnostics]") {
    std::vector<double> t, v;
    for (int i = 0; i <= 1000; ++i) {
        t.push_back(i * 0.01);
        v.push_back(2.0 * i * 0.01 + 1.0);
    }
    auto avg = trailing_average(t, v, 2.0);
    // once the window is full: mean of a linear ramp over [t-2, t] = v(t) - slope
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] < 2.0) continue;
        CHECK(avg[i] == Catch::Approx(v[i] - 2.0).margin(1e-10));
    }
    // constant series: average equals the constant from the first sample on
    std::vector<double> c(t.size(), 4.2);
    auto cavg = trailing_average(t, c, 0.5);
    for (double x : cavg) CHECK(x == Catch::Approx(4.2).margin(1e-12));
}

TEST_CASE("correlation endpoints", "[diagnostics]") {
    std::vector<double> a{1, 2, 3, 4, 5};
    std::vector<double> b{2, 4, 6, 8, 10};
    std::vector<double> c{5, 4, 3, 2, 1};
    CHECK(correlation(a, b) == Catch::Approx(1.0).margin(1e-14));
    CHECK(correlation(a, c) == Catch::Approx(-1.0).margin(1e-14));
    CHECK_THROWS_AS(correlation(a, std::vector<double>{1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(correlation(a, std::vector<double>(5, 3.0)), std::invalid_argument);
}
