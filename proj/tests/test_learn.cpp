#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "mtlab/learn.hpp"

using namespace mtlab;
using namespace mtlab::learn;

namespace {

void check_nfl_multiset(const NflResult& result) {
    CHECK(result.mean_error == doctest::Approx(0.5).epsilon(1e-12));
    std::vector<double> errors = result.per_history_error;
    REQUIRE(errors.size() == 8);
    std::sort(errors.begin(), errors.end());
    // {0 x1, 1/3 x3, 2/3 x3, 1 x1}
    CHECK(errors[0] == doctest::Approx(0.0));
    for (int k = 1; k <= 3; ++k) CHECK(errors[static_cast<size_t>(k)] == doctest::Approx(1.0 / 3.0));
    for (int k = 4; k <= 6; ++k) CHECK(errors[static_cast<size_t>(k)] == doctest::Approx(2.0 / 3.0));
    CHECK(errors[7] == doctest::Approx(1.0));
}

std::vector<Point> seeded_points(std::uint64_t seed, int m) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-1.0, 1.0);
    std::vector<Point> out;
    for (int i = 0; i < m; ++i) out.push_back({coord(rng), coord(rng)});
    return out;
}

}  // namespace

TEST_CASE("no free lunch: every deterministic predictor averages 1/2") {
    check_nfl_multiset(nfl_weather(constant_sunny()));
    check_nfl_multiset(nfl_weather(repeat_yesterday()));
    check_nfl_multiset(nfl_weather(alternate()));
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        check_nfl_multiset(nfl_weather(random_predictor(seed)));
}

TEST_CASE("constant predictor is perfect only on the all-sunny history") {
    auto result = nfl_weather(constant_sunny());
    CHECK(result.per_history_error[0] == doctest::Approx(0.0));  // history 000
    CHECK(result.per_history_error[7] == doctest::Approx(1.0));  // history 111
}

TEST_CASE("random predictors are deterministic for a fixed seed") {
    auto a = nfl_weather(random_predictor(17));
    auto b = nfl_weather(random_predictor(17));
    CHECK(a.per_history_error == b.per_history_error);
}

TEST_CASE("finite-class sample bound arithmetic") {
    CHECK(pac_sample_bound({0.1, 0.05}, 1000) == 100);
    CHECK(pac_sample_bound({0.01, 0.01}, 1) == 461);  // ceil(100 * ln(100))
    CHECK(pac_sample_bound({0.5, 0.5}, 2) == 3);      // ceil(2 * ln 4) = 3
    CHECK_THROWS_AS(pac_sample_bound({0.0, 0.05}, 10), validation_error);
    CHECK_THROWS_AS(pac_sample_bound({0.1, 1.5}, 10), validation_error);
    CHECK_THROWS_AS(pac_sample_bound({0.1, 0.05}, 0), validation_error);
}

TEST_CASE("VC sample bound arithmetic") {
    // ceil(c * (d + ln(1/delta)) / eps)
    CHECK(vc_sample_bound({0.1, 0.05}, 3) ==
          static_cast<count_t>(std::ceil((3 + std::log(20.0)) / 0.1)));
    CHECK(vc_sample_bound({0.1, 0.05}, 3, 4.0) ==
          static_cast<count_t>(std::ceil(4.0 * (3 + std::log(20.0)) / 0.1)));
    CHECK_THROWS_AS(vc_sample_bound({0.1, 0.05}, 0), validation_error);
    CHECK_THROWS_AS(vc_sample_bound({0.1, 0.05}, 3, -1.0), validation_error);
}

TEST_CASE("halfspaces shatter 3 points but never 4") {
    auto cls = halfspaces_2d();
    CHECK(shatters(cls, {{0, 0}, {1, 0}, {0, 1}}));
    // 4 collinear-free points still defeat halfspaces (XOR labeling)
    CHECK_FALSE(shatters(cls, {{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
    for (std::uint64_t seed = 1; seed <= 100; ++seed)
        CHECK_FALSE(shatters(cls, seeded_points(seed, 4)));
}

TEST_CASE("halfspace VC dimension is 3") {
    auto cls = halfspaces_2d();
    auto generator = [](int m, int attempt) {
        return seeded_points(static_cast<std::uint64_t>(1000 * m + attempt + 1), m);
    };
    CHECK(vc_dimension(cls, generator, 5) == 3);
}

TEST_CASE("threshold class has VC dimension 1") {
    auto cls = axis_thresholds();
    CHECK(shatters(cls, {{0.5, 0.0}}));
    CHECK_FALSE(shatters(cls, {{0.0, 0.0}, {1.0, 0.0}}));
    auto generator = [](int m, int attempt) {
        return seeded_points(static_cast<std::uint64_t>(31 * m + attempt + 1), m);
    };
    CHECK(vc_dimension(cls, generator, 4) == 1);
}

TEST_CASE("two-constant class shatters one point only") {
    auto cls = two_constant_hypotheses();
    CHECK(shatters(cls, {{0.3, 0.7}}));
    CHECK_FALSE(shatters(cls, {{0.0, 0.0}, {1.0, 1.0}}));
}

TEST_CASE("degenerate shattering inputs") {
    auto cls = halfspaces_2d();
    CHECK(shatters(cls, {}));  // vacuously true
    std::vector<Point> too_many(21, Point{0.0, 0.0});
    CHECK_THROWS_AS(shatters(cls, too_many), cap_error);
    CHECK_THROWS_AS(vc_dimension(cls, [](int m, int) { return std::vector<Point>(
                        static_cast<size_t>(m), Point{0, 0}); }, 7),
                    validation_error);
}
