#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mtlab/common.hpp"

namespace mtlab::learn {

/// Deterministic sunny/rainy predictor over three-day histories: given the
/// days seen so far (0 = S, 1 = R), predict the next day.
struct WeatherPredictor {
    std::string name;
    std::function<int(const std::vector<int>& prefix)> predict;
};

WeatherPredictor constant_sunny();
WeatherPredictor repeat_yesterday();  // predicts S on day one
WeatherPredictor alternate();         // predicts S first, then the opposite of yesterday

/// Deterministic predictor drawn from a seeded table over all 7 prefixes.
WeatherPredictor random_predictor(std::uint64_t seed);

struct NflResult {
    std::vector<double> per_history_error;  // 8 entries, histories in binary order
    double mean_error;
};

/// Evaluates the predictor on all 2^3 weather histories. For any
/// deterministic predictor the mean error is exactly 1/2 and the error
/// multiset is {0 x1, 1/3 x3, 2/3 x3, 1 x1}.
NflResult nfl_weather(const WeatherPredictor& predictor);

struct PacRequest {
    double epsilon;
    double delta;
};

/// Finite-class sample bound: ceil((1/eps) * ln(|H| / delta)).
count_t pac_sample_bound(const PacRequest& req, count_t class_size);

/// VC sample bound: ceil(c * (vcd + ln(1/delta)) / eps). The hidden constant
/// c is caller-supplied; the result is an order-of-magnitude figure.
count_t vc_sample_bound(const PacRequest& req, int vcd, double c = 1.0);

struct Point {
    double x;
    double y;
};

/// Binary hypothesis family with a brute-force candidate generator: the
/// generator produces, for a given point set, finitely many hypotheses that
/// suffice to decide which labelings the class realizes on those points.
struct HypothesisClass {
    std::string name;
    using Hypothesis = std::function<int(const Point&)>;
    std::function<std::vector<Hypothesis>(const std::vector<Point>&)> candidates;
};

/// Halfspaces of the plane (linear classifiers with offset, both
/// orientations). Candidate separators run through all point pairs with
/// small perpendicular offsets; exact for points in general position.
HypothesisClass halfspaces_2d();

/// Exactly two hypotheses: all-zero and all-one.
HypothesisClass two_constant_hypotheses();

/// Thresholds on the x-axis, single orientation: h(x) = 1 iff x >= theta.
HypothesisClass axis_thresholds();

/// True iff every one of the 2^m labelings of the points is realized by some
/// generated hypothesis. Refuses m > 20.
bool shatters(const HypothesisClass& cls, const std::vector<Point>& points);

/// Largest m <= max_m for which some generated point set of size m is
/// shattered. point_generator(m, attempt) supplies candidate sets.
int vc_dimension(const HypothesisClass& cls,
                 const std::function<std::vector<Point>(int m, int attempt)>& point_generator,
                 int max_m, int attempts_per_size = 50);

}  // namespace mtlab::learn
