#include "mtlab/learn.hpp"

#include <cmath>
#include <memory>
#include <random>

namespace mtlab::learn {

WeatherPredictor constant_sunny() {
    return {"constant-S", [](const std::vector<int>&) { return 0; }};
}

WeatherPredictor repeat_yesterday() {
    return {"repeat-yesterday",
            [](const std::vector<int>& prefix) { return prefix.empty() ? 0 : prefix.back(); }};
}

WeatherPredictor alternate() {
    return {"alternate",
            [](const std::vector<int>& prefix) { return prefix.empty() ? 0 : 1 - prefix.back(); }};
}

WeatherPredictor random_predictor(std::uint64_t seed) {
    // table over the 7 prefixes: (), (0), (1), (00), (01), (10), (11)
    std::mt19937_64 rng(seed);
    auto table = std::make_shared<std::array<int, 7>>();
    for (auto& v : *table) v = static_cast<int>(rng() & 1);
    return {"random-" + std::to_string(seed), [table](const std::vector<int>& prefix) {
                size_t idx = 0;
                for (int day : prefix) idx = 2 * idx + static_cast<size_t>(day) + 1;
                return (*table)[idx];
            }};
}

NflResult nfl_weather(const WeatherPredictor& predictor) {
    NflResult out{{}, 0.0};
    for (int history = 0; history < 8; ++history) {
        int wrong = 0;
        std::vector<int> prefix;
        for (int day = 0; day < 3; ++day) {
            int actual = (history >> day) & 1;
            if (predictor.predict(prefix) != actual) ++wrong;
            prefix.push_back(actual);
        }
        out.per_history_error.push_back(wrong / 3.0);
    }
    for (double e : out.per_history_error) out.mean_error += e;
    out.mean_error /= 8.0;
    return out;
}

namespace {

void check_pac_ranges(const PacRequest& req) {
    if (!(req.epsilon > 0.0 && req.epsilon < 1.0))
        throw validation_error("epsilon must be in (0,1)");
    if (!(req.delta > 0.0 && req.delta < 1.0))
        throw validation_error("delta must be in (0,1)");
}

count_t to_sample_count(double bound) {
    double n = std::ceil(bound);
    if (n < 0.0) n = 0.0;
    if (n > 9e18) throw overflow_error("sample bound overflows");
    return static_cast<count_t>(n);
}

}  // namespace

count_t pac_sample_bound(const PacRequest& req, count_t class_size) {
    check_pac_ranges(req);
    if (class_size < 1) throw validation_error("hypothesis class must be non-empty");
    double bound =
        (1.0 / req.epsilon) * std::log(static_cast<double>(class_size) / req.delta);
    return to_sample_count(bound);
}

count_t vc_sample_bound(const PacRequest& req, int vcd, double c) {
    check_pac_ranges(req);
    if (vcd < 1) throw validation_error("VC dimension must be >= 1");
    if (!(c > 0.0)) throw validation_error("the bound constant must be positive");
    double bound = c * (vcd + std::log(1.0 / req.delta)) / req.epsilon;
    return to_sample_count(bound);
}

HypothesisClass halfspaces_2d() {
    HypothesisClass cls;
    cls.name = "halfspaces-2d";
    cls.candidates = [](const std::vector<Point>& points) {
        std::vector<HypothesisClass::Hypothesis> out;
        // constant labelings are always realizable by a far-away line
        out.push_back([](const Point&) { return 0; });
        out.push_back([](const Point&) { return 1; });
        // separators anchored on point pairs, nudged to either side
        for (size_t i = 0; i < points.size(); ++i) {
            for (size_t j = 0; j < points.size(); ++j) {
                if (i == j) continue;
                double nx = -(points[j].y - points[i].y);
                double ny = points[j].x - points[i].x;
                double norm = std::hypot(nx, ny);
                if (norm == 0.0) continue;
                nx /= norm;
                ny /= norm;
                double base = nx * points[i].x + ny * points[i].y;
                for (double offset : {-1e-6, 0.0, 1e-6}) {
                    double threshold = base + offset;
                    for (int orient : {+1, -1}) {
                        out.push_back([nx, ny, threshold, orient](const Point& p) {
                            double side = nx * p.x + ny * p.y - threshold;
                            return orient * side >= 0.0 ? 1 : 0;
                        });
                    }
                }
            }
        }
        return out;
    };
    return cls;
}

HypothesisClass two_constant_hypotheses() {
    HypothesisClass cls;
    cls.name = "two-constants";
    cls.candidates = [](const std::vector<Point>&) {
        return std::vector<HypothesisClass::Hypothesis>{
            [](const Point&) { return 0; },
            [](const Point&) { return 1; },
        };
    };
    return cls;
}

HypothesisClass axis_thresholds() {
    HypothesisClass cls;
    cls.name = "axis-thresholds";
    cls.candidates = [](const std::vector<Point>& points) {
        std::vector<HypothesisClass::Hypothesis> out;
        std::vector<double> cuts{-1e18};
        for (const auto& p : points) {
            cuts.push_back(p.x);
            cuts.push_back(p.x + 1e-6);
        }
        for (double theta : cuts)
            out.push_back([theta](const Point& p) { return p.x >= theta ? 1 : 0; });
        return out;
    };
    return cls;
}

bool shatters(const HypothesisClass& cls, const std::vector<Point>& points) {
    const size_t m = points.size();
    if (m > 20)
        throw cap_error("shattering check refused: " + std::to_string(m) +
                            " points exceed the labeling cap",
                        m >= 64 ? ~count_t{0} : (count_t{1} << m));
    if (m == 0) return true;

    auto hypotheses = cls.candidates(points);
    std::vector<bool> realized(size_t{1} << m, false);
    size_t found = 0;
    for (const auto& h : hypotheses) {
        size_t labeling = 0;
        for (size_t k = 0; k < m; ++k)
            if (h(points[k]) == 1) labeling |= size_t{1} << k;
        if (!realized[labeling]) {
            realized[labeling] = true;
            if (++found == realized.size()) return true;
        }
    }
    return false;
}

int vc_dimension(const HypothesisClass& cls,
                 const std::function<std::vector<Point>(int, int)>& point_generator,
                 int max_m, int attempts_per_size) {
    if (max_m > 6) throw validation_error("vc_dimension caps max_m at 6");
    int best = 0;
    for (int m = 1; m <= max_m; ++m) {
        for (int attempt = 0; attempt < attempts_per_size; ++attempt) {
            auto points = point_generator(m, attempt);
            if (static_cast<int>(points.size()) != m) continue;
            if (shatters(cls, points)) {
                best = m;
                break;
            }
        }
    }
    return best;
}

}  // namespace mtlab::learn
