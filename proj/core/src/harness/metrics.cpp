#include "srslab/harness/metrics.hpp"

#include <cmath>

#include <boost/math/distributions/students_t.hpp>

#include "srslab/errors.hpp"

namespace srslab::harness {

EfficiencyResult sample_efficiency(const MetricsTimeline& timeline, double threshold, int k) {
    if (k < 1) throw UsageError("sample_efficiency: k must be >= 1");
    EfficiencyResult res;
    res.threshold = threshold;
    res.k = k;
    int hits = 0;
    for (const auto& [episode, score] : timeline.points) {
        if (score >= threshold && ++hits == k) {
            res.episodes = episode;
            break;
        }
    }
    return res;
}

double t_quantile_975(int df) {
    if (df < 1) throw UsageError("t_quantile_975: df must be >= 1");
    boost::math::students_t_distribution<double> dist(static_cast<double>(df));
    return boost::math::quantile(dist, 0.975);
}

AggregateResult aggregate(const std::vector<std::optional<double>>& values) {
    AggregateResult res;
    res.n = static_cast<int>(values.size());
    if (res.n < 2) throw UsageError("aggregate: needs at least 2 results");

    double sum = 0.0;
    for (const auto& v : values) {
        if (!v) continue;
        sum += *v;
        ++res.attain;
    }
    if (res.attain == 0) return res;

    const double mean = sum / res.attain;
    res.mean = mean;
    if (res.attain >= 2) {
        double ss = 0.0;
        for (const auto& v : values)
            if (v) ss += (*v - mean) * (*v - mean);
        const double sd = std::sqrt(ss / (res.attain - 1));
        res.half_width = t_quantile_975(res.attain - 1) * sd / std::sqrt(res.attain);
    }
    return res;
}

AggregateResult aggregate(const std::vector<double>& values) {
    std::vector<std::optional<double>> v(values.begin(), values.end());
    return aggregate(v);
}

std::optional<double> final_window_mean(const MetricsTimeline& timeline, int window) {
    if (timeline.points.empty()) return std::nullopt;
    const int n = static_cast<int>(timeline.points.size());
    const int take = std::min(window, n);
    double sum = 0.0;
    for (int i = n - take; i < n; ++i) sum += timeline.points[static_cast<size_t>(i)].second;
    return sum / take;
}

}  // namespace srslab::harness
