#pragma once

#include <optional>
#include <vector>

#include "srslab/harness/run.hpp"

namespace srslab::harness {

struct EfficiencyResult {
    std::optional<int> episodes;  // absent: never attained the threshold
    double threshold = 0.0;
    int k = 1;
};

// Episode index of the k-th evaluation point scoring >= threshold.
EfficiencyResult sample_efficiency(const MetricsTimeline& timeline, double threshold, int k);

struct AggregateResult {
    std::optional<double> mean;
    std::optional<double> half_width;  // 95% t-interval, needs >= 2 attained values
    int attain = 0;                    // runs contributing to the mean
    int n = 0;                         // runs observed
};

// Mean and 95% confidence half-width t_{0.975, n-1} * s / sqrt(n) over the
// attained values; absent entries (never-attained runs) are excluded from
// the mean and reported through the attain count.
AggregateResult aggregate(const std::vector<std::optional<double>>& values);
AggregateResult aggregate(const std::vector<double>& values);

// Mean of the last `window` evaluation points (fewer if the timeline is
// shorter); absent for an empty timeline.
std::optional<double> final_window_mean(const MetricsTimeline& timeline, int window);

// Two-sided Student-t quantile at 97.5%, df >= 1.
double t_quantile_975(int df);

}  // namespace srslab::harness
