#include "roadgrid/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace roadgrid {

namespace {

void check_shapes(const RoadGridMap& pred, const RoadGridMap& gt) {
    if (pred.size() != gt.size())
        throw ShapeMismatch("prediction and ground truth differ in size");
}

double quantile(const std::vector<double>& sorted, double q) {
    double h = (sorted.size() - 1) * q;
    std::size_t lo = static_cast<std::size_t>(std::floor(h));
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - lo) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double class_accuracy(const RoadGridMap& pred, const RoadGridMap& gt, AccuracyScope scope) {
    check_shapes(pred, gt);
    std::uint64_t total = 0, match = 0;
    const auto& pc = pred.cells();
    const auto& gc = gt.cells();
    for (std::size_t i = 0; i < gc.size(); ++i) {
        if (scope == AccuracyScope::lane_cells_only && gc[i] == kCodeOffLane) continue;
        ++total;
        if (pc[i] == gc[i]) ++match;
    }
    if (total == 0) return 1.0;
    return static_cast<double>(match) / static_cast<double>(total);
}

void accumulate_confusion(ConfusionMatrix& acc, const RoadGridMap& pred,
                          const RoadGridMap& gt) {
    check_shapes(pred, gt);
    const auto& pc = pred.cells();
    const auto& gc = gt.cells();
    for (std::size_t i = 0; i < gc.size(); ++i) ++acc[gc[i]][pc[i]];
}

ConfusionMatrix confusion_matrix(const RoadGridMap& pred, const RoadGridMap& gt) {
    ConfusionMatrix m{};
    accumulate_confusion(m, pred, gt);
    return m;
}

AccuracySummary summarize(std::vector<double> accuracies) {
    if (accuracies.empty()) throw EmptyList("summarize needs at least one value");
    std::sort(accuracies.begin(), accuracies.end());
    AccuracySummary s;
    s.mean = std::accumulate(accuracies.begin(), accuracies.end(), 0.0) /
             static_cast<double>(accuracies.size());
    s.median = quantile(accuracies, 0.5);
    s.q1 = quantile(accuracies, 0.25);
    s.q3 = quantile(accuracies, 0.75);
    s.min = accuracies.front();
    s.max = accuracies.back();
    return s;
}

}  // namespace roadgrid
