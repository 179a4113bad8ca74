#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "roadgrid/grid_map.hpp"

namespace roadgrid {

enum class AccuracyScope { all_cells, lane_cells_only };

// Fraction of cells whose predicted code matches the ground truth. With
// lane_cells_only, only cells with gt != 0 are counted.
double class_accuracy(const RoadGridMap& pred, const RoadGridMap& gt,
                      AccuracyScope scope = AccuracyScope::all_cells);

// confusion[g][p] counts cells with ground truth g and prediction p.
using ConfusionMatrix = std::array<std::array<std::uint64_t, kNumCodes>, kNumCodes>;
ConfusionMatrix confusion_matrix(const RoadGridMap& pred, const RoadGridMap& gt);
void accumulate_confusion(ConfusionMatrix& acc, const RoadGridMap& pred,
                          const RoadGridMap& gt);

struct AccuracySummary {
    double mean, median, q1, q3, min, max;
};

// Order statistics; quartiles by linear interpolation.
AccuracySummary summarize(std::vector<double> accuracies);

}  // namespace roadgrid
