#pragma once

#include <string>
#include <string_view>

#include "tempo/similarity.hpp"

namespace tempo {

struct HeatmapStyle {
    int cell_size = 0;      // 0: pick so the grid is ~560 px wide
    int max_axis_labels = 9;
    std::string title;      // defaults to the measure name
};

// Self-contained SVG heatmap: a continuous cold-to-hot ramp over [0, 1],
// NaN cells in neutral grey, axis tick labels from the window starts, and a
// labelled color bar. Output bytes are a pure function of the inputs.
std::string render_heatmap_svg(const SimilarityMatrix& matrix, const HeatmapStyle& style = {},
                               std::string_view manifest_ref = {});

} // namespace tempo
