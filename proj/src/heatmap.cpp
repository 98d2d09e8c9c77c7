#include "tempo/heatmap.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tempo/errors.hpp"

namespace tempo {

namespace {

struct Rgb {
    int r, g, b;
};

// Diverging blue -> pale yellow -> red ramp, interpolated linearly.
constexpr std::array<Rgb, 5> kRampStops = {{
    {49, 54, 149},   // 0.00 cold
    {116, 173, 209}, // 0.25
    {255, 255, 191}, // 0.50
    {244, 109, 67},  // 0.75
    {165, 0, 38},    // 1.00 hot
}};

constexpr Rgb kNeutral = {189, 189, 189}; // undefined entries

Rgb ramp_color(double v) {
    v = std::clamp(v, 0.0, 1.0);
    const double scaled = v * (kRampStops.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::min<double>(scaled, kRampStops.size() - 2));
    const double t = scaled - static_cast<double>(lo);
    const Rgb& a = kRampStops[lo];
    const Rgb& b = kRampStops[lo + 1];
    auto mix = [&](int x, int y) { return static_cast<int>(std::lround(x + (y - x) * t)); };
    return {mix(a.r, b.r), mix(a.g, b.g), mix(a.b, b.b)};
}

std::string hex(const Rgb& c) {
    char buffer[8];
    std::snprintf(buffer, sizeof(buffer), "#%02x%02x%02x", c.r, c.g, c.b);
    return buffer;
}

} // namespace

std::string render_heatmap_svg(const SimilarityMatrix& matrix, const HeatmapStyle& style,
                               std::string_view manifest_ref) {
    const std::size_t n = matrix.size();
    if (n == 0) throw EmptyInputError("render_heatmap_svg: empty matrix");

    int cell = style.cell_size;
    if (cell <= 0) cell = std::max<int>(2, static_cast<int>(560 / n));
    const int grid = cell * static_cast<int>(n);
    const int margin_left = 64;
    const int margin_top = 36;
    const int margin_bottom = 48;
    const int bar_gap = 24;
    const int bar_width = 18;
    const int width = margin_left + grid + bar_gap + bar_width + 56;
    const int height = margin_top + grid + margin_bottom;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    if (!manifest_ref.empty()) svg << "<!-- manifest: " << manifest_ref << " -->\n";

    svg << "<defs><linearGradient id=\"ramp\" x1=\"0\" y1=\"1\" x2=\"0\" y2=\"0\">";
    for (int i = 0; i <= 10; ++i) {
        svg << "<stop offset=\"" << i * 10 << "%\" stop-color=\"" << hex(ramp_color(i / 10.0))
            << "\"/>";
    }
    svg << "</linearGradient></defs>\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";

    const std::string title = style.title.empty() ? std::string(measure_name(matrix.measure))
                                                  : style.title;
    svg << "<text x=\"" << margin_left + grid / 2 << "\" y=\"22\" font-family=\"sans-serif\" "
        << "font-size=\"14\" text-anchor=\"middle\">" << title << "</text>\n";

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double v = matrix.values[i][j];
            const Rgb color = std::isnan(v) ? kNeutral : ramp_color(v);
            svg << "<rect x=\"" << margin_left + static_cast<int>(j) * cell << "\" y=\""
                << margin_top + static_cast<int>(i) * cell << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"" << hex(color) << "\"/>\n";
        }
    }

    // axis tick labels from window starts
    const int label_step =
        std::max<int>(1, static_cast<int>((n + style.max_axis_labels - 1) /
                                          std::max(1, style.max_axis_labels)));
    for (std::size_t i = 0; i < n; i += static_cast<std::size_t>(label_step)) {
        const int cx = margin_left + static_cast<int>(i) * cell + cell / 2;
        const int cy = margin_top + static_cast<int>(i) * cell + cell / 2;
        svg << "<text x=\"" << cx << "\" y=\"" << margin_top + grid + 16
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">"
            << matrix.window_starts[i] << "</text>\n";
        svg << "<text x=\"" << margin_left - 6 << "\" y=\"" << cy + 3
            << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">"
            << matrix.window_starts[i] << "</text>\n";
    }

    const int bar_x = margin_left + grid + bar_gap;
    svg << "<rect x=\"" << bar_x << "\" y=\"" << margin_top << "\" width=\"" << bar_width
        << "\" height=\"" << grid << "\" fill=\"url(#ramp)\" stroke=\"black\" "
        << "stroke-width=\"0.5\"/>\n";
    svg << "<text x=\"" << bar_x + bar_width + 6 << "\" y=\"" << margin_top + 10
        << "\" font-family=\"sans-serif\" font-size=\"11\">1</text>\n";
    svg << "<text x=\"" << bar_x + bar_width + 6 << "\" y=\"" << margin_top + grid
        << "\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n";

    svg << "</svg>\n";
    return svg.str();
}

} // namespace tempo
