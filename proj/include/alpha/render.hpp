#pragma once
// Raster renders as in-memory PGM/PPM bytes (binary P5/P6).

#include <string>

#include "alpha/grid_map.hpp"
#include "alpha/intent_features.hpp"
#include "alpha/skeleton.hpp"

namespace alpha {

// Free cells white, obstacles black.
std::string render_map_pgm(const GridMap& map);

// Map in grayscale, skeleton pixels red, node pixels blue.
std::string render_skeleton_ppm(const GridMap& map, const Skeleton& skeleton,
                                const std::vector<MapNode>& nodes);

// Per-agent Gaussian heatmap (warm = likely occupied soon) over the map,
// with obstacle cells black.
std::string render_intent_ppm(const GridMap& map, const IntentGraphObs& intents);

}  // namespace alpha
