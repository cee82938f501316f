#pragma once
// Seeded map generators: room-like maps (BSP rooms, doors, corridors) and
// random obstacle maps. Both guarantee that the free space forms a single
// 4-connected component.

#include <cstdint>

#include "alpha/grid_map.hpp"

namespace alpha {

struct RoomGenParams {
    int min_room_side = 3;       // smallest room extent the BSP may produce
    int max_room_side = 8;       // regions larger than this keep splitting
    int corridor_width_min = 1;  // sampled corridor strip widths
    int corridor_width_max = 3;
    int door_width = 1;          // lower bound of sampled door gap widths
    uint64_t seed = 0;
};

// Room-like map: enclosing wall ring, BSP partition walls with a door gap
// carved per wall, and a few full-span corridors of sampled width. Free
// space is carve-repaired into one 4-connected component. Dimensions must
// lie in [10, 256]. Deterministic for a fixed (dims, params, seed).
GridMap generate_room_map(int width, int height, const RoomGenParams& params);

// Bernoulli obstacles at `density`, then all free cells outside the largest
// 4-connected free component are filled in. density must lie in [0, 0.5].
GridMap generate_random_map(int width, int height, double density, uint64_t seed);

}  // namespace alpha
