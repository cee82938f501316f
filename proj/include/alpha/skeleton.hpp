#pragma once
// Skeleton extraction: thin a map's free space to a one-pixel-wide mask,
// classify branch/leaf pixels as graph nodes, and build edges along
// skeleton paths.
//
// Guarantees on the output mask, for every 8-connected free region of the
// source map: the skeleton pixels inside it are non-empty, form one
// 8-connected component, and contain no fully-set 2x2 block.

#include <vector>

#include "alpha/grid_map.hpp"
#include "alpha/pathfind.hpp"

namespace alpha {

using Skeleton = PixelMask;

enum class NodeKind { branch, leaf };

struct MapNode {
    Coord pos;
    NodeKind kind;
};

struct MapEdge {
    int a = 0;  // node indices, a < b
    int b = 0;
    Path skeleton_path;
    int length = 0;  // moves along the skeleton
};

struct MapGraph {
    Skeleton skeleton;
    std::vector<MapNode> nodes;
    std::vector<MapEdge> edges;
};

enum class ThinMethod { zhang_suen, medial_axis };

// Number of set pixels among the 8 neighbors of c.
int neighbor_count8(const PixelMask& mask, Coord c);

// Two-subpass thinning iterated to fixpoint. Deletion candidates are marked
// per subpass on a frozen copy of the mask; the deletions themselves run in
// raster order with a live simple-point recheck, since batch deletion can
// erase 2x2 blocks and 2-wide diagonals outright and break the connectivity
// guarantee above.
Skeleton thin_zhang_suen(const GridMap& map);

// Chessboard distance-transform ridge pixels kept as anchors, all other
// pixels eroded by sequential simple-point deletion in increasing-distance
// order, then a thinning cleanup pass. Tends to keep more branches than
// thin_zhang_suen (spurs into corners survive as anchored ridges).
Skeleton thin_medial_axis(const GridMap& map);

// Chessboard (8-connected) distance to the nearest obstacle or map edge;
// 0 on obstacles. Exposed for the medial-axis tests and the renderer.
std::vector<int> chessboard_dt(const GridMap& map);

// Branch pixels (>= 3 skeleton neighbors) and leaf pixels (<= 1), in (y, x)
// order.
std::vector<MapNode> extract_nodes(const Skeleton& skeleton);

// For each node pair in the same skeleton component, an edge exists iff the
// astar_skeleton8 path between them has no other node strictly inside it.
// Pairs are scanned in node-index order, so output order is deterministic.
std::vector<MapEdge> build_edges(const Skeleton& skeleton, const std::vector<MapNode>& nodes);

MapGraph extract_graph(const GridMap& map, ThinMethod method = ThinMethod::medial_axis);

}  // namespace alpha
