#ifndef SDCPSE_BENCH_NORMALS_HPP_
#define SDCPSE_BENCH_NORMALS_HPP_

#include <cstddef>
#include <vector>

#include "sdcpse/point_cloud.hpp"

namespace sdcpse::bench {

// PCA normal estimation: per point, the smallest-variance principal
// direction of the k nearest neighbors. Orientation is propagated greedily
// along a spanning tree of the k-NN graph, then globally flipped so the
// majority points away from the centroid. Throws NumericError when a
// neighborhood is degenerate (collinear).
std::vector<Vec3> estimate_normals(const std::vector<Vec3>& positions, int dim, std::size_t k);

}  // namespace sdcpse::bench

#endif
