#include <algorithm>
#include <cmath>
#include <random>

#include "streampart/graph.hpp"

namespace streampart::gen {

Graph grid2d(std::uint64_t rows, std::uint64_t cols) {
  if (rows == 0 || cols == 0) throw ConfigError("grid2d: rows and cols must be positive");
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(2 * rows * cols);
  for (std::uint64_t r = 0; r < rows; ++r) {
    for (std::uint64_t c = 0; c < cols; ++c) {
      const NodeId v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

Graph ring(std::uint64_t n) {
  if (n < 3) throw ConfigError("ring: n must be at least 3");
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(n);
  for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  return Graph::from_edges(n, edges);
}

double default_rgg_radius(std::uint64_t n) {
  if (n < 2) return 1.0;
  const auto nd = static_cast<double>(n);
  return 0.55 * std::sqrt(std::log(nd) / nd);
}

Graph random_geometric(std::uint64_t n, double radius, std::uint64_t seed) {
  if (n == 0) throw ConfigError("random_geometric: n must be positive");
  if (radius <= 0.0) radius = default_rgg_radius(n);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  struct Point {
    double x, y;
    std::uint64_t cell;
  };
  const auto cells_per_side =
      std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(1.0 / radius)));
  const auto cell_of = [&](double coord) {
    return std::min(cells_per_side - 1, static_cast<std::uint64_t>(coord * static_cast<double>(cells_per_side)));
  };

  std::vector<Point> points(n);
  for (auto& p : points) {
    p.x = unit(rng);
    p.y = unit(rng);
    p.cell = cell_of(p.y) * cells_per_side + cell_of(p.x);
  }
  std::stable_sort(points.begin(), points.end(),
                   [](const Point& a, const Point& b) { return a.cell < b.cell; });

  // Points are now grouped by cell; cell_begin[c] indexes the first point of cell c.
  const std::uint64_t num_cells = cells_per_side * cells_per_side;
  std::vector<std::uint64_t> cell_begin(num_cells + 1, 0);
  for (const auto& p : points) ++cell_begin[p.cell + 1];
  for (std::uint64_t c = 0; c < num_cells; ++c) cell_begin[c + 1] += cell_begin[c];

  const double r2 = radius * radius;
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u) {
    const auto cx = static_cast<std::int64_t>(points[u].cell % cells_per_side);
    const auto cy = static_cast<std::int64_t>(points[u].cell / cells_per_side);
    for (std::int64_t dy = -1; dy <= 1; ++dy) {
      for (std::int64_t dx = -1; dx <= 1; ++dx) {
        const std::int64_t nx = cx + dx;
        const std::int64_t ny = cy + dy;
        const auto side = static_cast<std::int64_t>(cells_per_side);
        if (nx < 0 || ny < 0 || nx >= side || ny >= side) continue;
        const auto c = static_cast<std::uint64_t>(ny * side + nx);
        for (auto v = cell_begin[c]; v < cell_begin[c + 1]; ++v) {
          if (v <= u) continue;
          const double ddx = points[u].x - points[v].x;
          const double ddy = points[u].y - points[v].y;
          if (ddx * ddx + ddy * ddy < r2) edges.emplace_back(u, v);
        }
      }
    }
  }
  return Graph::from_edges(n, edges);
}

}  // namespace streampart::gen
