#ifndef MAPFAA_MOVINGAI_HPP
#define MAPFAA_MOVINGAI_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "mapfaa/instance.hpp"

namespace mapfaa {

struct ParseError : std::runtime_error {
  int line, column;
  ParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                           std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

// 4-connected grid over passable cells with unit-length edges.
struct GridMap {
  int width = 0, height = 0;
  std::vector<bool> passable;    // row-major, height*width
  std::vector<Vertex> vertex_of; // row-major; -1 for blocked cells
  int num_vertices = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::pair<int, int>> cell_of;  // vertex -> (x, y)

  bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }
  bool is_passable(int x, int y) const { return in_bounds(x, y) && passable[y * width + x]; }
  Vertex vertex(int x, int y) const { return vertex_of[y * width + x]; }
};

GridMap parse_map(const std::string& text);
std::string serialize_map(const GridMap& g);

struct Task {
  int sx, sy, gx, gy;
};

std::vector<Task> parse_scen(const std::string& text, const GridMap& map);
std::string serialize_scen(const std::vector<Task>& tasks, const GridMap& map,
                           const std::string& map_name);

// Instance over the grid graph; agent a moves with uniform edge duration
// 1/speeds[a] (unit edges at integer speed).
Instance grid_instance(const GridMap& map, const std::vector<Task>& tasks,
                       const std::vector<int>& speeds);

}  // namespace mapfaa

#endif  // MAPFAA_MOVINGAI_HPP
