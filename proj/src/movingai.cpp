#include "mapfaa/movingai.hpp"

#include <sstream>

namespace mapfaa {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      if (!cur.empty() && cur.back() == '\r') cur.pop_back();
      lines.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) lines.push_back(cur);
  return lines;
}

int parse_header_int(const std::string& line, const std::string& key, int lineno) {
  std::istringstream ss(line);
  std::string k;
  long long v;
  if (!(ss >> k >> v) || k != key || v <= 0)
    throw ParseError("expected '" + key + " <positive int>'", lineno, 1);
  return (int)v;
}

}  // namespace

GridMap parse_map(const std::string& text) {
  auto lines = split_lines(text);
  if (lines.size() < 4) throw ParseError("truncated map header", 1, 1);
  if (lines[0].rfind("type", 0) != 0) throw ParseError("expected 'type' header", 1, 1);
  GridMap g;
  g.height = parse_header_int(lines[1], "height", 2);
  g.width = parse_header_int(lines[2], "width", 3);
  if (lines[3] != "map") throw ParseError("expected 'map' header", 4, 1);
  if ((int)lines.size() < 4 + g.height)
    throw ParseError("fewer map rows than height", (int)lines.size() + 1, 1);

  g.passable.assign((size_t)g.width * g.height, false);
  g.vertex_of.assign((size_t)g.width * g.height, -1);
  for (int y = 0; y < g.height; ++y) {
    const std::string& row = lines[4 + y];
    if ((int)row.size() != g.width)
      throw ParseError("ragged row: width " + std::to_string(row.size()) +
                           " != " + std::to_string(g.width),
                       5 + y, (int)row.size() + 1);
    for (int x = 0; x < g.width; ++x) {
      char c = row[x];
      if (c == '.' || c == 'G')
        g.passable[y * g.width + x] = true;
      else if (c == '@' || c == 'O' || c == 'T')
        g.passable[y * g.width + x] = false;
      else
        throw ParseError(std::string("unknown glyph '") + c + "'", 5 + y, x + 1);
    }
  }
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x)
      if (g.passable[y * g.width + x]) {
        g.vertex_of[y * g.width + x] = g.num_vertices++;
        g.cell_of.push_back({x, y});
      }
  for (int y = 0; y < g.height; ++y)
    for (int x = 0; x < g.width; ++x) {
      if (!g.passable[y * g.width + x]) continue;
      Vertex v = g.vertex_of[y * g.width + x];
      if (g.is_passable(x + 1, y)) g.edges.push_back({v, g.vertex_of[y * g.width + x + 1]});
      if (g.is_passable(x, y + 1)) g.edges.push_back({v, g.vertex_of[(y + 1) * g.width + x]});
    }
  return g;
}

std::string serialize_map(const GridMap& g) {
  std::ostringstream out;
  out << "type octile\nheight " << g.height << "\nwidth " << g.width << "\nmap\n";
  for (int y = 0; y < g.height; ++y) {
    for (int x = 0; x < g.width; ++x) out << (g.passable[y * g.width + x] ? '.' : '@');
    out << '\n';
  }
  return out.str();
}

std::vector<Task> parse_scen(const std::string& text, const GridMap& map) {
  auto lines = split_lines(text);
  std::vector<Task> tasks;
  size_t first = 0;
  if (!lines.empty() && lines[0].rfind("version", 0) == 0) first = 1;
  for (size_t li = first; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    std::istringstream ss(lines[li]);
    int bucket, w, h;
    std::string mapname;
    Task t;
    double optimal;
    if (!(ss >> bucket >> mapname >> w >> h >> t.sx >> t.sy >> t.gx >> t.gy >> optimal))
      throw ParseError("malformed scen row", (int)li + 1, 1);
    if (w != map.width || h != map.height)
      throw ParseError("scen width/height mismatch vs map", (int)li + 1, 1);
    for (auto [x, y] : {std::pair{t.sx, t.sy}, std::pair{t.gx, t.gy}}) {
      if (!map.in_bounds(x, y))
        throw ParseError("cell out of bounds", (int)li + 1, 1);
      if (!map.is_passable(x, y))
        throw ParseError("cell is blocked", (int)li + 1, 1);
    }
    tasks.push_back(t);
  }
  return tasks;
}

std::string serialize_scen(const std::vector<Task>& tasks, const GridMap& map,
                           const std::string& map_name) {
  std::ostringstream out;
  out << "version 1\n";
  for (const Task& t : tasks)
    out << 0 << '\t' << map_name << '\t' << map.width << '\t' << map.height << '\t'
        << t.sx << '\t' << t.sy << '\t' << t.gx << '\t' << t.gy << '\t' << 0 << '\n';
  return out.str();
}

Instance grid_instance(const GridMap& map, const std::vector<Task>& tasks,
                       const std::vector<int>& speeds) {
  if (tasks.size() != speeds.size())
    throw std::invalid_argument("one speed per task required");
  std::vector<Vertex> starts, goals;
  for (const Task& t : tasks) {
    starts.push_back(map.vertex(t.sx, t.sy));
    goals.push_back(map.vertex(t.gx, t.gy));
  }
  Instance inst(map.num_vertices, map.edges, starts, goals);
  for (Agent a = 0; a < (int)speeds.size(); ++a) {
    if (speeds[a] < 1 || speeds[a] > 20)
      throw std::invalid_argument("speed out of range [1,20]");
    inst.set_uniform_duration(a, TimePoint::ratio(1, speeds[a]));
  }
  inst.vertex_names.resize(map.num_vertices);
  for (Vertex v = 0; v < map.num_vertices; ++v)
    inst.vertex_names[v] = std::to_string(map.cell_of[v].first) + "," +
                           std::to_string(map.cell_of[v].second);
  return inst;
}

}  // namespace mapfaa
