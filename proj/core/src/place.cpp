#include "phg/place.hpp"

#include <algorithm>
#include <cstdlib>
#include <queue>
#include <set>

#include "phg/error.hpp"

namespace phg {

void validate(const TargetModel& t) {
  if (t.rows < 1 || t.cols < 1 || t.tile_kb < 1 || t.dma_channels < 1) {
    throw Error(ErrorCode::InvalidArgument, "target '" + t.name + "' needs positive rows, cols, tile memory and DMA channels");
  }
}

std::string_view to_string(Infeasibility reason) {
  switch (reason) {
    case Infeasibility::BlockTooLarge: return "BlockTooLarge";
    case Infeasibility::MemoryExceeded: return "MemoryExceeded";
    case Infeasibility::ChannelsExceeded: return "ChannelsExceeded";
    case Infeasibility::RouteUnroutable: return "RouteUnroutable";
    case Infeasibility::MixedReachability: return "MixedReachability";
  }
  return "?";
}

namespace {

struct Shape {
  int rows, cols;
};

std::vector<Shape> shapes(std::size_t n, const TargetModel& t, BlockMode mode) {
  std::vector<Shape> out;
  const int m = static_cast<int>(n);
  switch (mode) {
    case BlockMode::Rectangle:
      for (int h = 1; h <= m; ++h) {
        if (m % h == 0 && h <= t.rows && m / h <= t.cols) out.push_back({h, m / h});
      }
      std::stable_sort(out.begin(), out.end(), [](Shape a, Shape b) {
        return std::abs(a.rows - a.cols) < std::abs(b.rows - b.cols);
      });
      break;
    case BlockMode::Column:
      if (m <= t.rows) out.push_back({m, 1});
      break;
    case BlockMode::SingleTile:
      out.push_back({1, 1});
      break;
  }
  return out;
}

std::string name_of(const Phg& phg, NodeId id) { return "'" + phg.node(id).name + "'"; }

std::size_t index_of(const CoLocationAnnotation& g, NodeId id) {
  auto it = std::find(g.members.begin(), g.members.end(), id);
  return it == g.members.end() ? g.members.size() : static_cast<std::size_t>(it - g.members.begin());
}

int footprint(const CoLocationAnnotation& g, std::size_t i) {
  return i < g.footprint_kb.size() ? g.footprint_kb[i] : 0;
}

// Route-topological order, declaration order breaking ties; nullopt on a cycle.
std::optional<std::vector<NodeId>> schedule(const CoLocationAnnotation& g) {
  const std::size_t n = g.members.size();
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<std::size_t>> next(n);
  for (auto [a, b] : g.routes) {
    std::size_t i = index_of(g, a), j = index_of(g, b);
    next[i].push_back(j);
    ++indegree[j];
  }
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push(i);
  }
  std::vector<NodeId> order;
  while (!ready.empty()) {
    std::size_t i = ready.top();
    ready.pop();
    order.push_back(g.members[i]);
    for (std::size_t j : next[i]) {
      if (--indegree[j] == 0) ready.push(j);
    }
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

// Smallest channel free at both endpoint tiles, per DMA pair in order.
std::vector<ChannelAssignment> colour_channels(const CoLocationAnnotation& g, const Assignment& tiles) {
  std::map<Tile, std::set<int>> used;
  std::vector<ChannelAssignment> out;
  for (auto [a, b] : g.dma_pairs) {
    const Tile ta = tiles.at(a), tb = tiles.at(b);
    int c = 0;
    while (used[ta].contains(c) || used[tb].contains(c)) ++c;
    used[ta].insert(c);
    used[tb].insert(c);
    out.push_back(ChannelAssignment{a, b, c});
  }
  return out;
}

Assignment layout(const std::vector<NodeId>& order, Tile origin, Shape shape, BlockMode mode) {
  Assignment tiles;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int i = static_cast<int>(k);
    tiles[order[k]] = mode == BlockMode::SingleTile
                          ? origin
                          : Tile{origin.row + i / shape.cols, origin.col + i % shape.cols};
  }
  return tiles;
}

CoLocationAnnotation group_of(const Hyperedge& e) {
  if (e.payload.colocation) {
    CoLocationAnnotation g = *e.payload.colocation;
    if (g.name.empty()) g.name = e.label;
    return g;
  }
  CoLocationAnnotation g;
  g.name = e.label;
  g.members = e.sources;
  return g;
}

std::optional<std::size_t> target_position(const Phg& phg, const TargetModel& t) {
  const auto& names = phg.targets();
  auto it = std::find(names.begin(), names.end(), t.name);
  if (it == names.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names.begin());
}

Feasibility infeasible(Infeasibility r, std::string detail) { return Feasibility{r, std::move(detail)}; }

}  // namespace

Feasibility check_group(const Phg& phg, const CoLocationAnnotation& g, const TargetModel& t,
                        std::optional<std::size_t> target_index) {
  validate(t);
  const std::size_t n = g.members.size();

  if (target_index) {
    std::size_t reachable = 0;
    for (NodeId m : g.members) {
      bool ok = true;
      for (EdgeId e : phg.incoming(m)) ok &= phg.edge(e).reachable(*target_index);
      reachable += ok;
    }
    if (reachable != 0 && reachable != n) {
      return infeasible(Infeasibility::MixedReachability,
                        std::to_string(reachable) + " of " + std::to_string(n) + " members reach '" + t.name + "'");
    }
  }

  for (auto [a, b] : g.routes) {
    if (index_of(g, a) == n || index_of(g, b) == n) {
      return infeasible(Infeasibility::RouteUnroutable, "route " + name_of(phg, a) + " -> " + name_of(phg, b) +
                                                            " leaves the group");
    }
    if (a == b) return infeasible(Infeasibility::RouteUnroutable, "route from " + name_of(phg, a) + " to itself");
    if (g.mode == BlockMode::SingleTile) {
      return infeasible(Infeasibility::RouteUnroutable, "single-tile groups have no distinct tiles to route between");
    }
  }
  auto order = schedule(g);
  if (!order) return infeasible(Infeasibility::RouteUnroutable, "routes form a cycle");
  for (auto [a, b] : g.dma_pairs) {
    if (index_of(g, a) == n || index_of(g, b) == n || a == b) {
      return infeasible(Infeasibility::RouteUnroutable, "DMA pair " + name_of(phg, a) + ", " + name_of(phg, b) +
                                                            " is not two distinct members");
    }
  }

  const std::vector<Shape> options = shapes(n, t, g.mode);
  if (options.empty()) {
    return infeasible(Infeasibility::BlockTooLarge, "no " + std::to_string(n) + "-tile block fits " +
                                                        std::to_string(t.rows) + "x" + std::to_string(t.cols));
  }

  if (g.mode == BlockMode::SingleTile) {
    int total = 0;
    for (std::size_t i = 0; i < n; ++i) total += footprint(g, i);
    if (total > t.tile_kb) {
      return infeasible(Infeasibility::MemoryExceeded, "group needs " + std::to_string(total) + " KB on one " +
                                                           std::to_string(t.tile_kb) + " KB tile");
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      if (footprint(g, i) > t.tile_kb) {
        return infeasible(Infeasibility::MemoryExceeded, name_of(phg, g.members[i]) + " needs " +
                                                             std::to_string(footprint(g, i)) + " KB of " +
                                                             std::to_string(t.tile_kb) + " KB");
      }
    }
  }

  Assignment tiles = layout(*order, Tile{0, 0}, options.front(), g.mode);
  for (const ChannelAssignment& c : colour_channels(g, tiles)) {
    if (c.channel >= t.dma_channels) {
      return infeasible(Infeasibility::ChannelsExceeded, "DMA pair " + name_of(phg, c.a) + ", " + name_of(phg, c.b) +
                                                             " needs channel " + std::to_string(c.channel) + " of " +
                                                             std::to_string(t.dma_channels));
    }
  }
  return Feasibility{};
}

FeasibilityMatrix check_feasibility(const Phg& phg, std::span<const TargetModel> targets) {
  FeasibilityMatrix m;
  for (const TargetModel& t : targets) m.targets.push_back(t.name);
  for (const Hyperedge& e : phg.edges()) {
    if (e.kind != EdgeKind::CoLocation) continue;
    m.groups.push_back(e.id);
    const CoLocationAnnotation g = group_of(e);
    std::vector<Feasibility> row;
    for (const TargetModel& t : targets) row.push_back(check_group(phg, g, t, target_position(phg, t)));
    m.cells.push_back(std::move(row));
  }
  return m;
}

TilePlan assign(const Phg& phg, const TargetModel& t) {
  validate(t);
  TilePlan plan{t.name, {}};
  std::vector<std::vector<char>> busy(static_cast<std::size_t>(t.rows), std::vector<char>(static_cast<std::size_t>(t.cols), 0));
  auto free = [&](Tile o, Shape s) {
    if (o.row + s.rows > t.rows || o.col + s.cols > t.cols) return false;
    for (int r = o.row; r < o.row + s.rows; ++r) {
      for (int c = o.col; c < o.col + s.cols; ++c) {
        if (busy[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) return false;
      }
    }
    return true;
  };

  for (const Hyperedge& e : phg.edges()) {
    if (e.kind != EdgeKind::CoLocation) continue;
    const CoLocationAnnotation g = group_of(e);
    Feasibility f = check_group(phg, g, t, target_position(phg, t));
    if (!f.feasible()) {
      throw Error(ErrorCode::PlacementFailed, "group '" + g.name + "' is infeasible on '" + t.name + "': " +
                                                  std::string(to_string(*f.reason)) + " (" + f.detail + ")");
    }
    const std::vector<NodeId> order = *schedule(g);
    const std::vector<Shape> options = shapes(g.members.size(), t, g.mode);
    std::optional<std::pair<Tile, Shape>> spot;
    for (int r = 0; r < t.rows && !spot; ++r) {
      for (int c = 0; c < t.cols && !spot; ++c) {
        for (Shape s : options) {
          if (free(Tile{r, c}, s)) {
            spot.emplace(Tile{r, c}, s);
            break;
          }
        }
      }
    }
    if (!spot) {
      throw Error(ErrorCode::PlacementFailed, "group '" + g.name + "' finds no free block on '" + t.name +
                                                  "' after earlier groups");
    }
    auto [origin, shape] = *spot;
    for (int r = origin.row; r < origin.row + shape.rows; ++r) {
      for (int c = origin.col; c < origin.col + shape.cols; ++c) busy[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = 1;
    }

    GroupPlacement gp;
    gp.edge = e.id;
    gp.name = g.name;
    gp.origin = origin;
    gp.rows = shape.rows;
    gp.cols = shape.cols;
    Assignment tiles = layout(order, origin, shape, g.mode);
    for (NodeId m : order) gp.assignment.emplace_back(m, tiles.at(m));
    gp.channels = colour_channels(g, tiles);
    gp.schedule = order;
    for (NodeId s : g.sync) {
      BarrierWait w{s, {}};
      for (auto [a, b] : g.routes) {
        if (b == s) w.waits_for.push_back(a);
      }
      gp.barriers.push_back(std::move(w));
    }
    plan.groups.push_back(std::move(gp));
  }
  return plan;
}

std::vector<std::string> validate_plan(const Phg& phg, const TargetModel& t, const TilePlan& plan) {
  std::vector<std::string> problems;
  std::map<Tile, int> memory;
  std::map<Tile, std::string> owner;
  std::map<Tile, std::set<int>> channels;
  for (const GroupPlacement& gp : plan.groups) {
    const CoLocationAnnotation g = group_of(phg.edge(gp.edge));
    Assignment tiles(gp.assignment.begin(), gp.assignment.end());
    if (!satisfies_group(g, tiles, t)) problems.push_back("group '" + gp.name + "' is not a single block");
    std::set<Tile> mine;
    for (auto [m, tile] : gp.assignment) {
      memory[tile] += footprint(g, index_of(g, m));
      mine.insert(tile);
    }
    for (Tile tile : mine) {
      auto [it, inserted] = owner.emplace(tile, gp.name);
      if (!inserted) problems.push_back("groups '" + it->second + "' and '" + gp.name + "' share a tile");
    }
    for (const ChannelAssignment& c : gp.channels) {
      if (c.channel >= t.dma_channels) problems.push_back("channel " + std::to_string(c.channel) + " over budget");
      const Tile ta = tiles.at(c.a), tb = tiles.at(c.b);
      if (!channels[ta].insert(c.channel).second) problems.push_back("channel reused on a tile");
      if (tb != ta && !channels[tb].insert(c.channel).second) problems.push_back("channel reused on a tile");
    }
    for (auto [a, b] : g.routes) {
      if (tiles.at(a) == tiles.at(b)) problems.push_back("route endpoints share a tile in '" + gp.name + "'");
    }
  }
  for (auto [tile, kb] : memory) {
    if (kb > t.tile_kb) problems.push_back("tile over memory budget");
  }
  return problems;
}

std::vector<std::pair<NodeId, NodeId>> clique_relaxation(const CoLocationAnnotation& g) {
  if (g.members.size() < 3) throw Error(ErrorCode::InvalidArgument, "clique relaxation needs at least 3 members");
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t i = 0; i < g.members.size(); ++i) {
    for (std::size_t j = i + 1; j < g.members.size(); ++j) out.emplace_back(g.members[i], g.members[j]);
  }
  return out;
}

bool satisfies_group(const CoLocationAnnotation& g, const Assignment& tiles, const TargetModel& t) {
  std::set<Tile> used;
  int r0 = t.rows, r1 = -1, c0 = t.cols, c1 = -1;
  for (NodeId m : g.members) {
    auto it = tiles.find(m);
    if (it == tiles.end()) return false;
    const Tile tile = it->second;
    if (tile.row < 0 || tile.col < 0 || tile.row >= t.rows || tile.col >= t.cols) return false;
    used.insert(tile);
    r0 = std::min(r0, tile.row);
    r1 = std::max(r1, tile.row);
    c0 = std::min(c0, tile.col);
    c1 = std::max(c1, tile.col);
  }
  const std::size_t n = g.members.size();
  const std::size_t area = static_cast<std::size_t>((r1 - r0 + 1) * (c1 - c0 + 1));
  switch (g.mode) {
    case BlockMode::SingleTile: return used.size() == 1;
    case BlockMode::Column: return used.size() == n && c0 == c1 && area == n;
    case BlockMode::Rectangle: return used.size() == n && area == n;
  }
  return false;
}

bool satisfies_pair(const std::pair<NodeId, NodeId>& pair, const Assignment& tiles, int radius) {
  auto a = tiles.find(pair.first), b = tiles.find(pair.second);
  if (a == tiles.end() || b == tiles.end()) return false;
  const int dist = std::max(std::abs(a->second.row - b->second.row), std::abs(a->second.col - b->second.col));
  return dist <= radius;
}

int pairwise_radius(std::size_t members, const TargetModel& t) {
  int side = 0;
  for (Shape s : shapes(members, t, BlockMode::Rectangle)) side = std::max({side, s.rows, s.cols});
  return side - 1;
}

}  // namespace phg
