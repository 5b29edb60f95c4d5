#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phg/hypergraph.hpp"

namespace phg {

struct TargetModel {
  std::string name;
  int rows = 1;
  int cols = 1;
  int tile_kb = 32;
  int dma_channels = 2;
};

/// Throws InvalidArgument unless every budget is positive.
void validate(const TargetModel& target);

enum class Infeasibility { BlockTooLarge, MemoryExceeded, ChannelsExceeded, RouteUnroutable, MixedReachability };
std::string_view to_string(Infeasibility reason);

struct Feasibility {
  std::optional<Infeasibility> reason;  // empty when feasible
  std::string detail;
  bool feasible() const { return !reason; }
};

/// One cell per (co-location edge, target).
struct FeasibilityMatrix {
  std::vector<EdgeId> groups;
  std::vector<std::string> targets;
  std::vector<std::vector<Feasibility>> cells;  // [group][target]
};

/// Feasibility of one group. `target_index` selects the reachability bit used
/// for the mixed-reachability check.
Feasibility check_group(const Phg& phg, const CoLocationAnnotation& group, const TargetModel& target,
                        std::optional<std::size_t> target_index = std::nullopt);
FeasibilityMatrix check_feasibility(const Phg& phg, std::span<const TargetModel> targets);

struct Tile {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const Tile&, const Tile&) = default;
};

struct ChannelAssignment {
  NodeId a;
  NodeId b;
  int channel = 0;
};

struct BarrierWait {
  NodeId member;
  std::vector<NodeId> waits_for;
};

struct GroupPlacement {
  EdgeId edge;
  std::string name;
  Tile origin;
  int rows = 0;
  int cols = 0;
  std::vector<std::pair<NodeId, Tile>> assignment;  // in schedule order
  std::vector<ChannelAssignment> channels;
  std::vector<NodeId> schedule;                     // topological order of routes
  std::vector<BarrierWait> barriers;
};

struct TilePlan {
  std::string target;
  std::vector<GroupPlacement> groups;
};

/// Greedy first-fit of every co-location group, in edge order. Throws
/// PlacementFailed naming the first group that is infeasible or cannot find
/// free space.
TilePlan assign(const Phg& phg, const TargetModel& target);

/// Re-checks a plan: block shape, memory, channels, routes. Empty when sound.
std::vector<std::string> validate_plan(const Phg& phg, const TargetModel& target, const TilePlan& plan);

/// All unordered member pairs. Throws InvalidArgument for fewer than 3 members.
std::vector<std::pair<NodeId, NodeId>> clique_relaxation(const CoLocationAnnotation& group);

using Assignment = std::map<NodeId, Tile>;

/// The group constraint: one member per tile, tiles forming one block of the
/// group's mode (rectangle, column, or a single shared tile) inside the grid.
bool satisfies_group(const CoLocationAnnotation& group, const Assignment& tiles, const TargetModel& target);
/// Chebyshev distance at most `radius` (same tile allowed).
bool satisfies_pair(const std::pair<NodeId, NodeId>& pair, const Assignment& tiles, int radius);
/// Largest side of any n-tile rectangle that fits the grid, minus one: the
/// weakest pairwise radius the group constraint still implies.
int pairwise_radius(std::size_t members, const TargetModel& target);

}  // namespace phg
