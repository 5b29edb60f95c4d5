#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phg/error.hpp"
#include "phg/hypergraph.hpp"
#include "phg/place.hpp"

namespace phg {

/// 1-based; 0 when unknown. Locations never take part in equality, so a
/// reparsed program compares equal to the original.
struct SourceLocation {
  int line = 0;
  int column = 0;
  friend bool operator==(const SourceLocation&, const SourceLocation&) { return true; }
};

class ParseError : public Error {
 public:
  ParseError(ErrorCode code, SourceLocation loc, const std::string& message);
  SourceLocation location() const { return loc_; }

 private:
  SourceLocation loc_;
};

struct TargetDecl {
  TargetModel model;  // name plus grid parameters (defaults when not given)
  bool configured = false;
  SourceLocation loc;
  friend bool operator==(const TargetDecl& a, const TargetDecl& b) {
    return a.model.name == b.model.name && a.model.rows == b.model.rows && a.model.cols == b.model.cols &&
           a.model.tile_kb == b.model.tile_kb && a.model.dma_channels == b.model.dma_channels &&
           a.configured == b.configured;
  }
};

struct NodeDecl {
  std::string name;
  ValueKind kind = ValueKind::Multivector;
  GradeSet grades;
  std::optional<std::string> unit;
  std::string coeffect;
  DeclFlag flag = DeclFlag::Live;
  SourceLocation loc;
  friend bool operator==(const NodeDecl&, const NodeDecl&) = default;
};

struct EdgeDecl {
  std::string label;  // empty: default label
  EdgeKind kind = EdgeKind::Custom;
  int grade = 0;
  NormMode norm = NormMode::Metric;
  std::string tag;
  std::vector<std::string> sources;
  std::string target;
  std::vector<std::string> reach;  // target names; empty = all
  SourceLocation loc;
  friend bool operator==(const EdgeDecl&, const EdgeDecl&) = default;
};

struct ColocateDecl {
  std::string name;
  std::string output;
  std::vector<std::string> members;
  std::vector<std::pair<std::string, std::string>> routes;
  std::vector<std::pair<std::string, std::string>> dma;
  std::vector<std::string> sync;
  std::vector<std::pair<std::string, int>> footprints;
  BlockMode mode = BlockMode::Rectangle;
  std::vector<std::string> reach;
  SourceLocation loc;
  friend bool operator==(const ColocateDecl&, const ColocateDecl&) = default;
};

struct ProgramFile {
  std::optional<Signature> algebra;
  std::vector<std::string> units;
  std::vector<TargetDecl> targets;
  std::vector<NodeDecl> nodes;
  std::vector<EdgeDecl> edges;
  std::vector<ColocateDecl> groups;
  friend bool operator==(const ProgramFile&, const ProgramFile&) = default;
};

struct Program {
  ProgramFile file;
  Phg phg;
  std::vector<SourceLocation> node_locations;  // by node id
  std::vector<SourceLocation> edge_locations;  // by edge id
};

/// Line grammar; '#' starts a comment.
///   algebra Cl(p,q,r)
///   units m kg s
///   target NAME [rows=R cols=C tile_kb=K dma=D]
///   node NAME : mv|scalar [grade=1,3] [unit=kg*m/s^2] [coeffect=TAG] [flag=live|latent|fresh]
///   edge [LABEL =] KIND(src, ...) -> TARGET [measure] [reach=t1,t2]
///       KIND: gp outer inner regressive sandwich join select[k] norm transfer
///             boundary sync custom:TAG
///   colocate NAME -> OUTPUT [reach=...] {
///     members A B C D | route A -> B | dma A D | sync D | footprint A 8 | mode rect|column|tile
///   }
/// Throws ParseError (SyntaxError, UnknownKeyword).
ProgramFile parse_program_file(std::string_view text);

/// Resolves names (forward references allowed) and builds the graph: nodes,
/// then edges, then co-location groups. Throws ParseError with the location of
/// the offending declaration (DuplicateName, UnresolvedReference, and the
/// graph's own validation errors).
Program build_program(ProgramFile file);

inline Program parse_program(std::string_view text) { return build_program(parse_program_file(text)); }

/// Canonical text; parse_program_file(serialize(p)) == p.
std::string serialize(const ProgramFile& file);

std::string format_grades(const GradeSet& g);  // "1,3"

}  // namespace phg
