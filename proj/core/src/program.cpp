#include "phg/program.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>

namespace phg {

ParseError::ParseError(ErrorCode code, SourceLocation loc, const std::string& message)
    : Error(code, "line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) + ": " + message),
      loc_(loc) {}

std::string format_grades(const GradeSet& g) {
  std::string s;
  for (int k : g.grades()) s += (s.empty() ? "" : ",") + std::to_string(k);
  return s;
}

namespace {

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
  });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Token {
  std::string text;
  int column;  // 1-based
};

std::vector<Token> tokens(std::string_view line, std::size_t from = 0) {
  std::vector<Token> out;
  std::size_t i = from;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    out.push_back(Token{std::string(line.substr(i, j - i)), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

int parse_int(std::string_view s, SourceLocation loc, std::string_view what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) {
    throw ParseError(ErrorCode::SyntaxError, loc, "expected an integer for " + std::string(what) + ", got '" +
                                                      std::string(s) + "'");
  }
  return v;
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t comma = s.find(',', start);
    std::string_view part = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    out.emplace_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

GradeSet parse_grades(std::string_view s, SourceLocation loc) {
  std::uint32_t bits = 0;
  for (const std::string& g : split_list(s)) {
    int k = parse_int(g, loc, "grade");
    if (k < 0 || k > 31) throw ParseError(ErrorCode::SyntaxError, loc, "grade " + g + " out of range");
    bits |= 1u << k;
  }
  if (!bits) throw ParseError(ErrorCode::SyntaxError, loc, "empty grade list");
  return GradeSet::from_bits(bits);
}

const std::map<std::string, EdgeKind, std::less<>>& simple_kinds() {
  static const std::map<std::string, EdgeKind, std::less<>> kinds{
      {"gp", EdgeKind::GeometricProduct}, {"outer", EdgeKind::Outer},       {"inner", EdgeKind::Inner},
      {"regressive", EdgeKind::Regressive}, {"sandwich", EdgeKind::Sandwich}, {"join", EdgeKind::Join},
      {"norm", EdgeKind::Norm},           {"transfer", EdgeKind::Transfer}, {"boundary", EdgeKind::Boundary},
      {"sync", EdgeKind::SyncBarrier},
  };
  return kinds;
}

std::string kind_text(const EdgeDecl& e) {
  switch (e.kind) {
    case EdgeKind::GradeSelect: return "select[" + std::to_string(e.grade) + "]";
    case EdgeKind::Custom: return "custom:" + e.tag;
    default:
      for (auto& [name, kind] : simple_kinds()) {
        if (kind == e.kind) return name;
      }
  }
  return "custom";
}

std::vector<std::string> parse_reach(std::string_view value, SourceLocation loc) {
  std::vector<std::string> out = split_list(value);
  for (const std::string& t : out) {
    if (!is_ident(t)) throw ParseError(ErrorCode::SyntaxError, loc, "bad target name '" + t + "' in reach list");
  }
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines_.push_back(line);
    }
  }

  ProgramFile run() {
    for (line_ = 0; line_ < lines_.size(); ++line_) {
      const std::string& line = lines_[line_];
      auto toks = tokens(line);
      if (toks.empty()) continue;
      const std::string& kw = toks[0].text;
      if (kw == "algebra") {
        algebra(toks);
      } else if (kw == "units") {
        units(toks);
      } else if (kw == "target") {
        target(toks);
      } else if (kw == "node") {
        node(line, toks[0].column + 4);
      } else if (kw == "edge") {
        edge(line, static_cast<std::size_t>(toks[0].column - 1 + 4));
      } else if (kw == "colocate") {
        colocate(line, static_cast<std::size_t>(toks[0].column - 1 + 8));
      } else {
        throw ParseError(ErrorCode::UnknownKeyword, at(toks[0].column), "unknown keyword '" + kw + "'");
      }
    }
    return std::move(file_);
  }

 private:
  SourceLocation at(int column) const { return SourceLocation{static_cast<int>(line_) + 1, column}; }

  void algebra(const std::vector<Token>& toks) {
    if (file_.algebra) {
      throw ParseError(ErrorCode::SyntaxError, at(toks[0].column),
                       "a program declares one algebra; found a second declaration");
    }
    std::string text;
    for (std::size_t i = 1; i < toks.size(); ++i) text += toks[i].text;
    const SourceLocation loc = at(toks.size() > 1 ? toks[1].column : toks[0].column);
    if (text.size() < 5 || text.substr(0, 3) != "Cl(" || text.back() != ')') {
      throw ParseError(ErrorCode::SyntaxError, loc, "expected Cl(p,q,r)");
    }
    auto parts = split_list(std::string_view(text).substr(3, text.size() - 4));
    if (parts.size() != 3) throw ParseError(ErrorCode::SyntaxError, loc, "expected Cl(p,q,r)");
    Signature sig{parse_int(parts[0], loc, "p"), parse_int(parts[1], loc, "q"), parse_int(parts[2], loc, "r")};
    if (sig.p < 0 || sig.q < 0 || sig.r < 0) throw ParseError(ErrorCode::SyntaxError, loc, "negative signature");
    file_.algebra = sig;
  }

  void units(const std::vector<Token>& toks) {
    for (std::size_t i = 1; i < toks.size(); ++i) {
      if (!is_ident(toks[i].text)) {
        throw ParseError(ErrorCode::SyntaxError, at(toks[i].column), "bad unit name '" + toks[i].text + "'");
      }
      if (std::find(file_.units.begin(), file_.units.end(), toks[i].text) != file_.units.end()) {
        throw ParseError(ErrorCode::DuplicateName, at(toks[i].column), "unit '" + toks[i].text + "' declared twice");
      }
      file_.units.push_back(toks[i].text);
    }
  }

  void target(const std::vector<Token>& toks) {
    if (toks.size() < 2 || !is_ident(toks[1].text)) {
      throw ParseError(ErrorCode::SyntaxError, at(toks[0].column), "expected a target name");
    }
    TargetDecl t;
    t.model.name = toks[1].text;
    t.loc = at(toks[1].column);
    for (std::size_t i = 2; i < toks.size(); ++i) {
      const SourceLocation loc = at(toks[i].column);
      auto eq = toks[i].text.find('=');
      if (eq == std::string::npos) throw ParseError(ErrorCode::SyntaxError, loc, "expected key=value");
      std::string key = toks[i].text.substr(0, eq);
      int v = parse_int(std::string_view(toks[i].text).substr(eq + 1), loc, key);
      if (key == "rows") t.model.rows = v;
      else if (key == "cols") t.model.cols = v;
      else if (key == "tile_kb") t.model.tile_kb = v;
      else if (key == "dma") t.model.dma_channels = v;
      else throw ParseError(ErrorCode::UnknownKeyword, loc, "unknown target field '" + key + "'");
      t.configured = true;
    }
    file_.targets.push_back(t);
  }

  void node(const std::string& line, int after_kw) {
    const std::size_t colon = line.find(':');
    const SourceLocation kw_loc = at(after_kw);
    if (colon == std::string::npos) throw ParseError(ErrorCode::SyntaxError, kw_loc, "expected 'node NAME : mv|scalar'");
    const std::size_t start = static_cast<std::size_t>(after_kw - 1);
    std::string_view name = trim(std::string_view(line).substr(start, colon - start));
    if (!is_ident(name)) throw ParseError(ErrorCode::SyntaxError, kw_loc, "bad node name '" + std::string(name) + "'");
    NodeDecl n;
    n.name = std::string(name);
    n.loc = at(static_cast<int>(line.find(name, start)) + 1);
    auto toks = tokens(line, colon + 1);
    if (toks.empty()) throw ParseError(ErrorCode::SyntaxError, at(static_cast<int>(colon) + 2), "expected mv or scalar");
    if (toks[0].text == "mv" || toks[0].text == "multivector") {
      n.kind = ValueKind::Multivector;
    } else if (toks[0].text == "scalar") {
      n.kind = ValueKind::Scalar;
    } else {
      throw ParseError(ErrorCode::UnknownKeyword, at(toks[0].column), "unknown value kind '" + toks[0].text + "'");
    }
    for (std::size_t i = 1; i < toks.size(); ++i) {
      const SourceLocation loc = at(toks[i].column);
      auto eq = toks[i].text.find('=');
      if (eq == std::string::npos) throw ParseError(ErrorCode::SyntaxError, loc, "expected key=value");
      std::string key = toks[i].text.substr(0, eq), value = toks[i].text.substr(eq + 1);
      if (key == "grade") {
        n.grades = parse_grades(value, loc);
        if (n.kind == ValueKind::Scalar && n.grades != GradeSet::singleton(0)) {
          throw ParseError(ErrorCode::SyntaxError, loc, "scalar nodes are grade 0");
        }
      } else if (key == "unit") {
        if (value.empty()) throw ParseError(ErrorCode::SyntaxError, loc, "empty unit");
        n.unit = value;
      } else if (key == "coeffect") {
        n.coeffect = value;
      } else if (key == "flag") {
        if (value == "live") n.flag = DeclFlag::Live;
        else if (value == "latent") n.flag = DeclFlag::Latent;
        else if (value == "fresh") n.flag = DeclFlag::Fresh;
        else throw ParseError(ErrorCode::UnknownKeyword, loc, "unknown flag '" + value + "'");
      } else {
        throw ParseError(ErrorCode::UnknownKeyword, loc, "unknown node field '" + key + "'");
      }
    }
    if (n.kind == ValueKind::Scalar) n.grades = GradeSet::unknown();
    file_.nodes.push_back(std::move(n));
  }

  void edge(const std::string& line, std::size_t start) {
    const std::size_t open = line.find('(', start);
    const std::size_t close = line.find(')', open == std::string::npos ? start : open);
    const std::size_t arrow = line.find("->", close == std::string::npos ? start : close);
    if (open == std::string::npos || close == std::string::npos || arrow == std::string::npos) {
      throw ParseError(ErrorCode::SyntaxError, at(static_cast<int>(start) + 1), "expected 'edge [LABEL =] kind(sources) -> target'");
    }
    EdgeDecl e;
    std::string_view head = std::string_view(line).substr(start, open - start);
    std::size_t kind_start = start;
    if (auto eq = head.find('='); eq != std::string_view::npos) {
      std::string_view label = trim(head.substr(0, eq));
      if (!is_ident(label)) throw ParseError(ErrorCode::SyntaxError, at(static_cast<int>(start) + 1), "bad edge label");
      e.label = std::string(label);
      kind_start = start + eq + 1;
      head = head.substr(eq + 1);
    }
    std::string_view kind = trim(head);
    const int kind_col = static_cast<int>(line.find(kind, kind_start)) + 1;
    e.loc = at(kind_col);
    if (auto it = simple_kinds().find(kind); it != simple_kinds().end()) {
      e.kind = it->second;
    } else if (kind.starts_with("select[") && kind.ends_with("]")) {
      e.kind = EdgeKind::GradeSelect;
      e.grade = parse_int(kind.substr(7, kind.size() - 8), at(kind_col), "select grade");
    } else if (kind.starts_with("custom:") && kind.size() > 7) {
      e.kind = EdgeKind::Custom;
      e.tag = std::string(kind.substr(7));
    } else {
      throw ParseError(ErrorCode::UnknownKeyword, at(kind_col), "unknown edge kind '" + std::string(kind) + "'");
    }

    std::string_view args = trim(std::string_view(line).substr(open + 1, close - open - 1));
    if (!args.empty()) {
      for (const std::string& s : split_list(args)) {
        if (!is_ident(s)) throw ParseError(ErrorCode::SyntaxError, at(static_cast<int>(open) + 2), "bad source name '" + s + "'");
        e.sources.push_back(s);
      }
    }
    if (!trim(std::string_view(line).substr(close + 1, arrow - close - 1)).empty()) {
      throw ParseError(ErrorCode::SyntaxError, at(static_cast<int>(close) + 2), "unexpected text before '->'");
    }
    auto rest = tokens(line, arrow + 2);
    if (rest.empty() || !is_ident(rest[0].text)) {
      throw ParseError(ErrorCode::SyntaxError, at(static_cast<int>(arrow) + 3), "expected a target node after '->'");
    }
    e.target = rest[0].text;
    for (std::size_t i = 1; i < rest.size(); ++i) {
      const std::string& t = rest[i].text;
      const SourceLocation loc = at(rest[i].column);
      if (t == "measure" || t == "metric") {
        if (e.kind != EdgeKind::Norm) throw ParseError(ErrorCode::SyntaxError, loc, "'" + t + "' applies to norm edges");
        e.norm = t == "measure" ? NormMode::Measure : NormMode::Metric;
      } else if (t.starts_with("reach=")) {
        e.reach = parse_reach(std::string_view(t).substr(6), loc);
      } else {
        throw ParseError(ErrorCode::UnknownKeyword, loc, "unknown edge option '" + t + "'");
      }
    }
    file_.edges.push_back(std::move(e));
  }

  void colocate(const std::string& line, std::size_t start) {
    ColocateDecl g;
    auto toks = tokens(line, start);
    // NAME -> OUTPUT [reach=...] {
    if (toks.size() < 4 || !is_ident(toks[0].text) || toks[1].text != "->" || !is_ident(toks[2].text) ||
        toks.back().text != "{") {
      throw ParseError(ErrorCode::SyntaxError, at(static_cast<int>(start) + 1), "expected 'colocate NAME -> OUTPUT {'");
    }
    g.name = toks[0].text;
    g.output = toks[2].text;
    g.loc = at(toks[0].column);
    for (std::size_t i = 3; i + 1 < toks.size(); ++i) {
      if (!toks[i].text.starts_with("reach=")) {
        throw ParseError(ErrorCode::UnknownKeyword, at(toks[i].column), "unknown group option '" + toks[i].text + "'");
      }
      g.reach = parse_reach(std::string_view(toks[i].text).substr(6), at(toks[i].column));
    }
    const SourceLocation open_loc = g.loc;
    for (++line_; line_ < lines_.size(); ++line_) {
      auto body = tokens(lines_[line_]);
      if (body.empty()) continue;
      const std::string& kw = body[0].text;
      auto need = [&](std::size_t n, const char* shape) {
        if (body.size() != n) throw ParseError(ErrorCode::SyntaxError, at(body[0].column), std::string("expected '") + shape + "'");
      };
      if (kw == "}") {
        need(1, "}");
        file_.groups.push_back(std::move(g));
        return;
      } else if (kw == "members") {
        for (std::size_t i = 1; i < body.size(); ++i) g.members.push_back(body[i].text);
      } else if (kw == "route") {
        need(4, "route A -> B");
        if (body[2].text != "->") throw ParseError(ErrorCode::SyntaxError, at(body[2].column), "expected '->'");
        g.routes.emplace_back(body[1].text, body[3].text);
      } else if (kw == "dma") {
        need(3, "dma A B");
        g.dma.emplace_back(body[1].text, body[2].text);
      } else if (kw == "sync") {
        for (std::size_t i = 1; i < body.size(); ++i) g.sync.push_back(body[i].text);
      } else if (kw == "footprint") {
        need(3, "footprint A KB");
        g.footprints.emplace_back(body[1].text, parse_int(body[2].text, at(body[2].column), "footprint"));
      } else if (kw == "mode") {
        need(2, "mode rect|column|tile");
        const std::string& m = body[1].text;
        if (m == "rect") g.mode = BlockMode::Rectangle;
        else if (m == "column") g.mode = BlockMode::Column;
        else if (m == "tile") g.mode = BlockMode::SingleTile;
        else throw ParseError(ErrorCode::UnknownKeyword, at(body[1].column), "unknown block mode '" + m + "'");
      } else {
        throw ParseError(ErrorCode::UnknownKeyword, at(body[0].column), "unknown group entry '" + kw + "'");
      }
    }
    throw ParseError(ErrorCode::SyntaxError, open_loc, "group '" + g.name + "' is not closed with '}'");
  }

  std::vector<std::string> lines_;
  std::size_t line_ = 0;
  ProgramFile file_;
};

}  // namespace

ProgramFile parse_program_file(std::string_view text) { return Parser(text).run(); }

Program build_program(ProgramFile file) {
  Program prog;
  std::shared_ptr<const Algebra> alg;
  if (file.algebra) {
    try {
      alg = build_algebra(*file.algebra);
    } catch (const Error& e) {
      throw ParseError(e.code(), SourceLocation{1, 1}, e.what());
    }
  } else if (!file.nodes.empty()) {
    throw ParseError(ErrorCode::UnresolvedReference, file.nodes[0].loc, "no algebra declared");
  }
  prog.phg = Phg(alg);
  prog.phg.set_base_units(file.units);

  std::vector<std::string> target_names;
  for (const TargetDecl& t : file.targets) {
    if (std::find(target_names.begin(), target_names.end(), t.model.name) != target_names.end()) {
      throw ParseError(ErrorCode::DuplicateName, t.loc, "target '" + t.model.name + "' declared twice");
    }
    if (t.configured) {
      try {
        validate(t.model);
      } catch (const Error& e) {
        throw ParseError(e.code(), t.loc, e.what());
      }
    }
    target_names.push_back(t.model.name);
  }
  try {
    prog.phg.set_targets(target_names);
  } catch (const Error& e) {
    throw ParseError(e.code(), SourceLocation{}, e.what());
  }

  for (const NodeDecl& n : file.nodes) {
    NodeSpec spec;
    spec.name = n.name;
    spec.kind = n.kind;
    spec.declared_grades = n.grades;
    spec.coeffect = n.coeffect;
    spec.flag = n.flag;
    try {
      if (n.unit) spec.dimension = parse_unit(*n.unit, file.units);
      prog.phg.add_node(spec);
    } catch (const Error& e) {
      throw ParseError(e.code(), n.loc, e.what());
    }
    prog.node_locations.push_back(n.loc);
  }

  auto resolve = [&](const std::string& name, SourceLocation loc) {
    auto id = prog.phg.find_node(name);
    if (!id) throw ParseError(ErrorCode::UnresolvedReference, loc, "unknown node '" + name + "'");
    return *id;
  };
  auto reach_bits = [&](const std::vector<std::string>& names, SourceLocation loc) -> std::optional<std::uint64_t> {
    if (names.empty()) return std::nullopt;
    std::uint64_t bits = 0;
    for (const std::string& t : names) {
      auto it = std::find(target_names.begin(), target_names.end(), t);
      if (it == target_names.end()) throw ParseError(ErrorCode::UnresolvedReference, loc, "unknown target '" + t + "'");
      bits |= 1ull << (it - target_names.begin());
    }
    return bits;
  };

  for (const EdgeDecl& d : file.edges) {
    EdgeSpec e;
    e.label = d.label;
    e.kind = d.kind;
    e.payload.grade = d.grade;
    e.payload.norm = d.norm;
    e.payload.tag = d.tag;
    for (const std::string& s : d.sources) e.sources.push_back(resolve(s, d.loc));
    e.target = resolve(d.target, d.loc);
    e.reachability = reach_bits(d.reach, d.loc);
    try {
      prog.phg.add_edge(e);
    } catch (const Error& err) {
      throw ParseError(err.code(), d.loc, err.what());
    }
    prog.edge_locations.push_back(d.loc);
  }

  for (const ColocateDecl& g : file.groups) {
    CoLocationAnnotation ann;
    ann.name = g.name;
    ann.mode = g.mode;
    auto member = [&](const std::string& name) {
      NodeId id = resolve(name, g.loc);
      if (std::find(ann.members.begin(), ann.members.end(), id) == ann.members.end()) {
        throw ParseError(ErrorCode::UnresolvedReference, g.loc, "'" + name + "' is not a member of group '" + g.name + "'");
      }
      return id;
    };
    for (const std::string& m : g.members) {
      NodeId id = resolve(m, g.loc);
      if (std::find(ann.members.begin(), ann.members.end(), id) != ann.members.end()) {
        throw ParseError(ErrorCode::DuplicateName, g.loc, "'" + m + "' listed twice in group '" + g.name + "'");
      }
      ann.members.push_back(id);
    }
    for (auto& [a, b] : g.routes) ann.routes.emplace_back(member(a), member(b));
    for (auto& [a, b] : g.dma) ann.dma_pairs.emplace_back(member(a), member(b));
    for (const std::string& s : g.sync) ann.sync.push_back(member(s));
    ann.footprint_kb.assign(ann.members.size(), 0);
    for (auto& [m, kb] : g.footprints) {
      NodeId id = member(m);
      ann.footprint_kb[static_cast<std::size_t>(std::find(ann.members.begin(), ann.members.end(), id) - ann.members.begin())] = kb;
    }
    EdgeSpec e;
    e.label = g.name;
    e.kind = EdgeKind::CoLocation;
    e.sources = ann.members;
    e.target = resolve(g.output, g.loc);
    e.reachability = reach_bits(g.reach, g.loc);
    e.payload.colocation = std::move(ann);
    try {
      prog.phg.add_edge(e);
    } catch (const Error& err) {
      throw ParseError(err.code(), g.loc, err.what());
    }
    prog.edge_locations.push_back(g.loc);
  }
  prog.file = std::move(file);
  return prog;
}

std::string serialize(const ProgramFile& f) {
  std::string s;
  auto list = [](const std::vector<std::string>& v) {
    std::string out;
    for (const std::string& x : v) out += (out.empty() ? "" : ",") + x;
    return out;
  };
  if (f.algebra) s += "algebra " + f.algebra->to_string() + "\n";
  if (!f.units.empty()) {
    s += "units";
    for (const std::string& u : f.units) s += " " + u;
    s += "\n";
  }
  for (const TargetDecl& t : f.targets) {
    s += "target " + t.model.name;
    if (t.configured) {
      s += " rows=" + std::to_string(t.model.rows) + " cols=" + std::to_string(t.model.cols) +
           " tile_kb=" + std::to_string(t.model.tile_kb) + " dma=" + std::to_string(t.model.dma_channels);
    }
    s += "\n";
  }
  for (const NodeDecl& n : f.nodes) {
    s += "node " + n.name + " : " + (n.kind == ValueKind::Scalar ? "scalar" : "mv");
    if (n.grades.is_known()) s += " grade=" + format_grades(n.grades);
    if (n.unit) s += " unit=" + *n.unit;
    if (!n.coeffect.empty()) s += " coeffect=" + n.coeffect;
    if (n.flag != DeclFlag::Live) s += " flag=" + std::string(to_string(n.flag));
    s += "\n";
  }
  for (const EdgeDecl& e : f.edges) {
    s += "edge ";
    if (!e.label.empty()) s += e.label + " = ";
    std::string srcs;
    for (const std::string& x : e.sources) srcs += (srcs.empty() ? "" : ", ") + x;
    s += kind_text(e) + "(" + srcs + ") -> " + e.target;
    if (e.kind == EdgeKind::Norm && e.norm == NormMode::Measure) s += " measure";
    if (!e.reach.empty()) s += " reach=" + list(e.reach);
    s += "\n";
  }
  for (const ColocateDecl& g : f.groups) {
    s += "colocate " + g.name + " -> " + g.output;
    if (!g.reach.empty()) s += " reach=" + list(g.reach);
    s += " {\n";
    if (!g.members.empty()) {
      s += "  members";
      for (const std::string& m : g.members) s += " " + m;
      s += "\n";
    }
    for (auto& [a, b] : g.routes) s += "  route " + a + " -> " + b + "\n";
    for (auto& [a, b] : g.dma) s += "  dma " + a + " " + b + "\n";
    if (!g.sync.empty()) {
      s += "  sync";
      for (const std::string& m : g.sync) s += " " + m;
      s += "\n";
    }
    for (auto& [m, kb] : g.footprints) s += "  footprint " + m + " " + std::to_string(kb) + "\n";
    if (g.mode != BlockMode::Rectangle) s += "  mode " + std::string(to_string(g.mode)) + "\n";
    s += "}\n";
  }
  return s;
}

}  // namespace phg
