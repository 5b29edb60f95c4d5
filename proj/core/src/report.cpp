#include "phg/report.hpp"

#include <algorithm>

namespace phg {

bool CheckReport::has_errors() const {
  return std::any_of(entries.begin(), entries.end(), [](const ReportEntry& e) { return e.severity == Severity::Error; });
}

namespace {

SourceLocation locate(const Program& p, const std::optional<NodeId>& node, const std::optional<EdgeId>& edge) {
  if (edge && edge->value < p.edge_locations.size()) return p.edge_locations[edge->value];
  if (node && node->value < p.node_locations.size()) return p.node_locations[node->value];
  return SourceLocation{};
}

}  // namespace

CheckReport check_program(const Program& program, const MeshValues* values) {
  CheckReport r;
  const Phg& phg = program.phg;
  r.saturation = saturate(phg);
  r.dims = check_dimensions(phg, &r.saturation);
  if (phg.algebra()) r.mesh = check_boundary_consistency(phg, values);

  auto add = [&](const Diagnostic& d) {
    r.entries.push_back(ReportEntry{d.severity, d.category, d.code, d.message, locate(program, d.node, d.edge)});
  };
  for (const Diagnostic& d : r.saturation.diagnostics) add(d);
  for (const Diagnostic& d : r.dims.diagnostics) add(d);
  for (const MeshDiagnostic& m : r.mesh) {
    const Severity sev = m.kind == MeshIssue::NonManifoldEdge ? Severity::Warning : Severity::Error;
    add(Diagnostic{sev, "mesh", m.message, m.nodes.empty() ? std::nullopt : std::optional<NodeId>(m.nodes[0]),
                   std::nullopt, std::string(to_string(m.kind))});
  }
  std::stable_sort(r.entries.begin(), r.entries.end(), [](const ReportEntry& a, const ReportEntry& b) {
    if (a.loc.line != b.loc.line) return a.loc.line < b.loc.line;
    return static_cast<int>(a.severity) < static_cast<int>(b.severity);
  });
  r.advisory = "representation: float64 by default; exact mode recommended for incidence and orientation predicates";
  return r;
}

std::string to_text(const CheckReport& report, const std::string& filename) {
  std::string s;
  std::size_t errors = 0, warnings = 0;
  for (const ReportEntry& e : report.entries) {
    errors += e.severity == Severity::Error;
    warnings += e.severity == Severity::Warning;
    s += filename + ":" + std::to_string(e.loc.line) + ":" + std::to_string(e.loc.column) + ": " +
         to_string(e.severity) + ": " + e.message;
    if (!e.code.empty()) s += " [" + e.code + "]";
    s += "\n";
  }
  s += "note: " + report.advisory + "\n";
  s += std::to_string(errors) + " error(s), " + std::to_string(warnings) + " warning(s); " +
       std::to_string(report.saturation.iterations) + " firing(s) in " + std::to_string(report.saturation.rounds) +
       " round(s)\n";
  return s;
}

std::string trace_text(const Phg& phg, const SaturationReport& report) {
  std::vector<Quality> q = information_quality(report);
  auto tuple = [](const Quality& x) {
    return "(" + std::to_string(x.saturated) + "," + std::to_string(x.known) + "," + std::to_string(x.elaborated) + ")";
  };
  std::string s = "step 0: initial Q=" + tuple(q[0]) + "\n";
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    const FiringRecord& f = report.trace[i];
    const Hyperedge& e = phg.edge(f.edge);
    s += "step " + std::to_string(i + 1) + ": round " + std::to_string(f.round) + " fire " + e.label + " " +
         std::string(to_string(e.kind)) + " -> " + phg.node(f.target).name + " grades " + f.after.grades.to_string() +
         " " + std::string(to_string(f.after.activation)) + " Q=" + tuple(q[i + 1]) + "\n";
  }
  s += "iterations " + std::to_string(report.iterations) + ", rounds " + std::to_string(report.rounds) + "\n";
  for (const StallRecord& st : report.stalled) s += "stalled " + phg.node(st.node).name + ": " + st.reason + "\n";
  return s;
}

}  // namespace phg
