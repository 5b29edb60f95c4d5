#pragma once

#include <string>
#include <vector>

#include "phg/dims.hpp"
#include "phg/mesh.hpp"
#include "phg/program.hpp"
#include "phg/saturate.hpp"

namespace phg {

struct ReportEntry {
  Severity severity = Severity::Warning;
  std::string category;
  std::string code;
  std::string message;
  SourceLocation loc;
};

/// Everything `check` computes, with entries in file order, then severity.
struct CheckReport {
  SaturationReport saturation;
  DimCheck dims;
  std::vector<MeshDiagnostic> mesh;
  std::vector<ReportEntry> entries;
  std::string advisory;

  bool has_errors() const;
};

/// Saturation, grade checks, dimension solve and mesh boundary checks.
CheckReport check_program(const Program& program, const MeshValues* values = nullptr);

/// "file:line:col: severity: message [code]" lines plus a summary line.
std::string to_text(const CheckReport& report, const std::string& filename);

/// One line per firing with the information-quality tuple after it.
std::string trace_text(const Phg& phg, const SaturationReport& report);

}  // namespace phg
