#include "phgc/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

#include "phg/autodiff.hpp"
#include "phg/kernel.hpp"
#include "phg/mesh.hpp"
#include "phg/place.hpp"
#include "phg/report.hpp"
#include "phgc/values.hpp"

namespace phgc {

using nlohmann::ordered_json;
using namespace phg;

namespace {

struct Settings {
  std::string mode = "float";
  std::string format = "text";
  NumericMode numeric() const { return mode == "exact" ? NumericMode::ExactRational : NumericMode::Float64; }
  bool json() const { return format == "json"; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string percent(double x) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << 100.0 * x << "%";
  return s.str();
}

ordered_json scalar_json(const Scalar& s) {
  if (s.is_exact()) return s.to_string();
  return s.float_value();
}

ordered_json mv_json(const Multivector& x) {
  ordered_json o = ordered_json::object();
  for (auto& [mask, c] : x.terms()) o[x.algebra().blade_name(Blade{mask})] = scalar_json(c);
  return o;
}

Signature parse_signature(std::string text) {
  if (text.starts_with("Cl(") && text.ends_with(")")) text = text.substr(3, text.size() - 4);
  std::vector<int> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoi(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--algebra", "expected p,q,r");
    }
  }
  if (v.size() != 3 || v[0] < 0 || v[1] < 0 || v[2] < 0) throw CLI::ValidationError("--algebra", "expected p,q,r");
  return Signature{v[0], v[1], v[2]};
}

// Renders an exception from the library as a located diagnostic line.
void report_error(std::ostream& err, const std::string& file, const Error& e) {
  err << (file.empty() ? "phgc" : file);
  if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
    err << ":" << pe->location().line << ":" << pe->location().column;
  }
  err << ": error: " << e.what() << " [" << to_string(e.code()) << "]\n";
}

Program load_program(const std::string& path) { return parse_program(read_file(path)); }

int cmd_check(const Settings& st, const std::string& file, const std::string& mesh_file, const std::string& algebra,
              std::ostream& out) {
  Program prog;
  MeshValues values;
  std::string name = file;
  if (!mesh_file.empty()) {
    if (!file.empty()) throw Error(ErrorCode::InvalidArgument, "give either a program or --mesh, not both");
    MeshImport m = import_mesh(read_file(mesh_file), build_algebra(parse_signature(algebra)), st.numeric());
    prog.phg = std::move(m.phg);
    values = std::move(m.values);
    name = mesh_file;
  } else {
    prog = load_program(file);
  }
  CheckReport r = check_program(prog, mesh_file.empty() ? nullptr : &values);
  if (st.json()) {
    ordered_json doc;
    doc["file"] = name;
    doc["errors"] = std::count_if(r.entries.begin(), r.entries.end(), [](auto& e) { return e.severity == Severity::Error; });
    ordered_json diags = ordered_json::array();
    for (const ReportEntry& e : r.entries) {
      diags.push_back({{"severity", to_string(e.severity)},
                       {"category", e.category},
                       {"code", e.code},
                       {"line", e.loc.line},
                       {"column", e.loc.column},
                       {"message", e.message}});
    }
    doc["diagnostics"] = diags;
    ordered_json nodes = ordered_json::array();
    for (const PhgNode& n : prog.phg.nodes()) {
      const NodeAnnotation& a = r.saturation.annotations[n.id.value];
      ordered_json j{{"name", n.name}, {"grades", a.grades.to_string()}, {"state", to_string(a.activation)}};
      if (r.dims.solution.consistent && !r.dims.system.variables.empty()) {
        j["unit"] = format_unit(r.dims.solution.assignment[n.id.value], r.dims.system.bases);
      }
      nodes.push_back(j);
    }
    doc["nodes"] = nodes;
    doc["rounds"] = r.saturation.rounds;
    doc["iterations"] = r.saturation.iterations;
    doc["advisory"] = r.advisory;
    out << doc.dump(2) << "\n";
  } else {
    out << to_text(r, name);
  }
  return r.has_errors() ? 1 : 0;
}

int cmd_sparsity(const Settings& st, const std::string& algebra, const std::string& kind, const std::vector<int>& grades,
                 int join, std::ostream& out) {
  auto alg = build_algebra(parse_signature(algebra));
  SparsityProfile p;
  std::optional<double> tensor;
  if (join > 0) {
    p = join_sparsity_profile(*alg, join);
  } else {
    if (grades.size() != 2) throw CLI::ValidationError("--grades", "expected two grades p,q");
    ProductKind k = parse_product_kind(kind);
    p = sparsity_profile(*alg, k, grades[0], grades[1]);
    tensor = tensor_sparsity(*alg, k);
  }
  std::string g;
  for (const GradeSet& x : p.grades) g += (g.empty() ? "" : " x ") + x.to_string();
  if (st.json()) {
    ordered_json doc{{"algebra", p.signature.to_string()}, {"kind", p.kind}, {"grades", g},
                     {"nonzero", p.nonzero}, {"restricted_dense", p.restricted_dense},
                     {"multiplies", p.multiplies}, {"adds", p.adds},
                     {"dense_multiplies", p.dense_multiplies}, {"dense_adds", p.dense_adds},
                     {"reduction", p.reduction}};
    if (tensor) doc["tensor_sparsity"] = *tensor;
    out << doc.dump(2) << "\n";
    return 0;
  }
  auto row = [&](const std::string& k, const std::string& v) { out << std::left << std::setw(18) << k << v << "\n"; };
  row("algebra", p.signature.to_string());
  row("kind", p.kind);
  row("grades", g);
  row("nonzero", std::to_string(p.nonzero));
  row("restricted dense", std::to_string(p.restricted_dense));
  row("multiplies", std::to_string(p.multiplies));
  row("adds", std::to_string(p.adds));
  row("dense multiplies", std::to_string(p.dense_multiplies));
  row("dense adds", std::to_string(p.dense_adds));
  row("reduction", percent(p.reduction));
  if (tensor) row("tensor sparsity", percent(*tensor));
  return 0;
}

int cmd_emit(const Settings& st, const std::string& file, const std::string& edge_name, bool fused, std::ostream& out) {
  Program prog = load_program(file);
  const Phg& phg = prog.phg;
  auto id = phg.find_edge(edge_name);
  if (!id) throw Error(ErrorCode::UnresolvedReference, "no edge labelled '" + edge_name + "'");
  const Hyperedge& e = phg.edge(*id);
  SaturationReport sat = saturate(phg);
  std::vector<GradeSet> grades;
  for (NodeId s : e.sources) {
    const NodeAnnotation& a = sat.annotations[s.value];
    if (a.activation != Activation::Saturated || a.grades.is_unknown()) {
      throw Error(ErrorCode::InvalidArgument, "grades of '" + phg.node(s).name + "' are not known; cannot specialize");
    }
    grades.push_back(a.grades);
  }
  KernelIR kir;
  if (auto pk = product_kind_of(e.kind)) {
    kir = emit_kernel(*phg.algebra(), *pk, grades[0], grades[1], KernelOptions{fused});
  } else if (e.kind == EdgeKind::Join &&
             std::all_of(grades.begin(), grades.end(), [](const GradeSet& g) { return g == GradeSet::singleton(1); })) {
    kir = emit_join_kernel(*phg.algebra(), static_cast<int>(grades.size()) - 1);
  } else {
    throw Error(ErrorCode::InvalidArgument, "edge '" + edge_name + "' (" + std::string(to_string(e.kind)) +
                                                ") has no specialized kernel");
  }
  if (st.json()) {
    ordered_json code = ordered_json::array();
    for (const Instruction& i : kir.code) code.push_back({{"dst", i.dst}, {"op", to_string(i.op)}, {"args", i.args}});
    ordered_json doc{{"edge", edge_name}, {"kind", kir.kind}, {"algebra", kir.signature.to_string()},
                     {"inputs", kir.inputs}, {"outputs", kir.outputs},
                     {"multiplies", kir.multiplies()}, {"adds", kir.adds()}, {"code", code}};
    out << doc.dump(2) << "\n";
  } else {
    out << kir.to_text();
  }
  return 0;
}

void print_values(const Settings& st, const Phg& phg, const std::map<NodeId, Multivector>& values,
                  const std::map<NodeId, Multivector>* tangents, const std::vector<std::string>& warnings,
                  std::ostream& out) {
  if (st.json()) {
    ordered_json doc = ordered_json::object();
    for (auto& [id, v] : values) {
      if (tangents) {
        doc[phg.node(id).name] = {{"value", mv_json(v)}, {"tangent", mv_json(tangents->at(id))}};
      } else {
        doc[phg.node(id).name] = mv_json(v);
      }
    }
    if (!warnings.empty()) doc["warnings"] = warnings;
    out << doc.dump(2) << "\n";
    return;
  }
  for (auto& [id, v] : values) {
    out << phg.node(id).name << " = " << v.to_string();
    if (tangents) out << "  d" << phg.node(id).name << " = " << tangents->at(id).to_string();
    out << "\n";
  }
  for (const std::string& w : warnings) out << "warning: " << w << "\n";
}

int cmd_eval(const Settings& st, const std::string& file, const std::string& inputs, const std::string& direction,
             const std::string& backend, bool all, std::ostream& out) {
  Program prog = load_program(file);
  ValueMap in = parse_values(read_file(inputs), prog, st.numeric());
  EvalOptions opt{backend == "kernel" ? EvalBackend::Kernel : EvalBackend::Dense, all};
  if (direction.empty()) {
    EvalResult r = eval(prog.phg, in, opt);
    print_values(st, prog.phg, r.values, nullptr, r.warnings, out);
    return 0;
  }
  ValueMap dir = parse_values(read_file(direction), prog, st.numeric());
  DualResult r = directional_derivative(prog.phg, in, dir, opt);
  std::map<NodeId, Multivector> primal, tangent;
  for (auto& [id, d] : r.values) {
    primal.emplace(id, d.primal);
    tangent.emplace(id, d.tangent);
  }
  print_values(st, prog.phg, primal, &tangent, r.warnings, out);
  return 0;
}

int cmd_place(const Settings& st, const std::string& file, const std::string& target_file, std::ostream& out) {
  Program prog = load_program(file);
  std::vector<TargetModel> targets;
  for (const TargetDecl& t : prog.file.targets) {
    if (t.configured) targets.push_back(t.model);
  }
  if (!target_file.empty()) {
    TargetModel t = parse_target(read_file(target_file));
    std::erase_if(targets, [&](const TargetModel& x) { return x.name == t.name; });
    targets.insert(targets.begin(), t);
  }
  if (targets.empty()) throw Error(ErrorCode::InvalidArgument, "no target: pass --target or configure one in the program");

  const Phg& phg = prog.phg;
  FeasibilityMatrix m = check_feasibility(phg, targets);
  bool all_feasible = true;
  for (auto& row : m.cells) {
    for (auto& c : row) all_feasible &= c.feasible();
  }
  std::optional<TilePlan> plan;
  std::string failure;
  try {
    plan = assign(phg, targets[0]);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PlacementFailed) throw;
    failure = e.what();
  }

  if (st.json()) {
    ordered_json doc;
    ordered_json mat = ordered_json::array();
    for (std::size_t g = 0; g < m.groups.size(); ++g) {
      ordered_json row{{"group", phg.edge(m.groups[g]).label}};
      ordered_json cells = ordered_json::object();
      for (std::size_t t = 0; t < m.targets.size(); ++t) {
        const Feasibility& f = m.cells[g][t];
        cells[m.targets[t]] = f.feasible() ? ordered_json{{"feasible", true}}
                                           : ordered_json{{"feasible", false},
                                                          {"reason", to_string(*f.reason)},
                                                          {"detail", f.detail}};
      }
      row["targets"] = cells;
      mat.push_back(row);
    }
    doc["feasibility"] = mat;
    if (plan) {
      ordered_json groups = ordered_json::array();
      for (const GroupPlacement& g : plan->groups) {
        ordered_json tiles = ordered_json::array();
        for (auto& [n, t] : g.assignment) tiles.push_back({{"node", phg.node(n).name}, {"row", t.row}, {"col", t.col}});
        ordered_json dma = ordered_json::array();
        for (auto& c : g.channels) dma.push_back({{"a", phg.node(c.a).name}, {"b", phg.node(c.b).name}, {"channel", c.channel}});
        ordered_json sched = ordered_json::array();
        for (NodeId n : g.schedule) sched.push_back(phg.node(n).name);
        ordered_json bars = ordered_json::array();
        for (auto& b : g.barriers) {
          ordered_json w = ordered_json::array();
          for (NodeId n : b.waits_for) w.push_back(phg.node(n).name);
          bars.push_back({{"node", phg.node(b.member).name}, {"waits_for", w}});
        }
        groups.push_back({{"group", g.name}, {"origin", {g.origin.row, g.origin.col}}, {"rows", g.rows},
                          {"cols", g.cols}, {"tiles", tiles}, {"dma", dma}, {"schedule", sched}, {"barriers", bars}});
      }
      doc["plan"] = {{"target", plan->target}, {"groups", groups}};
    } else {
      doc["plan"] = nullptr;
      doc["failure"] = failure;
    }
    out << doc.dump(2) << "\n";
    return plan && all_feasible ? 0 : 1;
  }

  out << "feasibility\n";
  for (std::size_t g = 0; g < m.groups.size(); ++g) {
    out << "  " << phg.edge(m.groups[g]).label << ":";
    for (std::size_t t = 0; t < m.targets.size(); ++t) {
      const Feasibility& f = m.cells[g][t];
      out << " " << m.targets[t] << "=" << (f.feasible() ? "feasible" : std::string(to_string(*f.reason)));
      if (!f.feasible()) out << " (" << f.detail << ")";
    }
    out << "\n";
  }
  if (!plan) {
    out << "error: " << failure << "\n";
    return 1;
  }
  out << "plan " << plan->target << "\n";
  for (const GroupPlacement& g : plan->groups) {
    out << "  group " << g.name << " block " << g.rows << "x" << g.cols << " at (" << g.origin.row << ","
        << g.origin.col << ")\n";
    for (auto& [n, t] : g.assignment) out << "    " << phg.node(n).name << " tile (" << t.row << "," << t.col << ")\n";
    for (auto& c : g.channels) {
      out << "    dma " << phg.node(c.a).name << " " << phg.node(c.b).name << " channel " << c.channel << "\n";
    }
    out << "    schedule";
    for (NodeId n : g.schedule) out << " " << phg.node(n).name;
    out << "\n";
    for (auto& b : g.barriers) {
      out << "    barrier " << phg.node(b.member).name << " waits for";
      for (NodeId n : b.waits_for) out << " " << phg.node(n).name;
      out << "\n";
    }
  }
  return all_feasible ? 0 : 1;
}

int cmd_trace(const Settings& st, const std::string& file, std::ostream& out) {
  Program prog = load_program(file);
  SaturationReport r = saturate(prog.phg);
  if (!st.json()) {
    out << trace_text(prog.phg, r);
    return 0;
  }
  std::vector<Quality> q = information_quality(r);
  ordered_json steps = ordered_json::array();
  steps.push_back({{"step", 0}, {"quality", {q[0].saturated, q[0].known, q[0].elaborated}}});
  for (std::size_t i = 0; i < r.trace.size(); ++i) {
    const FiringRecord& f = r.trace[i];
    steps.push_back({{"step", i + 1},
                     {"round", f.round},
                     {"edge", prog.phg.edge(f.edge).label},
                     {"target", prog.phg.node(f.target).name},
                     {"grades", f.after.grades.to_string()},
                     {"state", to_string(f.after.activation)},
                     {"quality", {q[i + 1].saturated, q[i + 1].known, q[i + 1].elaborated}}});
  }
  ordered_json doc{{"iterations", r.iterations}, {"rounds", r.rounds}, {"steps", steps}};
  out << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"phgc: checks, kernels, evaluation and placement for program hypergraphs", "phgc"};
  app.require_subcommand(1);
  Settings st;
  app.add_option("--mode", st.mode, "numeric mode")->check(CLI::IsMember({"float", "exact"}));
  app.add_option("--format", st.format, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string file, mesh, inputs, direction, target, edge, algebra = "3,0,1", kind = "gp", backend = "dense";
  std::vector<int> grades;
  int join = 0;
  bool fused = false, all = false;

  auto* check = app.add_subcommand("check", "saturate, check grades, dimensions and mesh boundaries");
  check->add_option("file", file, "program file");
  check->add_option("--mesh", mesh, "indexed triangle list to import instead of a program");
  check->add_option("--algebra", algebra, "algebra for --mesh, as p,q,r");

  auto* sparsity = app.add_subcommand("sparsity", "print the sparsity profile of a product");
  sparsity->add_option("--algebra", algebra, "p,q,r")->required();
  sparsity->add_option("--kind", kind, "gp|outer|inner|regressive")->check(CLI::IsMember({"gp", "outer", "inner", "regressive"}));
  sparsity->add_option("--grades", grades, "p,q")->delimiter(',')->check(CLI::Range(0, 31));
  sparsity->add_option("--join", join, "fused join of k+1 points")->check(CLI::Range(1, 31));

  auto* emit = app.add_subcommand("emit", "print the specialized kernel of an edge");
  emit->add_option("file", file)->required();
  emit->add_option("--edge", edge, "edge label")->required();
  emit->add_flag("--fused", fused, "emit MULADD");

  auto* ev = app.add_subcommand("eval", "evaluate a program");
  ev->add_option("file", file)->required();
  ev->add_option("--inputs", inputs, "JSON value file")->required();
  ev->add_option("--backend", backend)->check(CLI::IsMember({"dense", "kernel"}));
  ev->add_flag("--all", all, "print every node, not only sinks");

  auto* diff = app.add_subcommand("diff", "forward-mode directional derivative");
  diff->add_option("file", file)->required();
  diff->add_option("--inputs", inputs)->required();
  diff->add_option("--direction", direction)->required();
  diff->add_option("--backend", backend)->check(CLI::IsMember({"dense", "kernel"}));
  diff->add_flag("--all", all);

  auto* place = app.add_subcommand("place", "co-location feasibility and tile plan");
  place->add_option("file", file)->required();
  place->add_option("--target", target, "JSON target model");

  auto* trace = app.add_subcommand("trace", "saturation firing sequence");
  trace->add_option("file", file)->required();

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "phgc: usage error: " << e.what() << "\n" << "run 'phgc --help' for usage\n";
    return 2;
  }

  try {
    if (check->parsed()) {
      if (file.empty() && mesh.empty()) throw CLI::ValidationError("check", "needs a program file or --mesh");
      return cmd_check(st, file, mesh, algebra, out);
    }
    if (sparsity->parsed()) return cmd_sparsity(st, algebra, kind, grades, join, out);
    if (emit->parsed()) return cmd_emit(st, file, edge, fused, out);
    if (ev->parsed()) return cmd_eval(st, file, inputs, "", backend, all, out);
    if (diff->parsed()) return cmd_eval(st, file, inputs, direction, backend, all, out);
    if (place->parsed()) return cmd_place(st, file, target, out);
    if (trace->parsed()) return cmd_trace(st, file, out);
  } catch (const CLI::Error& e) {
    err << "phgc: usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::GradeOutOfRange && sparsity->parsed()) {
      err << "phgc: usage error: " << e.what() << "\n";
      return 2;
    }
    report_error(err, mesh.empty() ? file : mesh, e);
    return 1;
  }
  return 2;
}

}  // namespace phgc
