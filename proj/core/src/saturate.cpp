#include "phg/saturate.hpp"

#include <algorithm>
#include <deque>
#include <random>

#include "phg/error.hpp"
#include "phg/grade.hpp"

namespace phg {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::Fresh: return "fresh";
    case Activation::Elaborated: return "elaborated";
    case Activation::Saturated: return "saturated";
  }
  return "?";
}

EdgeInference infer_edge(const Algebra& alg, const Hyperedge& edge, std::span<const GradeSet> sources) {
  EdgeInference out;
  const int d = alg.dim();
  for (const GradeSet& s : sources) {
    if (s.is_structural_zero() && edge.kind != EdgeKind::Norm) {
      out.grades = GradeSet::structural_zero();
      return out;
    }
  }
  if (auto pk = product_kind_of(edge.kind)) {
    out.grades = table_grades(alg, *pk, sources[0], sources[1]);
    return out;
  }
  switch (edge.kind) {
    case EdgeKind::Sandwich: {
      SandwichGrades sg = sandwich_grades(alg, sources[0], sources[1]);
      out.grades = sg.grades;
      if (!sg.preserves) out.warnings.push_back("versor mixes parities; sandwich may not preserve grades");
      break;
    }
    case EdgeKind::Join:
      out.grades = join_grade_sets(sources, d);
      break;
    case EdgeKind::GradeSelect:
      out.grades = sources[0].contains(edge.payload.grade) ? GradeSet::singleton(edge.payload.grade)
                                                           : GradeSet::structural_zero();
      break;
    case EdgeKind::Norm:
      out.grades = sources[0].is_structural_zero() ? GradeSet::structural_zero() : GradeSet::singleton(0);
      break;
    default:
      break;
  }
  return out;
}

namespace {

class Engine {
 public:
  Engine(const Phg& phg, const SaturationOptions& options) : phg_(phg), options_(options), rng_(options.seed) {}

  SaturationReport run() {
    const std::size_t n = phg_.node_count();
    state_.resize(n);
    fired_.assign(phg_.edge_count(), 0);
    queued_.assign(phg_.edge_count(), 0);
    pending_.assign(n, 0);

    for (const PhgNode& node : phg_.nodes()) {
      NodeAnnotation& a = state_[node.id.value];
      a.grades = node.declaration();
      pending_[node.id.value] = active_producers(node.id);
      if (pending_[node.id.value] == 0 && !a.grades.is_unknown()) a.activation = Activation::Saturated;
    }
    report_.initial = state_;

    for (const Hyperedge& e : phg_.edges()) {
      if (active(e) && ready(e)) push(e.id);
    }
    while (!queue_.empty()) fire(pop());

    report_.annotations = state_;
    collect_stalls();
    return std::move(report_);
  }

 private:
  bool active(const Hyperedge& e) const {
    if (!is_inference_kind(e.kind)) return false;
    return !options_.target_index || e.reachable(*options_.target_index);
  }

  std::size_t active_producers(NodeId id) const {
    std::size_t count = 0;
    for (EdgeId e : phg_.incoming(id)) count += active(phg_.edge(e)) ? 1 : 0;
    return count;
  }

  bool ready(const Hyperedge& e) const {
    return std::all_of(e.sources.begin(), e.sources.end(),
                       [&](NodeId s) { return state_[s.value].activation == Activation::Saturated; });
  }

  void push(EdgeId id) {
    queued_[id.value] = 1;
    queue_.push_back(id);
  }

  EdgeId pop() {
    EdgeId id;
    switch (options_.order) {
      case WorklistOrder::Fifo:
        id = queue_.front();
        queue_.pop_front();
        break;
      case WorklistOrder::Lifo:
        id = queue_.back();
        queue_.pop_back();
        break;
      case WorklistOrder::Seeded: {
        std::uniform_int_distribution<std::size_t> pick(0, queue_.size() - 1);
        // Swap-remove keeps the draw O(1).
        auto it = queue_.begin() + static_cast<std::ptrdiff_t>(pick(rng_));
        id = *it;
        *it = queue_.back();
        queue_.pop_back();
        break;
      }
    }
    return id;
  }

  void diag(Severity sev, std::string code, std::string message, NodeId node, EdgeId edge) {
    report_.diagnostics.push_back(Diagnostic{sev, "grade", std::move(message), node, edge, std::move(code)});
  }

  void fire(EdgeId id) {
    ++report_.iterations;
    const Hyperedge& e = phg_.edge(id);
    if (fired_[id.value]) return;
    fired_[id.value] = 1;

    std::vector<GradeSet> sources;
    int round = 0;
    for (NodeId s : e.sources) {
      sources.push_back(state_[s.value].grades);
      round = std::max(round, state_[s.value].round);
    }
    ++round;

    const PhgNode& target = phg_.node(e.target);
    EdgeInference inf = infer_edge(*phg_.algebra(), e, sources);
    for (std::string& w : inf.warnings) diag(Severity::Warning, "sandwich-parity", "'" + target.name + "': " + w, e.target, id);

    NodeAnnotation& a = state_[e.target.value];
    const bool first = a.activation == Activation::Fresh;
    const GradeSet declared = target.declaration();

    if (!inf.grades.is_unknown()) {
      if (first && !declared.is_unknown()) {
        if (auto g = check_grades(declared, inf.grades, e.target)) {
          std::string code = g->severity == Severity::Error     ? "grade-disjoint"
                             : inf.grades.is_structural_zero()  ? "structural-zero"
                             : inf.grades.is_subset_of(declared) ? "grade-narrowed"
                                                                 : "grade-partial";
          diag(g->severity, code, "'" + target.name + "': " + g->message, e.target, id);
        }
      }
      if (inf.grades.is_structural_zero()) {
        if (declared.is_unknown() || !first) {
          diag(Severity::Warning, "structural-zero", "'" + target.name + "' is provably zero (edge '" + e.label + "')", e.target, id);
        }
        a.grades = inf.grades;
      } else if (a.grades.is_unknown()) {
        a.grades = inf.grades;
      } else if (a.grades.is_structural_zero()) {
        // Already provably zero; a non-zero producer cannot widen it.
      } else if (a.grades.intersects(inf.grades)) {
        a.grades = a.grades.intersect(inf.grades);
      } else if (!first || declared.is_unknown()) {
        diag(Severity::Error, "grade-conflict",
             "'" + target.name + "': edge '" + e.label + "' infers " + inf.grades.to_string() +
                 ", disjoint from earlier " + a.grades.to_string() + "; keeping the earlier assignment",
             e.target, id);
      }
    }

    if (pending_[e.target.value] > 0) --pending_[e.target.value];
    const int previous_round = a.round;
    a.round = std::max(previous_round, round);
    if (pending_[e.target.value] == 0) {
      a.activation = Activation::Saturated;
      report_.rounds = std::max(report_.rounds, a.round);
    } else if (a.activation == Activation::Fresh) {
      a.activation = Activation::Elaborated;
    }
    report_.trace.push_back(FiringRecord{id, e.target, inf.grades, a, round});

    if (a.activation == Activation::Saturated) {
      for (EdgeId out : phg_.outgoing(e.target)) {
        const Hyperedge& next = phg_.edge(out);
        if (!fired_[out.value] && !queued_[out.value] && active(next) && ready(next)) push(out);
      }
    }
  }

  void collect_stalls() {
    for (const PhgNode& node : phg_.nodes()) {
      const NodeAnnotation& a = state_[node.id.value];
      if (a.activation == Activation::Saturated) continue;
      std::string reason;
      if (active_producers(node.id) == 0) {
        reason = "input has no declared grade";
      } else {
        std::vector<std::string> waiting;
        for (EdgeId eid : phg_.incoming(node.id)) {
          const Hyperedge& e = phg_.edge(eid);
          if (!active(e) || fired_[eid.value]) continue;
          for (NodeId s : e.sources) {
            if (state_[s.value].activation != Activation::Saturated) {
              const std::string& name = phg_.node(s).name;
              if (std::find(waiting.begin(), waiting.end(), name) == waiting.end()) waiting.push_back(name);
            }
          }
        }
        reason = "waiting on";
        for (std::size_t i = 0; i < waiting.size(); ++i) reason += (i ? ", " : " ") + waiting[i];
      }
      report_.stalled.push_back(StallRecord{node.id, reason});
      report_.diagnostics.push_back(
          Diagnostic{Severity::Note, "stall", "'" + node.name + "' stalled: " + reason, node.id, std::nullopt, "stalled"});
    }
  }

  const Phg& phg_;
  SaturationOptions options_;
  std::mt19937_64 rng_;
  std::vector<NodeAnnotation> state_;
  std::vector<char> fired_;
  std::vector<char> queued_;
  std::vector<std::size_t> pending_;
  std::deque<EdgeId> queue_;
  SaturationReport report_;
};

Quality measure(const std::vector<NodeAnnotation>& state) {
  Quality q;
  for (const NodeAnnotation& a : state) {
    q.saturated += a.activation == Activation::Saturated;
    q.known += !a.grades.is_unknown();
    q.elaborated += a.activation != Activation::Fresh;
  }
  return q;
}

}  // namespace

SaturationReport saturate(const Phg& phg, const SaturationOptions& options) {
  if (!phg.algebra() && phg.node_count() > 0) throw Error(ErrorCode::InvalidArgument, "saturation needs an algebra");
  return Engine(phg, options).run();
}

std::vector<Quality> information_quality(const SaturationReport& report) {
  std::vector<NodeAnnotation> state = report.initial;
  std::vector<Quality> out{measure(state)};
  for (const FiringRecord& f : report.trace) {
    state[f.target.value] = f.after;
    out.push_back(measure(state));
  }
  return out;
}

}  // namespace phg
