#include "phg/dims.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>

#include "phg/error.hpp"
#include "phg/saturate.hpp"

namespace phg {

DimSystem collect_constraints(const Phg& phg) {
  DimSystem sys;
  sys.bases = phg.base_units();
  if (sys.bases.empty()) return sys;
  const std::size_t n = sys.bases.size();
  const UnitVector none = UnitVector::dimensionless(n);

  for (const PhgNode& node : phg.nodes()) sys.variables.push_back(DimVariable{node.name, node.id, std::nullopt});
  std::map<std::uint32_t, std::size_t> scale_var;
  for (const Hyperedge& e : phg.edges()) {
    if (e.kind == EdgeKind::Norm && e.payload.norm == NormMode::Measure) {
      scale_var[e.id.value] = sys.variables.size();
      sys.variables.push_back(DimVariable{e.label + ".scale", std::nullopt, e.id});
    }
  }

  for (const PhgNode& node : phg.nodes()) {
    if (!node.dimension) continue;
    sys.constraints.push_back(DimConstraint{{{node.id.value, 1}}, *node.dimension, std::nullopt, node.id,
                                            node.name + " = " + format_unit(*node.dimension, sys.bases)});
  }

  for (const Hyperedge& e : phg.edges()) {
    const std::size_t t = e.target.value;
    auto name = [&](NodeId id) { return phg.node(id).name; };
    const std::string tag = " [" + e.label + ": " + std::string(to_string(e.kind)) + "]";
    switch (e.kind) {
      case EdgeKind::GeometricProduct:
      case EdgeKind::Outer:
      case EdgeKind::Inner:
      case EdgeKind::Regressive:
      case EdgeKind::Join: {
        std::map<std::size_t, std::int64_t> acc{{t, 1}};
        std::string rhs;
        for (NodeId s : e.sources) {
          acc[s.value] -= 1;
          rhs += (rhs.empty() ? "" : " + ") + name(s);
        }
        std::vector<std::pair<std::size_t, std::int64_t>> terms;
        for (auto [v, c] : acc) {
          if (c != 0) terms.emplace_back(v, c);
        }
        sys.constraints.push_back(DimConstraint{terms, none, e.id, std::nullopt, name(e.target) + " = " + rhs + tag});
        break;
      }
      case EdgeKind::Sandwich: {
        NodeId rotor = e.sources[0], x = e.sources[1];
        if (rotor == x) {
          sys.constraints.push_back(DimConstraint{{{rotor.value, 1}}, none, e.id, std::nullopt,
                                                  name(rotor) + " = 1 (versor)" + tag});
          sys.constraints.push_back(DimConstraint{{{t, 1}}, none, e.id, std::nullopt, name(e.target) + " = " + name(x) + tag});
          break;
        }
        sys.constraints.push_back(
            DimConstraint{{{t, 1}, {x.value, -1}}, none, e.id, std::nullopt, name(e.target) + " = " + name(x) + tag});
        sys.constraints.push_back(
            DimConstraint{{{rotor.value, 1}}, none, e.id, std::nullopt, name(rotor) + " = 1 (versor)" + tag});
        break;
      }
      case EdgeKind::Norm:
        if (e.payload.norm == NormMode::Measure) {
          std::size_t sv = scale_var.at(e.id.value);
          sys.constraints.push_back(DimConstraint{{{t, 1}, {e.sources[0].value, -1}, {sv, -1}}, none, e.id, std::nullopt,
                                                  name(e.target) + " = " + name(e.sources[0]) + " + " +
                                                      sys.variables[sv].name + tag});
          break;
        }
        [[fallthrough]];
      case EdgeKind::GradeSelect:
      case EdgeKind::Transfer:
        sys.constraints.push_back(DimConstraint{{{t, 1}, {e.sources[0].value, -1}}, none, e.id, std::nullopt,
                                                name(e.target) + " = " + name(e.sources[0]) + tag});
        break;
      default:
        break;
    }
  }
  return sys;
}

namespace {

struct Row {
  std::map<std::size_t, mpz_class> coeffs;  // non-zero only
  std::vector<mpz_class> rhs;
  std::map<std::size_t, mpz_class> combo;   // constraint index -> multiplier
  std::size_t origin = 0;
};

void normalize(Row& r) {
  mpz_class g = 0;
  auto fold = [&](const mpz_class& v) { mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t()); };
  for (auto& [v, c] : r.coeffs) fold(c);
  for (auto& c : r.rhs) fold(c);
  for (auto& [i, c] : r.combo) fold(c);
  if (!r.coeffs.empty() && r.coeffs.begin()->second < 0) g = -g;
  if (g == 0 || g == 1) return;
  for (auto& [v, c] : r.coeffs) c /= g;
  for (auto& c : r.rhs) c /= g;
  for (auto& [i, c] : r.combo) c /= g;
}

// r := a*r - b*p, where b is r's coefficient at p's pivot.
void eliminate(Row& r, const Row& p, std::size_t pivot) {
  auto it = r.coeffs.find(pivot);
  if (it == r.coeffs.end()) return;
  const mpz_class a = p.coeffs.at(pivot);
  const mpz_class b = it->second;
  auto combine = [&](std::map<std::size_t, mpz_class>& dst, const std::map<std::size_t, mpz_class>& src) {
    for (auto& [k, c] : dst) c *= a;
    for (auto& [k, c] : src) dst[k] -= b * c;
    std::erase_if(dst, [](const auto& kv) { return kv.second == 0; });
  };
  combine(r.coeffs, p.coeffs);
  combine(r.combo, p.combo);
  for (std::size_t i = 0; i < r.rhs.size(); ++i) r.rhs[i] = a * r.rhs[i] - b * p.rhs[i];
  normalize(r);
}

std::int64_t to_i64(const mpz_class& v) {
  if (!v.fits_slong_p()) throw Error(ErrorCode::InvalidArgument, "dimension exponent overflows 64 bits");
  return v.get_si();
}

UnitVector to_unit(const std::vector<mpz_class>& v) {
  UnitVector u = UnitVector::dimensionless(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) u.exponents[i] = to_i64(v[i]);
  return u;
}

}  // namespace

DimSolution solve(const DimSystem& system) {
  DimSolution sol;
  const std::size_t n = system.bases.size();
  const std::size_t nv = system.variables.size();
  std::vector<Row> rows;
  std::map<std::size_t, std::size_t> pivot_row;  // variable -> row index

  for (std::size_t ci = 0; ci < system.constraints.size(); ++ci) {
    const DimConstraint& c = system.constraints[ci];
    if (c.constant.size() != n) throw Error(ErrorCode::InvalidArgument, "constraint width differs from base units");
    Row r;
    r.origin = ci;
    r.rhs.resize(n);
    for (auto [v, k] : c.terms) {
      if (v >= nv) throw Error(ErrorCode::InvalidArgument, "constraint references an unknown variable");
      r.coeffs[v] += k;
    }
    std::erase_if(r.coeffs, [](const auto& kv) { return kv.second == 0; });
    for (std::size_t i = 0; i < n; ++i) r.rhs[i] = c.constant.exponents[i];
    r.combo[ci] = 1;
    normalize(r);

    // Rows are kept fully reduced, so one pass over the pivots suffices.
    std::vector<std::size_t> hits;
    for (auto& [v, coef] : r.coeffs) {
      if (pivot_row.contains(v)) hits.push_back(v);
    }
    for (std::size_t v : hits) eliminate(r, rows[pivot_row[v]], v);

    if (r.coeffs.empty()) {
      if (std::all_of(r.rhs.begin(), r.rhs.end(), [](const mpz_class& x) { return x == 0; })) continue;
      sol.consistent = false;
      sol.failing = ci;
      sol.failure = DimFailure::Contradiction;
      for (auto& [i, m] : r.combo) sol.witness.emplace_back(i, to_i64(m));
      sol.residual = to_unit(r.rhs);
      return sol;
    }

    const std::size_t pv = r.coeffs.begin()->first;
    const std::size_t idx = rows.size();
    rows.push_back(std::move(r));
    for (std::size_t j = 0; j < idx; ++j) eliminate(rows[j], rows[idx], pv);
    pivot_row[pv] = idx;
  }

  sol.assignment.assign(nv, UnitVector::dimensionless(n));
  for (std::size_t v = 0; v < nv; ++v) {
    auto it = pivot_row.find(v);
    if (it == pivot_row.end()) {
      sol.underdetermined.push_back(v);
      continue;
    }
    const Row& r = rows[it->second];
    const mpz_class& a = r.coeffs.at(v);
    for (std::size_t i = 0; i < n; ++i) {
      if (!mpz_divisible_p(r.rhs[i].get_mpz_t(), a.get_mpz_t())) {
        sol = DimSolution{};
        sol.consistent = false;
        sol.failing = r.origin;
        sol.failure = DimFailure::NonIntegral;
        for (auto& [ci, m] : r.combo) sol.witness.emplace_back(ci, to_i64(m));
        sol.residual = to_unit(r.rhs);
        return sol;
      }
      sol.assignment[v].exponents[i] = to_i64(r.rhs[i] / a);
    }
  }
  return sol;
}

DimCheck check_dimensions(const Phg& phg, const SaturationReport* saturation) {
  DimCheck out;
  out.system = collect_constraints(phg);
  out.solution = solve(out.system);
  const auto& bases = out.system.bases;
  if (out.system.constraints.empty()) return out;

  if (!out.solution.consistent) {
    const DimConstraint& c = out.system.constraints[*out.solution.failing];
    std::string msg;
    if (out.solution.failure == DimFailure::NonIntegral) {
      msg = "dimension system has no integral solution; " + c.description + " forces a fractional exponent";
    } else {
      msg = "inconsistent dimensions at constraint " + std::to_string(*out.solution.failing + 1) + ": " +
            c.description + " contradicts earlier constraints (combination leaves 1 = " +
            format_unit(out.solution.residual, bases) + ")";
    }
    out.diagnostics.push_back(Diagnostic{Severity::Error, "dims", msg, c.node, c.edge,
                                         out.solution.failure == DimFailure::NonIntegral ? "dims-nonintegral"
                                                                                         : "dims-inconsistent"});
    return out;
  }

  for (std::size_t v : out.solution.underdetermined) {
    const DimVariable& var = out.system.variables[v];
    bool mentioned = false;
    for (const DimConstraint& c : out.system.constraints) {
      for (auto [tv, k] : c.terms) mentioned |= tv == v;
    }
    if (!mentioned) continue;
    out.diagnostics.push_back(Diagnostic{Severity::Note, "dims",
                                         "dimension of '" + var.name + "' is underdetermined; assumed dimensionless",
                                         var.node, var.scale_of, "dims-underdetermined"});
  }

  for (const Hyperedge& e : phg.edges()) {
    if (e.kind != EdgeKind::GeometricProduct) continue;
    GradeSet g = saturation ? saturation->annotations[e.target.value].grades : phg.node(e.target).declaration();
    if (!g.is_known() || g.size() < 2) continue;
    const UnitVector& a = out.solution.assignment[e.sources[0].value];
    const UnitVector& b = out.solution.assignment[e.sources[1].value];
    if (a == b) continue;
    out.diagnostics.push_back(Diagnostic{
        Severity::Warning, "dims",
        "'" + phg.node(e.target).name + "' mixes grades " + g.to_string() + " from sources of different dimension (" +
            format_unit(a, bases) + " vs " + format_unit(b, bases) + "); its dimension is the sum of both",
        e.target, e.id, "dims-mixed-gp"});
  }
  return out;
}

}  // namespace phg
