#include "phgc/values.hpp"

#include <json.hpp>

namespace phgc {

using nlohmann::json;
using namespace phg;

namespace {

Scalar number(const json& v, NumericMode mode, const std::string& where) {
  if (v.is_string()) return Scalar::parse(v.get<std::string>(), mode);
  if (v.is_number_integer()) return Scalar::parse(std::to_string(v.get<long long>()), mode);
  if (v.is_number()) return Scalar::parse(v.dump(), mode);  // shortest round-trip text, exact in rational mode
  throw Error(ErrorCode::SyntaxError, where + ": expected a number or \"num/den\" string");
}

json parse_json(const std::string& text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, std::string(what) + ": " + e.what());
  }
}

}  // namespace

ValueMap parse_values(const std::string& json_text, const Program& program, NumericMode mode) {
  const json doc = parse_json(json_text, "value file");
  if (!doc.is_object()) throw Error(ErrorCode::SyntaxError, "value file must be a JSON object");
  const Phg& phg = program.phg;
  if (!phg.algebra()) throw Error(ErrorCode::InvalidArgument, "program declares no algebra");
  const auto alg = phg.algebra();
  ValueMap out;
  for (auto& [name, v] : doc.items()) {
    auto id = phg.find_node(name);
    if (!id) throw Error(ErrorCode::UnresolvedReference, "value file names unknown node '" + name + "'");
    Multivector x = Multivector::zero(alg, mode);
    if (v.is_object()) {
      for (auto& [blade, c] : v.items()) x.set(alg->parse_blade(blade), number(c, mode, name + "." + blade));
    } else if (v.is_array()) {
      std::vector<Blade> blades = alg->blades();
      const GradeSet declared = phg.node(*id).declaration();
      if (v.size() != blades.size() && declared.is_known()) {
        std::erase_if(blades, [&](Blade b) { return !declared.contains(b.grade()); });
      }
      if (v.size() != blades.size()) {
        throw Error(ErrorCode::SyntaxError, "'" + name + "' lists " + std::to_string(v.size()) + " coefficients; expected " +
                                                std::to_string(alg->size()) +
                                                (declared.is_known() ? " or " + std::to_string(blades.size()) : std::string()));
      }
      for (std::size_t i = 0; i < blades.size(); ++i) x.set(blades[i], number(v[i], mode, name));
    } else {
      x.set(Blade{0}, number(v, mode, name));
    }
    out.emplace(*id, std::move(x));
  }
  return out;
}

TargetModel parse_target(const std::string& json_text) {
  const json doc = parse_json(json_text, "target file");
  if (!doc.is_object()) throw Error(ErrorCode::SyntaxError, "target file must be a JSON object");
  TargetModel t;
  t.name = doc.value("name", std::string("target"));
  try {
    t.rows = doc.at("rows").get<int>();
    t.cols = doc.at("cols").get<int>();
    t.tile_kb = doc.value("tile_kb", 32);
    t.dma_channels = doc.contains("dma_channels") ? doc.at("dma_channels").get<int>() : doc.value("dma", 2);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::SyntaxError, std::string("target file: ") + e.what());
  }
  validate(t);
  return t;
}

}  // namespace phgc
