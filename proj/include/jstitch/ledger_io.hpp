#pragma once

// Ledger serialization: one action per line as a JSON object, replayable.

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "jstitch/source_model.hpp"

namespace jstitch {

inline nlohmann::json to_json(const FixAction& a) {
  nlohmann::json j;
  j["kind"] = to_string(a.kind);
  if (!a.owner.empty()) j["owner"] = a.owner;
  if (!a.name.empty()) j["name"] = a.name;
  if (!a.param_types.empty()) j["params"] = a.param_types;
  if (a.slot != FixAction::Slot::None)
    j["slot"] = a.slot == FixAction::Slot::FieldType    ? "field_type"
                : a.slot == FixAction::Slot::ReturnType ? "return_type"
                                                        : "param";
  if (a.param_index >= 0) j["param_index"] = a.param_index;
  if (a.make_static) j["static"] = true;
  if (!a.type_text.empty()) j["type"] = a.type_text;
  if (a.original) {
    j["original"] = true;
    j["line"] = a.line;
    j["col"] = a.col;
    j["expected"] = a.expected;
    j["replacement"] = a.replacement;
  }
  if (!a.reason.empty()) j["reason"] = a.reason;
  if (!a.provenance.empty()) j["provenance"] = a.provenance;
  return j;
}

inline FixAction fix_action_from_json(const nlohmann::json& j) {
  FixAction a;
  std::string kind = j.value("kind", "defer");
  static const std::pair<const char*, FixAction::Kind> kinds[] = {
      {"add_class", FixAction::Kind::AddClass},
      {"add_field", FixAction::Kind::AddField},
      {"add_method", FixAction::Kind::AddMethod},
      {"add_constructor", FixAction::Kind::AddConstructor},
      {"set_type", FixAction::Kind::SetType},
      {"add_array_dim", FixAction::Kind::AddArrayDim},
      {"add_static_modifier", FixAction::Kind::AddStaticModifier},
      {"promote_to_exception", FixAction::Kind::PromoteToException},
      {"rename_enclosing", FixAction::Kind::RenameEnclosingToConstructor},
      {"defer", FixAction::Kind::Defer},
  };
  for (const auto& [name, k] : kinds)
    if (kind == name) a.kind = k;
  a.owner = j.value("owner", "");
  a.name = j.value("name", "");
  if (j.contains("params"))
    a.param_types = j["params"].get<std::vector<std::string>>();
  std::string slot = j.value("slot", "");
  if (slot == "field_type") a.slot = FixAction::Slot::FieldType;
  else if (slot == "return_type") a.slot = FixAction::Slot::ReturnType;
  else if (slot == "param") a.slot = FixAction::Slot::Param;
  a.param_index = j.value("param_index", -1);
  a.make_static = j.value("static", false);
  a.type_text = j.value("type", "");
  a.original = j.value("original", false);
  a.line = j.value("line", 0);
  a.col = j.value("col", 0);
  a.expected = j.value("expected", "");
  a.replacement = j.value("replacement", "");
  a.reason = j.value("reason", "");
  a.provenance = j.value("provenance", "");
  return a;
}

inline void write_ledger(std::ostream& out,
                         const std::vector<FixAction>& ledger) {
  for (const FixAction& a : ledger) out << to_json(a).dump() << "\n";
}

inline std::vector<FixAction> read_ledger(std::istream& in) {
  std::vector<FixAction> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(fix_action_from_json(nlohmann::json::parse(line)));
  }
  return out;
}

}  // namespace jstitch
