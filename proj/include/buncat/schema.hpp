#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "buncat/error.hpp"
#include "buncat/report.hpp"

namespace buncat {

inline const std::vector<std::string>& schema_kinds() {
  static const std::vector<std::string> kinds = {"category",    "bundle_family", "chain",
                                                 "chain_family", "fibre_chain",   "sequence",
                                                 "ladder",       "jet_task"};
  return kinds;
}

namespace detail {

inline json string_schema() { return {{"type", "string"}}; }

inline json string_array_schema(std::size_t min_items = 0) {
  json s = {{"type", "array"}, {"items", string_schema()}};
  if (min_items > 0) s["minItems"] = min_items;
  return s;
}

inline json string_map_schema() {
  return {{"type", "object"}, {"additionalProperties", string_schema()}};
}

inline json integer_schema() { return {{"type", "integer"}}; }

inline json integer_matrix_schema() {
  return {{"type", "array"},
          {"items", {{"type", "array"}, {"items", integer_schema()}}}};
}

inline json rational_string_schema() { return {{"type", "string"}}; }

inline json bundle_schema() {
  return {{"type", "object"},
          {"properties",
           {{"total", string_array_schema(1)},
            {"base", string_array_schema(1)},
            {"projection", string_map_schema()}}},
          {"required", json::array({"total", "base", "projection"})},
          {"additionalProperties", false}};
}

inline json link_schema() {
  return {{"type", "object"},
          {"properties", {{"total_map", string_map_schema()}, {"base_map", string_map_schema()}}},
          {"required", json::array({"total_map", "base_map"})},
          {"additionalProperties", false}};
}

inline json group_schema() {
  const json explicit_form = {
      {"type", "object"},
      {"properties",
       {{"elements", string_array_schema(1)},
        {"identity", string_schema()},
        {"table", {{"type", "object"}, {"additionalProperties", string_map_schema()}}}}},
      {"required", json::array({"elements", "identity", "table"})},
      {"additionalProperties", false}};
  const json cyclic_form = {{"type", "object"},
                            {"properties", {{"cyclic", integer_schema()}}},
                            {"required", json::array({"cyclic"})},
                            {"additionalProperties", false}};
  const json residue_form = {
      {"type", "object"},
      {"properties",
       {{"residue_subgroup",
         {{"type", "object"},
          {"properties", {{"modulus", integer_schema()}, {"generator", integer_schema()}}},
          {"required", json::array({"modulus", "generator"})},
          {"additionalProperties", false}}}}},
      {"required", json::array({"residue_subgroup"})},
      {"additionalProperties", false}};
  return {{"oneOf", json::array({explicit_form, cyclic_form, residue_form})}};
}

inline json action_schema() {
  const json explicit_form = {
      {"type", "object"},
      {"properties",
       {{"stage", integer_schema()},
        {"group", group_schema()},
        {"table", {{"type", "object"}, {"additionalProperties", string_map_schema()}}}}},
      {"required", json::array({"stage", "group", "table"})},
      {"additionalProperties", false}};
  const json rule_form = {{"type", "object"},
                          {"properties",
                           {{"stage", integer_schema()},
                            {"group", group_schema()},
                            {"rule", {{"enum", json::array({"residue_addition"})}}}}},
                          {"required", json::array({"stage", "group", "rule"})},
                          {"additionalProperties", false}};
  return {{"oneOf", json::array({explicit_form, rule_form})}};
}

inline json chain_body_schema() {
  return {{"type", "object"},
          {"properties",
           {{"bundles", {{"type", "array"}, {"items", bundle_schema()}, {"minItems", 1}}},
            {"links", {{"type", "array"}, {"items", link_schema()}}}}},
          {"required", json::array({"bundles", "links"})},
          {"additionalProperties", false}};
}

inline json sequence_body_schema() {
  return {{"type", "object"},
          {"properties",
           {{"groups",
             {{"type", "array"},
              {"items", {{"type", "array"}, {"items", integer_schema()}, {"minItems", 1}}},
              {"minItems", 1}}},
            {"maps", {{"type", "array"}, {"items", integer_matrix_schema()}}}}},
          {"required", json::array({"groups", "maps"})},
          {"additionalProperties", false}};
}

inline json morphism_spec_schema() {
  return {{"type", "object"},
          {"properties",
           {{"matrix",
             {{"type", "array"},
              {"items", {{"type", "array"}, {"items", rational_string_schema()}}},
              {"minItems", 1}}},
            {"offset", {{"type", "array"}, {"items", rational_string_schema()}, {"minItems", 1}}},
            {"fibre_map", string_schema()}}},
          {"required", json::array({"matrix", "offset", "fibre_map"})},
          {"additionalProperties", false}};
}

}  // namespace detail

/// The machine-readable schema for a task-document kind. The text is stable
/// byte for byte across runs: keys are emitted in sorted order with a fixed
/// indent.
inline json schema_for(const std::string& kind) {
  using namespace detail;
  if (kind == "category")
    return {{"title", "category task document"},
            {"type", "object"},
            {"properties",
             {{"kind", {{"enum", json::array({"category"})}}},
              {"objects", string_array_schema(1)},
              {"morphisms",
               {{"type", "array"},
                {"items",
                 {{"type", "object"},
                  {"properties",
                   {{"name", string_schema()},
                    {"source", string_schema()},
                    {"target", string_schema()}}},
                  {"required", json::array({"name", "source", "target"})},
                  {"additionalProperties", false}}},
                {"minItems", 1}}},
              {"identities", string_map_schema()},
              {"composition",
               {{"type", "array"},
                {"items",
                 {{"type", "object"},
                  {"properties",
                   {{"first", string_schema()},
                    {"then", string_schema()},
                    {"equals", string_schema()}}},
                  {"required", json::array({"first", "then", "equals"})},
                  {"additionalProperties", false}}}}},
              {"subobjects", string_array_schema()},
              {"seed", integer_schema()}}},
            {"required",
             json::array({"kind", "objects", "morphisms", "identities", "composition",
                          "subobjects"})},
            {"additionalProperties", false}};
  if (kind == "bundle_family")
    return {{"title", "bundle family task document"},
            {"type", "object"},
            {"properties",
             {{"kind", {{"enum", json::array({"bundle_family"})}}},
              {"bundles", {{"type", "array"}, {"items", bundle_schema()}, {"minItems", 1}}},
              {"seed", integer_schema()}}},
            {"required", json::array({"kind", "bundles"})},
            {"additionalProperties", false}};
  if (kind == "chain") {
    const json explicit_form = {
        {"type", "object"},
        {"properties",
         {{"kind", {{"enum", json::array({"chain"})}}},
          {"bundles", {{"type", "array"}, {"items", bundle_schema()}, {"minItems", 1}}},
          {"links", {{"type", "array"}, {"items", link_schema()}}},
          {"actions", {{"type", "array"}, {"items", action_schema()}}},
          {"seed", integer_schema()}}},
        {"required", json::array({"kind", "bundles", "links"})},
        {"additionalProperties", false}};
    const json residue_form = {
        {"type", "object"},
        {"properties",
         {{"kind", {{"enum", json::array({"chain"})}}},
          {"residues",
           {{"type", "object"},
            {"properties",
             {{"total_modulus", integer_schema()},
              {"base_moduli", {{"type", "array"}, {"items", integer_schema()}, {"minItems", 1}}},
              {"action_generators", {{"type", "array"}, {"items", integer_schema()}}}}},
            {"required", json::array({"total_modulus", "base_moduli"})},
            {"additionalProperties", false}}},
          {"seed", integer_schema()}}},
        {"required", json::array({"kind", "residues"})},
        {"additionalProperties", false}};
    return {{"title", "bundle chain task document"},
            {"oneOf", json::array({explicit_form, residue_form})}};
  }
  if (kind == "chain_family")
    return {{"title", "chain family task document"},
            {"type", "object"},
            {"properties",
             {{"kind", {{"enum", json::array({"chain_family"})}}},
              {"chains", {{"type", "array"}, {"items", chain_body_schema()}, {"minItems", 1}}},
              {"seed", integer_schema()}}},
            {"required", json::array({"kind", "chains"})},
            {"additionalProperties", false}};
  if (kind == "fibre_chain")
    return {{"title", "fibre chain task document"},
            {"type", "object"},
            {"properties",
             {{"kind", {{"enum", json::array({"fibre_chain"})}}},
              {"bundles", {{"type", "array"}, {"items", bundle_schema()}, {"minItems", 1}}},
              {"base_point", string_schema()},
              {"seed", integer_schema()}}},
            {"required", json::array({"kind", "bundles", "base_point"})},
            {"additionalProperties", false}};
  if (kind == "sequence") {
    json body = sequence_body_schema();
    body["title"] = "graded sequence task document";
    body["properties"]["kind"] = {{"enum", json::array({"sequence"})}};
    body["properties"]["seed"] = integer_schema();
    body["required"] = json::array({"kind", "groups", "maps"});
    return body;
  }
  if (kind == "ladder")
    return {{"title", "sequence ladder task document"},
            {"type", "object"},
            {"properties",
             {{"kind", {{"enum", json::array({"ladder"})}}},
              {"top", sequence_body_schema()},
              {"bottom", sequence_body_schema()},
              {"verticals", {{"type", "array"}, {"items", integer_matrix_schema()}}},
              {"embeddings", {{"type", "array"}, {"items", integer_matrix_schema()}}},
              {"seed", integer_schema()}}},
            {"required", json::array({"kind", "top", "bottom", "verticals"})},
            {"additionalProperties", false}};
  if (kind == "jet_task")
    return {{"title", "jet task document"},
            {"type", "object"},
            {"properties",
             {{"kind", {{"enum", json::array({"jet_task"})}}},
              {"command",
               {{"enum", json::array({"jet_of", "project", "prolong", "curve_probe"})}}},
              {"base_dimension", integer_schema()},
              {"order", integer_schema()},
              {"section", string_schema()},
              {"second_section", string_schema()},
              {"point", {{"type", "array"}, {"items", rational_string_schema()}, {"minItems", 1}}},
              {"target_order", integer_schema()},
              {"morphism", morphism_spec_schema()},
              {"trials", integer_schema()},
              {"seed", integer_schema()}}},
            {"required",
             json::array({"kind", "command", "base_dimension", "order", "section", "point"})},
            {"additionalProperties", false}};
  fail("UnknownKind", "no schema for kind '" + kind + "'");
}

inline std::string emit_schema(const std::string& kind) { return schema_for(kind).dump(2) + "\n"; }

/// Structural validation against the subset of JSON Schema the artifact
/// emits: type, enum, oneOf, properties, required, additionalProperties,
/// items, minItems. On failure, `error` names the offending document path.
inline bool validate_against_schema(const json& doc, const json& schema, const std::string& path,
                                    std::string& error) {
  if (schema.contains("oneOf")) {
    for (const json& option : schema["oneOf"]) {
      std::string ignored;
      if (validate_against_schema(doc, option, path, ignored)) return true;
    }
    error = path + ": matches none of the allowed forms";
    return false;
  }
  if (schema.contains("enum")) {
    for (const json& allowed : schema["enum"])
      if (doc == allowed) return true;
    error = path + ": value " + doc.dump() + " is not one of the allowed values";
    return false;
  }
  if (schema.contains("type")) {
    const std::string type = schema["type"].get<std::string>();
    const bool ok = (type == "object" && doc.is_object()) || (type == "array" && doc.is_array()) ||
                    (type == "string" && doc.is_string()) ||
                    (type == "integer" && doc.is_number_integer()) ||
                    (type == "number" && doc.is_number()) ||
                    (type == "boolean" && doc.is_boolean());
    if (!ok) {
      error = path + ": expected " + type;
      return false;
    }
  }
  if (doc.is_object()) {
    const json properties = schema.value("properties", json::object());
    if (schema.contains("required"))
      for (const json& name : schema["required"])
        if (!doc.contains(name.get<std::string>())) {
          error = path + ": missing required field '" + name.get<std::string>() + "'";
          return false;
        }
    for (const auto& [key, value] : doc.items()) {
      const std::string child = path + "/" + key;
      if (properties.contains(key)) {
        if (!validate_against_schema(value, properties[key], child, error)) return false;
      } else if (schema.contains("additionalProperties")) {
        const json& extra = schema["additionalProperties"];
        if (extra.is_boolean()) {
          if (!extra.get<bool>()) {
            error = child + ": unexpected field";
            return false;
          }
        } else if (!validate_against_schema(value, extra, child, error)) {
          return false;
        }
      }
    }
  }
  if (doc.is_array()) {
    if (schema.contains("minItems") && doc.size() < schema["minItems"].get<std::size_t>()) {
      error = path + ": fewer than " + schema["minItems"].dump() + " items";
      return false;
    }
    if (schema.contains("items"))
      for (std::size_t i = 0; i < doc.size(); ++i)
        if (!validate_against_schema(doc[i], schema["items"], path + "/" + std::to_string(i),
                                     error))
          return false;
  }
  return true;
}

inline void require_valid_document(const json& doc) {
  if (!doc.is_object()) fail("MalformedDocument", "/: expected object");
  if (!doc.contains("kind") || !doc["kind"].is_string())
    fail("MalformedDocument", "/kind: missing or not a string");
  const std::string kind = doc["kind"].get<std::string>();
  const auto& kinds = schema_kinds();
  if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
    fail("UnknownKind", "/kind: unrecognized kind '" + kind + "'");
  std::string error;
  if (!validate_against_schema(doc, schema_for(kind), "", error))
    fail("MalformedDocument", error.empty() ? "/: invalid document" : error);
}

}  // namespace buncat
