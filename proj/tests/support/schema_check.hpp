#pragma once

// Validator for the subset of JSON Schema used by schemas/report.schema.json:
// type, enum, required, properties, additionalProperties, items, prefixItems,
// minItems, maxItems, minimum, exclusiveMinimum and local $ref.

#include <string>
#include <vector>

#include "json.hpp"

namespace schema_check {

using nlohmann::json;

class Validator {
 public:
  explicit Validator(json root) : root_(std::move(root)) {}

  /// Empty when `doc` conforms; otherwise one message per violation.
  std::vector<std::string> validate(const json& doc) const {
    std::vector<std::string> errors;
    check(root_, doc, "$", errors);
    return errors;
  }

 private:
  const json& resolve(const std::string& ref) const {
    // only "#/$defs/name" style pointers
    return root_.at(json::json_pointer(ref.substr(1)));
  }

  static bool has_type(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "number") return v.is_number();
    if (t == "integer") {
      if (v.is_number_integer()) return true;
      return v.is_number_float() && v.get<double>() == static_cast<double>(static_cast<long long>(v.get<double>()));
    }
    return false;
  }

  void check(const json& s, const json& v, const std::string& path, std::vector<std::string>& errors) const {
    if (s.is_boolean()) {
      if (!s.get<bool>()) errors.push_back(path + ": not allowed");
      return;
    }
    if (s.contains("$ref")) {
      check(resolve(s["$ref"].get<std::string>()), v, path, errors);
      return;
    }
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok = ok || has_type(v, t.get<std::string>());
      } else {
        ok = has_type(v, s["type"].get<std::string>());
      }
      if (!ok) {
        errors.push_back(path + ": expected type " + s["type"].dump());
        return;
      }
    }
    if (s.contains("enum")) {
      bool ok = false;
      for (const auto& e : s["enum"]) ok = ok || e == v;
      if (!ok) errors.push_back(path + ": value " + v.dump() + " not in " + s["enum"].dump());
    }
    if (v.is_number()) {
      const double x = v.get<double>();
      if (s.contains("minimum") && x < s["minimum"].get<double>()) errors.push_back(path + ": below minimum");
      if (s.contains("exclusiveMinimum") && x <= s["exclusiveMinimum"].get<double>())
        errors.push_back(path + ": not above exclusiveMinimum");
    }
    if (v.is_object()) {
      if (s.contains("required"))
        for (const auto& k : s["required"])
          if (!v.contains(k.get<std::string>())) errors.push_back(path + ": missing " + k.get<std::string>());
      for (const auto& [k, item] : v.items()) {
        if (s.contains("properties") && s["properties"].contains(k)) {
          check(s["properties"][k], item, path + "." + k, errors);
        } else if (s.contains("additionalProperties")) {
          check(s["additionalProperties"], item, path + "." + k, errors);
        }
      }
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) errors.push_back(path + ": too few items");
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) errors.push_back(path + ": too many items");
      std::size_t first = 0;
      if (s.contains("prefixItems")) {
        const auto& p = s["prefixItems"];
        for (; first < p.size() && first < v.size(); ++first)
          check(p[first], v[first], path + "[" + std::to_string(first) + "]", errors);
      }
      if (s.contains("items"))
        for (std::size_t k = first; k < v.size(); ++k) check(s["items"], v[k], path + "[" + std::to_string(k) + "]", errors);
    }
  }

  json root_;
};

}  // namespace schema_check
