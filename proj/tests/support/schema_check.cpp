#include "schema_check.hpp"

#include <cmath>
#include <fstream>

namespace testsupport {

namespace {

using nlohmann::json;

bool matches_type(const json& instance, const std::string& type) {
  if (type == "object") return instance.is_object();
  if (type == "array") return instance.is_array();
  if (type == "string") return instance.is_string();
  if (type == "boolean") return instance.is_boolean();
  if (type == "null") return instance.is_null();
  if (type == "number") return instance.is_number();
  if (type == "integer") {
    if (instance.is_number_integer() || instance.is_number_unsigned())
      return true;
    // Accept 2.0 as an integer, like real validators do.
    if (instance.is_number_float()) {
      const double v = instance.get<double>();
      return std::floor(v) == v;
    }
    return false;
  }
  return false;
}

std::string check(const json& schema, const json& instance,
                  const std::string& where) {
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = matches_type(instance, t.get<std::string>());
    } else {
      for (const json& alt : t) {
        if (matches_type(instance, alt.get<std::string>())) {
          ok = true;
          break;
        }
      }
    }
    if (!ok) return where + ": type mismatch, got " + instance.dump();
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const json& alt : schema["enum"]) {
      if (instance == alt) {
        ok = true;
        break;
      }
    }
    if (!ok) return where + ": value " + instance.dump() + " not in enum";
  }
  if (instance.is_number()) {
    const double v = instance.get<double>();
    if (schema.contains("minimum") && v < schema["minimum"].get<double>())
      return where + ": " + std::to_string(v) + " below minimum";
    if (schema.contains("maximum") && v > schema["maximum"].get<double>())
      return where + ": " + std::to_string(v) + " above maximum";
    if (schema.contains("exclusiveMinimum") &&
        v <= schema["exclusiveMinimum"].get<double>())
      return where + ": " + std::to_string(v) + " not above exclusiveMinimum";
    if (schema.contains("exclusiveMaximum") &&
        v >= schema["exclusiveMaximum"].get<double>())
      return where + ": " + std::to_string(v) + " not below exclusiveMaximum";
  }
  if (instance.is_object()) {
    if (schema.contains("required")) {
      for (const json& key : schema["required"]) {
        if (!instance.contains(key.get<std::string>()))
          return where + ": missing required key " + key.get<std::string>();
      }
    }
    const json props =
        schema.contains("properties") ? schema["properties"] : json::object();
    for (const auto& [key, value] : instance.items()) {
      if (props.contains(key)) {
        const std::string r = check(props[key], value, where + "." + key);
        if (!r.empty()) return r;
      } else if (schema.contains("additionalProperties") &&
                 schema["additionalProperties"].is_boolean() &&
                 !schema["additionalProperties"].get<bool>()) {
        return where + ": unexpected key " + key;
      }
    }
  }
  if (instance.is_array()) {
    if (schema.contains("minItems") &&
        instance.size() < schema["minItems"].get<std::size_t>())
      return where + ": too few items";
    if (schema.contains("maxItems") &&
        instance.size() > schema["maxItems"].get<std::size_t>())
      return where + ": too many items";
    if (schema.contains("items") && schema["items"].is_object()) {
      for (std::size_t i = 0; i < instance.size(); ++i) {
        const std::string r = check(schema["items"], instance[i],
                                    where + "[" + std::to_string(i) + "]");
        if (!r.empty()) return r;
      }
    }
  }
  return "";
}

}  // namespace

std::string schema_violation(const json& schema, const json& instance) {
  return check(schema, instance, "$");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return json::parse(in);
}

}  // namespace testsupport
