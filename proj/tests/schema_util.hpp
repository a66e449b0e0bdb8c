#pragma once

#include <json.hpp>
#include <string>

// Structural validator for the subset of JSON Schema the docs/schemas files
// use: type (including union types), required, properties, items, enum and
// additionalProperties as a boolean. Returns an empty string on success and
// the first violation otherwise.
inline std::string schema_violation(const nlohmann::json& value, const nlohmann::json& schema,
                                    const std::string& where = "$") {
    using nlohmann::json;

    auto type_matches = [&](const std::string& t) {
        if (t == "object") return value.is_object();
        if (t == "array") return value.is_array();
        if (t == "string") return value.is_string();
        if (t == "number") return value.is_number();
        if (t == "integer") return value.is_number_integer() || value.is_number_unsigned();
        if (t == "boolean") return value.is_boolean();
        if (t == "null") return value.is_null();
        return false;
    };

    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) ok = type_matches(t.get<std::string>());
        else
            for (const auto& option : t) ok = ok || type_matches(option.get<std::string>());
        if (!ok) return where + ": type mismatch";
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& option : schema["enum"]) ok = ok || option == value;
        if (!ok) return where + ": not in enum";
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    return where + ": missing required key " + key.get<std::string>();
        bool allow_extra = !schema.contains("additionalProperties") ||
                           schema["additionalProperties"].get<bool>();
        if (schema.contains("properties")) {
            for (const auto& [key, sub] : schema["properties"].items()) {
                if (!value.contains(key)) continue;
                auto err = schema_violation(value[key], sub, where + "." + key);
                if (!err.empty()) return err;
            }
            if (!allow_extra)
                for (const auto& [key, sub] : value.items())
                    if (!schema["properties"].contains(key))
                        return where + ": unexpected key " + key;
        }
    }
    if (value.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& element : value) {
            auto err = schema_violation(element, schema["items"], where + "[" + std::to_string(i++) + "]");
            if (!err.empty()) return err;
        }
    }
    return {};
}
