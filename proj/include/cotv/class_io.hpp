#pragma once

#include "cotv/core.hpp"

#include <json.hpp>

#include <string>

namespace cotv {

using Json = nlohmann::json;

Json class_to_json(const VerifierClass& cls);
ClassPtr class_from_json(const Json& j, ClassCaps caps = {});

// One verifier per line; stable across runs.
std::string dump_class(const VerifierClass& cls);
// ParseError carries line:column; SchemaError names the offending field.
ClassPtr parse_class(const std::string& text, ClassCaps caps = {});

ClassPtr load_class(const std::string& path, ClassCaps caps = {});
void save_class(const VerifierClass& cls, const std::string& path);

// Shared helper for every JSON input: parse with line/column diagnostics.
Json parse_json_text(const std::string& text, const std::string& origin);
Json load_json_file(const std::string& path);

} // namespace cotv
