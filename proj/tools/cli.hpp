#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "algebroid/field.hpp"

namespace algebroid::cli {

inline constexpr int kSchemaVersion = 1;

/// One `key = value` or `key: value` item of a request, with the offset of
/// its first character in the request text.
struct Item {
  std::string key;
  std::string value;
  std::size_t offset = 0;
};

struct Request {
  std::string field_spec;
  Field field;
  std::string command;
  std::vector<Item> payload;
  std::map<std::string, Item> options;
  std::string text;
};

/// Command-line flags; each one replaces the request option of the same name.
struct Overrides {
  std::optional<int> precision;
  std::optional<int> kmax;
  std::optional<std::string> jet;
  std::optional<std::string> samples;
  std::optional<std::string> field;
  std::optional<std::uint64_t> seed;
};

/// Grammar: `field: <spec>; <command>; <payload>; [options]`, items separated
/// by ';' or newlines outside brackets. Raises SyntaxError with line and column.
Request parse_request(std::string_view text, const std::optional<std::string>& field_override = std::nullopt);

struct Outcome {
  nlohmann::json doc;
  int exit_code = 0;  // 0 success, 2 undetermined verdict, 1 error
};

Outcome run(const Request& request, const Overrides& overrides = {});
/// parse_request + run, with every library error turned into an error document.
Outcome run_text(std::string_view text, const Overrides& overrides = {});

std::string render(const nlohmann::json& doc, bool pretty);

}  // namespace algebroid::cli
