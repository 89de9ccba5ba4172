#pragma once

#include <cstdint>
#include <exception>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace adelic {

/// A parsed instance file: one pipeline's worth of declarations. Values are
/// kept as text and interpreted once the field is known.
struct Instance {
  std::string field;
  std::optional<std::string> poly, element, place, cover, target, image, witness;
  std::vector<std::pair<std::string, std::string>> routes;  // place, slot list
  std::vector<std::string> tests, window;
  std::optional<std::int64_t> precision;
  std::optional<int> bound;

  /// Canonical text that parses back to the same instance.
  std::string echo() const;
};

/// Statements are separated by newlines or `;` outside parentheses; `#`
/// starts a comment. Throws ParseError on unknown or repeated keys.
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

struct RunOptions {
  std::optional<std::int64_t> precision;
  std::optional<int> bound;
  std::optional<std::string> field;
  std::optional<std::string> place;
};

struct Report {
  nlohmann::json json;
  std::string text;
  int exit_code = 0;
};

Report run_separable(const Instance& inst, const RunOptions& opt = {});
Report run_decompose(const Instance& inst, const RunOptions& opt = {});
Report run_content(const Instance& inst, const RunOptions& opt = {});
Report run_verify_cover(const Instance& inst, const RunOptions& opt = {});

/// 2 parse, 3 field too small or wild, 4 not a unit, 6 internal
/// inconsistency, 1 anything else.
int exit_code_for(const std::exception& e);
Report error_report(const std::exception& e);

}  // namespace adelic
