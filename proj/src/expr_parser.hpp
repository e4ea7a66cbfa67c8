#pragma once

// Recursive-descent parser for sums of products in the generator `a` and the
// series variable `t`, with an optional `O(t^n)` precision marker.

#include <map>
#include <optional>
#include <string_view>

#include "frobdyn/field.hpp"

namespace frobdyn::detail {

struct ParsedSeries {
  std::map<int, Digits> terms;  // t-power -> nonzero coefficient
  std::optional<int> prec;      // from O(t^n)
};

/// Terms of t-degree >= truncate_at (when positive) are discarded while parsing.
ParsedSeries parse_series_expr(const FieldSpec& field, std::string_view text, int truncate_at);

}  // namespace frobdyn::detail
