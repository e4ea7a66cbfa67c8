#pragma once

// JSON instance files: a field, a map, named points and varieties, and run
// parameters, all sharing one field.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "frobdyn/dynamics.hpp"
#include "frobdyn/matrix.hpp"

namespace frobdyn {

struct Parameters {
  int prec = 32;
  int horizon = 20;
  std::optional<int> threshold;  // default prec - 4
  int max_period = 12;
  int r_max = 64;

  int effective_threshold() const { return threshold.value_or(std::max(1, prec - 4)); }
  friend bool operator==(const Parameters&, const Parameters&) = default;
};

/// The sigma-fixed lift of a residue point, optionally moved by sigma^k.
struct LiftOf {
  std::vector<FqElem> residue;
  int sigma = 0;
  std::optional<int> prec;  // defaults to the instance precision
};

/// The single point sigma^k(point) as a subvariety.
struct PointLocus {
  std::string point;
  int sigma = 0;
};

using PointEntry = std::variant<ProjPoint, LiftOf>;
using VarietyEntry = std::variant<Subvariety, PointLocus>;
using AnyMap = std::variant<DmlMap, GeneralMap>;

struct Instance {
  std::string label;
  FieldPtr field;
  AnyMap map;
  std::map<std::string, PointEntry> points;
  std::map<std::string, std::vector<FqElem>> residue_points;
  std::map<std::string, VarietyEntry> varieties;
  Parameters params;

  const DmlMap& dml() const;  // InvalidArgument for a general map
  bool is_dml() const { return std::holds_alternative<DmlMap>(map); }
};

struct TwistInstance {
  std::string label;
  std::int64_t q = 0;
  FieldPtr field;
  Matrix<FqElem> A;
  int r_max = 64;
};

/// Parses and, unless `validate` is false, checks the map. Errors: ParseError
/// (with line when the JSON is malformed), ValidationFailure, and field errors.
Instance parse_instance_text(std::string_view text, bool validate = true);
Instance parse_instance(const std::filesystem::path& path, bool validate = true);
TwistInstance parse_twist_text(std::string_view text);
TwistInstance parse_twist(const std::filesystem::path& path);

/// Canonical JSON text; parse_instance_text(print_instance(I)) reproduces I.
std::string print_instance(const Instance& I);
std::string print_twist(const TwistInstance& T);

/// `(1, a)` or `1, a`.
std::vector<FqElem> parse_residue_point(const FieldPtr& field, std::string_view text);

ProjPoint resolve_point(const Instance& I, const std::string& name);
Subvariety resolve_variety(const Instance& I, const std::string& name);

}  // namespace frobdyn
