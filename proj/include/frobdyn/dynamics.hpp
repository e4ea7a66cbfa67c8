#pragma once

// Frobenius-lifting endomorphisms of P^N and general homogeneous self-maps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "frobdyn/geometry.hpp"
#include "frobdyn/matrix.hpp"

namespace frobdyn {

/// f_i(x) = sum_j A_ij x_j^q + G_i(x_0^p, ..., x_N^p) with q = p^e.
///
/// The G_i are homogeneous of degree q/p in auxiliary variables y_0..y_N.
/// A plain aggregate: `validate_map` checks the invariants.
struct DmlMap {
  int N = 0;
  std::uint32_t p = 0;
  int e = 1;
  Matrix<TruncSeries> A;
  std::vector<HomogPoly> G;
  std::string label;

  std::int64_t q() const;
  const FieldPtr& field() const { return A(0, 0).field(); }
};

/// N+1 homogeneous polynomials of one common degree.
struct GeneralMap {
  int N = 0;
  std::vector<HomogPoly> coords;
  std::string label;

  int degree() const { return coords.front().degree(); }
  const FieldPtr& field() const { return coords.front().field(); }
};

enum class DiagnosticKind { NonUnitDeterminant, CoefficientNotInMaximalIdeal, WrongDegree, CoefficientFieldTooLarge };

struct Diagnostic {
  DiagnosticKind kind;
  int row = -1;     // G index, or A row
  int col = -1;     // A column when the diagnostic concerns an entry of A
  Exponents term;   // offending monomial of G_row in the y-variables
  std::string detail;
};

std::string_view to_string(DiagnosticKind k);
std::string to_string(const Diagnostic& d);

struct MapValidation {
  std::optional<DmlMap> map;
  std::vector<Diagnostic> diagnostics;  // A row-major first, then G by index
  bool ok() const noexcept { return map.has_value(); }
};

/// Checks every invariant and collects all violations. Shape errors (wrong
/// matrix size, field mismatch) are thrown instead since nothing else can be
/// checked. Errors: DimensionMismatch, FieldMismatch, InvalidArgument.
MapValidation validate_map(DmlMap raw);

/// validate_map, throwing ValidationFailure with the diagnostics listed.
DmlMap checked_map(DmlMap raw);

/// Coordinates of f as polynomials in x.
GeneralMap to_general(const DmlMap& f);

/// Same map with coefficients pushed through a field embedding.
DmlMap embed(const FieldEmbedding& emb, const DmlMap& f);

/// f(P), normalized. The image is determined modulo t^{p*prec}, so an output
/// precision up to that bound may be requested; the default keeps P's
/// precision. Errors: DimensionMismatch, FieldMismatch, PrecisionTooLow.
ProjPoint apply_map(const DmlMap& f, const ProjPoint& P, std::optional<int> out_prec = std::nullopt);
ProjPoint apply_map(const GeneralMap& f, const ProjPoint& P);

/// [P, f(P), ..., f^H(P)].
std::vector<ProjPoint> orbit(const DmlMap& f, const ProjPoint& P, int H);

struct ConditionReport {
  bool zero_differential = false;
  bool special_fiber_is_frobenius = false;
  std::optional<std::int64_t> frobenius_power;  // q when the special fiber is Frob_q
};

ConditionReport check_conditions(const GeneralMap& f);
ConditionReport check_conditions(const DmlMap& f);

/// Term bound for symbolic work: FROBDYN_TERM_BOUND if set, else 10^6.
std::size_t default_term_bound();

/// F o G by substitution. Errors: DimensionMismatch, FieldMismatch, DegreeOverflow.
GeneralMap compose_maps(const GeneralMap& F, const GeneralMap& G,
                        std::size_t term_bound = default_term_bound());
/// f composed with itself `times` times (times >= 1).
GeneralMap iterate_map(const GeneralMap& f, int times, std::size_t term_bound = default_term_bound());

struct NotInForm {
  int coordinate = -1;
  std::optional<Exponents> term;  // in the x-variables
  std::string reason;
};

/// Splits each coordinate as sum_j A_ij x_j^q + G_i(x^p). A receives the
/// constant terms of the x_j^q coefficients; every t-divisible part goes to G.
std::variant<DmlMap, NotInForm> recognize_dml_form(const GeneralMap& F, std::uint32_t p, int e);

/// For q = p: a point Q with f(Q) = P, known to precision ceil(prec/p).
/// Errors: UnsupportedQ, NotInImage, NotInvertible.
ProjPoint preimage_qp(const DmlMap& f, const ProjPoint& P);

/// The matrix M = A + Gamma with f = M o Phi_p, for q = p.
Matrix<TruncSeries> linear_part_qp(const DmlMap& f);

std::string to_string(const DmlMap& f);
std::string to_string(const GeneralMap& f);

}  // namespace frobdyn
