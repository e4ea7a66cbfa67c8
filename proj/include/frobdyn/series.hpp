#pragma once

// Truncated power series k[[t]]/(t^prec) with absolute precision tracking.

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "frobdyn/field.hpp"

namespace frobdyn {

/// Precision at which polynomials in t (map coefficients written without an
/// O(t^n) marker) are stored. Every computation truncates to the smaller
/// point precision, so this only bounds the precision of lifts and orbits.
inline constexpr int kExactPrecision = 1024;

/// sigma = coefficientwise x -> x^{p^e}, fixing t.
struct GaloisAction {
  std::int64_t e = 1;
};
enum class Direction { Forward, Inverse };

/// An element of k[[t]] known modulo t^prec.
///
/// Arithmetic returns the minimum precision of its operands. Stored zero
/// coefficients mean "zero at this precision", not the exact zero series, so
/// comparisons that matter mathematically go through `equal_at_precision`.
/// `operator==` is structural (same precision, same digits).
class TruncSeries {
 public:
  TruncSeries(FieldPtr field, int prec);  // zero at precision prec
  TruncSeries(FieldPtr field, int prec, std::vector<Digits> coeffs);

  static TruncSeries constant(const FqElem& c, int prec);
  static TruncSeries monomial(const FqElem& c, int power, int prec);
  /// t at precision prec.
  static TruncSeries variable(const FieldPtr& field, int prec);

  const FieldPtr& field() const noexcept { return field_; }
  int prec() const noexcept { return prec_; }
  FqElem coeff(int j) const { return FqElem(field_, coeffs_.at(j)); }
  const Digits& raw(int j) const { return coeffs_[j]; }
  const std::vector<Digits>& raw_coeffs() const noexcept { return coeffs_; }
  /// Set by change_precision when zero padding extended the precision.
  bool inexact() const noexcept { return inexact_; }

  /// First nonzero index, or prec() when the series is zero at this precision.
  int valuation() const noexcept;
  bool zero_at_precision() const noexcept { return valuation() == prec_; }
  bool is_unit() const noexcept { return prec_ > 0 && !field_->is_zero(coeffs_[0]); }
  FqElem constant_term() const { return coeff(0); }
  bool is_constant() const noexcept;

  TruncSeries operator-() const;
  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  TruncSeries& operator*=(const TruncSeries& o);
  TruncSeries& operator/=(const TruncSeries& o);  // NonUnitDivisor unless o is a unit

  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator/(TruncSeries a, const TruncSeries& b) { return a /= b; }

  TruncSeries scaled(const FqElem& c) const;
  TruncSeries inverse() const;

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
    return a.prec_ == b.prec_ && a.field_->same_as(*b.field_) && a.coeffs_ == b.coeffs_;
  }

 private:
  friend TruncSeries change_precision(const TruncSeries& s, int new_prec);
  friend TruncSeries galois(const TruncSeries& s, GaloisAction act, Direction dir);
  void check_same_field(const TruncSeries& o) const;

  FieldPtr field_;
  int prec_;
  std::vector<Digits> coeffs_;
  bool inexact_ = false;
};

inline bool is_invertible(const TruncSeries& x) { return x.is_unit(); }
TruncSeries one_like(const TruncSeries& x);

/// Equality modulo t^min(prec).
bool equal_at_precision(const TruncSeries& a, const TruncSeries& b);

enum class SeriesOp { Add, Sub, Mul, Div };
TruncSeries series_arith(const TruncSeries& s, const TruncSeries& u, SeriesOp op);

TruncSeries galois(const TruncSeries& s, GaloisAction act, Direction dir = Direction::Forward);

/// Truncates, or zero-pads and marks the result inexact.
TruncSeries change_precision(const TruncSeries& s, int new_prec);

/// s^{p^k} computed as sum c_j^{p^k} t^{j p^k}. Because s mod t^n determines
/// s^{p^k} mod t^{n p^k}, the result may be requested at any out_prec up to
/// prec * p^k.
TruncSeries frobenius_power(const TruncSeries& s, int k, int out_prec);

/// Multiplies two series keeping only terms below out_prec (<= min precision).
TruncSeries mul_truncated(const TruncSeries& a, const TruncSeries& b, int out_prec);

/// Applies a field embedding coefficientwise.
TruncSeries embed(const FieldEmbedding& emb, const TruncSeries& s);

std::string to_string(const TruncSeries& s);
/// The terms alone, without the O(t^n) marker; "0" when zero at precision.
std::string format_terms(const TruncSeries& s);
std::ostream& operator<<(std::ostream& os, const TruncSeries& s);

/// Parses `1 + (a+1)*t + t^3 + O(t^8)`. Without an O(t^n) marker the default
/// precision is used; without either, ParseError.
TruncSeries parse_series(const FieldPtr& field, std::string_view text,
                         std::optional<int> default_prec = std::nullopt);

}  // namespace frobdyn
