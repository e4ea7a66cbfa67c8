#pragma once

// Projective points over truncated series, homogeneous polynomials and
// subvarieties of P^N.

#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "frobdyn/series.hpp"

namespace frobdyn {

/// A point of P^N with coordinates known modulo t^prec.
///
/// Produced by `normalize`, which guarantees the canonical form: some
/// coordinate is a unit and the first unit coordinate is exactly 1.
/// `shift` is the number of absolute digits consumed by dividing out t^v.
struct ProjPoint {
  std::vector<TruncSeries> coords;
  int shift = 0;

  int N() const noexcept { return static_cast<int>(coords.size()) - 1; }
  const FieldPtr& field() const { return coords.front().field(); }
  int prec() const { return coords.front().prec(); }
};

ProjPoint normalize(std::vector<TruncSeries> coords);
/// Constant-coefficient lift of a residue point, normalized.
ProjPoint constant_point(const std::vector<FqElem>& residue, int prec);
bool is_canonical(const ProjPoint& P);

std::vector<FqElem> reduce_point(const ProjPoint& P);

/// Canonical forms agree coordinatewise modulo t^min(prec).
bool proj_eq(const ProjPoint& P, const ProjPoint& Q);

ProjPoint galois(const ProjPoint& P, GaloisAction act, Direction dir = Direction::Forward);
ProjPoint change_precision(const ProjPoint& P, int new_prec);

/// `[1, t + t^2] + O(t^5)`.
std::string to_string(const ProjPoint& P);
std::ostream& operator<<(std::ostream& os, const ProjPoint& P);
std::string to_string(const std::vector<FqElem>& residue);

using Exponents = std::vector<int>;

/// A homogeneous polynomial of fixed degree in N+1 variables with series
/// coefficients. Terms whose coefficient is zero at its precision are dropped.
class HomogPoly {
 public:
  HomogPoly(FieldPtr field, int nvars, int degree);

  /// The variable x_i with coefficient 1 at precision prec.
  static HomogPoly variable(const FieldPtr& field, int nvars, int i, int prec = kExactPrecision);

  const FieldPtr& field() const noexcept { return field_; }
  int nvars() const noexcept { return nvars_; }
  int degree() const noexcept { return degree_; }
  const std::map<Exponents, TruncSeries>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Adds c * x^e to the polynomial. Errors: DimensionMismatch, DegreeMismatch.
  void add_term(const Exponents& e, const TruncSeries& c);

  HomogPoly& operator+=(const HomogPoly& o);
  HomogPoly& operator-=(const HomogPoly& o);
  friend HomogPoly operator+(HomogPoly a, const HomogPoly& b) { return a += b; }
  friend HomogPoly operator-(HomogPoly a, const HomogPoly& b) { return a -= b; }
  HomogPoly scaled(const TruncSeries& c) const;
  HomogPoly galois(GaloisAction act, Direction dir = Direction::Forward) const;

  /// Value at the given coordinates; precision is the minimum of the
  /// coordinate and coefficient precisions.
  TruncSeries evaluate(const std::vector<TruncSeries>& x) const;

  /// Minimum precision over the coefficients (kExactPrecision when zero).
  int coefficient_prec() const;

  friend bool operator==(const HomogPoly& a, const HomogPoly& b) {
    return a.nvars_ == b.nvars_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  FieldPtr field_;
  int nvars_;
  int degree_;
  std::map<Exponents, TruncSeries> terms_;
};

/// Product with a bound on the number of stored terms. Errors: DegreeOverflow.
HomogPoly multiply(const HomogPoly& a, const HomogPoly& b, std::size_t term_bound);

/// Equality of every coefficient modulo t^min(prec).
bool equal_at_precision(const HomogPoly& a, const HomogPoly& b);

/// A coefficient without its O(t^n) marker when it is an exact polynomial in t.
std::string coefficient_string(const TruncSeries& c);

/// `x0^2 + (1 + t)*x0*x1`, using the given variable letter.
std::string to_string(const HomogPoly& h, char var = 'x');

TruncSeries eval_hom(const HomogPoly& h, const ProjPoint& P);

/// Closed subvariety given by generators; no ideal-theoretic processing.
struct Subvariety {
  int N = 0;
  std::vector<HomogPoly> generators;
};

Subvariety make_subvariety(std::vector<HomogPoly> generators);

/// The single point c as the vanishing locus of x_i c_j - x_j c_i.
Subvariety point_variety(const ProjPoint& c);

HomogPoly embed(const FieldEmbedding& emb, const HomogPoly& h);
ProjPoint embed(const FieldEmbedding& emb, const ProjPoint& P);
/// V with its generators pushed into K (V itself when already over K).
Subvariety subvariety_over(const Subvariety& V, const FieldPtr& K);

/// Valuation of each generator at P.
std::vector<int> generator_valuations(const Subvariety& V, const ProjPoint& P);

}  // namespace frobdyn
