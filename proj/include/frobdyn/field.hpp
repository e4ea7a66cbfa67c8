#pragma once

// Finite fields F_{p^m} = F_p[a]/(modulus) and their elements.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "frobdyn/error.hpp"

namespace frobdyn {

/// Coefficients of an element in the power basis 1, a, ..., a^{m-1}.
using Digits = boost::container::small_vector<std::uint32_t, 8>;

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// A finite field presented as F_p[a]/(modulus). Immutable; shared by pointer.
///
/// The raw `Digits` interface is the arithmetic kernel used by series and
/// matrices; `FqElem` is the checked value type built on top of it. Fields of
/// order at most 2^16 use log/antilog tables, larger ones polynomial
/// arithmetic with a precomputed Frobenius matrix.
class FieldSpec {
 public:
  std::uint32_t p() const noexcept { return p_; }
  int m() const noexcept { return m_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  /// p^m when it fits in 63 bits.
  std::optional<std::uint64_t> order() const noexcept { return order_; }

  bool same_as(const FieldSpec& other) const noexcept {
    return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
  }

  Digits zero() const { return Digits(m_, 0); }
  Digits one() const;
  Digits generator() const;
  Digits constant(std::int64_t c) const;

  bool is_zero(const Digits& x) const noexcept;
  bool is_one(const Digits& x) const noexcept;

  Digits add(const Digits& x, const Digits& y) const;
  void add_to(Digits& acc, const Digits& x) const;
  Digits sub(const Digits& x, const Digits& y) const;
  Digits neg(const Digits& x) const;
  Digits mul(const Digits& x, const Digits& y) const;
  Digits inv(const Digits& x) const;  // throws DivisionByZero
  Digits pow(const Digits& x, std::uint64_t e) const;
  /// x^{p^e}; negative e applies the inverse automorphism.
  Digits frobenius(const Digits& x, std::int64_t e) const;

  /// Total order: by the base-p integer sum_j d_j p^j (highest power most significant).
  int compare(const Digits& x, const Digits& y) const noexcept;
  /// Index sum_j d_j p^j; only meaningful when order() is set.
  std::uint64_t index_of(const Digits& x) const noexcept;
  Digits from_index(std::uint64_t idx) const;

  std::string format(const Digits& x) const;

 private:
  friend FieldPtr make_field(std::uint32_t p, int m, std::vector<std::uint32_t> modulus);
  FieldSpec(std::uint32_t p, int m, std::vector<std::uint32_t> modulus);
  void build_tables();

  Digits mul_poly(const Digits& x, const Digits& y) const;
  Digits frob_once(const Digits& x) const;

  std::uint32_t p_;
  int m_;
  std::vector<std::uint32_t> modulus_;
  std::optional<std::uint64_t> order_;

  // Table arithmetic (small fields): exp_[i] = g^i, log_[idx] = i, log_[0] unused.
  bool tables_ = false;
  std::vector<std::uint32_t> exp_;
  std::vector<std::uint32_t> log_;
  // Images a^{p j} of the power basis under x -> x^p (large fields).
  std::vector<Digits> frob_basis_;
};

/// Validates and builds F_{p^m}. Errors: NonPrimeP, DegreeMismatch, ReducibleModulus.
FieldPtr make_field(std::uint32_t p, int m, std::vector<std::uint32_t> modulus);

/// F_{p^m} with the smallest irreducible monic modulus (in base-p index order
/// of the lower coefficients). Cached per (p, m).
FieldPtr standard_field(std::uint32_t p, int m);

class FqElem {
 public:
  FqElem(FieldPtr field, Digits digits);

  static FqElem zero(const FieldPtr& f) { return FqElem(f, f->zero()); }
  static FqElem one(const FieldPtr& f) { return FqElem(f, f->one()); }
  static FqElem from_int(const FieldPtr& f, std::int64_t c) { return FqElem(f, f->constant(c)); }
  static FqElem generator(const FieldPtr& f) { return FqElem(f, f->generator()); }

  const FieldPtr& field() const noexcept { return field_; }
  const Digits& digits() const noexcept { return digits_; }
  bool is_zero() const noexcept { return field_->is_zero(digits_); }
  bool is_one() const noexcept { return field_->is_one(digits_); }

  FqElem operator-() const { return FqElem(field_, field_->neg(digits_)); }
  FqElem& operator+=(const FqElem& o);
  FqElem& operator-=(const FqElem& o);
  FqElem& operator*=(const FqElem& o);
  FqElem& operator/=(const FqElem& o);

  friend FqElem operator+(FqElem x, const FqElem& y) { return x += y; }
  friend FqElem operator-(FqElem x, const FqElem& y) { return x -= y; }
  friend FqElem operator*(FqElem x, const FqElem& y) { return x *= y; }
  friend FqElem operator/(FqElem x, const FqElem& y) { return x /= y; }

  FqElem inverse() const { return FqElem(field_, field_->inv(digits_)); }

  friend bool operator==(const FqElem& x, const FqElem& y) {
    return x.field_->same_as(*y.field_) && x.digits_ == y.digits_;
  }
  /// Element order used for deterministic tie-breaking.
  friend std::strong_ordering operator<=>(const FqElem& x, const FqElem& y);

 private:
  void check_same_field(const FqElem& o) const;

  FieldPtr field_;
  Digits digits_;
};

inline bool is_invertible(const FqElem& x) { return !x.is_zero(); }
inline FqElem one_like(const FqElem& x) { return FqElem::one(x.field()); }

enum class ArithOp { Add, Sub, Mul, Div };

FqElem fq_arith(const FqElem& x, const FqElem& y, ArithOp op);
FqElem pow(const FqElem& x, std::uint64_t e);
/// x^{p^e}, e taken mod m; negative e is the inverse Frobenius.
FqElem frobenius_pow(const FqElem& x, std::int64_t e);

std::string to_string(const FqElem& x);
std::ostream& operator<<(std::ostream& os, const FqElem& x);
/// Parses the generator syntax (`a+1`, `2*a^3+1`, `0`).
FqElem parse_element(const FieldPtr& field, std::string_view text);

/// Every element of a field, in index order. Only for small fields.
std::vector<FqElem> all_elements(const FieldPtr& field);

/// A ring embedding F_{p^m} -> F_{p^M}, m | M, determined by the image of the generator.
class FieldEmbedding {
 public:
  FieldEmbedding(FieldPtr from, FieldPtr to, FqElem generator_image);

  const FieldPtr& from() const noexcept { return from_; }
  const FieldPtr& to() const noexcept { return to_; }
  FqElem operator()(const FqElem& x) const;
  Digits map_digits(const Digits& x) const;

 private:
  FieldPtr from_;
  FieldPtr to_;
  std::vector<Digits> powers_;  // images of a^j
};

/// Finds an embedding of `from` into `to` by locating a root of from's modulus.
/// Identity when the fields coincide. Errors: InvalidArgument when m does not divide M.
FieldEmbedding embed_field(const FieldPtr& from, const FieldPtr& to);

}  // namespace frobdyn
