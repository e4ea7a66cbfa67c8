#include "frobdyn/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "expr_parser.hpp"
#include "fp_poly.hpp"

namespace frobdyn {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPrimeP: return "NonPrimeP";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NonUnitDivisor: return "NonUnitDivisor";
    case ErrorKind::IndistinguishableFromZero: return "IndistinguishableFromZero";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotInImage: return "NotInImage";
    case ErrorKind::UnsupportedQ: return "UnsupportedQ";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::NonConstantMatrix: return "NonConstantMatrix";
    case ErrorKind::PreconditionMatrixNotIdentityModT: return "PreconditionMatrixNotIdentityModT";
    case ErrorKind::NonCanonicalBasePoint: return "NonCanonicalBasePoint";
    case ErrorKind::PrecisionTooLow: return "PrecisionTooLow";
    case ErrorKind::ResidueDegreeUnknown: return "ResidueDegreeUnknown";
    case ErrorKind::PrecisionBelowThreshold: return "PrecisionBelowThreshold";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationFailure: return "ValidationFailure";
  }
  return "Unknown";
}

namespace {

constexpr std::uint64_t kTableLimit = 1u << 16;

fp::Poly to_poly(const Digits& d) {
  fp::Poly r(d.begin(), d.end());
  fp::trim(r);
  return r;
}

std::string poly_string(const fp::Poly& f, char var) {
  std::ostringstream os;
  bool first = true;
  for (int j = fp::degree(f); j >= 0; --j) {
    if (f[j] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (j == 0) {
      os << f[j];
    } else {
      if (f[j] != 1) os << f[j] << '*';
      os << var;
      if (j > 1) os << '^' << j;
    }
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace

FieldSpec::FieldSpec(std::uint32_t p, int m, std::vector<std::uint32_t> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
  std::uint64_t ord = 1;
  bool fits = true;
  for (int i = 0; i < m_; ++i) {
    if (ord > (std::uint64_t{1} << 62) / p_) {
      fits = false;
      break;
    }
    ord *= p_;
  }
  if (fits) order_ = ord;
  if (order_ && *order_ <= kTableLimit) {
    build_tables();
  } else {
    // x -> x^p is F_p-linear; store the images of the power basis.
    frob_basis_.reserve(m_);
    for (int j = 0; j < m_; ++j) {
      Digits basis = zero();
      basis[j] = 1;
      frob_basis_.push_back(pow(basis, p_));
    }
  }
}

void FieldSpec::build_tables() {
  const std::uint64_t q = *order_;
  log_.assign(q, 0);
  exp_.assign(q - 1, 0);
  if (q == 2) {
    exp_[0] = 1;
    tables_ = true;
    return;
  }
  const auto factors = fp::prime_factors(q - 1);
  for (std::uint64_t g = 2; g < q; ++g) {
    const Digits cand = from_index(g);
    bool primitive = true;
    for (auto r : factors) {
      if (is_one(pow(cand, (q - 1) / r))) {
        primitive = false;
        break;
      }
    }
    if (!primitive) continue;
    Digits cur = one();
    for (std::uint64_t i = 0; i < q - 1; ++i) {
      const auto idx = static_cast<std::uint32_t>(index_of(cur));
      exp_[i] = idx;
      log_[idx] = static_cast<std::uint32_t>(i);
      cur = mul_poly(cur, cand);
    }
    tables_ = true;
    return;
  }
  // m = 1, p = 2 handled above; q = 3 has primitive root 2 so this is unreachable.
}

Digits FieldSpec::one() const {
  Digits d = zero();
  d[0] = 1 % p_;
  return d;
}

Digits FieldSpec::generator() const {
  Digits d = zero();
  if (m_ == 1) {
    // a is the root of x - c, i.e. the constant -modulus[0].
    d[0] = (p_ - modulus_[0] % p_) % p_;
  } else {
    d[1] = 1;
  }
  return d;
}

Digits FieldSpec::constant(std::int64_t c) const {
  Digits d = zero();
  std::int64_t r = c % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  d[0] = static_cast<std::uint32_t>(r);
  return d;
}

bool FieldSpec::is_zero(const Digits& x) const noexcept {
  return std::all_of(x.begin(), x.end(), [](std::uint32_t c) { return c == 0; });
}

bool FieldSpec::is_one(const Digits& x) const noexcept {
  if (x.empty() || x[0] != 1) return false;
  return std::all_of(x.begin() + 1, x.end(), [](std::uint32_t c) { return c == 0; });
}

Digits FieldSpec::add(const Digits& x, const Digits& y) const {
  Digits r(m_);
  for (int i = 0; i < m_; ++i) {
    std::uint32_t s = x[i] + y[i];
    r[i] = s >= p_ ? s - p_ : s;
  }
  return r;
}

void FieldSpec::add_to(Digits& acc, const Digits& x) const {
  for (int i = 0; i < m_; ++i) {
    std::uint32_t s = acc[i] + x[i];
    acc[i] = s >= p_ ? s - p_ : s;
  }
}

Digits FieldSpec::sub(const Digits& x, const Digits& y) const {
  Digits r(m_);
  for (int i = 0; i < m_; ++i) r[i] = x[i] >= y[i] ? x[i] - y[i] : x[i] + p_ - y[i];
  return r;
}

Digits FieldSpec::neg(const Digits& x) const {
  Digits r(m_);
  for (int i = 0; i < m_; ++i) r[i] = x[i] == 0 ? 0 : p_ - x[i];
  return r;
}

Digits FieldSpec::mul_poly(const Digits& x, const Digits& y) const {
  fp::Poly prod = fp::rem(fp::mul(to_poly(x), to_poly(y), p_), modulus_, p_);
  Digits r = zero();
  for (std::size_t i = 0; i < prod.size(); ++i) r[i] = prod[i];
  return r;
}

Digits FieldSpec::mul(const Digits& x, const Digits& y) const {
  if (tables_) {
    const auto ix = index_of(x);
    const auto iy = index_of(y);
    if (ix == 0 || iy == 0) return zero();
    const std::uint64_t n = exp_.size();
    const std::uint64_t l = (static_cast<std::uint64_t>(log_[ix]) + log_[iy]) % n;
    return from_index(exp_[l]);
  }
  if (m_ == 1) {
    Digits r(1);
    r[0] = fp::mul_mod(x[0], y[0], p_);
    return r;
  }
  return mul_poly(x, y);
}

Digits FieldSpec::inv(const Digits& x) const {
  if (is_zero(x)) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  if (tables_) {
    const std::uint64_t n = exp_.size();
    return from_index(exp_[(n - log_[index_of(x)]) % n]);
  }
  if (m_ == 1) {
    Digits r(1);
    r[0] = fp::inv_mod(x[0], p_);
    return r;
  }
  // Extended Euclid in F_p[x]: find s with s*x = 1 mod modulus.
  fp::Poly r0 = modulus_, r1 = to_poly(x);
  fp::Poly s0{}, s1{1};
  while (fp::degree(r1) > 0) {
    fp::Poly q = fp::divide(r0, r1, p_);
    fp::Poly r2 = fp::sub(r0, fp::mul(q, r1, p_), p_);
    fp::Poly s2 = fp::sub(s0, fp::mul(q, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  const std::uint32_t c = fp::inv_mod(r1[0], p_);
  fp::Poly s = fp::rem(s1, modulus_, p_);
  Digits out = zero();
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = fp::mul_mod(s[i], c, p_);
  return out;
}

Digits FieldSpec::pow(const Digits& x, std::uint64_t e) const {
  if (tables_) {
    const auto ix = index_of(x);
    if (ix == 0) return e == 0 ? one() : zero();
    const std::uint64_t n = exp_.size();
    const unsigned __int128 l = static_cast<unsigned __int128>(log_[ix]) * (e % n);
    return from_index(exp_[static_cast<std::uint64_t>(l % n)]);
  }
  Digits result = one();
  Digits base = x;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Digits FieldSpec::frob_once(const Digits& x) const {
  Digits r = zero();
  for (int j = 0; j < m_; ++j) {
    if (x[j] == 0) continue;
    const Digits& img = frob_basis_[j];
    for (int i = 0; i < m_; ++i) {
      r[i] = static_cast<std::uint32_t>((r[i] + static_cast<std::uint64_t>(x[j]) * img[i]) % p_);
    }
  }
  return r;
}

Digits FieldSpec::frobenius(const Digits& x, std::int64_t e) const {
  const std::int64_t k = ((e % m_) + m_) % m_;
  if (k == 0 || m_ == 1) return x;
  if (tables_) {
    const auto ix = index_of(x);
    if (ix == 0) return x;
    const std::uint64_t n = exp_.size();
    std::uint64_t pe = 1;
    for (std::int64_t i = 0; i < k; ++i) pe = pe * p_ % n;
    return from_index(exp_[static_cast<std::uint64_t>(log_[ix]) * pe % n]);
  }
  Digits r = x;
  for (std::int64_t i = 0; i < k; ++i) r = frob_once(r);
  return r;
}

int FieldSpec::compare(const Digits& x, const Digits& y) const noexcept {
  for (int j = m_ - 1; j >= 0; --j) {
    if (x[j] != y[j]) return x[j] < y[j] ? -1 : 1;
  }
  return 0;
}

std::uint64_t FieldSpec::index_of(const Digits& x) const noexcept {
  std::uint64_t idx = 0;
  for (int j = m_ - 1; j >= 0; --j) idx = idx * p_ + x[j];
  return idx;
}

Digits FieldSpec::from_index(std::uint64_t idx) const {
  Digits d(m_);
  for (int j = 0; j < m_; ++j) {
    d[j] = static_cast<std::uint32_t>(idx % p_);
    idx /= p_;
  }
  return d;
}

std::string FieldSpec::format(const Digits& x) const {
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < m_; ++j) {
    if (x[j] == 0) continue;
    if (!first) os << '+';
    first = false;
    if (j == 0) {
      os << x[j];
    } else {
      if (x[j] != 1) os << x[j] << '*';
      os << 'a';
      if (j > 1) os << '^' << j;
    }
  }
  if (first) os << '0';
  return os.str();
}

FieldPtr make_field(std::uint32_t p, int m, std::vector<std::uint32_t> modulus) {
  if (!fp::is_prime(p)) throw Error(ErrorKind::NonPrimeP, std::to_string(p) + " is not prime");
  if (m < 1) throw Error(ErrorKind::DegreeMismatch, "extension degree must be at least 1");
  if (static_cast<int>(modulus.size()) != m + 1) {
    throw Error(ErrorKind::DegreeMismatch, "modulus has " + std::to_string(modulus.size()) +
                                               " coefficients, expected " + std::to_string(m + 1));
  }
  for (auto c : modulus) {
    if (c >= p) throw Error(ErrorKind::DegreeMismatch, "modulus coefficient out of range [0, p)");
  }
  if (modulus.back() != 1) throw Error(ErrorKind::DegreeMismatch, "modulus must be monic");
  if (m > 1) {
    fp::Poly factor = fp::find_factor(modulus, p);
    if (!factor.empty()) {
      std::string what = poly_string(modulus, 'x') + " is reducible over F_" + std::to_string(p);
      if (fp::degree(factor) < m) {
        fp::Poly cofactor = fp::divide(modulus, factor, p);
        what += ": (" + poly_string(factor, 'x') + ")*(" + poly_string(cofactor, 'x') + ")";
      }
      throw Error(ErrorKind::ReducibleModulus, what);
    }
  }
  return FieldPtr(new FieldSpec(p, m, std::move(modulus)));
}

FieldPtr standard_field(std::uint32_t p, int m) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, int>, FieldPtr> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find({p, m});
    if (it != cache.end()) return it->second;
  }
  if (!fp::is_prime(p)) throw Error(ErrorKind::NonPrimeP, std::to_string(p) + " is not prime");
  if (m < 1) throw Error(ErrorKind::DegreeMismatch, "extension degree must be at least 1");
  std::vector<std::uint32_t> mod(m + 1, 0);
  mod[m] = 1;
  FieldPtr field;
  if (m == 1) {
    field = make_field(p, 1, {0, 1});
  } else {
    // Lower coefficients as a base-p counter; a zero constant term is always reducible.
    while (true) {
      int k = 0;
      while (k < m) {
        if (++mod[k] < p) break;
        mod[k] = 0;
        ++k;
      }
      if (k == m) throw Error(ErrorKind::InvalidArgument, "no irreducible polynomial found");
      if (mod[0] == 0) continue;
      if (fp::find_factor(mod, p).empty()) break;
    }
    field = make_field(p, m, mod);
  }
  std::lock_guard lock(mu);
  return cache.emplace(std::pair{p, m}, field).first->second;
}

// ---------------------------------------------------------------------------

FqElem::FqElem(FieldPtr field, Digits digits) : field_(std::move(field)), digits_(std::move(digits)) {
  const int m = field_->m();
  if (static_cast<int>(digits_.size()) != m) {
    throw Error(ErrorKind::DegreeMismatch, "element has " + std::to_string(digits_.size()) +
                                               " coefficients, field degree is " + std::to_string(m));
  }
  for (auto& c : digits_) c %= field_->p();
}

void FqElem::check_same_field(const FqElem& o) const {
  if (!field_->same_as(*o.field_)) {
    throw Error(ErrorKind::FieldMismatch, "operands belong to different fields");
  }
}

FqElem& FqElem::operator+=(const FqElem& o) {
  check_same_field(o);
  field_->add_to(digits_, o.digits_);
  return *this;
}

FqElem& FqElem::operator-=(const FqElem& o) {
  check_same_field(o);
  digits_ = field_->sub(digits_, o.digits_);
  return *this;
}

FqElem& FqElem::operator*=(const FqElem& o) {
  check_same_field(o);
  digits_ = field_->mul(digits_, o.digits_);
  return *this;
}

FqElem& FqElem::operator/=(const FqElem& o) {
  check_same_field(o);
  digits_ = field_->mul(digits_, field_->inv(o.digits_));
  return *this;
}

std::strong_ordering operator<=>(const FqElem& x, const FqElem& y) {
  x.check_same_field(y);
  const int c = x.field_->compare(x.digits_, y.digits_);
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

FqElem fq_arith(const FqElem& x, const FqElem& y, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Div: return x / y;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown arithmetic operation");
}

FqElem pow(const FqElem& x, std::uint64_t e) { return FqElem(x.field(), x.field()->pow(x.digits(), e)); }

FqElem frobenius_pow(const FqElem& x, std::int64_t e) {
  return FqElem(x.field(), x.field()->frobenius(x.digits(), e));
}

std::string to_string(const FqElem& x) { return x.field()->format(x.digits()); }

std::ostream& operator<<(std::ostream& os, const FqElem& x) { return os << to_string(x); }

FqElem parse_element(const FieldPtr& field, std::string_view text) {
  auto parsed = detail::parse_series_expr(*field, text, 0);
  if (parsed.prec) throw Error(ErrorKind::ParseError, "field element cannot carry O(t^n)");
  if (parsed.terms.empty()) return FqElem::zero(field);
  if (parsed.terms.size() != 1 || parsed.terms.begin()->first != 0) {
    throw Error(ErrorKind::ParseError, "field element '" + std::string(text) + "' involves t");
  }
  return FqElem(field, parsed.terms.begin()->second);
}

std::vector<FqElem> all_elements(const FieldPtr& field) {
  if (!field->order() || *field->order() > (1u << 24)) {
    throw Error(ErrorKind::InvalidArgument, "field too large to enumerate");
  }
  std::vector<FqElem> out;
  out.reserve(*field->order());
  for (std::uint64_t i = 0; i < *field->order(); ++i) out.emplace_back(field, field->from_index(i));
  return out;
}

// ---------------------------------------------------------------------------

FieldEmbedding::FieldEmbedding(FieldPtr from, FieldPtr to, FqElem generator_image)
    : from_(std::move(from)), to_(std::move(to)) {
  if (!generator_image.field()->same_as(*to_)) {
    throw Error(ErrorKind::FieldMismatch, "generator image must lie in the target field");
  }
  // Power basis images: a^j -> g^j, where a is the residue class of x.
  Digits img = generator_image.digits();
  Digits cur = to_->one();
  for (int j = 0; j < from_->m(); ++j) {
    powers_.push_back(cur);
    cur = to_->mul(cur, img);
  }
}

Digits FieldEmbedding::map_digits(const Digits& x) const {
  Digits r = to_->zero();
  for (int j = 0; j < from_->m(); ++j) {
    if (x[j] == 0) continue;
    to_->add_to(r, to_->mul(to_->constant(x[j]), powers_[j]));
  }
  return r;
}

FqElem FieldEmbedding::operator()(const FqElem& x) const {
  if (!x.field()->same_as(*from_)) throw Error(ErrorKind::FieldMismatch, "element not in source field");
  return FqElem(to_, map_digits(x.digits()));
}

namespace {

// Evaluates the monic modulus of `from` at an element of `to`.
Digits eval_modulus(const FieldSpec& from, const FieldSpec& to, const Digits& z) {
  Digits acc = to.zero();
  const auto& mod = from.modulus();
  for (int j = static_cast<int>(mod.size()) - 1; j >= 0; --j) {
    acc = to.add(to.mul(acc, z), to.constant(mod[j]));
  }
  return acc;
}

}  // namespace

FieldEmbedding embed_field(const FieldPtr& from, const FieldPtr& to) {
  if (from->p() != to->p() || to->m() % from->m() != 0) {
    throw Error(ErrorKind::InvalidArgument, "F_" + std::to_string(from->p()) + "^" +
                                                std::to_string(from->m()) + " does not embed into F_" +
                                                std::to_string(to->p()) + "^" + std::to_string(to->m()));
  }
  if (from->same_as(*to)) return FieldEmbedding(from, to, FqElem(to, to->generator()));
  if (from->m() == 1) {
    // Prime field: the generator is the constant root of x - c.
    return FieldEmbedding(from, to, FqElem(to, to->constant(from->generator()[0])));
  }
  const int small = from->m();
  const int ratio = to->m() / small;
  const std::uint64_t sub_order = *from->order();  // p^small, small <= 62 bits
  const auto factors = fp::prime_factors(sub_order - 1);
  // Norms N(z) = prod_j z^{p^{small j}} land in the subfield of order p^small.
  for (std::uint64_t seed = 2;; ++seed) {
    Digits z = to->zero();
    std::uint64_t v = seed;
    for (int j = 0; j < to->m() && v > 0; ++j) {
      z[j] = static_cast<std::uint32_t>(v % to->p());
      v /= to->p();
    }
    if (to->is_zero(z)) continue;
    Digits w = to->one();
    for (int j = 0; j < ratio; ++j) w = to->mul(w, to->frobenius(z, static_cast<std::int64_t>(j) * small));
    bool generates = true;
    for (auto r : factors) {
      if (to->is_one(to->pow(w, (sub_order - 1) / r))) {
        generates = false;
        break;
      }
    }
    if (!generates) continue;
    Digits cur = w;
    for (std::uint64_t k = 1; k < sub_order; ++k) {
      if (to->is_zero(eval_modulus(*from, *to, cur))) return FieldEmbedding(from, to, FqElem(to, cur));
      cur = to->mul(cur, w);
    }
    throw Error(ErrorKind::InvalidArgument, "modulus has no root in target field");
  }
}

}  // namespace frobdyn
