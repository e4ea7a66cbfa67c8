#include "frobdyn/series.hpp"

#include <algorithm>
#include <sstream>

#include "expr_parser.hpp"

namespace frobdyn {

TruncSeries::TruncSeries(FieldPtr field, int prec) : field_(std::move(field)), prec_(prec) {
  if (prec_ < 0) throw Error(ErrorKind::InvalidArgument, "negative precision");
  coeffs_.assign(prec_, field_->zero());
}

TruncSeries::TruncSeries(FieldPtr field, int prec, std::vector<Digits> coeffs)
    : field_(std::move(field)), prec_(prec), coeffs_(std::move(coeffs)) {
  if (prec_ < 0) throw Error(ErrorKind::InvalidArgument, "negative precision");
  if (static_cast<int>(coeffs_.size()) > prec_) coeffs_.resize(prec_);
  coeffs_.resize(prec_, field_->zero());
  for (auto& c : coeffs_) {
    if (static_cast<int>(c.size()) != field_->m()) {
      throw Error(ErrorKind::DegreeMismatch, "series coefficient has wrong length");
    }
  }
}

TruncSeries TruncSeries::constant(const FqElem& c, int prec) {
  TruncSeries s(c.field(), prec);
  if (prec > 0) s.coeffs_[0] = c.digits();
  return s;
}

TruncSeries TruncSeries::monomial(const FqElem& c, int power, int prec) {
  TruncSeries s(c.field(), prec);
  if (power >= 0 && power < prec) s.coeffs_[power] = c.digits();
  return s;
}

TruncSeries TruncSeries::variable(const FieldPtr& field, int prec) {
  return monomial(FqElem::one(field), 1, prec);
}

TruncSeries one_like(const TruncSeries& x) { return TruncSeries::constant(FqElem::one(x.field()), x.prec()); }

int TruncSeries::valuation() const noexcept {
  for (int j = 0; j < prec_; ++j)
    if (!field_->is_zero(coeffs_[j])) return j;
  return prec_;
}

bool TruncSeries::is_constant() const noexcept {
  for (int j = 1; j < prec_; ++j)
    if (!field_->is_zero(coeffs_[j])) return false;
  return true;
}

void TruncSeries::check_same_field(const TruncSeries& o) const {
  if (!field_->same_as(*o.field_)) throw Error(ErrorKind::FieldMismatch, "series over different fields");
}

TruncSeries TruncSeries::operator-() const {
  TruncSeries r(field_, prec_);
  for (int j = 0; j < prec_; ++j) r.coeffs_[j] = field_->neg(coeffs_[j]);
  r.inexact_ = inexact_;
  return r;
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  check_same_field(o);
  if (o.prec_ < prec_) {
    coeffs_.resize(o.prec_);
    prec_ = o.prec_;
  }
  for (int j = 0; j < prec_; ++j) field_->add_to(coeffs_[j], o.coeffs_[j]);
  inexact_ = inexact_ || o.inexact_;
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  check_same_field(o);
  if (o.prec_ < prec_) {
    coeffs_.resize(o.prec_);
    prec_ = o.prec_;
  }
  for (int j = 0; j < prec_; ++j) coeffs_[j] = field_->sub(coeffs_[j], o.coeffs_[j]);
  inexact_ = inexact_ || o.inexact_;
  return *this;
}

TruncSeries mul_truncated(const TruncSeries& a, const TruncSeries& b, int out_prec) {
  if (!a.field()->same_as(*b.field())) throw Error(ErrorKind::FieldMismatch, "series over different fields");
  const FieldSpec& f = *a.field();
  out_prec = std::min({out_prec, a.prec(), b.prec()});
  std::vector<Digits> out(out_prec, f.zero());
  const int va = a.valuation();
  const int vb = b.valuation();
  for (int i = va; i < out_prec; ++i) {
    const Digits& ai = a.raw(i);
    if (f.is_zero(ai)) continue;
    for (int j = vb; i + j < out_prec; ++j) {
      const Digits& bj = b.raw(j);
      if (f.is_zero(bj)) continue;
      f.add_to(out[i + j], f.mul(ai, bj));
    }
  }
  return TruncSeries(a.field(), out_prec, std::move(out));
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  TruncSeries r = mul_truncated(a, b, std::min(a.prec(), b.prec()));
  r.inexact_ = a.inexact_ || b.inexact_;
  return r;
}

TruncSeries& TruncSeries::operator*=(const TruncSeries& o) { return *this = *this * o; }

TruncSeries TruncSeries::inverse() const {
  if (!is_unit()) {
    throw Error(ErrorKind::NonUnitDivisor,
                "divisor has valuation " + std::to_string(valuation()) + " at precision " + std::to_string(prec_));
  }
  const FieldSpec& f = *field_;
  std::vector<Digits> inv(prec_, f.zero());
  const Digits u0inv = f.inv(coeffs_[0]);
  inv[0] = u0inv;
  for (int n = 1; n < prec_; ++n) {
    Digits acc = f.zero();
    for (int k = 1; k <= n; ++k) {
      if (f.is_zero(coeffs_[k])) continue;
      f.add_to(acc, f.mul(coeffs_[k], inv[n - k]));
    }
    inv[n] = f.neg(f.mul(u0inv, acc));
  }
  TruncSeries r(field_, prec_, std::move(inv));
  r.inexact_ = inexact_;
  return r;
}

TruncSeries& TruncSeries::operator/=(const TruncSeries& o) {
  check_same_field(o);
  return *this = *this * o.inverse();
}

TruncSeries TruncSeries::scaled(const FqElem& c) const {
  if (!c.field()->same_as(*field_)) throw Error(ErrorKind::FieldMismatch, "scalar from a different field");
  TruncSeries r(field_, prec_);
  for (int j = 0; j < prec_; ++j) r.coeffs_[j] = field_->mul(coeffs_[j], c.digits());
  r.inexact_ = inexact_;
  return r;
}

bool equal_at_precision(const TruncSeries& a, const TruncSeries& b) {
  if (!a.field()->same_as(*b.field())) throw Error(ErrorKind::FieldMismatch, "series over different fields");
  const int n = std::min(a.prec(), b.prec());
  for (int j = 0; j < n; ++j)
    if (a.raw(j) != b.raw(j)) return false;
  return true;
}

TruncSeries series_arith(const TruncSeries& s, const TruncSeries& u, SeriesOp op) {
  switch (op) {
    case SeriesOp::Add: return s + u;
    case SeriesOp::Sub: return s - u;
    case SeriesOp::Mul: return s * u;
    case SeriesOp::Div: return s / u;
  }
  throw Error(ErrorKind::InvalidArgument, "unknown series operation");
}

TruncSeries galois(const TruncSeries& s, GaloisAction act, Direction dir) {
  const std::int64_t e = dir == Direction::Forward ? act.e : -act.e;
  std::vector<Digits> out;
  out.reserve(s.prec());
  for (int j = 0; j < s.prec(); ++j) out.push_back(s.field()->frobenius(s.raw(j), e));
  TruncSeries r(s.field(), s.prec(), std::move(out));
  r.inexact_ = s.inexact_;
  return r;
}

TruncSeries change_precision(const TruncSeries& s, int new_prec) {
  if (new_prec < 0) throw Error(ErrorKind::InvalidArgument, "negative precision");
  std::vector<Digits> c(s.coeffs_.begin(), s.coeffs_.begin() + std::min(new_prec, s.prec_));
  TruncSeries r(s.field_, new_prec, std::move(c));
  r.inexact_ = s.inexact_ || new_prec > s.prec_;
  return r;
}

TruncSeries frobenius_power(const TruncSeries& s, int k, int out_prec) {
  const FieldSpec& f = *s.field();
  std::int64_t step = 1;
  for (int i = 0; i < k; ++i) step *= f.p();
  if (out_prec > s.prec() * step) {
    throw Error(ErrorKind::PrecisionTooLow, "requested precision exceeds what the input determines");
  }
  std::vector<Digits> out(out_prec, f.zero());
  for (int j = 0; j < s.prec() && j * step < out_prec; ++j) {
    if (f.is_zero(s.raw(j))) continue;
    out[j * step] = f.frobenius(s.raw(j), k);
  }
  return TruncSeries(s.field(), out_prec, std::move(out));
}

TruncSeries embed(const FieldEmbedding& emb, const TruncSeries& s) {
  if (!s.field()->same_as(*emb.from())) throw Error(ErrorKind::FieldMismatch, "series is not over the embedded field");
  std::vector<Digits> out;
  out.reserve(s.prec());
  for (const auto& c : s.raw_coeffs()) out.push_back(emb.map_digits(c));
  TruncSeries r(emb.to(), s.prec(), std::move(out));
  return r;
}

std::string format_terms(const TruncSeries& s) {
  const FieldSpec& f = *s.field();
  std::ostringstream os;
  bool first = true;
  for (int j = 0; j < s.prec(); ++j) {
    const Digits& c = s.raw(j);
    if (f.is_zero(c)) continue;
    if (!first) os << " + ";
    first = false;
    if (j == 0) {
      os << f.format(c);
      continue;
    }
    int nonzero = 0;
    for (auto d : c) nonzero += d != 0;
    if (!f.is_one(c)) {
      if (nonzero > 1) {
        os << '(' << f.format(c) << ")*";
      } else {
        os << f.format(c) << '*';
      }
    }
    os << 't';
    if (j > 1) os << '^' << j;
  }
  return first ? std::string("0") : os.str();
}

std::string to_string(const TruncSeries& s) {
  std::string body = format_terms(s);
  std::string tail = "O(t^" + std::to_string(s.prec()) + ")";
  return body == "0" ? tail : body + " + " + tail;
}

std::ostream& operator<<(std::ostream& os, const TruncSeries& s) { return os << to_string(s); }

TruncSeries parse_series(const FieldPtr& field, std::string_view text, std::optional<int> default_prec) {
  auto parsed = detail::parse_series_expr(*field, text, default_prec.value_or(0));
  int prec = 0;
  if (parsed.prec) {
    prec = *parsed.prec;
  } else if (default_prec) {
    prec = *default_prec;
  } else {
    throw Error(ErrorKind::ParseError, "series '" + std::string(text) + "' has no O(t^n) and no default precision");
  }
  if (prec < 1) throw Error(ErrorKind::ParseError, "precision must be at least 1");
  std::vector<Digits> coeffs(prec, field->zero());
  for (auto& [j, c] : parsed.terms) {
    if (j < prec) coeffs[j] = c;
  }
  return TruncSeries(field, prec, std::move(coeffs));
}

}  // namespace frobdyn
