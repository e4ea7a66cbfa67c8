#include "frobdyn/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace frobdyn {

namespace {

void check_coords(const std::vector<TruncSeries>& coords) {
  if (coords.empty()) throw Error(ErrorKind::DimensionMismatch, "a projective point needs at least one coordinate");
  for (const auto& c : coords) {
    if (!c.field()->same_as(*coords.front().field())) {
      throw Error(ErrorKind::FieldMismatch, "point coordinates over different fields");
    }
  }
}

bool is_exact_one(const TruncSeries& s) {
  const FieldSpec& f = *s.field();
  return s.prec() > 0 && f.is_one(s.raw(0)) && s.is_constant();
}

}  // namespace

ProjPoint normalize(std::vector<TruncSeries> coords) {
  check_coords(coords);
  int n = coords.front().prec();
  int v = coords.front().prec();
  bool all_zero = true;
  for (const auto& c : coords) {
    n = std::min(n, c.prec());
    const int vc = c.valuation();
    if (vc < c.prec()) all_zero = false;
    v = std::min(v, vc);
  }
  if (all_zero) throw Error(ErrorKind::IndistinguishableFromZero, "all coordinates are zero at their precision");
  if (v >= n) {
    throw Error(ErrorKind::PrecisionExhausted,
                "minimum valuation " + std::to_string(v) + " leaves no digits at precision " + std::to_string(n));
  }
  const FieldPtr field = coords.front().field();
  const int out_prec = n - v;
  std::vector<TruncSeries> shifted;
  shifted.reserve(coords.size());
  for (const auto& c : coords) {
    std::vector<Digits> d(c.raw_coeffs().begin() + v, c.raw_coeffs().begin() + n);
    shifted.emplace_back(field, out_prec, std::move(d));
  }
  std::size_t pivot = 0;
  while (!shifted[pivot].is_unit()) ++pivot;
  const TruncSeries inv = shifted[pivot].inverse();
  ProjPoint P;
  P.shift = v;
  for (std::size_t i = 0; i < shifted.size(); ++i) {
    P.coords.push_back(i == pivot ? one_like(shifted[i]) : shifted[i] * inv);
  }
  return P;
}

ProjPoint constant_point(const std::vector<FqElem>& residue, int prec) {
  if (residue.empty()) throw Error(ErrorKind::DimensionMismatch, "empty residue point");
  std::vector<TruncSeries> coords;
  for (const auto& c : residue) {
    if (!c.field()->same_as(*residue.front().field())) {
      throw Error(ErrorKind::FieldMismatch, "residue coordinates over different fields");
    }
    coords.push_back(TruncSeries::constant(c, prec));
  }
  return normalize(std::move(coords));
}

bool is_canonical(const ProjPoint& P) {
  if (P.coords.empty()) return false;
  for (const auto& c : P.coords) {
    if (c.prec() != P.prec()) return false;
    if (c.is_unit()) return is_exact_one(c);
  }
  return false;
}

std::vector<FqElem> reduce_point(const ProjPoint& P) {
  std::vector<FqElem> out;
  out.reserve(P.coords.size());
  for (const auto& c : P.coords) out.push_back(c.constant_term());
  return out;
}

bool proj_eq(const ProjPoint& P, const ProjPoint& Q) {
  if (P.N() != Q.N()) throw Error(ErrorKind::DimensionMismatch, "points in different ambient spaces");
  if (!P.field()->same_as(*Q.field())) throw Error(ErrorKind::FieldMismatch, "points over different fields");
  const ProjPoint a = is_canonical(P) ? P : normalize(P.coords);
  const ProjPoint b = is_canonical(Q) ? Q : normalize(Q.coords);
  const int n = std::min(a.prec(), b.prec());
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    for (int j = 0; j < n; ++j) {
      if (a.coords[i].raw(j) != b.coords[i].raw(j)) return false;
    }
  }
  return true;
}

ProjPoint galois(const ProjPoint& P, GaloisAction act, Direction dir) {
  ProjPoint out;
  out.shift = P.shift;
  for (const auto& c : P.coords) out.coords.push_back(galois(c, act, dir));
  return out;
}

ProjPoint change_precision(const ProjPoint& P, int new_prec) {
  ProjPoint out;
  out.shift = P.shift;
  for (const auto& c : P.coords) out.coords.push_back(change_precision(c, new_prec));
  return out;
}

std::string to_string(const ProjPoint& P) {
  std::string s = "[";
  for (std::size_t i = 0; i < P.coords.size(); ++i) {
    if (i) s += ", ";
    s += format_terms(P.coords[i]);
  }
  return s + "] + O(t^" + std::to_string(P.prec()) + ")";
}

std::ostream& operator<<(std::ostream& os, const ProjPoint& P) { return os << to_string(P); }

std::string to_string(const std::vector<FqElem>& residue) {
  std::string s = "(";
  for (std::size_t i = 0; i < residue.size(); ++i) {
    if (i) s += ", ";
    s += to_string(residue[i]);
  }
  return s + ")";
}

HomogPoly::HomogPoly(FieldPtr field, int nvars, int degree)
    : field_(std::move(field)), nvars_(nvars), degree_(degree) {
  if (nvars_ < 1) throw Error(ErrorKind::DimensionMismatch, "polynomial needs at least one variable");
  if (degree_ < 0) throw Error(ErrorKind::DegreeMismatch, "negative degree");
}

HomogPoly HomogPoly::variable(const FieldPtr& field, int nvars, int i, int prec) {
  HomogPoly h(field, nvars, 1);
  Exponents e(nvars, 0);
  e.at(i) = 1;
  h.add_term(e, TruncSeries::constant(FqElem::one(field), prec));
  return h;
}

void HomogPoly::add_term(const Exponents& e, const TruncSeries& c) {
  if (static_cast<int>(e.size()) != nvars_) {
    throw Error(ErrorKind::DimensionMismatch, "exponent vector of length " + std::to_string(e.size()) +
                                                  " for " + std::to_string(nvars_) + " variables");
  }
  if (std::any_of(e.begin(), e.end(), [](int x) { return x < 0; })) {
    throw Error(ErrorKind::DegreeMismatch, "negative exponent");
  }
  if (std::accumulate(e.begin(), e.end(), 0) != degree_) {
    throw Error(ErrorKind::DegreeMismatch, "monomial degree differs from " + std::to_string(degree_));
  }
  if (!c.field()->same_as(*field_)) throw Error(ErrorKind::FieldMismatch, "coefficient over a different field");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    if (!c.zero_at_precision()) terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second.zero_at_precision()) terms_.erase(it);
}

HomogPoly& HomogPoly::operator+=(const HomogPoly& o) {
  if (o.nvars_ != nvars_) throw Error(ErrorKind::DimensionMismatch, "polynomials in different variables");
  if (o.degree_ != degree_ && !o.is_zero()) {
    if (!is_zero()) throw Error(ErrorKind::DegreeMismatch, "sum of polynomials of different degrees");
    degree_ = o.degree_;
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

HomogPoly& HomogPoly::operator-=(const HomogPoly& o) { return *this += o.scaled(-TruncSeries::constant(FqElem::one(field_), kExactPrecision)); }

HomogPoly HomogPoly::scaled(const TruncSeries& c) const {
  HomogPoly out(field_, nvars_, degree_);
  for (const auto& [e, a] : terms_) out.add_term(e, a * c);
  return out;
}

HomogPoly HomogPoly::galois(GaloisAction act, Direction dir) const {
  HomogPoly out(field_, nvars_, degree_);
  for (const auto& [e, a] : terms_) out.terms_.emplace(e, frobdyn::galois(a, act, dir));
  return out;
}

int HomogPoly::coefficient_prec() const {
  int n = kExactPrecision;
  for (const auto& [e, c] : terms_) n = std::min(n, c.prec());
  return n;
}

TruncSeries HomogPoly::evaluate(const std::vector<TruncSeries>& x) const {
  if (static_cast<int>(x.size()) != nvars_) {
    throw Error(ErrorKind::DimensionMismatch, "evaluating a polynomial in " + std::to_string(nvars_) +
                                                  " variables at " + std::to_string(x.size()) + " values");
  }
  int prec = coefficient_prec();
  for (const auto& v : x) {
    if (!v.field()->same_as(*field_)) throw Error(ErrorKind::FieldMismatch, "evaluation point over a different field");
    prec = std::min(prec, v.prec());
  }
  // powers[i][k] = x_i^k, built lazily up to the largest exponent used.
  std::vector<std::vector<TruncSeries>> powers(nvars_);
  auto power = [&](int i, int k) -> const TruncSeries& {
    auto& row = powers[i];
    if (row.empty()) row.push_back(TruncSeries::constant(FqElem::one(field_), prec));
    while (static_cast<int>(row.size()) <= k) row.push_back(mul_truncated(row.back(), x[i], prec));
    return row[k];
  };
  TruncSeries acc(field_, prec);
  for (const auto& [e, c] : terms_) {
    TruncSeries term = change_precision(c, prec);
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      term = mul_truncated(term, power(i, e[i]), prec);
      if (term.zero_at_precision()) break;
    }
    acc += term;
  }
  return acc;
}

HomogPoly multiply(const HomogPoly& a, const HomogPoly& b, std::size_t term_bound) {
  if (a.nvars() != b.nvars()) throw Error(ErrorKind::DimensionMismatch, "polynomials in different variables");
  HomogPoly out(a.field(), a.nvars(), a.degree() + b.degree());
  Exponents e(a.nvars());
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (int i = 0; i < a.nvars(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
      if (out.size() > term_bound) {
        throw Error(ErrorKind::DegreeOverflow,
                    "product exceeds the symbolic term bound of " + std::to_string(term_bound) + " terms");
      }
    }
  }
  return out;
}

bool equal_at_precision(const HomogPoly& a, const HomogPoly& b) {
  if (a.nvars() != b.nvars()) return false;
  // A term stored on one side only must vanish below the other side's precision.
  auto absent_ok = [](const TruncSeries& c, int other_prec) { return c.valuation() >= std::min(c.prec(), other_prec); };
  for (const auto& [e, c] : a.terms()) {
    auto it = b.terms().find(e);
    if (it == b.terms().end() ? !absent_ok(c, b.coefficient_prec()) : !equal_at_precision(c, it->second)) return false;
  }
  for (const auto& [e, c] : b.terms()) {
    if (!a.terms().contains(e) && !absent_ok(c, a.coefficient_prec())) return false;
  }
  return true;
}

std::string coefficient_string(const TruncSeries& c) {
  return c.prec() >= kExactPrecision ? format_terms(c) : to_string(c);
}

std::string to_string(const HomogPoly& h, char var) {
  if (h.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = h.terms().rbegin(); it != h.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    std::string coeff = coefficient_string(c);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += var + std::to_string(i);
      if (e[i] > 1) mono += '^' + std::to_string(e[i]);
    }
    if (mono.empty()) {
      os << coeff;
    } else if (coeff == "1") {
      os << mono;
    } else if (coeff.find(' ') != std::string::npos || coeff.find('+') != std::string::npos) {
      os << '(' << coeff << ")*" << mono;
    } else {
      os << coeff << '*' << mono;
    }
  }
  return os.str();
}

TruncSeries eval_hom(const HomogPoly& h, const ProjPoint& P) {
  if (h.nvars() != P.N() + 1) {
    throw Error(ErrorKind::DimensionMismatch, "polynomial in " + std::to_string(h.nvars()) +
                                                  " variables at a point of P^" + std::to_string(P.N()));
  }
  return h.evaluate(P.coords);
}

Subvariety make_subvariety(std::vector<HomogPoly> generators) {
  if (generators.empty()) throw Error(ErrorKind::InvalidArgument, "a subvariety needs at least one generator");
  for (const auto& g : generators) {
    if (g.nvars() != generators.front().nvars()) {
      throw Error(ErrorKind::DimensionMismatch, "generators in different numbers of variables");
    }
    if (!g.field()->same_as(*generators.front().field())) {
      throw Error(ErrorKind::FieldMismatch, "generators over different fields");
    }
  }
  Subvariety V;
  V.N = generators.front().nvars() - 1;
  V.generators = std::move(generators);
  return V;
}

Subvariety point_variety(const ProjPoint& c) {
  const int n = c.N() + 1;
  std::vector<HomogPoly> gens;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      HomogPoly h(c.field(), n, 1);
      Exponents ei(n, 0), ej(n, 0);
      ei[i] = 1;
      ej[j] = 1;
      h.add_term(ei, c.coords[j]);
      h.add_term(ej, -c.coords[i]);
      gens.push_back(std::move(h));
    }
  }
  if (gens.empty()) gens.emplace_back(c.field(), n, 1);
  return make_subvariety(std::move(gens));
}

HomogPoly embed(const FieldEmbedding& emb, const HomogPoly& h) {
  HomogPoly out(emb.to(), h.nvars(), h.degree());
  for (const auto& [e, c] : h.terms()) out.add_term(e, embed(emb, c));
  return out;
}

ProjPoint embed(const FieldEmbedding& emb, const ProjPoint& P) {
  ProjPoint out;
  out.shift = P.shift;
  for (const auto& c : P.coords) out.coords.push_back(embed(emb, c));
  return out;
}

Subvariety subvariety_over(const Subvariety& V, const FieldPtr& K) {
  if (V.generators.front().field()->same_as(*K)) return V;
  const FieldEmbedding emb = embed_field(V.generators.front().field(), K);
  Subvariety out{V.N, {}};
  for (const auto& g : V.generators) out.generators.push_back(embed(emb, g));
  return out;
}

std::vector<int> generator_valuations(const Subvariety& V, const ProjPoint& P) {
  const Subvariety W = subvariety_over(V, P.field());
  std::vector<int> out;
  out.reserve(W.generators.size());
  for (const auto& g : W.generators) out.push_back(eval_hom(g, P).valuation());
  return out;
}

}  // namespace frobdyn
