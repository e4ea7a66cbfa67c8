#include "frobdyn/dynamics.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace frobdyn {

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

Matrix<FqElem> reduce_matrix(const Matrix<TruncSeries>& A) {
  return A.map([](const TruncSeries& s) { return s.constant_term(); });
}

bool sigma_fixed(const TruncSeries& s, int e) { return galois(s, GaloisAction{e}) == s; }

std::string monomial_string(const Exponents& e, char var) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += var + std::to_string(i);
    if (e[i] > 1) s += '^' + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

void check_shape(const DmlMap& f) {
  if (f.N < 0) throw Error(ErrorKind::DimensionMismatch, "negative ambient dimension");
  const std::size_t n = static_cast<std::size_t>(f.N) + 1;
  if (f.A.rows() != n || f.A.cols() != n) {
    throw Error(ErrorKind::DimensionMismatch, "A must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (f.G.size() != n) throw Error(ErrorKind::DimensionMismatch, "G must have " + std::to_string(n) + " entries");
  if (f.e < 1) throw Error(ErrorKind::InvalidArgument, "e must be at least 1");
  const FieldPtr& k = f.field();
  if (f.p != k->p()) {
    throw Error(ErrorKind::InvalidArgument,
                "p = " + std::to_string(f.p) + " differs from the field characteristic " + std::to_string(k->p()));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!f.A(i, j).field()->same_as(*k)) throw Error(ErrorKind::FieldMismatch, "entries of A over different fields");
  for (const auto& g : f.G) {
    if (g.nvars() != static_cast<int>(n)) throw Error(ErrorKind::DimensionMismatch, "G polynomial in the wrong number of variables");
    if (!g.field()->same_as(*k)) throw Error(ErrorKind::FieldMismatch, "G over a different field");
  }
}

void check_point(const FieldPtr& k, int N, const ProjPoint& P) {
  if (P.N() != N) {
    throw Error(ErrorKind::DimensionMismatch,
                "point of P^" + std::to_string(P.N()) + " for a map on P^" + std::to_string(N));
  }
  if (!P.field()->same_as(*k)) throw Error(ErrorKind::FieldMismatch, "point and map over different fields");
}

HomogPoly constant_poly(const FieldPtr& k, int nvars, const TruncSeries& c) {
  HomogPoly h(k, nvars, 0);
  h.add_term(Exponents(nvars, 0), c);
  return h;
}

}  // namespace

std::int64_t DmlMap::q() const { return ipow(p, e); }

std::string_view to_string(DiagnosticKind k) {
  switch (k) {
    case DiagnosticKind::NonUnitDeterminant: return "NonUnitDeterminant";
    case DiagnosticKind::CoefficientNotInMaximalIdeal: return "CoefficientNotInMaximalIdeal";
    case DiagnosticKind::WrongDegree: return "WrongDegree";
    case DiagnosticKind::CoefficientFieldTooLarge: return "CoefficientFieldTooLarge";
  }
  return "Unknown";
}

std::string to_string(const Diagnostic& d) {
  std::string where;
  if (d.col >= 0) {
    where = "A[" + std::to_string(d.row) + "][" + std::to_string(d.col) + "]";
  } else if (d.row >= 0) {
    where = "G" + std::to_string(d.row);
    if (!d.term.empty()) where += ", " + monomial_string(d.term, 'y');
  }
  std::string s(to_string(d.kind));
  if (!where.empty()) s += "(" + where + ")";
  if (!d.detail.empty()) s += ": " + d.detail;
  return s;
}

MapValidation validate_map(DmlMap raw) {
  check_shape(raw);
  MapValidation out;
  auto& diags = out.diagnostics;
  const std::size_t n = static_cast<std::size_t>(raw.N) + 1;

  if (determinant(reduce_matrix(raw.A)).is_zero()) {
    diags.push_back({DiagnosticKind::NonUnitDeterminant, -1, -1, {}, "det(A) vanishes modulo t"});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!sigma_fixed(raw.A(i, j), raw.e)) {
        diags.push_back({DiagnosticKind::CoefficientFieldTooLarge, static_cast<int>(i), static_cast<int>(j), {},
                         "entry is not fixed by Frob_q"});
      }
  const std::int64_t want = ipow(raw.p, raw.e - 1);
  for (std::size_t i = 0; i < n; ++i) {
    const HomogPoly& g = raw.G[i];
    if (g.degree() != want) {
      diags.push_back({DiagnosticKind::WrongDegree, static_cast<int>(i), -1, {},
                       "degree " + std::to_string(g.degree()) + ", expected q/p = " + std::to_string(want)});
    }
    for (const auto& [e, c] : g.terms()) {
      if (c.valuation() == 0) {
        diags.push_back({DiagnosticKind::CoefficientNotInMaximalIdeal, static_cast<int>(i), -1, e,
                         "coefficient " + coefficient_string(c) + " has valuation 0"});
      }
      if (!sigma_fixed(c, raw.e)) {
        diags.push_back({DiagnosticKind::CoefficientFieldTooLarge, static_cast<int>(i), -1, e,
                         "coefficient is not fixed by Frob_q"});
      }
    }
  }
  if (diags.empty()) out.map = std::move(raw);
  return out;
}

DmlMap checked_map(DmlMap raw) {
  MapValidation v = validate_map(std::move(raw));
  if (v.ok()) return std::move(*v.map);
  std::string msg = "invalid map:";
  for (const auto& d : v.diagnostics) msg += "\n  " + to_string(d);
  throw Error(ErrorKind::ValidationFailure, msg);
}

GeneralMap to_general(const DmlMap& f) {
  const int n = f.N + 1;
  const std::int64_t q = f.q();
  GeneralMap out;
  out.N = f.N;
  out.label = f.label;
  for (int i = 0; i < n; ++i) {
    HomogPoly h(f.field(), n, static_cast<int>(q));
    for (int j = 0; j < n; ++j) {
      Exponents e(n, 0);
      e[j] = static_cast<int>(q);
      h.add_term(e, f.A(i, j));
    }
    for (const auto& [e, c] : f.G[i].terms()) {
      Exponents x(e);
      for (auto& v : x) v *= static_cast<int>(f.p);
      h.add_term(x, c);
    }
    out.coords.push_back(std::move(h));
  }
  return out;
}

DmlMap embed(const FieldEmbedding& emb, const DmlMap& f) {
  DmlMap out = f;
  out.A = f.A.map([&](const TruncSeries& s) { return embed(emb, s); });
  for (auto& g : out.G) g = embed(emb, g);
  return out;
}

ProjPoint apply_map(const DmlMap& f, const ProjPoint& P, std::optional<int> out_prec) {
  check_point(f.field(), f.N, P);
  const int n = P.prec();
  const int out = out_prec.value_or(n);
  if (out < 1 || static_cast<std::int64_t>(out) > static_cast<std::int64_t>(n) * f.p) {
    throw Error(ErrorKind::PrecisionTooLow, "output precision " + std::to_string(out) + " is not determined by input precision " +
                                                std::to_string(n));
  }
  const std::size_t m = P.coords.size();
  std::vector<TruncSeries> xq, y;
  for (const auto& c : P.coords) {
    xq.push_back(frobenius_power(c, f.e, out));
    y.push_back(frobenius_power(c, 1, out));
  }
  std::vector<TruncSeries> img;
  img.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    TruncSeries acc = f.G[i].evaluate(y);
    for (std::size_t j = 0; j < m; ++j) {
      if (f.A(i, j).zero_at_precision() && f.A(i, j).prec() >= out) continue;
      acc += mul_truncated(f.A(i, j), xq[j], out);
    }
    img.push_back(std::move(acc));
  }
  return normalize(std::move(img));
}

ProjPoint apply_map(const GeneralMap& f, const ProjPoint& P) {
  check_point(f.field(), f.N, P);
  std::vector<TruncSeries> img;
  for (const auto& h : f.coords) img.push_back(h.evaluate(P.coords));
  return normalize(std::move(img));
}

std::vector<ProjPoint> orbit(const DmlMap& f, const ProjPoint& P, int H) {
  if (H < 0) throw Error(ErrorKind::InvalidArgument, "negative horizon");
  std::vector<ProjPoint> out{P};
  out.reserve(static_cast<std::size_t>(H) + 1);
  for (int n = 0; n < H; ++n) out.push_back(apply_map(f, out.back()));
  return out;
}

ConditionReport check_conditions(const GeneralMap& f) {
  ConditionReport r;
  const std::uint32_t p = f.field()->p();
  r.zero_differential = std::all_of(f.coords.begin(), f.coords.end(), [&](const HomogPoly& h) {
    return std::all_of(h.terms().begin(), h.terms().end(), [&](const auto& term) {
      return std::all_of(term.first.begin(), term.first.end(), [&](int x) { return x % static_cast<int>(p) == 0; });
    });
  });

  std::int64_t d = f.degree();
  std::int64_t pk = p;
  while (pk < d) pk *= p;
  bool ok = pk == d;
  std::optional<Digits> lambda;
  for (std::size_t i = 0; ok && i < f.coords.size(); ++i) {
    int units = 0;
    for (const auto& [e, c] : f.coords[i].terms()) {
      if (!c.is_unit()) continue;
      ++units;
      if (e[i] != d) ok = false;
      if (lambda && *lambda != c.raw(0)) ok = false;
      lambda = c.raw(0);
    }
    if (units != 1) ok = false;
  }
  r.special_fiber_is_frobenius = ok;
  if (ok) r.frobenius_power = d;
  return r;
}

ConditionReport check_conditions(const DmlMap& f) { return check_conditions(to_general(f)); }

std::size_t default_term_bound() {
  if (const char* env = std::getenv("FROBDYN_TERM_BOUND")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 1'000'000;
}

GeneralMap compose_maps(const GeneralMap& F, const GeneralMap& G, std::size_t term_bound) {
  if (F.N != G.N) throw Error(ErrorKind::DimensionMismatch, "composing maps on different spaces");
  if (!F.field()->same_as(*G.field())) throw Error(ErrorKind::FieldMismatch, "composing maps over different fields");
  const int n = F.N + 1;
  const FieldPtr& k = F.field();
  const TruncSeries one = TruncSeries::constant(FqElem::one(k), kExactPrecision);
  // powers[j][a] = G_j^a
  std::vector<std::vector<HomogPoly>> powers(n);
  auto power = [&](int j, int a) -> const HomogPoly& {
    auto& row = powers[j];
    if (row.empty()) row.push_back(constant_poly(k, n, one));
    while (static_cast<int>(row.size()) <= a) row.push_back(multiply(row.back(), G.coords[j], term_bound));
    return row[a];
  };
  GeneralMap out;
  out.N = F.N;
  for (const auto& Fi : F.coords) {
    HomogPoly acc(k, n, Fi.degree() * G.degree());
    for (const auto& [e, c] : Fi.terms()) {
      HomogPoly term = constant_poly(k, n, c);
      for (int j = 0; j < n; ++j) {
        if (e[j] > 0) term = multiply(term, power(j, e[j]), term_bound);
      }
      acc += term;
      if (acc.size() > term_bound) {
        throw Error(ErrorKind::DegreeOverflow, "composition exceeds the symbolic term bound of " + std::to_string(term_bound));
      }
    }
    out.coords.push_back(std::move(acc));
  }
  return out;
}

GeneralMap iterate_map(const GeneralMap& f, int times, std::size_t term_bound) {
  if (times < 1) throw Error(ErrorKind::InvalidArgument, "iteration count must be at least 1");
  GeneralMap r = f;
  for (int k = 1; k < times; ++k) r = compose_maps(f, r, term_bound);
  r.label = f.label;
  return r;
}

std::variant<DmlMap, NotInForm> recognize_dml_form(const GeneralMap& F, std::uint32_t p, int e) {
  const std::int64_t q = ipow(p, e);
  if (F.degree() != q) {
    return NotInForm{-1, std::nullopt, "degree " + std::to_string(F.degree()) + " is not q = " + std::to_string(q)};
  }
  const int n = F.N + 1;
  const FieldPtr& k = F.field();
  DmlMap f;
  f.N = F.N;
  f.p = p;
  f.e = e;
  f.label = F.label;
  f.A = Matrix<TruncSeries>(n, n, TruncSeries(k, kExactPrecision));
  for (int i = 0; i < n; ++i) {
    HomogPoly g(k, n, static_cast<int>(q / p));
    for (const auto& [x, c] : F.coords[i].terms()) {
      const bool divisible = std::all_of(x.begin(), x.end(), [&](int v) { return v % static_cast<int>(p) == 0; });
      const auto top = std::find(x.begin(), x.end(), static_cast<int>(q));
      TruncSeries rest = c;
      if (top != x.end()) {
        const auto j = static_cast<std::size_t>(top - x.begin());
        f.A(i, j) = TruncSeries::constant(c.constant_term(), c.prec());
        rest = c - f.A(i, j);
        if (rest.zero_at_precision()) continue;
      } else if (!divisible) {
        return NotInForm{i, x, "exponent not divisible by p = " + std::to_string(p)};
      } else if (c.valuation() == 0) {
        return NotInForm{i, x, "coefficient " + coefficient_string(c) + " is a unit"};
      }
      Exponents y(x);
      for (auto& v : y) v /= static_cast<int>(p);
      g.add_term(y, rest);
    }
    f.G.push_back(std::move(g));
  }
  if (determinant(reduce_matrix(f.A)).is_zero()) {
    return NotInForm{-1, std::nullopt, "the matrix part is singular modulo t"};
  }
  return f;
}

Matrix<TruncSeries> linear_part_qp(const DmlMap& f) {
  if (f.e != 1) throw Error(ErrorKind::UnsupportedQ, "preimages are only supported for q = p");
  Matrix<TruncSeries> M = f.A;
  const int n = f.N + 1;
  for (int i = 0; i < n; ++i) {
    for (const auto& [e, c] : f.G[i].terms()) {
      const auto j = static_cast<std::size_t>(std::find(e.begin(), e.end(), 1) - e.begin());
      M(i, j) += c;
    }
  }
  return M;
}

ProjPoint preimage_qp(const DmlMap& f, const ProjPoint& P) {
  check_point(f.field(), f.N, P);
  const int prec = P.prec();
  const std::uint32_t p = f.p;
  const Matrix<TruncSeries> M = linear_part_qp(f).map([&](const TruncSeries& s) { return change_precision(s, prec); });
  auto Minv = try_inverse(M);
  if (!Minv) throw Error(ErrorKind::NotInvertible, "A + Gamma is not invertible over k[[t]]");
  const ProjPoint R = normalize(*Minv * P.coords);
  const int n = R.prec();
  const int out = (n + static_cast<int>(p) - 1) / static_cast<int>(p);
  const FieldSpec& k = *R.field();
  std::vector<TruncSeries> Q;
  for (std::size_t i = 0; i < R.coords.size(); ++i) {
    std::vector<Digits> d(out, k.zero());
    for (int j = 0; j < n; ++j) {
      const Digits& c = R.coords[i].raw(j);
      if (k.is_zero(c)) continue;
      if (j % static_cast<int>(p) != 0) {
        throw Error(ErrorKind::NotInImage, "coordinate " + std::to_string(i) + " has a nonzero t^" + std::to_string(j) +
                                               " term, not a p-th power");
      }
      d[j / p] = k.frobenius(c, -1);
    }
    Q.emplace_back(R.field(), out, std::move(d));
  }
  return normalize(std::move(Q));
}

std::string to_string(const DmlMap& f) {
  std::ostringstream os;
  if (!f.label.empty()) os << "map " << f.label << '\n';
  os << "N = " << f.N << ", p = " << f.p << ", q = " << f.q() << '\n';
  for (std::size_t i = 0; i < f.A.rows(); ++i) {
    os << "A[" << i << "] = [";
    for (std::size_t j = 0; j < f.A.cols(); ++j) os << (j ? ", " : "") << coefficient_string(f.A(i, j));
    os << "]\n";
  }
  for (std::size_t i = 0; i < f.G.size(); ++i) os << "G" << i << " = " << to_string(f.G[i], 'y') << '\n';
  return os.str();
}

std::string to_string(const GeneralMap& f) {
  std::ostringstream os;
  if (!f.label.empty()) os << "map " << f.label << '\n';
  for (std::size_t i = 0; i < f.coords.size(); ++i) os << "f" << i << " = " << to_string(f.coords[i]) << '\n';
  return os.str();
}

}  // namespace frobdyn
