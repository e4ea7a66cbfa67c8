#pragma once
// Seeded generators and independent brute-force oracles shared by the tests.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "frobdyn/dynamics.hpp"
#include "frobdyn/returns.hpp"

namespace frobdyn::testing {

inline std::string fixture(const std::string& name) { return std::string(FROBDYN_FIXTURE_DIR) + "/" + name; }

/// FROBDYN_TEST_SEED overrides the fixed default.
inline std::uint64_t base_seed(std::uint64_t fallback = 0x5eed2024) {
  if (const char* s = std::getenv("FROBDYN_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return fallback;
}

/// Reductions of a 64-bit Mersenne twister; `rng() % n` keeps streams identical
/// across standard libraries.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next() { return rng_(); }
  int uniform(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (rng_() & 1) != 0; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[rng_() % v.size()];
  }

  FqElem elem(const FieldPtr& k) { return FqElem(k, k->from_index(rng_() % *k->order())); }
  FqElem nonzero(const FieldPtr& k) {
    for (;;) {
      FqElem x = elem(k);
      if (!x.is_zero()) return x;
    }
  }
  /// An element fixed by x -> x^{p^e}.
  FqElem fixed_elem(const FieldPtr& k, int e) {
    for (;;) {
      FqElem x = elem(k);
      if (frobenius_pow(x, e) == x) return x;
    }
  }
  FqElem fixed_nonzero(const FieldPtr& k, int e) {
    for (;;) {
      FqElem x = fixed_elem(k, e);
      if (!x.is_zero()) return x;
    }
  }

  /// Dense random series at precision prec.
  TruncSeries series(const FieldPtr& k, int prec) {
    std::vector<Digits> c;
    for (int j = 0; j < prec; ++j) c.push_back(elem(k).digits());
    return TruncSeries(k, prec, std::move(c));
  }
  TruncSeries unit_series(const FieldPtr& k, int prec) {
    TruncSeries s = series(k, prec);
    return s + TruncSeries::constant(nonzero(k), prec) - TruncSeries::constant(s.constant_term(), prec);
  }

  /// Canonical residue point: the first nonzero coordinate is 1.
  std::vector<FqElem> residue_point(const FieldPtr& k, int n) {
    for (;;) {
      std::vector<FqElem> v;
      for (int i = 0; i < n; ++i) v.push_back(elem(k));
      auto lead = std::find_if(v.begin(), v.end(), [](const FqElem& x) { return !x.is_zero(); });
      if (lead == v.end()) continue;
      const FqElem inv = lead->inverse();
      for (auto& x : v) x = x * inv;
      return v;
    }
  }

  ProjPoint point(const FieldPtr& k, int n, int prec) {
    std::vector<TruncSeries> c;
    for (int i = 0; i < n; ++i) c.push_back(series(k, prec));
    c[static_cast<std::size_t>(uniform(0, n - 1))] = unit_series(k, prec);
    return normalize(std::move(c));
  }

  /// Exact polynomial in t with valuation in [1, 3], coefficients fixed by Frob_{p^e}.
  TruncSeries small_coeff(const FieldPtr& k, int e) {
    const int v = uniform(1, 3);
    TruncSeries c = TruncSeries::monomial(fixed_nonzero(k, e), v, kExactPrecision);
    for (int j = v + 1; j <= v + 2; ++j) {
      if (coin()) c += TruncSeries::monomial(fixed_elem(k, e), j, kExactPrecision);
    }
    return c;
  }

  Exponents exponents(int nvars, int degree) {
    Exponents ex(static_cast<std::size_t>(nvars), 0);
    for (int d = 0; d < degree; ++d) ++ex[static_cast<std::size_t>(uniform(0, nvars - 1))];
    return ex;
  }

  /// A valid map over k with the given A and random G.
  DmlMap dml_with(const FieldPtr& k, std::uint32_t p, int e, int N, Matrix<TruncSeries> A) {
    DmlMap f;
    f.N = N;
    f.p = p;
    f.e = e;
    f.A = std::move(A);
    int deg = 1;
    for (int i = 1; i < e; ++i) deg *= static_cast<int>(p);
    for (int i = 0; i <= N; ++i) {
      HomogPoly g(k, N + 1, deg);
      const int terms = uniform(0, 2);
      for (int t = 0; t < terms; ++t) {
        HomogPoly term(k, N + 1, deg);
        term.add_term(exponents(N + 1, deg), small_coeff(k, e));
        g += term;
      }
      f.G.push_back(std::move(g));
    }
    return checked_map(std::move(f));
  }

  DmlMap dml_identity(const FieldPtr& k, std::uint32_t p, int e, int N) {
    const TruncSeries zero(k, kExactPrecision);
    return dml_with(k, p, e, N,
                    Matrix<TruncSeries>::identity(static_cast<std::size_t>(N + 1), zero,
                                                  TruncSeries::constant(FqElem::one(k), kExactPrecision)));
  }

  /// A with sigma-fixed entries, invertible mod t, plus t-divisible parts.
  DmlMap dml_general(const FieldPtr& k, std::uint32_t p, int e, int N) {
    const auto n = static_cast<std::size_t>(N + 1);
    for (;;) {
      Matrix<FqElem> A0(n, n, FqElem::zero(k));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) A0(r, c) = fixed_elem(k, e);
      if (determinant(A0).is_zero()) continue;
      Matrix<TruncSeries> A(n, n, TruncSeries(k, kExactPrecision));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          A(r, c) = TruncSeries::constant(A0(r, c), kExactPrecision);
          if (coin()) A(r, c) += small_coeff(k, e);
        }
      return dml_with(k, p, e, N, std::move(A));
    }
  }

 private:
  std::mt19937_64 rng_;
};

// ---------------------------------------------------------------------------
// Field oracle: polynomials over F_p as plain integer vectors, reduced by the
// modulus by schoolbook division.

struct NaiveField {
  std::uint32_t p;
  std::vector<std::uint32_t> modulus;  // low to high, monic

  int m() const { return static_cast<int>(modulus.size()) - 1; }

  std::vector<std::uint32_t> reduce(std::vector<std::uint64_t> a) const {
    const int d = m();
    for (int i = static_cast<int>(a.size()) - 1; i >= d; --i) {
      const std::uint64_t c = a[static_cast<std::size_t>(i)] % p;
      if (c == 0) continue;
      for (int j = 0; j <= d; ++j) {
        auto& slot = a[static_cast<std::size_t>(i - d + j)];
        slot = (slot + (p - c) * modulus[static_cast<std::size_t>(j)]) % p;
      }
    }
    std::vector<std::uint32_t> out(static_cast<std::size_t>(d), 0);
    for (int i = 0; i < d && i < static_cast<int>(a.size()); ++i) out[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i)] % p;
    return out;
  }

  std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) const {
    std::vector<std::uint64_t> prod(x.size() + y.size(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) prod[i + j] = (prod[i + j] + std::uint64_t{x[i]} * y[j]) % p;
    return reduce(std::move(prod));
  }

  std::vector<std::uint32_t> add(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) const {
    std::vector<std::uint32_t> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] + y[i]) % p;
    return out;
  }

  std::vector<std::uint32_t> pow(std::vector<std::uint32_t> x, std::uint64_t e) const {
    std::vector<std::uint32_t> r(static_cast<std::size_t>(m()), 0);
    r[0] = 1;
    for (std::uint64_t i = 0; i < e; ++i) r = mul(r, x);
    return r;
  }
};

inline std::vector<std::uint32_t> digits_vec(const FqElem& x) { return {x.digits().begin(), x.digits().end()}; }

/// True when no monic polynomial of degree 1..m/2 divides the modulus.
inline bool naive_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& modulus) {
  const int m = static_cast<int>(modulus.size()) - 1;
  for (int d = 1; 2 * d <= m; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<std::int64_t> g(static_cast<std::size_t>(d) + 1, 0);
      std::uint64_t v = idx;
      for (int i = 0; i < d; ++i) {
        g[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(v % p);
        v /= p;
      }
      g[static_cast<std::size_t>(d)] = 1;
      std::vector<std::int64_t> r(modulus.begin(), modulus.end());
      for (int i = m; i >= d; --i) {
        const std::int64_t c = ((r[static_cast<std::size_t>(i)] % p) + p) % p;
        for (int j = 0; j <= d; ++j) r[static_cast<std::size_t>(i - d + j)] -= c * g[static_cast<std::size_t>(j)];
      }
      bool zero = true;
      for (int i = 0; i < d; ++i) zero = zero && ((r[static_cast<std::size_t>(i)] % p) + p) % p == 0;
      if (zero) return false;
    }
  }
  return true;
}

/// Schoolbook product of two series modulo t^min(prec).
inline TruncSeries naive_product(const TruncSeries& a, const TruncSeries& b) {
  const int n = std::min(a.prec(), b.prec());
  const FieldPtr& k = a.field();
  std::vector<Digits> c(static_cast<std::size_t>(n), k->zero());
  for (int i = 0; i < n; ++i)
    for (int j = 0; i + j < n; ++j) k->add_to(c[static_cast<std::size_t>(i + j)], k->mul(a.raw(i), b.raw(j)));
  return TruncSeries(k, n, std::move(c));
}

/// sum_{k >= 0} t^{2^k} + c modulo t^prec.
inline TruncSeries dyadic_series(const FieldPtr& k, const FqElem& c, int prec) {
  TruncSeries s = TruncSeries::constant(c, prec);
  for (int e = 1; e < prec; e *= 2) s += TruncSeries::monomial(FqElem::one(k), e, prec);
  return s;
}

// ---------------------------------------------------------------------------
// Decomposition oracle: tries (m, n0) in order and checks that every index
// past the first period repeats the one m steps back in the window.

inline APDecomposition decompose_oracle(const std::vector<int>& hits, int H, int max_period) {
  std::vector<char> target(static_cast<std::size_t>(H + 1), 0);
  for (int n : hits) target[static_cast<std::size_t>(n)] = 1;
  for (int m = 1; m <= max_period; ++m) {
    for (int n0 = 0; n0 <= H - 2 * m; ++n0) {
      // Candidate: target on [0, n0 + m), then repeated with step m.
      bool same = true;
      for (int n = n0 + m; n <= H && same; ++n) {
        const int base = n0 + (n - n0) % m;
        same = target[static_cast<std::size_t>(n)] == target[static_cast<std::size_t>(base)];
      }
      if (!same) continue;
      APDecomposition d;
      d.horizon = H;
      d.status = DecompositionStatus::ExactUpToHorizon;
      d.period = m;
      d.preperiod = n0;
      for (int n = 0; n < n0 + m; ++n) {
        if (!target[static_cast<std::size_t>(n)]) continue;
        if (n < n0) d.sporadic.push_back(n);
        else d.progressions.push_back({n, m});
      }
      return d;
    }
  }
  APDecomposition d;
  d.horizon = H;
  return d;
}

inline bool same_decomposition(const APDecomposition& a, const APDecomposition& b) {
  return a.horizon == b.horizon && a.status == b.status && a.period == b.period && a.preperiod == b.preperiod &&
         a.sporadic == b.sporadic && a.progressions == b.progressions;
}

/// Eventually periodic subset of [0, H] with the given preperiod and period.
inline std::vector<int> eventually_periodic(Gen& g, int H, int preperiod, int period) {
  std::vector<bool> pre(static_cast<std::size_t>(preperiod)), cyc(static_cast<std::size_t>(period));
  for (auto&& b : pre) b = g.coin();
  for (auto&& b : cyc) b = g.coin();
  std::vector<int> out;
  for (int n = 0; n <= H; ++n) {
    const bool in = n < preperiod ? pre[static_cast<std::size_t>(n)] : cyc[static_cast<std::size_t>((n - preperiod) % period)];
    if (in) out.push_back(n);
  }
  return out;
}

}  // namespace frobdyn::testing
