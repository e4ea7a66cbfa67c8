#include "frobdyn/twist.hpp"

#include <algorithm>
#include <numeric>

#include "fp_poly.hpp"

namespace frobdyn {

namespace {

int log_p(std::uint32_t p, std::int64_t q) {
  int k = 0;
  std::int64_t v = 1;
  while (v < q) {
    v *= p;
    ++k;
  }
  if (v != q || k == 0) {
    throw Error(ErrorKind::InvalidArgument, "q = " + std::to_string(q) + " is not a positive power of p = " + std::to_string(p));
  }
  return k;
}

Matrix<FqElem> identity_over(const FieldPtr& k, std::size_t n) {
  return Matrix<FqElem>::identity(n, FqElem::zero(k), FqElem::one(k));
}

// Null space of an F_p matrix (rows x cols, row-major) by reduction to RREF.
std::vector<std::vector<std::uint32_t>> null_space(std::vector<std::vector<std::uint32_t>> m, std::size_t cols,
                                                   std::uint32_t p) {
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t piv = row;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[row]);
    const std::uint32_t inv = fp::inv_mod(m[row][c], p);
    for (auto& x : m[row]) x = fp::mul_mod(x, inv, p);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][c] == 0) continue;
      const std::uint32_t factor = m[r][c];
      for (std::size_t j = 0; j < cols; ++j) {
        m[r][j] = (m[r][j] + p - fp::mul_mod(factor, m[row][j], p)) % p;
      }
    }
    pivot_cols.push_back(c);
    ++row;
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<std::uint32_t>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = (p - m[r][free]) % p;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<FqElem> to_vector(const FieldPtr& k, const std::vector<std::uint32_t>& flat, std::size_t n) {
  const std::size_t D = static_cast<std::size_t>(k->m());
  std::vector<FqElem> out;
  for (std::size_t i = 0; i < n; ++i) {
    Digits d(flat.begin() + static_cast<std::ptrdiff_t>(i * D), flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * D));
    out.emplace_back(k, std::move(d));
  }
  return out;
}

bool lex_less(const std::vector<FqElem>& a, const std::vector<FqElem>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      [](const FqElem& x, const FqElem& y) { return (x <=> y) < 0; });
}

std::size_t leading(const std::vector<FqElem>& v) {
  return static_cast<std::size_t>(std::find_if(v.begin(), v.end(), [](const FqElem& x) { return !x.is_zero(); }) - v.begin());
}

// Greedily keeps vectors that increase the rank, in the given order.
std::vector<std::vector<FqElem>> greedy_basis(const std::vector<std::vector<FqElem>>& candidates, std::size_t n) {
  std::vector<std::vector<FqElem>> basis;
  for (const auto& v : candidates) {
    if (basis.size() == n) break;
    if (std::all_of(v.begin(), v.end(), [](const FqElem& x) { return x.is_zero(); })) continue;
    Matrix<FqElem> m(basis.size() + 1, n, v.front());
    for (std::size_t r = 0; r < basis.size(); ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = basis[r][c];
    for (std::size_t c = 0; c < n; ++c) m(basis.size(), c) = v[c];
    if (rank(m) == basis.size() + 1) basis.push_back(v);
  }
  return basis;
}

constexpr std::uint64_t kEnumerationLimit = 1u << 22;

}  // namespace

Matrix<FqElem> frobenius_matrix(const Matrix<FqElem>& M, std::int64_t k) {
  return M.map([k](const FqElem& x) { return frobenius_pow(x, k); });
}

std::string to_string(const Matrix<FqElem>& M) {
  std::string s = "[";
  for (std::size_t i = 0; i < M.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < M.cols(); ++j) s += (j ? ", " : "") + to_string(M(i, j));
    s += "]";
  }
  return s + "]";
}

TwistSolution solve_twist(const Matrix<FqElem>& A, std::int64_t q, int r_max) {
  const std::size_t n = A.rows();
  if (n == 0 || A.cols() != n) throw Error(ErrorKind::DimensionMismatch, "twist equation needs a square matrix");
  if (r_max < 1) throw Error(ErrorKind::InvalidArgument, "r_max must be at least 1");
  const FieldPtr F = A(0, 0).field();
  const std::uint32_t p = F->p();
  const int k = log_p(p, q);
  if (determinant(A).is_zero()) throw Error(ErrorKind::NotInvertible, "A is singular");

  // Full-dimensional solution space over F_{q^r} exactly when the twisted
  // norm A^(q^{r-1}) ... A^(q) A is the identity.
  const int M = F->m();
  const int s = std::lcm(M, k) / k;
  const Matrix<FqElem> I = identity_over(F, n);
  Matrix<FqElem> norm = A;
  int r = 0;
  for (int cand = 1; cand <= r_max; ++cand) {
    if (cand > 1) norm = frobenius_matrix(A, static_cast<std::int64_t>(k) * (cand - 1)) * norm;
    if (cand % s == 0 && norm == I) {
      r = cand;
      break;
    }
  }
  if (r == 0) {
    throw Error(ErrorKind::SearchExhausted,
                "no full solution space over F_{q^r} for r <= " + std::to_string(r_max));
  }

  const int D = r * k;
  const FieldPtr K = D == M ? F : standard_field(p, D);
  const FieldEmbedding emb = embed_field(F, K);
  TwistSolution sol;
  sol.q = q;
  sol.r = r;
  sol.field = K;
  sol.A = A.map([&](const FqElem& x) { return emb(x); });

  // beta -> beta^(q) - A beta as an F_p-linear map on F_p^{D n}.
  const std::size_t dim = static_cast<std::size_t>(D) * n;
  std::vector<std::vector<std::uint32_t>> L(dim, std::vector<std::uint32_t>(dim, 0));
  for (std::size_t c = 0; c < n; ++c) {
    for (int d = 0; d < D; ++d) {
      Digits basis_elem = K->zero();
      basis_elem[d] = 1;
      const std::size_t col = c * D + d;
      std::vector<Digits> image(n, K->zero());
      image[c] = K->frobenius(basis_elem, k);
      for (std::size_t i = 0; i < n; ++i) image[i] = K->sub(image[i], K->mul(sol.A(i, c).digits(), basis_elem));
      for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j < D; ++j) L[i * D + j][col] = image[i][j];
    }
  }
  const auto kernel = null_space(std::move(L), dim, p);

  std::vector<std::vector<FqElem>> candidates;
  const std::size_t kd = kernel.size();
  std::uint64_t total = 1;
  bool small = true;
  for (std::size_t i = 0; i < kd && small; ++i) {
    total *= p;
    small = total <= kEnumerationLimit;
  }
  if (small) {
    std::vector<std::uint32_t> coeff(kd, 0);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::uint64_t v = idx;
      for (std::size_t i = 0; i < kd; ++i) {
        coeff[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      std::vector<std::uint32_t> flat(dim, 0);
      for (std::size_t i = 0; i < kd; ++i) {
        if (coeff[i] == 0) continue;
        for (std::size_t j = 0; j < dim; ++j) flat[j] = (flat[j] + fp::mul_mod(coeff[i], kernel[i][j], p)) % p;
      }
      candidates.push_back(to_vector(K, flat, n));
    }
    std::sort(candidates.begin(), candidates.end(), lex_less);
  } else {
    for (const auto& v : kernel) candidates.push_back(to_vector(K, v, n));
  }
  sol.basis = greedy_basis(candidates, n);
  if (sol.basis.size() != n) {
    throw Error(ErrorKind::SearchExhausted, "solution space has rank " + std::to_string(sol.basis.size()) + " < " +
                                                std::to_string(n));
  }
  // Columns ordered by the position of their first nonzero entry, ties kept in lex order.
  std::stable_sort(sol.basis.begin(), sol.basis.end(), [](const auto& a, const auto& b) { return leading(a) < leading(b); });
  sol.B = Matrix<FqElem>(n, n, FqElem::zero(K));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) sol.B(i, c) = sol.basis[c][i];
  if (!(frobenius_matrix(sol.B, k) == sol.A * sol.B) || determinant(sol.B).is_zero()) {
    throw Error(ErrorKind::SearchExhausted, "assembled B fails verification");
  }
  return sol;
}

std::vector<std::vector<FqElem>> enumerate_twist_solutions(const Matrix<FqElem>& A, std::int64_t q) {
  const std::size_t n = A.rows();
  const FieldPtr K = A(0, 0).field();
  const int k = log_p(K->p(), q);
  const auto elems = all_elements(K);
  std::vector<std::vector<FqElem>> out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<FqElem> beta;
    for (auto i : idx) beta.push_back(elems[i]);
    const auto image = A * beta;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) ok = frobenius_pow(beta[i], k) == image[i];
    if (ok) out.push_back(beta);
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == elems.size()) idx[pos++] = 0;
    if (pos == n) break;
  }
  return out;
}

GeneralMap linear_map(const Matrix<FqElem>& M) {
  const int n = static_cast<int>(M.rows());
  const FieldPtr& K = M(0, 0).field();
  GeneralMap g;
  g.N = n - 1;
  for (int i = 0; i < n; ++i) {
    HomogPoly h(K, n, 1);
    for (int j = 0; j < n; ++j) {
      Exponents e(n, 0);
      e[j] = 1;
      h.add_term(e, TruncSeries::constant(M(i, j), kExactPrecision));
    }
    g.coords.push_back(std::move(h));
  }
  return g;
}

GeneralMap conjugate_by(const DmlMap& f, const Matrix<FqElem>& M) {
  const FieldPtr& K = M(0, 0).field();
  const DmlMap fK = embed(embed_field(f.field(), K), f);
  const auto Minv = try_inverse(M);
  if (!Minv) throw Error(ErrorKind::NotInvertible, "conjugating matrix is singular");
  GeneralMap g = compose_maps(linear_map(*Minv), compose_maps(to_general(fK), linear_map(M)));
  g.label = f.label;
  return g;
}

ConjugateResult normalize_conjugate(const DmlMap& f, int r_max) {
  const std::size_t n = f.A.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!f.A(i, j).is_constant()) {
        throw Error(ErrorKind::NonConstantMatrix,
                    "A[" + std::to_string(i) + "][" + std::to_string(j) + "] has positive-degree terms in t");
      }
  const Matrix<FqElem> A0 = f.A.map([](const TruncSeries& s) { return s.constant_term(); });
  const auto A0inv = try_inverse(A0);
  if (!A0inv) throw Error(ErrorKind::NotInvertible, "A is singular modulo t");
  ConjugateResult out{solve_twist(*A0inv, f.q(), r_max), {}};
  auto rec = recognize_dml_form(conjugate_by(f, out.twist.B), f.p, f.e);
  if (auto* bad = std::get_if<NotInForm>(&rec)) {
    throw Error(ErrorKind::ValidationFailure, "conjugated map is not of the expected form: " + bad->reason);
  }
  out.map = std::get<DmlMap>(std::move(rec));
  return out;
}

}  // namespace frobdyn
