#pragma once

// The Frobenius-twist equation B^(q) = A B over finite fields and the
// conjugation that turns the matrix part of a map into the identity.

#include <cstdint>
#include <vector>

#include "frobdyn/dynamics.hpp"
#include "frobdyn/matrix.hpp"

namespace frobdyn {

struct TwistSolution {
  std::int64_t q = 0;
  int r = 0;                                // B has entries in F_{q^r}
  FieldPtr field;                           // F_{q^r}
  Matrix<FqElem> A;                         // the input, embedded into `field`
  Matrix<FqElem> B;                         // columns are the basis vectors
  std::vector<std::vector<FqElem>> basis;   // lex-least F_q-basis, ordered by leading position
};

/// Entrywise x -> x^{p^k}.
Matrix<FqElem> frobenius_matrix(const Matrix<FqElem>& M, std::int64_t k);

/// Solves B^(q) = A B with B invertible over the smallest F_{q^r}, r a
/// multiple of s = [F_p(A) : F_q] rounded up, r <= r_max.
/// Errors: NotInvertible, SearchExhausted, InvalidArgument (q not a power of p).
TwistSolution solve_twist(const Matrix<FqElem>& A, std::int64_t q, int r_max = 64);

/// Every beta in K^{n} with beta^(q) = A beta, by exhaustive enumeration
/// over K^n. Only for tiny fields; used to cross-check the solver.
std::vector<std::vector<FqElem>> enumerate_twist_solutions(const Matrix<FqElem>& A, std::int64_t q);

struct ConjugateResult {
  TwistSolution twist;  // solves B^(q) = A^{-1} B
  DmlMap map;           // B^{-1} o f o B over twist.field, matrix part I
};

/// Errors: NonConstantMatrix, SearchExhausted, NotInvertible.
ConjugateResult normalize_conjugate(const DmlMap& f, int r_max = 64);

/// The linear map x -> M x as a degree-1 GeneralMap.
GeneralMap linear_map(const Matrix<FqElem>& M);

/// g o f o h for linear h = M, g = M^{-1}, with f pushed into M's field.
GeneralMap conjugate_by(const DmlMap& f, const Matrix<FqElem>& M);

std::string to_string(const Matrix<FqElem>& M);

}  // namespace frobdyn
