#pragma once

// sigma-fixed lifts: the unique P~ over a residue point with f(P~) = sigma(P~).

#include <cstdint>
#include <optional>
#include <vector>

#include "frobdyn/dynamics.hpp"

namespace frobdyn {

struct SigmaFixedLift {
  std::vector<FqElem> base;           // P0
  ProjPoint lift;                     // P~
  int sigma_exponent = 1;             // sigma = Frob_{p^e} on coefficients
  std::optional<int> residue_degree;  // least m with P~ defined over F_{q^m}
  int iterations = 0;                 // contraction steps until stable
};

/// f with its coefficients pushed into K (identity when f is already over K).
DmlMap map_over(const DmlMap& f, const FieldPtr& K);

/// Least m >= 1 with every coefficient of P fixed by x -> x^{p^{e m}}.
int residue_degree(const ProjPoint& P, int e);

/// Iterates P <- sigma^{-1}(f(P)) from the constant lift of P0 until it is
/// stable at precision prec. Errors: PreconditionMatrixNotIdentityModT (A mod t
/// is not a scalar matrix), NonCanonicalBasePoint, DimensionMismatch.
SigmaFixedLift sigma_fixed_lift(const DmlMap& f, const std::vector<FqElem>& P0, int prec);

/// The same iteration started from an arbitrary integral lift of its reduction.
SigmaFixedLift sigma_fixed_lift_from(const DmlMap& f, const ProjPoint& seed);

/// Lifts of several base points, computed on up to `threads` workers; the
/// result order matches the input order.
std::vector<SigmaFixedLift> lift_all(const DmlMap& f, const std::vector<std::vector<FqElem>>& bases, int prec,
                                     unsigned threads);

/// Q = sigma^{-n}(P~), which satisfies f^n(Q) = P~. Errors: PrecisionTooLow.
ProjPoint critical_witness(const DmlMap& f, const SigmaFixedLift& L, int n);

/// Least d >= 1 with f^d(P~) = P~ at the lift's precision. Errors: ResidueDegreeUnknown.
int minimal_period(const DmlMap& f, const SigmaFixedLift& L);

struct InvarianceEntry {
  std::size_t index = 0;
  bool on_variety = false;        // every generator has valuation >= tau at P~
  bool image_on_variety = false;  // likewise at f(P~); only meaningful when on_variety
};

/// Sampled, precision-qualified evidence that f maps V-points into V.
struct InvarianceReport {
  int tau = 0;
  std::vector<InvarianceEntry> entries;
  std::size_t sampled_on_variety = 0;
  std::size_t passed = 0;
  bool empty_sample() const noexcept { return sampled_on_variety == 0; }
  bool all_pass() const noexcept { return passed == sampled_on_variety; }
};

InvarianceReport invariance_evidence(const DmlMap& f, const Subvariety& V, const std::vector<SigmaFixedLift>& lifts,
                                     int tau);

/// Membership at precision: every generator evaluates to valuation >= tau.
bool on_variety(const Subvariety& V, const ProjPoint& P, int tau);

}  // namespace frobdyn
