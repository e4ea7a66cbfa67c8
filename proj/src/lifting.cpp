#include "frobdyn/lifting.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace frobdyn {

namespace {

void check_precondition(const DmlMap& f) {
  const FqElem lambda = f.A(0, 0).constant_term();
  for (std::size_t i = 0; i < f.A.rows(); ++i) {
    for (std::size_t j = 0; j < f.A.cols(); ++j) {
      const FqElem a = f.A(i, j).constant_term();
      if (i == j ? a != lambda : !a.is_zero()) {
        throw Error(ErrorKind::PreconditionMatrixNotIdentityModT,
                    "A mod t is not a scalar matrix; conjugate the map first (normalize)");
      }
    }
  }
}

void check_base(const std::vector<FqElem>& P0) {
  auto first = std::find_if(P0.begin(), P0.end(), [](const FqElem& x) { return !x.is_zero(); });
  if (first == P0.end() || !first->is_one()) {
    throw Error(ErrorKind::NonCanonicalBasePoint,
                "base point " + to_string(P0) + " must have its first nonzero coordinate equal to 1");
  }
}

SigmaFixedLift iterate_lift(const DmlMap& f, ProjPoint P) {
  const DmlMap g = map_over(f, P.field());
  check_precondition(g);
  const GaloisAction sigma{g.e};
  SigmaFixedLift L;
  L.base = reduce_point(P);
  L.sigma_exponent = g.e;
  const int cap = P.prec() + 2;
  for (int it = 1; it <= cap; ++it) {
    ProjPoint next = galois(apply_map(g, P), sigma, Direction::Inverse);
    L.iterations = it;
    const bool stable = next.coords == P.coords;
    P = std::move(next);
    if (stable) break;
  }
  L.lift = std::move(P);
  L.residue_degree = residue_degree(L.lift, g.e);
  return L;
}

}  // namespace

DmlMap map_over(const DmlMap& f, const FieldPtr& K) {
  if (f.field()->same_as(*K)) return f;
  return embed(embed_field(f.field(), K), f);
}

int residue_degree(const ProjPoint& P, int e) {
  const FieldSpec& k = *P.field();
  for (int m = 1; m <= k.m(); ++m) {
    const std::int64_t shift = static_cast<std::int64_t>(e) * m;
    bool fixed = true;
    for (const auto& c : P.coords) {
      for (const auto& d : c.raw_coeffs()) {
        if (k.frobenius(d, shift) != d) {
          fixed = false;
          break;
        }
      }
      if (!fixed) break;
    }
    if (fixed) return m;
  }
  return k.m();  // unreachable: Frob_{p^{e m}} with m = [k : F_p] is the identity
}

SigmaFixedLift sigma_fixed_lift(const DmlMap& f, const std::vector<FqElem>& P0, int prec) {
  if (static_cast<int>(P0.size()) != f.N + 1) {
    throw Error(ErrorKind::DimensionMismatch, "base point has " + std::to_string(P0.size()) + " coordinates, expected " +
                                                  std::to_string(f.N + 1));
  }
  if (prec < 1) throw Error(ErrorKind::InvalidArgument, "precision must be at least 1");
  check_base(P0);
  return iterate_lift(f, constant_point(P0, prec));
}

SigmaFixedLift sigma_fixed_lift_from(const DmlMap& f, const ProjPoint& seed) {
  if (seed.N() != f.N) throw Error(ErrorKind::DimensionMismatch, "seed point in the wrong dimension");
  check_base(reduce_point(seed));
  return iterate_lift(f, seed);
}

std::vector<SigmaFixedLift> lift_all(const DmlMap& f, const std::vector<std::vector<FqElem>>& bases, int prec,
                                     unsigned threads) {
  std::vector<std::optional<SigmaFixedLift>> slots(bases.size());
  std::vector<std::exception_ptr> errors(bases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < bases.size(); i = next++) {
      try {
        slots[i] = sigma_fixed_lift(f, bases[i], prec);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(bases.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  std::vector<SigmaFixedLift> out;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

ProjPoint critical_witness(const DmlMap& f, const SigmaFixedLift& L, int n) {
  if (L.lift.N() != f.N) throw Error(ErrorKind::DimensionMismatch, "lift and map in different dimensions");
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "negative witness index");
  if (n > L.lift.prec()) {
    throw Error(ErrorKind::PrecisionTooLow, "witness index " + std::to_string(n) + " exceeds the lift precision " +
                                                std::to_string(L.lift.prec()));
  }
  return galois(L.lift, GaloisAction{static_cast<std::int64_t>(L.sigma_exponent) * n}, Direction::Inverse);
}

int minimal_period(const DmlMap& f, const SigmaFixedLift& L) {
  if (!L.residue_degree) throw Error(ErrorKind::ResidueDegreeUnknown, "the lift has no detected residue degree");
  const DmlMap g = map_over(f, L.lift.field());
  ProjPoint P = L.lift;
  for (int d = 1; d <= *L.residue_degree; ++d) {
    P = apply_map(g, P);
    if (proj_eq(P, L.lift)) return d;
  }
  throw Error(ErrorKind::ResidueDegreeUnknown,
              "no period up to the residue degree " + std::to_string(*L.residue_degree) + " at this precision");
}

bool on_variety(const Subvariety& V, const ProjPoint& P, int tau) {
  const auto vals = generator_valuations(V, P);
  return std::all_of(vals.begin(), vals.end(), [tau](int v) { return v >= tau; });
}

InvarianceReport invariance_evidence(const DmlMap& f, const Subvariety& V, const std::vector<SigmaFixedLift>& lifts,
                                     int tau) {
  InvarianceReport rep;
  rep.tau = tau;
  for (std::size_t i = 0; i < lifts.size(); ++i) {
    InvarianceEntry e;
    e.index = i;
    e.on_variety = on_variety(V, lifts[i].lift, tau);
    if (e.on_variety) {
      ++rep.sampled_on_variety;
      e.image_on_variety = on_variety(V, apply_map(map_over(f, lifts[i].lift.field()), lifts[i].lift), tau);
      if (e.image_on_variety) ++rep.passed;
    }
    rep.entries.push_back(e);
  }
  return rep;
}

}  // namespace frobdyn
