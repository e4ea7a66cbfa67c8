#include "frobdyn/returns.hpp"

#include <algorithm>
#include <set>

#include "frobdyn/lifting.hpp"

namespace frobdyn {

ReturnSet return_set(const DmlMap& f, const ProjPoint& x, const Subvariety& V, int H, int tau) {
  if (H < 0) throw Error(ErrorKind::InvalidArgument, "negative horizon");
  if (tau < 1) throw Error(ErrorKind::InvalidArgument, "threshold must be at least 1");
  if (tau > x.prec()) {
    throw Error(ErrorKind::PrecisionBelowThreshold, "threshold " + std::to_string(tau) + " exceeds the point precision " +
                                                        std::to_string(x.prec()));
  }
  if (V.N != x.N()) throw Error(ErrorKind::DimensionMismatch, "variety and point in different dimensions");
  const DmlMap g = map_over(f, x.field());
  const Subvariety W = subvariety_over(V, x.field());
  ReturnSet rs;
  rs.horizon = H;
  rs.threshold = tau;
  ProjPoint P = x;
  for (int n = 0; n <= H; ++n) {
    if (n > 0) P = apply_map(g, P);
    auto vals = generator_valuations(W, P);
    if (std::all_of(vals.begin(), vals.end(), [tau](int v) { return v >= tau; })) rs.hits.push_back(n);
    rs.valuations.push_back(std::move(vals));
  }
  return rs;
}

std::string_view to_string(DecompositionStatus s) {
  return s == DecompositionStatus::ExactUpToHorizon ? "exact_up_to_horizon" : "no_decomposition_within_bounds";
}

APDecomposition ap_decompose(const std::vector<int>& hits, int H, int max_period) {
  if (H < 0) throw Error(ErrorKind::InvalidArgument, "negative horizon");
  if (max_period < 1) throw Error(ErrorKind::InvalidArgument, "max period must be at least 1");
  std::vector<char> ind(static_cast<std::size_t>(H) + 1, 0);
  for (int n : hits) {
    if (n < 0 || n > H) throw Error(ErrorKind::InvalidArgument, "hit " + std::to_string(n) + " outside [0, H]");
    ind[n] = 1;
  }
  APDecomposition d;
  d.horizon = H;
  for (int m = 1; m <= max_period && H - 2 * m >= 0; ++m) {
    // n0 is one past the last index whose value disagrees with its m-shift.
    int n0 = 0;
    for (int i = H - m; i >= 0; --i) {
      if (ind[i] != ind[i + m]) {
        n0 = i + 1;
        break;
      }
    }
    if (n0 > H - 2 * m) continue;
    d.status = DecompositionStatus::ExactUpToHorizon;
    d.period = m;
    d.preperiod = n0;
    for (int n = 0; n < n0; ++n)
      if (ind[n]) d.sporadic.push_back(n);
    for (int l = n0; l < n0 + m; ++l)
      if (ind[l]) d.progressions.push_back({l, m});
    return d;
  }
  return d;
}

APDecomposition ap_decompose(const ReturnSet& rs, int max_period) { return ap_decompose(rs.hits, rs.horizon, max_period); }

std::vector<int> expand(const APDecomposition& d, int H) {
  std::set<int> out;
  for (int s : d.sporadic)
    if (s <= H) out.insert(s);
  for (const auto& pr : d.progressions)
    for (int n = pr.start; n <= H; n += pr.step) out.insert(n);
  return {out.begin(), out.end()};
}

}  // namespace frobdyn
