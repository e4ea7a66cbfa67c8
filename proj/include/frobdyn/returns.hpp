#pragma once

// Return sets {n <= H : f^n(x) in V at precision tau} and their
// decomposition into arithmetic progressions.

#include <string_view>
#include <vector>

#include "frobdyn/dynamics.hpp"

namespace frobdyn {

struct ReturnSet {
  int horizon = 0;
  int threshold = 0;
  std::vector<int> hits;                     // sorted, in [0, horizon]
  std::vector<std::vector<int>> valuations;  // per n, per generator of V
};

/// Membership means every generator of V has valuation >= tau at f^n(x).
/// Errors: PrecisionBelowThreshold (tau > precision of x), InvalidArgument.
ReturnSet return_set(const DmlMap& f, const ProjPoint& x, const Subvariety& V, int H, int tau);

enum class DecompositionStatus { ExactUpToHorizon, NoDecompositionWithinBounds };
std::string_view to_string(DecompositionStatus s);

/// {start + step * k : k >= 0}.
struct Progression {
  int start = 0;
  int step = 1;
  friend bool operator==(const Progression&, const Progression&) = default;
};

struct APDecomposition {
  int horizon = 0;
  DecompositionStatus status = DecompositionStatus::NoDecompositionWithinBounds;
  int period = 0;      // m; 0 when no decomposition was found
  int preperiod = 0;   // n0
  std::vector<int> sporadic;
  std::vector<Progression> progressions;
};

/// Least period m <= max_period, then least n0 <= H - 2m, such that the
/// indicator of the hits is m-periodic on [n0, H]. Progressions are the
/// residues hit in [n0, n0 + m); sporadic values are the hits below n0.
APDecomposition ap_decompose(const std::vector<int>& hits, int H, int max_period);
APDecomposition ap_decompose(const ReturnSet& rs, int max_period);

/// The decomposition's set restricted to [0, H].
std::vector<int> expand(const APDecomposition& d, int H);

}  // namespace frobdyn
