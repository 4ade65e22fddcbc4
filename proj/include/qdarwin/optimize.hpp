#pragma once

// Optimal information about a system observable extractable from a fragment,
//   I_m(sigma) = max over measurements e on the fragment of I(sigma : e).
// The fragment's reduced state is supported on the two-dimensional span of
// its branch records, so the search runs over measurements on that span.

#include <cstdint>
#include <vector>

#include "qdarwin/info.hpp"
#include "qdarwin/model.hpp"
#include "qdarwin/simplex.hpp"

namespace qdarwin {

enum class MeasurementFamily {
  projective2,  // orthogonal rank-1 pair, 2 real parameters
  povm3,        // three rank-1 elements, 5 real parameters
};

struct OptimizerOptions {
  int grid_points = 64;       // per parameter for projective2
  int povm3_samples = 4096;   // seeded coarse samples for povm3
  int restarts = 8;
  double agreement_tol = 1e-6;
  double tie_tol = 1e-8;
  std::uint64_t seed = 0;     // povm3 coarse sampling
  SimplexOptions simplex{};
};

/// Accessible information of two pure states with real overlap and prior
/// probabilities (prior, 1 - prior). Equal priors use the closed form
/// 1 - H2((1 + sqrt(1 - overlap^2)) / 2); other priors optimize the angle of
/// a projective measurement in the plane of the states.
double accessible_info_pure_pair(double prior, double overlap);

/// Maximizes I(sigma : e) over the family. Restarts run from the best coarse
/// points; diagnostics.converged is false when no second restart confirms
/// the optimum within agreement_tol.
InfoResult optimize_info(const EffectiveState& state, const ObservableAngle& obs,
                         MeasurementFamily family = MeasurementFamily::projective2,
                         const OptimizerOptions& options = {});

struct FragmentPolicy {
  enum class Kind {
    automatic,       // canonical for uniform actions, random subsets otherwise
    canonical,       // the single fragment {0, ..., m-1}
    random_subsets,  // `samples` uniformly random subsets of size m
  };
  Kind kind = Kind::automatic;
  int samples = 16;
};

/// Fragments of size m evaluated for a given policy; random subsets are
/// seeded from params.seed and m.
std::vector<Fragment> sample_fragments(const ModelParams& params, std::size_t m,
                                       const FragmentPolicy& policy);

/// Typical-fragment I_m: lower median over the sampled fragments, with
/// min/max in diagnostics. Non-convergence of any sample is propagated.
InfoResult optimal_fragment_info(const ModelParams& params, const ObservableAngle& obs,
                                 std::size_t m, const FragmentPolicy& policy = {},
                                 MeasurementFamily family = MeasurementFamily::projective2,
                                 const OptimizerOptions& options = {});

/// Same, on an already built branch state.
InfoResult optimal_fragment_info(const BranchState& state, const ModelParams& params,
                                 const ObservableAngle& obs, std::size_t m,
                                 const FragmentPolicy& policy = {},
                                 MeasurementFamily family = MeasurementFamily::projective2,
                                 const OptimizerOptions& options = {});

}  // namespace qdarwin
