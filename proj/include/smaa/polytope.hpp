#pragma once

#include <vector>

#include "smaa/lp.hpp"
#include "smaa/rng.hpp"
#include "smaa/types.hpp"

//! Uniform sampling over convex polytopes by Hit-And-Run.
//!
//! Polytopes are given by inequality rows a.x <= b, equality rows, and
//! per-coordinate nonnegativity flags.  The walk starts at the Chebyshev
//! center, draws directions uniformly within the affine hull of the equality
//! constraints, and takes a uniform point on the feasible chord each step.
namespace smaa {

struct PolytopeSpec {
  Index dimension = 0;
  Matrix ineq_rows;          // may have zero rows
  Vector ineq_rhs;
  Matrix eq_rows;            // may have zero rows
  Vector eq_rhs;
  std::vector<char> nonneg;  // per-coordinate x_i >= 0 flags

  //! Maximal constraint violation of x (0 inside the polytope).
  double violation(const Vector& x) const;
};

struct SamplerConfig {
  long burn_in = 1000;
  long thinning = 10;
};

//! Chebyshev center and radius, both measured within the affine hull of the
//! equality rows.  Throws when the polytope is empty or has zero volume in the
//! hull (radius below tolerance).
struct ChebyshevResult {
  Vector center;
  double radius = 0.0;
};
ChebyshevResult chebyshev_center(const PolytopeSpec& spec);

//! `count` approximately uniform points, one per row.  Every returned point
//! satisfies the constraints within the mass tolerance.
Matrix har_sample(const PolytopeSpec& spec, Index count, const SamplerConfig& config,
                  RngStream& rng);

//! Sample of weight vectors: over the whole simplex when no certain statements
//! are given, otherwise over the compatible subregion with the strict margin
//! fixed at kEpsilonShrink * epsilon*.  Throws on incompatible statements.
OmegaSample sample_weight_space(const PerformanceMatrix& perf, const PreferenceInfo& prefs,
                                Index count, const SamplerConfig& config, RngStream& rng);

//! Uniform draws over a polytope of mass distributions (dimension = sample
//! size, masses summing to one).
std::vector<MassDistribution> sample_distribution_polytope(const PolytopeSpec& spec, Index count,
                                                           const SamplerConfig& config,
                                                           RngStream& rng);

}  // namespace smaa
