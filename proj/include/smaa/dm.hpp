#pragma once

#include <vector>

#include "smaa/core.hpp"
#include "smaa/indices.hpp"
#include "smaa/types.hpp"

//! Simulated decision makers: unimodal mass distributions centred on a hidden
//! reference weight vector, the preference relation they induce, and the
//! most-informative-pair elicitation step.
namespace smaa {

enum class DmKind { Delta, Normal, Exponential, InverseDistance, Roc };

const char* to_string(DmKind kind);
DmKind dm_kind_from_string(const std::string& text);

struct DmDistributionSpec {
  DmKind kind = DmKind::Delta;
  double lambda = 0.0;  // unused for Delta; integer-valued for Exponential and Roc
  Vector reference;     // the hidden model the masses concentrate around
};

//! The experiment draws lambda uniformly from these per-kind ranges.
struct LambdaRange {
  double lo = 0.0, hi = 0.0;
  bool integer = false;
};
LambdaRange dm_lambda_range(DmKind kind);

//! True when lambda is inside the experiment's sampling range for the kind
//! (Roc additionally requires lambda <= |omega|).
bool dm_lambda_in_range(DmKind kind, double lambda, Index omega_size);

//! Masses of the named distribution over the sample.  For Delta, the reference
//! must already be a member of the sample (it is appended by the caller).
//! Lambda must be structurally valid for the kind: positive where the formula
//! needs it, integral for Exponential and Roc, and at most |omega| for Roc.
MassDistribution dm_masses(const DmDistributionSpec& spec, const OmegaSample& omega);

enum class PairwiseVerdict { APreferred, BPreferred, Indifferent };

//! Preference the masses induce on a pair: compares the mass of weight vectors
//! weakly favouring a against the mass weakly favouring b.
PairwiseVerdict dm_relation(const MassDistribution& dm_mass, const OmegaSample& omega,
                            const PerformanceMatrix& perf, const Pair& pair);

//! One elicited statement: a strict "a over b" or a two-sided indifference.
struct ElicitedStatement {
  Index a = 0, b = 0;
  bool indifferent = false;
};

struct Elicitation {
  std::vector<Pair> pairs;                    // the unordered pairs asked about (a < b)
  std::vector<ElicitedStatement> statements;  // oriented answers, one per pair
  PreferenceInfo to_preferences() const;      // as uncertain statements
};

//! Picks the z unordered pairs the uniform distribution is least decided about
//! (smallest |p(a,b) - p(b,a)|, lexicographic tie-break) and orients each by
//! the DM's relation.
Elicitation elicit_pairs(const PerformanceMatrix& perf, const OmegaSample& omega,
                         const MassDistribution& dm_mass, Index z);

}  // namespace smaa
