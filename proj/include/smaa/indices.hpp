#pragma once

#include "smaa/core.hpp"
#include "smaa/types.hpp"

//! Acceptability indices under a probability mass over sampled weight vectors.
//!
//! Tie policy, applied uniformly: utilities closer than the utility tie
//! tolerance count as equal; equal utilities split pairwise-winning mass half
//! and half, while ranks break ties by alternative index so each weight vector
//! still yields a permutation of ranks.
namespace smaa {

//! rank(a, w) = 1 + number of alternatives strictly better than a under w,
//! with index order deciding among tied utilities.
Index rank_of(Index a, const Vector& w, const PerformanceMatrix& perf);

//! Rank acceptability indices: result(r, a) = probability mass of weight
//! vectors placing alternative a at rank r+1.  Rows are ranks, columns are
//! alternatives; every row and every column sums to 1.
Matrix rai(const PerformanceMatrix& perf, const OmegaSample& omega, const MassDistribution& mass);

//! Pairwise winning indices: result(a, b) = probability mass of weight vectors
//! under which a beats b, ties split evenly.  Diagonal is zero and unused;
//! result(a, b) + result(b, a) = 1 off the diagonal.
Matrix pwi(const PerformanceMatrix& perf, const OmegaSample& omega, const MassDistribution& mass);

//! True when the matrix is a 0/1 pairwise-winning matrix describing a total
//! order: complementary off-diagonal entries and no 3-cycles.
bool is_total_order(const Matrix& pwi_matrix);

}  // namespace smaa
