#include "smaa/core.hpp"

namespace smaa {

PerformanceMatrix random_nondominated_matrix(Index m, Index n, RngStream& rng) {
  if (m < 2 || n < 1)
    throw std::invalid_argument("random matrix: need >=2 alternatives, >=1 criterion");
  Matrix g(m, n);
  for (int round = 0; round < kMatrixRejectionCap; ++round) {
    // redraw the whole matrix until no row weakly dominates another, so the
    // accepted matrices are uniform over the non-dominated event
    for (Index a = 0; a < m; ++a)
      for (Index i = 0; i < n; ++i) g(a, i) = rng.uniform();
    bool clean = true;
    for (Index a = 0; a < m && clean; ++a)
      for (Index b = 0; b < m; ++b)
        if (a != b && dominated_or_equal(g.row(a).transpose(), g.row(b).transpose())) {
          clean = false;
          break;
        }
    if (clean) return PerformanceMatrix(g);
  }
  throw std::runtime_error("random matrix: rejection cap reached");
}

}  // namespace smaa
