#pragma once

// Constructors for the named copulas.

#include <cstdint>
#include <utility>
#include <vector>

#include "mincop/copula.hpp"

namespace mincop {

enum class BasicKind { upper_frechet, lower_frechet_2d, product, clayton_extreme };

/// Analytic M, W, Pi or the extreme Clayton copula with parameter -1/(d-1).
/// W exists only for d = 2; other dimensions throw DomainError.
Copula make_basic(BasicKind kind, int dim);

/// M as the single diagonal segment.
SegmentCopula make_upper_frechet_segment(int dim);

/// nu_K(M): the segment t -> eta_K(t 1, (1 - t) 1). K is one-based and must
/// be a nonempty proper subset.
SegmentCopula make_reflected_upper(int dim, std::vector<int> k_one_based);

/// Three-dimensional copula spread uniformly over the edges of the triangle
/// (0,1/2,1), (1/2,1,0), (1,0,1/2).
SegmentCopula make_triangle_3d();

/// Square [lo, lo + side] carrying a diagonal (+1) or anti-diagonal (-1) piece.
struct ShufflePiece {
  double lo_x;
  double lo_y;
  double side;
  int slope;
};

struct ShuffleSpec {
  std::vector<ShufflePiece> pieces;
};

SegmentCopula make_shuffle(const ShuffleSpec& spec);
/// Diagonal pieces in the off-diagonal squares of the 2x2 grid.
SegmentCopula shuffle_a();
/// Anti-diagonal pieces in the diagonal squares of the 2x2 grid.
SegmentCopula shuffle_b();

/// E(u, v) = C(u) D(v); the combined dimension must be at least three.
Copula make_glue_product(Copula left, Copula right);

Copula make_mixture(std::vector<std::pair<Copula, double>> parts);

/// Equal-weight mixture of nu_K(M) over all nonempty proper K.
Copula mixture_all_reflections(int dim);

/// n^d checkerboard mixing `components` random permutation tensors with
/// random weights; deterministic in the seed.
CheckerboardCopula random_checkerboard(int dim, int n, std::uint64_t seed, int components = 3);

}  // namespace mincop
