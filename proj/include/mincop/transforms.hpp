#pragma once

// Reflections, permutations, survival and discretization.

#include <optional>

#include "mincop/copula.hpp"

namespace mincop {

/// nu_K(C): the distribution of eta_K(U, 1 - U). Checkerboards and segment
/// copulas stay in their representation; nested reflections collapse.
Copula reflect(const Copula& c, const ReflectionSet& k);

/// Distribution of (U_sigma(1), ..., U_sigma(d)).
Copula permute(const Copula& c, const Permutation& sigma);

/// tau(C) = nu_{1..d}(C).
Copula survival(const Copula& c);

CheckerboardCopula reflect(const CheckerboardCopula& c, const ReflectionSet& k);
CheckerboardCopula permute(const CheckerboardCopula& c, const Permutation& sigma);
SegmentCopula reflect(const SegmentCopula& c, const ReflectionSet& k);
SegmentCopula permute(const SegmentCopula& c, const Permutation& sigma);

/// Checkerboard whose cell masses are the box masses of C. Throws
/// ValidationError when a cell mass is below -1e-10; smaller negative
/// rounding residue is set to zero.
CheckerboardCopula discretize(const Copula& c, const Axes& cuts);
CheckerboardCopula discretize(const Copula& c, int n);

/// Exact segment form, when the copula has one (M, W, extreme Clayton in
/// d = 2, reflections, permutations and mixtures of such).
std::optional<SegmentCopula> as_segments(const Copula& c);

/// Exact checkerboard form, when the copula has one (Pi, checkerboards and
/// their reflections, permutations, mixtures, glue products and surgeries).
std::optional<CheckerboardCopula> as_checkerboard(const Copula& c);

}  // namespace mincop
