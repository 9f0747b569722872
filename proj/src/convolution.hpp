#pragma once

#include <optional>

#include "product.hpp"
#include "quotient.hpp"

namespace gconv {

/// A filter on H\G/K together with the product it is applied with. Spaces
/// G, G/K and H\G are accepted as the degenerate cases H = {e} or K = {e}.
struct Filter {
  SpaceFunction chi;
  ProductMode mode = ProductMode::MatVec;
};

/// The subgroups (H, K) a filter space stands for. Missing sides are trivial.
std::pair<SubgroupPtr, SubgroupPtr> filter_subgroups(const QuotientSpace& space);

bool same_subgroup(const Subgroup& a, const Subgroup& b);

/// (f * g)(u) = sum_v f^(u v^-1) g^(v) on lifts; result on G.
SpaceFunction convolve_def4(const SpaceFunction& f, const SpaceFunction& g,
                            std::optional<ProductMode> mode = std::nullopt);

/// f on G, g on G/H: (f * g)(x) = sum_v f(r(x) v^-1) g([v]); result on G/H.
SpaceFunction convolve_case1(const SpaceFunction& f, const SpaceFunction& g,
                             std::optional<ProductMode> mode = std::nullopt);

/// f on G/H, g on H\G: (f * g)(u) = |H| sum_y f([u r(y)^-1]) g(y); result on G.
SpaceFunction convolve_case2(const SpaceFunction& f, const SpaceFunction& g,
                             std::optional<ProductMode> mode = std::nullopt);

/// Representatives used by the Case III sum: one per point of G/K (output)
/// and one per point of H\G (summation index).
struct CaseThreeReps {
  std::vector<element_t> out;
  std::vector<element_t> sum;
};

/// f on G/H, chi on H\G/K:
/// (f * chi)(x) = |H| sum_{y in H\G} f([r(x) r(y)^-1]) chi([r(y)]); result on G/K.
/// `out_space` may supply the G/K space to use for the result.
SpaceFunction convolve_case3(const SpaceFunction& f, const Filter& filter, const SpacePtr& out_space = nullptr,
                             const CaseThreeReps* reps = nullptr);

}  // namespace gconv
