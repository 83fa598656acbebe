#pragma once

#include <cstddef>
#include <span>

namespace onsager {

/// Pairwise (cascade) summation. The reduction tree depends only on the
/// length of the input, so results are reproducible.
double pairwise_sum(std::span<const double> values);

}  // namespace onsager
