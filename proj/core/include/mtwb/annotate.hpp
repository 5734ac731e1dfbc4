#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mtwb/types.hpp"

namespace mtwb {

inline constexpr std::string_view kMissingContent = "missing content";
inline constexpr std::string_view kExtraneousContent = "extraneous content";
inline constexpr std::string_view kBaselineOrigin = "baseline";

// Runs of this many tokens or more are major errors.
inline constexpr std::size_t kMajorRunTokens = 3;

inline constexpr double kMajorWeight = 5.0;
inline constexpr double kMinorWeight = 1.0;

// -(5 * majors + 1 * minors). Used only when an adapter supplies no score.
double annotation_score(std::span<const ErrorAnnotation> annotations);

// Offline stand-in for a neural error annotator: a token LCS alignment
// between prediction and reference. Unaligned reference runs become
// zero-width "missing content" anchors placed before the next aligned
// prediction token (or at the end of the prediction); unaligned prediction
// runs become "extraneous content" spans. Ids and instance ids are left
// empty for the caller. Throws kMissingReference.
std::vector<ErrorAnnotation> baseline_annotate(std::string_view prediction,
                                               std::optional<std::string_view> reference);

}  // namespace mtwb
