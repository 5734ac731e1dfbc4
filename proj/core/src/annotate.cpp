#include "mtwb/annotate.hpp"

#include <algorithm>

#include "mtwb/bleu.hpp"
#include "mtwb/error.hpp"
#include "mtwb/unicode.hpp"

namespace mtwb {

double annotation_score(std::span<const ErrorAnnotation> annotations) {
  double penalty = 0.0;
  for (const auto& a : annotations) {
    penalty += a.severity == Severity::kMajor ? kMajorWeight : kMinorWeight;
  }
  return -penalty;
}

namespace {

struct Match {
  std::size_t pred;
  std::size_t ref;
};

// Suffix-table LCS; ties prefer skipping a prediction token first.
std::vector<Match> align(const std::vector<Token>& pred, const std::vector<Token>& ref) {
  const std::size_t m = pred.size();
  const std::size_t n = ref.size();
  std::vector<std::uint32_t> table((m + 1) * (n + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return table[i * (n + 1) + j]; };
  for (std::size_t i = m; i-- > 0;) {
    for (std::size_t j = n; j-- > 0;) {
      at(i, j) = pred[i].text == ref[j].text ? at(i + 1, j + 1) + 1
                                             : std::max(at(i + 1, j), at(i, j + 1));
    }
  }
  std::vector<Match> matches;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < m && j < n) {
    if (pred[i].text == ref[j].text && at(i, j) == at(i + 1, j + 1) + 1) {
      matches.push_back({i++, j++});
    } else if (at(i + 1, j) >= at(i, j + 1)) {
      ++i;
    } else {
      ++j;
    }
  }
  return matches;
}

std::string join(const std::vector<Token>& tokens, std::size_t begin, std::size_t end) {
  std::string out;
  for (std::size_t k = begin; k < end; ++k) {
    if (k > begin) out += ' ';
    out += tokens[k].text;
  }
  return out;
}

Severity severity_for(std::size_t run_tokens) {
  return run_tokens >= kMajorRunTokens ? Severity::kMajor : Severity::kMinor;
}

}  // namespace

std::vector<ErrorAnnotation> baseline_annotate(std::string_view prediction,
                                               std::optional<std::string_view> reference) {
  if (!reference) {
    throw Error(ErrorCode::kMissingReference, "baseline annotation needs a reference");
  }
  const auto pred = tokenize_with_offsets(prediction);
  const auto ref = tokenize_with_offsets(*reference);
  const std::size_t pred_length = unicode::length(prediction);

  auto matches = align(pred, ref);
  // Sentinel closing the final gap.
  matches.push_back({pred.size(), ref.size()});

  std::vector<ErrorAnnotation> out;
  std::size_t pred_cursor = 0;
  std::size_t ref_cursor = 0;
  for (const Match& m : matches) {
    if (m.pred > pred_cursor) {
      const std::size_t run = m.pred - pred_cursor;
      const std::string words = join(pred, pred_cursor, m.pred);
      ErrorAnnotation a;
      a.error_type = std::string(kExtraneousContent);
      a.severity = severity_for(run);
      a.span = {pred[pred_cursor].start, pred[m.pred - 1].end};
      a.explanation = "The prediction contains \"" + words +
                      "\", which does not appear in the reference.";
      a.origin = std::string(kBaselineOrigin);
      out.push_back(std::move(a));
    }
    if (m.ref > ref_cursor) {
      const std::size_t run = m.ref - ref_cursor;
      const std::size_t anchor = m.pred < pred.size() ? pred[m.pred].start : pred_length;
      ErrorAnnotation a;
      a.error_type = std::string(kMissingContent);
      a.severity = severity_for(run);
      a.span = {anchor, anchor};
      a.explanation = "The prediction is missing \"" + join(ref, ref_cursor, m.ref) +
                      "\" from the reference.";
      a.origin = std::string(kBaselineOrigin);
      out.push_back(std::move(a));
    }
    pred_cursor = m.pred + 1;
    ref_cursor = m.ref + 1;
  }
  return out;
}

}  // namespace mtwb
