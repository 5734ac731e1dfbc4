#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mtwb {

// Whitespace-separated tokens with every punctuation character (Unicode
// general category P*) split into its own token. Case is preserved.
std::vector<std::string> tokenize(std::string_view text);

struct Token {
  std::string text;
  // Code point offsets into the source text, half-open.
  std::size_t start = 0;
  std::size_t end = 0;
};

std::vector<Token> tokenize_with_offsets(std::string_view text);

enum class Smoothing { kNone, kAddOne };

std::string_view smoothing_name(Smoothing s);
Smoothing parse_smoothing(std::string_view name);

struct BleuReport {
  double score = 0.0;
  // Per-order precisions as used in the geometric mean (after smoothing).
  std::vector<double> precisions;
  // Pooled clipped matches and hypothesis n-gram totals per order.
  std::vector<std::size_t> matches;
  std::vector<std::size_t> totals;
  double brevity_penalty = 1.0;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;
  Smoothing smoothing = Smoothing::kNone;
};

struct BleuPair {
  std::string prediction;
  std::optional<std::string> reference;
};

// Sufficient statistics of one (hypothesis, reference) pair.
struct BleuStats {
  std::vector<std::size_t> matches;
  std::vector<std::size_t> totals;
  std::size_t hyp_length = 0;
  std::size_t ref_length = 0;

  BleuStats& operator+=(const BleuStats& other);
};

BleuStats sentence_stats(const std::vector<std::string>& hyp,
                         const std::vector<std::string>& ref, int max_n);

BleuReport bleu_from_stats(const BleuStats& stats, Smoothing smoothing);

// Corpus BLEU on a 0..100 scale with n-gram statistics pooled over all pairs.
// Throws kEmptyCorpus / kMissingReference.
BleuReport corpus_bleu(const std::vector<BleuPair>& pairs, int max_n = 4,
                       Smoothing smoothing = Smoothing::kNone);

}  // namespace mtwb
