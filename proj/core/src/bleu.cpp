#include "mtwb/bleu.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "mtwb/error.hpp"
#include "mtwb/unicode.hpp"

namespace mtwb {

std::vector<Token> tokenize_with_offsets(std::string_view text) {
  const std::u32string cps = unicode::decode_or_throw(text, "text");
  std::vector<Token> tokens;
  std::size_t word_start = 0;
  bool in_word = false;
  auto flush = [&](std::size_t end) {
    if (in_word) {
      tokens.push_back({unicode::encode(std::u32string_view(cps).substr(
                            word_start, end - word_start)),
                        word_start, end});
      in_word = false;
    }
  };
  for (std::size_t i = 0; i < cps.size(); ++i) {
    const char32_t cp = cps[i];
    if (unicode::is_whitespace(cp)) {
      flush(i);
    } else if (unicode::is_punctuation(cp)) {
      flush(i);
      tokens.push_back({unicode::encode(std::u32string_view(&cps[i], 1)), i, i + 1});
    } else if (!in_word) {
      in_word = true;
      word_start = i;
    }
  }
  flush(cps.size());
  return tokens;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto& t : tokenize_with_offsets(text)) out.push_back(std::move(t.text));
  return out;
}

std::string_view smoothing_name(Smoothing s) {
  return s == Smoothing::kAddOne ? "add_one" : "none";
}

Smoothing parse_smoothing(std::string_view name) {
  if (name == "none") return Smoothing::kNone;
  if (name == "add_one") return Smoothing::kAddOne;
  throw Error(ErrorCode::kBadRequest, "unknown smoothing '" + std::string(name) + "'");
}

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  if (matches.size() < other.matches.size()) {
    matches.resize(other.matches.size());
    totals.resize(other.totals.size());
  }
  for (std::size_t n = 0; n < other.matches.size(); ++n) {
    matches[n] += other.matches[n];
    totals[n] += other.totals[n];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

namespace {

using NgramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  NgramCounts counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::vector<std::string_view> gram(tokens.begin() + i, tokens.begin() + i + n);
    ++counts[std::move(gram)];
  }
  return counts;
}

}  // namespace

BleuStats sentence_stats(const std::vector<std::string>& hyp,
                         const std::vector<std::string>& ref, int max_n) {
  BleuStats stats;
  stats.matches.assign(max_n, 0);
  stats.totals.assign(max_n, 0);
  stats.hyp_length = hyp.size();
  stats.ref_length = ref.size();
  for (int order = 1; order <= max_n; ++order) {
    const auto n = static_cast<std::size_t>(order);
    if (hyp.size() < n) continue;
    stats.totals[order - 1] = hyp.size() - n + 1;
    const NgramCounts ref_counts = count_ngrams(ref, n);
    for (const auto& [gram, count] : count_ngrams(hyp, n)) {
      auto it = ref_counts.find(gram);
      if (it != ref_counts.end()) stats.matches[order - 1] += std::min(count, it->second);
    }
  }
  return stats;
}

BleuReport bleu_from_stats(const BleuStats& stats, Smoothing smoothing) {
  BleuReport report;
  report.smoothing = smoothing;
  report.matches = stats.matches;
  report.totals = stats.totals;
  report.hyp_length = stats.hyp_length;
  report.ref_length = stats.ref_length;

  const std::size_t orders = stats.matches.size();
  report.precisions.assign(orders, 0.0);
  bool any_zero = false;
  double log_sum = 0.0;
  for (std::size_t n = 0; n < orders; ++n) {
    double num = static_cast<double>(stats.matches[n]);
    double den = static_cast<double>(stats.totals[n]);
    if (stats.matches[n] == 0 && smoothing == Smoothing::kAddOne) {
      num += 1.0;
      den += 1.0;
    }
    const double p = den > 0.0 ? num / den : 0.0;
    report.precisions[n] = p;
    if (p <= 0.0) {
      any_zero = true;
    } else {
      log_sum += std::log(p);
    }
  }

  if (stats.hyp_length == 0) {
    // exp(1 - r/0) degenerates; an empty system output scores nothing.
    report.brevity_penalty = 0.0;
    report.score = 0.0;
    return report;
  }
  report.brevity_penalty =
      stats.hyp_length > stats.ref_length
          ? 1.0
          : std::exp(1.0 - static_cast<double>(stats.ref_length) /
                               static_cast<double>(stats.hyp_length));
  if (any_zero || orders == 0) {
    report.score = 0.0;
  } else {
    report.score = 100.0 * report.brevity_penalty *
                   std::exp(log_sum / static_cast<double>(orders));
  }
  return report;
}

BleuReport corpus_bleu(const std::vector<BleuPair>& pairs, int max_n, Smoothing smoothing) {
  if (pairs.empty()) throw Error(ErrorCode::kEmptyCorpus, "BLEU needs at least one pair");
  if (max_n < 1) throw Error(ErrorCode::kBadRequest, "max_n must be >= 1");
  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!pairs[i].reference) missing.push_back(i);
  }
  if (!missing.empty()) {
    throw Error(ErrorCode::kMissingReference, "BLEU requires a reference for every pair",
                {{"indices", missing}});
  }
  BleuStats total;
  total.matches.assign(max_n, 0);
  total.totals.assign(max_n, 0);
  for (const auto& pair : pairs) {
    total += sentence_stats(tokenize(pair.prediction), tokenize(*pair.reference), max_n);
  }
  return bleu_from_stats(total, smoothing);
}

}  // namespace mtwb
