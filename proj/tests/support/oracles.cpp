#include "oracles.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace mtwb::oracle {

Bleu bleu(const std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>& corpus,
          int max_n, bool add_one) {
  std::vector<double> matched(max_n, 0), total(max_n, 0);
  double hyp_len = 0, ref_len = 0;
  for (const auto& [hyp, ref] : corpus) {
    hyp_len += static_cast<double>(hyp.size());
    ref_len += static_cast<double>(ref.size());
    for (int n = 1; n <= max_n; ++n) {
      std::map<std::vector<std::string>, int> h, r;
      for (std::size_t i = 0; i + n <= hyp.size(); ++i) {
        ++h[std::vector<std::string>(hyp.begin() + i, hyp.begin() + i + n)];
      }
      for (std::size_t i = 0; i + n <= ref.size(); ++i) {
        ++r[std::vector<std::string>(ref.begin() + i, ref.begin() + i + n)];
      }
      for (const auto& [gram, count] : h) {
        total[n - 1] += count;
        auto it = r.find(gram);
        if (it != r.end()) matched[n - 1] += std::min(count, it->second);
      }
    }
  }

  Bleu out;
  bool zero = false;
  double log_sum = 0;
  for (int n = 0; n < max_n; ++n) {
    double m = matched[n], t = total[n];
    if (add_one && m == 0) {
      m += 1;
      t += 1;
    }
    const double p = t == 0 ? 0 : m / t;
    out.precisions.push_back(p);
    if (p == 0) {
      zero = true;
    } else {
      log_sum += std::log(p);
    }
  }
  if (hyp_len == 0) {
    out.brevity_penalty = 0;
  } else {
    out.brevity_penalty = hyp_len > ref_len ? 1.0 : std::exp(1.0 - ref_len / hyp_len);
  }
  out.score = zero ? 0.0 : 100.0 * out.brevity_penalty * std::exp(log_sum / max_n);
  return out;
}

namespace {

struct Piece {
  bool any = false;
  bool one = false;
  char c = 0;
};

bool like_rec(const std::vector<Piece>& p, std::size_t i, const std::string& v, std::size_t j) {
  if (i == p.size()) return j == v.size();
  if (p[i].any) {
    for (std::size_t k = j; k <= v.size(); ++k) {
      if (like_rec(p, i + 1, v, k)) return true;
    }
    return false;
  }
  if (j == v.size()) return false;
  if (p[i].one) return like_rec(p, i + 1, v, j + 1);
  const auto lower = [](char ch) { return static_cast<char>(std::tolower(static_cast<unsigned char>(ch))); };
  return lower(p[i].c) == lower(v[j]) && like_rec(p, i + 1, v, j + 1);
}

}  // namespace

bool like(const std::string& pattern, const std::string& value) {
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const char c = pattern[i];
    if (c == '\\' && i + 1 < pattern.size() &&
        (pattern[i + 1] == '%' || pattern[i + 1] == '_' || pattern[i + 1] == '\\')) {
      pieces.push_back({false, false, pattern[++i]});
    } else if (c == '%') {
      pieces.push_back({true, false, 0});
    } else if (c == '_') {
      pieces.push_back({false, true, 0});
    } else {
      pieces.push_back({false, false, c});
    }
  }
  return like_rec(pieces, 0, value, 0);
}

std::size_t lcs_length(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      t[i][j] = a[i - 1] == b[j - 1] ? t[i - 1][j - 1] + 1 : std::max(t[i - 1][j], t[i][j - 1]);
    }
  }
  return t[a.size()][b.size()];
}

std::set<std::string> fold(const std::vector<std::pair<Op, std::set<std::string>>>& clauses,
                           const std::set<std::string>& universe) {
  if (clauses.empty()) return universe;
  std::set<std::string> acc = clauses.front().second;
  for (std::size_t i = 1; i < clauses.size(); ++i) {
    const auto& [op, m] = clauses[i];
    std::set<std::string> next;
    switch (op) {
      case Op::kAnd:
        std::set_intersection(acc.begin(), acc.end(), m.begin(), m.end(),
                              std::inserter(next, next.end()));
        break;
      case Op::kOr:
        std::set_union(acc.begin(), acc.end(), m.begin(), m.end(),
                       std::inserter(next, next.end()));
        break;
      default:
        std::set_difference(acc.begin(), acc.end(), m.begin(), m.end(),
                            std::inserter(next, next.end()));
        break;
    }
    acc = std::move(next);
  }
  return acc;
}

std::vector<std::size_t> bin_counts(const std::vector<double>& values, double lo, double hi,
                                    std::size_t bins) {
  std::vector<std::size_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    if (width <= 0 || v <= lo) {
      ++counts[0];
      continue;
    }
    if (v >= hi) {
      ++counts[bins - 1];
      continue;
    }
    std::size_t found = bins - 1;
    for (std::size_t i = 0; i < bins; ++i) {
      const double upper = i + 1 == bins ? hi : lo + width * static_cast<double>(i + 1);
      if (v < upper) {
        found = i;
        break;
      }
    }
    counts[found] += 1;
  }
  return counts;
}

}  // namespace mtwb::oracle
