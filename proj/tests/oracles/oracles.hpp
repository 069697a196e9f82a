#pragma once

// Straight-from-the-definition reimplementations used to cross-check the
// library. Nothing here calls into nfrlens, so a shared bug cannot hide.

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

inline constexpr std::size_t kLabels = 11;
using Bits = std::array<bool, kLabels>;

// ---- TF-IDF ----

inline std::map<std::string, double> tfidf(const std::vector<std::vector<std::string>>& train,
                                           const std::vector<std::string>& query) {
  const double n = static_cast<double>(train.size());
  std::map<std::string, double> raw;
  std::map<std::string, int> tf;
  for (const auto& t : query) tf[t] += 1;
  for (const auto& [term, count] : tf) {
    int df = 0;
    for (const auto& doc : train) {
      for (const auto& t : doc) {
        if (t == term) {
          ++df;
          break;
        }
      }
    }
    if (df == 0) continue;
    raw[term] = count * (std::log((1.0 + n) / (1.0 + df)) + 1.0);
  }
  double norm = 0.0;
  for (const auto& [t, w] : raw) norm += w * w;
  norm = std::sqrt(norm);
  if (norm > 0) {
    for (auto& [t, w] : raw) w /= norm;
  }
  return raw;
}

// ---- readability ----

inline double flesch(double words, double sentences, double syllables) {
  return 206.835 - 1.015 * (words / sentences) - 84.6 * (syllables / words);
}

// ---- metrics ----

inline double sa(const std::vector<Bits>& g, const std::vector<Bits>& p) {
  double hits = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool same = true;
    for (std::size_t l = 0; l < kLabels; ++l) same = same && g[i][l] == p[i][l];
    hits += same ? 1 : 0;
  }
  return hits / static_cast<double>(g.size());
}

inline double hs(const std::vector<Bits>& g, const std::vector<Bits>& p) {
  double total = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    int inter = 0, uni = 0;
    for (std::size_t l = 0; l < kLabels; ++l) {
      inter += (g[i][l] && p[i][l]) ? 1 : 0;
      uni += (g[i][l] || p[i][l]) ? 1 : 0;
    }
    total += uni == 0 ? 1.0 : static_cast<double>(inter) / uni;
  }
  return total / static_cast<double>(g.size());
}

inline double hl(const std::vector<Bits>& g, const std::vector<Bits>& p, double n_labels = 11) {
  double total = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    int wrong = 0;
    for (std::size_t l = 0; l < kLabels; ++l) wrong += g[i][l] != p[i][l] ? 1 : 0;
    total += wrong / n_labels;
  }
  return total / static_cast<double>(g.size());
}

struct Prf {
  double p, r, f2;
};

inline Prf prf2(const std::vector<Bits>& g, const std::vector<Bits>& p, std::size_t label) {
  double tp = 0, fp = 0, fn = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i][label] && p[i][label]) tp += 1;
    if (!g[i][label] && p[i][label]) fp += 1;
    if (g[i][label] && !p[i][label]) fn += 1;
  }
  const double prec = tp + fp == 0 ? 0 : tp / (tp + fp);
  const double rec = tp + fn == 0 ? 0 : tp / (tp + fn);
  const double f2 = (4 * prec + rec) == 0 ? 0 : 5 * prec * rec / (4 * prec + rec);
  return {prec, rec, f2};
}

// {label, rest} reading of one label: a two-slot instance per statement.
inline void project(const std::vector<Bits>& in, std::size_t label, std::vector<Bits>& out) {
  out.assign(in.size(), Bits{});
  for (std::size_t i = 0; i < in.size(); ++i) {
    out[i][0] = in[i][label];
    for (std::size_t l = 0; l < kLabels; ++l) {
      if (l != label && in[i][l]) out[i][1] = true;
    }
  }
}

// ---- folds ----

// Sizes of round-robin folds, by enumeration.
inline std::vector<std::size_t> round_robin_sizes(std::size_t n, std::size_t k) {
  std::vector<std::size_t> sizes(k, 0);
  for (std::size_t i = 0; i < n; ++i) sizes[i % k] += 1;
  return sizes;
}

}  // namespace oracle
