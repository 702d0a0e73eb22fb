// Slow, independent reference implementations and random generators used by
// the tests. Nothing here calls into the library's metric code.
#ifndef COREF_TESTS_ORACLES_H_
#define COREF_TESTS_ORACLES_H_

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "coref/metrics.h"
#include "coref/types.h"

namespace coref::testing {

using Sets = std::vector<std::set<Span>>;

inline Sets as_sets(const Clustering &c) {
  Sets sets;
  for (const Cluster &cluster : c.clusters()) sets.emplace_back(cluster.begin(), cluster.end());
  return sets;
}

inline long intersection_size(const std::set<Span> &a, const std::set<Span> &b) {
  long n = 0;
  for (const Span &s : a) n += b.count(s);
  return n;
}

inline Rational naive_phi4(const std::set<Span> &k, const std::set<Span> &r) {
  return Rational(2 * intersection_size(k, r), static_cast<long>(k.size() + r.size()));
}

// Maximum total phi4 over every injective partial map key -> response.
inline Rational brute_force_ceaf_similarity(const Sets &key, const Sets &response) {
  std::vector<bool> used(response.size(), false);
  Rational best = 0;
  std::function<void(size_t, Rational)> search = [&](size_t i, Rational acc) {
    if (i == key.size()) {
      best = std::max(best, acc);
      return;
    }
    search(i + 1, acc);
    for (size_t j = 0; j < response.size(); ++j) {
      if (used[j]) continue;
      used[j] = true;
      search(i + 1, acc + naive_phi4(key[i], response[j]));
      used[j] = false;
    }
  };
  search(0, 0);
  return best;
}

struct NaivePRF {
  Rational precision = 0;
  Rational recall = 0;
  Rational f1() const {
    return precision + recall == 0 ? Rational(0)
                                   : 2 * precision * recall / (precision + recall);
  }
};

inline Rational safe_div(const Rational &a, const Rational &b) {
  return b == 0 ? Rational(0) : a / b;
}

// MUC recall of key against response: links needed to rebuild each key
// cluster from the partition the response induces on it.
inline Rational naive_muc_recall(const Sets &key, const Sets &response) {
  Rational num = 0, den = 0;
  for (const auto &k : key) {
    long parts = 0;
    std::set<Span> covered;
    for (const auto &r : response) {
      long shared = intersection_size(k, r);
      if (shared > 0) {
        ++parts;
        for (const Span &s : r) {
          if (k.count(s)) covered.insert(s);
        }
      }
    }
    parts += static_cast<long>(k.size() - covered.size());
    num += static_cast<long>(k.size()) - parts;
    den += static_cast<long>(k.size()) - 1;
  }
  return safe_div(num, den);
}

inline NaivePRF naive_muc(const Sets &key, const Sets &response) {
  return {naive_muc_recall(response, key), naive_muc_recall(key, response)};
}

inline Rational naive_b3_recall(const Sets &key, const Sets &response) {
  Rational num = 0;
  long mentions = 0;
  for (const auto &k : key) {
    for (const Span &m : k) {
      ++mentions;
      for (const auto &r : response) {
        if (r.count(m)) num += Rational(intersection_size(k, r), static_cast<long>(k.size()));
      }
    }
  }
  return safe_div(num, Rational(mentions));
}

inline NaivePRF naive_b3(const Sets &key, const Sets &response) {
  return {naive_b3_recall(response, key), naive_b3_recall(key, response)};
}

inline NaivePRF naive_ceaf(const Sets &key, const Sets &response) {
  Rational sim = brute_force_ceaf_similarity(key, response);
  return {safe_div(sim, Rational(static_cast<long>(response.size()))),
          safe_div(sim, Rational(static_cast<long>(key.size())))};
}

// Connected components of the link graph, by repeated set merging.
inline Sets naive_closure(const std::vector<SpanPair> &links) {
  Sets groups;
  for (const auto &[a, b] : links) {
    std::set<Span> merged = {a, b};
    Sets rest;
    for (auto &g : groups) {
      if (g.count(a) || g.count(b)) {
        merged.insert(g.begin(), g.end());
      } else {
        rest.push_back(g);
      }
    }
    rest.push_back(merged);
    groups = std::move(rest);
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

inline Sets sorted_sets(Sets sets) {
  std::sort(sets.begin(), sets.end());
  return sets;
}

// Random clustering over width-1 spans drawn from [0, universe): each drawn
// span joins one of up to max_clusters clusters. Clusters may be singletons.
inline Clustering random_clustering(std::mt19937_64 &rng, int universe, int max_clusters,
                                    double keep = 0.7) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, std::max(max_clusters, 1) - 1);
  std::vector<Cluster> clusters(std::max(max_clusters, 1));
  for (int i = 0; i < universe; ++i) {
    if (coin(rng) < keep) clusters[pick(rng)].push_back(Span{i, i});
  }
  std::vector<Cluster> nonempty;
  for (auto &c : clusters) {
    if (!c.empty()) nonempty.push_back(std::move(c));
  }
  return Clustering(std::move(nonempty));
}

inline Clustering drop_singletons(const Clustering &c) {
  std::vector<Cluster> kept;
  for (const Cluster &cluster : c.clusters()) {
    if (cluster.size() >= 2) kept.push_back(cluster);
  }
  return Clustering(std::move(kept));
}


// System output made by applying a few random merge / split / add / remove /
// boundary-shift edits to the gold clusters of `doc`.
inline Clustering perturb_gold(std::mt19937_64 &rng, const Document &doc,
                               const Clustering &gold, int edits) {
  std::vector<Cluster> clusters = gold.clusters();
  auto used = [&](const Span &s) {
    for (const Cluster &c : clusters) {
      if (std::find(c.begin(), c.end(), s) != c.end()) return true;
    }
    return false;
  };
  auto random_index = [&](size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
  };
  auto random_span = [&]() -> std::optional<Span> {
    if (doc.token_count() == 0) return std::nullopt;
    int start = static_cast<int>(random_index(doc.token_count()));
    int sentence = doc.sentence_of(start);
    int last = doc.sentence_start(sentence) + doc.sentence_length(sentence) - 1;
    int end = std::min(last, start + static_cast<int>(random_index(3)));
    Span s{start, end};
    if (used(s)) return std::nullopt;
    return s;
  };
  for (int e = 0; e < edits; ++e) {
    int op = static_cast<int>(random_index(6));
    if (clusters.empty()) op = 3;
    if (op == 0 && clusters.size() >= 2) {
      size_t i = random_index(clusters.size()), j = random_index(clusters.size());
      if (i == j) continue;
      clusters[i].insert(clusters[i].end(), clusters[j].begin(), clusters[j].end());
      clusters.erase(clusters.begin() + static_cast<long>(j));
    } else if (op == 1) {
      size_t i = random_index(clusters.size());
      if (clusters[i].size() < 2) continue;
      size_t cut = 1 + random_index(clusters[i].size() - 1);
      Cluster tail(clusters[i].begin() + static_cast<long>(cut), clusters[i].end());
      clusters[i].resize(cut);
      clusters.push_back(std::move(tail));
    } else if (op == 2) {
      auto s = random_span();
      if (s) clusters[random_index(clusters.size())].push_back(*s);
    } else if (op == 3) {
      auto s = random_span();
      if (!s) continue;
      clusters.push_back({*s});
      auto t = random_span();
      if (t) clusters.back().push_back(*t);
    } else if (op == 4) {
      size_t i = random_index(clusters.size());
      if (clusters[i].empty()) continue;
      clusters[i].erase(clusters[i].begin() + static_cast<long>(random_index(clusters[i].size())));
    } else {
      size_t i = random_index(clusters.size());
      if (clusters[i].empty()) continue;
      Span &s = clusters[i][random_index(clusters[i].size())];
      Span shifted = s;
      switch (random_index(4)) {
        case 0: --shifted.start; break;
        case 1: ++shifted.start; break;
        case 2: --shifted.end; break;
        default: ++shifted.end; break;
      }
      if (!doc.valid(shifted) || !doc.within_sentence(shifted) || used(shifted)) continue;
      s = shifted;
    }
  }
  std::vector<Cluster> nonempty;
  for (auto &c : clusters) {
    if (!c.empty()) nonempty.push_back(std::move(c));
  }
  return Clustering(std::move(nonempty));
}

}  // namespace coref::testing

#endif  // COREF_TESTS_ORACLES_H_
