#include "coref/metrics.h"

#include <algorithm>
#include <limits>
#include <map>

namespace coref {
namespace {

Rational ratio(const Rational &num, const Rational &den) {
  if (den == 0) return 0;
  return num / den;
}

Clustering prepare(const Clustering &c, const MetricOptions &options) {
  return options.keep_singletons ? c : c.without_singletons();
}

size_t overlap(const Cluster &a, const Cluster &b) {
  size_t count = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

// Link-based recall numerator and denominator of `key` against `response`.
std::pair<Rational, Rational> muc_side(const Clustering &key,
                                       const Clustering &response) {
  auto index = response.cluster_index();
  long num = 0;
  long den = 0;
  for (const Cluster &cluster : key.clusters()) {
    std::set<size_t> touched;
    long unaligned = 0;
    for (const Span &span : cluster) {
      auto it = index.find(span);
      if (it == index.end()) {
        ++unaligned;
      } else {
        touched.insert(it->second);
      }
    }
    long partitions = static_cast<long>(touched.size()) + unaligned;
    long size = static_cast<long>(cluster.size());
    num += size - partitions;
    den += size - 1;
  }
  return {Rational(num), Rational(den)};
}

std::pair<Rational, Rational> b3_side(const Clustering &key,
                                      const Clustering &response) {
  auto index = response.cluster_index();
  Rational num = 0;
  long den = 0;
  for (const Cluster &cluster : key.clusters()) {
    std::map<size_t, long> overlaps;
    for (const Span &span : cluster) {
      auto it = index.find(span);
      if (it != index.end()) ++overlaps[it->second];
    }
    long squares = 0;
    for (const auto &[id, o] : overlaps) squares += o * o;
    num += Rational(squares, static_cast<long>(cluster.size()));
    den += static_cast<long>(cluster.size());
  }
  return {num, Rational(den)};
}

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// by successive shortest augmenting paths with potentials.
std::vector<int> min_cost_assignment(const std::vector<std::vector<long double>> &cost,
                                     size_t rows, size_t cols) {
  const long double inf = std::numeric_limits<long double>::infinity();
  std::vector<long double> u(rows + 1, 0), v(cols + 1, 0);
  std::vector<size_t> match(cols + 1, 0), way(cols + 1, 0);
  for (size_t i = 1; i <= rows; ++i) {
    match[0] = i;
    size_t j0 = 0;
    std::vector<long double> minv(cols + 1, inf);
    std::vector<bool> used(cols + 1, false);
    do {
      used[j0] = true;
      size_t i0 = match[j0];
      size_t j1 = 0;
      long double delta = inf;
      for (size_t j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        long double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(rows, -1);
  for (size_t j = 1; j <= cols; ++j) {
    if (match[j] != 0) row_to_col[match[j] - 1] = static_cast<int>(j - 1);
  }
  return row_to_col;
}

}  // namespace

Rational PRF::exact_precision() const { return ratio(p_num, p_den); }
Rational PRF::exact_recall() const { return ratio(r_num, r_den); }

Rational PRF::exact_f1() const {
  Rational p = exact_precision();
  Rational r = exact_recall();
  if (p + r == 0) return 0;
  return 2 * p * r / (p + r);
}

double PRF::precision() const { return exact_precision().convert_to<double>(); }
double PRF::recall() const { return exact_recall().convert_to<double>(); }
double PRF::f1() const { return exact_f1().convert_to<double>(); }

PRF &PRF::operator+=(const PRF &other) {
  p_num += other.p_num;
  p_den += other.p_den;
  r_num += other.r_num;
  r_den += other.r_den;
  return *this;
}

Rational MetricReport::exact_avg_f1() const {
  return (muc.exact_f1() + b3.exact_f1() + ceaf_phi4.exact_f1()) / 3;
}

double MetricReport::avg_f1() const {
  return exact_avg_f1().convert_to<double>();
}

MetricReport &MetricReport::operator+=(const MetricReport &other) {
  muc += other.muc;
  b3 += other.b3;
  ceaf_phi4 += other.ceaf_phi4;
  return *this;
}

PRF mention_prf(const SpanSet &predicted, const SpanSet &gold) {
  long hits = 0;
  for (const Span &span : predicted) hits += gold.count(span);
  PRF prf;
  prf.p_num = hits;
  prf.p_den = static_cast<long>(predicted.size());
  prf.r_num = hits;
  prf.r_den = static_cast<long>(gold.size());
  return prf;
}

PRF muc(const Clustering &key, const Clustering &response,
        const MetricOptions &options) {
  Clustering k = prepare(key, options);
  Clustering r = prepare(response, options);
  PRF prf;
  std::tie(prf.r_num, prf.r_den) = muc_side(k, r);
  std::tie(prf.p_num, prf.p_den) = muc_side(r, k);
  return prf;
}

PRF b_cubed(const Clustering &key, const Clustering &response,
            const MetricOptions &options) {
  Clustering k = prepare(key, options);
  Clustering r = prepare(response, options);
  PRF prf;
  std::tie(prf.r_num, prf.r_den) = b3_side(k, r);
  std::tie(prf.p_num, prf.p_den) = b3_side(r, k);
  return prf;
}

Rational phi4(const Cluster &key, const Cluster &response) {
  size_t total = key.size() + response.size();
  if (total == 0) return 0;
  return Rational(2 * static_cast<long>(overlap(key, response)),
                  static_cast<long>(total));
}

CeafAlignment align_clusters(const std::vector<Cluster> &key,
                             const std::vector<Cluster> &response) {
  CeafAlignment alignment;
  alignment.key_to_response.assign(key.size(), -1);
  if (key.empty() || response.empty()) return alignment;

  bool transposed = key.size() > response.size();
  const auto &rows = transposed ? response : key;
  const auto &cols = transposed ? key : response;
  std::vector<std::vector<Rational>> sim(rows.size(), std::vector<Rational>(cols.size()));
  std::vector<std::vector<long double>> cost(rows.size(),
                                             std::vector<long double>(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols.size(); ++j) {
      sim[i][j] = transposed ? phi4(cols[j], rows[i]) : phi4(rows[i], cols[j]);
      cost[i][j] = -sim[i][j].convert_to<long double>();
    }
  }
  std::vector<int> assignment = min_cost_assignment(cost, rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    int j = assignment[i];
    if (j < 0 || sim[i][j] == 0) continue;
    alignment.similarity += sim[i][j];
    if (transposed) {
      alignment.key_to_response[j] = static_cast<int>(i);
    } else {
      alignment.key_to_response[i] = j;
    }
  }
  return alignment;
}

PRF ceaf_phi4(const Clustering &key, const Clustering &response,
              const MetricOptions &options) {
  Clustering k = prepare(key, options);
  Clustering r = prepare(response, options);
  CeafAlignment alignment = align_clusters(k.clusters(), r.clusters());
  PRF prf;
  prf.r_num = alignment.similarity;
  prf.r_den = static_cast<long>(k.size());
  prf.p_num = alignment.similarity;
  prf.p_den = static_cast<long>(r.size());
  return prf;
}

MetricReport average_f1(const Clustering &key, const Clustering &response,
                        const MetricOptions &options) {
  MetricReport report;
  report.muc = muc(key, response, options);
  report.b3 = b_cubed(key, response, options);
  report.ceaf_phi4 = ceaf_phi4(key, response, options);
  return report;
}

void MetricAccumulator::add(const Clustering &key, const Clustering &response) {
  if (prepare(key, options_).empty()) return;
  total_ += average_f1(key, response, options_);
  ++documents_;
}

ClusterStats &ClusterStats::operator+=(const ClusterStats &other) {
  clusters += other.clusters;
  mentions += other.mentions;
  total_extent += other.total_extent;
  mean_cluster_size = clusters ? static_cast<double>(mentions) / clusters : 0.0;
  mean_token_extent = clusters ? static_cast<double>(total_extent) / clusters : 0.0;
  return *this;
}

ClusterStats cluster_stats(const Clustering &clustering) {
  ClusterStats stats;
  for (const Cluster &cluster : clustering.clusters()) {
    int first = cluster.front().start;
    int last = cluster.front().end;
    for (const Span &span : cluster) {
      first = std::min(first, span.start);
      last = std::max(last, span.end);
    }
    ++stats.clusters;
    stats.mentions += static_cast<long>(cluster.size());
    stats.total_extent += last - first + 1;
  }
  stats += ClusterStats{};
  return stats;
}

ScoreDiagnostics &ScoreDiagnostics::operator+=(const ScoreDiagnostics &other) {
  pairs += other.pairs;
  correct_pairs += other.correct_pairs;
  pair_score_sum += other.pair_score_sum;
  correct_score_sum += other.correct_score_sum;
  mean_pair_score.reset();
  mean_correct_pair_score.reset();
  if (pairs > 0) mean_pair_score = pair_score_sum / pairs;
  if (correct_pairs > 0) mean_correct_pair_score = correct_score_sum / correct_pairs;
  return *this;
}

ScoreDiagnostics score_diagnostics(const std::map<SpanPair, double> &pair_scores,
                                   const std::set<SpanPair> &correct_pairs) {
  ScoreDiagnostics diag;
  for (const auto &[pair, score] : pair_scores) {
    ++diag.pairs;
    diag.pair_score_sum += score;
    if (correct_pairs.count(pair)) {
      ++diag.correct_pairs;
      diag.correct_score_sum += score;
    }
  }
  diag += ScoreDiagnostics{};
  return diag;
}

}  // namespace coref
