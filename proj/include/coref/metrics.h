#ifndef COREF_METRICS_H_
#define COREF_METRICS_H_

#include <optional>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "coref/types.h"

namespace coref {

using Rational = boost::multiprecision::cpp_rational;

// Precision and recall kept as exact numerator/denominator pairs so that
// corpus scores are micro-averaged without rounding. 0/0 reads as 0.
struct PRF {
  Rational p_num = 0;
  Rational p_den = 0;
  Rational r_num = 0;
  Rational r_den = 0;

  Rational exact_precision() const;
  Rational exact_recall() const;
  Rational exact_f1() const;

  double precision() const;
  double recall() const;
  double f1() const;

  PRF &operator+=(const PRF &other);
};

struct MetricReport {
  PRF muc;
  PRF b3;
  PRF ceaf_phi4;

  Rational exact_avg_f1() const;
  double avg_f1() const;

  MetricReport &operator+=(const MetricReport &other);
};

struct MetricOptions {
  // Keep size-1 clusters in key and response (singleton-aware scoring).
  bool keep_singletons = false;
};

PRF mention_prf(const SpanSet &predicted, const SpanSet &gold);

PRF muc(const Clustering &key, const Clustering &response,
        const MetricOptions &options = {});
PRF b_cubed(const Clustering &key, const Clustering &response,
            const MetricOptions &options = {});
PRF ceaf_phi4(const Clustering &key, const Clustering &response,
              const MetricOptions &options = {});

// phi4(K, R) = 2|K n R| / (|K| + |R|).
Rational phi4(const Cluster &key, const Cluster &response);

// Optimal one-to-one alignment of key to response clusters under phi4.
struct CeafAlignment {
  // response index aligned to each key cluster, or -1.
  std::vector<int> key_to_response;
  Rational similarity = 0;
};
CeafAlignment align_clusters(const std::vector<Cluster> &key,
                             const std::vector<Cluster> &response);

MetricReport average_f1(const Clustering &key, const Clustering &response,
                        const MetricOptions &options = {});

// Micro-averages over documents. Documents whose key is empty after
// singleton removal are skipped.
class MetricAccumulator {
 public:
  explicit MetricAccumulator(MetricOptions options = {}) : options_(options) {}

  void add(const Clustering &key, const Clustering &response);
  const MetricReport &report() const { return total_; }
  int documents() const { return documents_; }

 private:
  MetricOptions options_;
  MetricReport total_;
  int documents_ = 0;
};

struct ClusterStats {
  double mean_cluster_size = 0.0;
  // Per cluster: max end - min start + 1.
  double mean_token_extent = 0.0;
  long clusters = 0;
  long mentions = 0;
  long total_extent = 0;

  ClusterStats &operator+=(const ClusterStats &other);
};

ClusterStats cluster_stats(const Clustering &clustering);

struct ScoreDiagnostics {
  std::optional<double> mean_pair_score;
  std::optional<double> mean_correct_pair_score;
  long pairs = 0;
  long correct_pairs = 0;
  double pair_score_sum = 0.0;
  double correct_score_sum = 0.0;

  ScoreDiagnostics &operator+=(const ScoreDiagnostics &other);
};

ScoreDiagnostics score_diagnostics(const std::map<SpanPair, double> &pair_scores,
                                   const std::set<SpanPair> &correct_pairs);

}  // namespace coref

#endif  // COREF_METRICS_H_
