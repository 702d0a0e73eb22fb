#ifndef COREF_ORACLE_LAB_H_
#define COREF_ORACLE_LAB_H_

#include <map>
#include <vector>

#include "coref/types.h"

namespace coref {

enum class GoldMode { kAnaphoric, kAll };

struct GoldTarget {
  GoldMode mode = GoldMode::kAnaphoric;
  SpanSet spans;

  static GoldTarget from(const GoldAnnotation &gold, GoldMode mode);
};

struct OracleOps {
  long additions = 0;
  long removals = 0;

  long total() const { return additions + removals; }
  OracleOps &operator+=(const OracleOps &other) {
    additions += other.additions;
    removals += other.removals;
    return *this;
  }
  bool operator==(const OracleOps &) const = default;
};

// Drops every candidate that is not a gold mention.
ScoredCandidateSet perfect_precision(const ScoredCandidateSet &cands,
                                     const GoldTarget &gold);

// Adds every missing gold mention with score kAddedSpanScore, so added
// spans lead the order.
ScoredCandidateSet perfect_recall(const ScoredCandidateSet &cands,
                                  const GoldTarget &gold);

// Exactly the gold mentions; scores kept where the detector had them.
ScoredCandidateSet perfect_both(const ScoredCandidateSet &cands,
                                const GoldTarget &gold);

// Removes the min(missing, extra) highest-scoring non-gold candidates, where
// missing = |gold \ cands|. Nothing is added.
ScoredCandidateSet budget_matched_precision(const ScoredCandidateSet &cands,
                                            const GoldTarget &gold);

// Links each candidate in a gold cluster to its nearest preceding candidate
// from the same cluster; everything else takes the dummy. Size-1 results are
// dropped.
Clustering oracle_linker(const ScoredCandidateSet &cands,
                         const Clustering &gold_clusters);

// As oracle_linker, but a candidate may only link to one of its top-k
// preceding candidates by coarse score. Pairs absent from coarse_scores rank
// below every scored pair; ties go to the nearer antecedent.
Clustering oracle_linker_pruned(const ScoredCandidateSet &cands,
                                const Clustering &gold_clusters,
                                const std::map<SpanPair, double> &coarse_scores,
                                int k);

// The top-k preceding candidates (in textual order) of `mention` under the
// coarse-score ranking used by oracle_linker_pruned.
std::vector<Span> top_k_antecedents(const std::vector<Span> &ordered_candidates,
                                    size_t mention_index,
                                    const std::map<SpanPair, double> &coarse_scores,
                                    int k);

OracleOps count_operations(const ScoredCandidateSet &cands,
                           const GoldTarget &gold);

// delta_f1 amortized over ops.total(); throws std::domain_error on zero ops.
double per_op_effect(double delta_f1, const OracleOps &ops);

// Per-document variant: mean of per-document effects, skipping documents
// with no operations. Throws std::domain_error if every document is skipped.
double per_op_effect_by_document(const std::vector<double> &delta_f1,
                                 const std::vector<OracleOps> &ops);

}  // namespace coref

#endif  // COREF_ORACLE_LAB_H_
