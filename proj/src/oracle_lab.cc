#include "coref/oracle_lab.h"

#include <algorithm>
#include <stdexcept>

namespace coref {

GoldTarget GoldTarget::from(const GoldAnnotation &gold, GoldMode mode) {
  GoldTarget target;
  target.mode = mode;
  target.spans = mode == GoldMode::kAll ? gold.all_mentions : gold.anaphoric_spans();
  return target;
}

ScoredCandidateSet perfect_precision(const ScoredCandidateSet &cands,
                                     const GoldTarget &gold) {
  std::vector<ScoredSpan> kept;
  for (const ScoredSpan &entry : cands.entries()) {
    if (gold.spans.count(entry.span)) kept.push_back(entry);
  }
  return ScoredCandidateSet(std::move(kept));
}

ScoredCandidateSet perfect_recall(const ScoredCandidateSet &cands,
                                  const GoldTarget &gold) {
  std::vector<ScoredSpan> entries = cands.entries();
  SpanSet present = cands.spans();
  for (const Span &span : gold.spans) {
    if (!present.count(span)) entries.push_back({span, kAddedSpanScore});
  }
  return ScoredCandidateSet(std::move(entries));
}

ScoredCandidateSet perfect_both(const ScoredCandidateSet &cands,
                                const GoldTarget &gold) {
  return perfect_recall(perfect_precision(cands, gold), gold);
}

ScoredCandidateSet budget_matched_precision(const ScoredCandidateSet &cands,
                                            const GoldTarget &gold) {
  OracleOps ops = count_operations(cands, gold);
  long budget = std::min(ops.additions, ops.removals);
  std::vector<ScoredSpan> kept;
  // Entries are already in descending score order.
  for (const ScoredSpan &entry : cands.entries()) {
    if (budget > 0 && !gold.spans.count(entry.span)) {
      --budget;
      continue;
    }
    kept.push_back(entry);
  }
  return ScoredCandidateSet(std::move(kept));
}

namespace {

std::vector<Span> textual_order(const ScoredCandidateSet &cands) {
  SpanSet spans = cands.spans();
  return {spans.begin(), spans.end()};
}

template <typename Allowed>
Clustering link_within_gold(const ScoredCandidateSet &cands,
                            const Clustering &gold_clusters, Allowed allowed) {
  std::vector<Span> ordered = textual_order(cands);
  auto gold_index = gold_clusters.cluster_index();
  std::vector<SpanPair> links;
  for (size_t i = 0; i < ordered.size(); ++i) {
    auto it = gold_index.find(ordered[i]);
    if (it == gold_index.end()) continue;
    for (size_t j = i; j-- > 0;) {
      auto jt = gold_index.find(ordered[j]);
      if (jt == gold_index.end() || jt->second != it->second) continue;
      if (!allowed(i, j)) continue;
      links.emplace_back(ordered[i], ordered[j]);
      break;
    }
  }
  return transitive_closure(links);
}

}  // namespace

Clustering oracle_linker(const ScoredCandidateSet &cands,
                         const Clustering &gold_clusters) {
  return link_within_gold(cands, gold_clusters, [](size_t, size_t) { return true; });
}

std::vector<Span> top_k_antecedents(const std::vector<Span> &ordered_candidates,
                                    size_t mention_index,
                                    const std::map<SpanPair, double> &coarse_scores,
                                    int k) {
  struct Ranked {
    bool scored;
    double score;
    size_t index;
  };
  const Span &mention = ordered_candidates[mention_index];
  std::vector<Ranked> ranked;
  for (size_t j = 0; j < mention_index; ++j) {
    auto it = coarse_scores.find({mention, ordered_candidates[j]});
    ranked.push_back({it != coarse_scores.end(),
                      it != coarse_scores.end() ? it->second : 0.0, j});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked &a, const Ranked &b) {
    if (a.scored != b.scored) return a.scored;
    if (a.scored && a.score != b.score) return a.score > b.score;
    return a.index > b.index;
  });
  size_t keep = std::min(ranked.size(), static_cast<size_t>(std::max(k, 0)));
  std::vector<Span> result;
  for (size_t r = 0; r < keep; ++r) result.push_back(ordered_candidates[ranked[r].index]);
  return result;
}

Clustering oracle_linker_pruned(const ScoredCandidateSet &cands,
                                const Clustering &gold_clusters,
                                const std::map<SpanPair, double> &coarse_scores,
                                int k) {
  std::vector<Span> ordered = textual_order(cands);
  std::vector<SpanSet> allowed(ordered.size());
  for (size_t i = 0; i < ordered.size(); ++i) {
    auto top = top_k_antecedents(ordered, i, coarse_scores, k);
    allowed[i] = SpanSet(top.begin(), top.end());
  }
  return link_within_gold(cands, gold_clusters, [&](size_t i, size_t j) {
    return allowed[i].count(ordered[j]) > 0;
  });
}

OracleOps count_operations(const ScoredCandidateSet &cands,
                           const GoldTarget &gold) {
  OracleOps ops;
  SpanSet present = cands.spans();
  for (const Span &span : gold.spans) ops.additions += !present.count(span);
  for (const Span &span : present) ops.removals += !gold.spans.count(span);
  return ops;
}

double per_op_effect(double delta_f1, const OracleOps &ops) {
  if (ops.total() == 0) {
    throw std::domain_error("per-operation effect undefined: no operations");
  }
  return delta_f1 / static_cast<double>(ops.total());
}

double per_op_effect_by_document(const std::vector<double> &delta_f1,
                                 const std::vector<OracleOps> &ops) {
  if (delta_f1.size() != ops.size()) {
    throw std::invalid_argument("delta and operation lists differ in length");
  }
  double sum = 0.0;
  long counted = 0;
  for (size_t d = 0; d < ops.size(); ++d) {
    if (ops[d].total() == 0) continue;
    sum += per_op_effect(delta_f1[d], ops[d]);
    ++counted;
  }
  if (counted == 0) {
    throw std::domain_error("per-operation effect undefined: no operations");
  }
  return sum / static_cast<double>(counted);
}

}  // namespace coref
