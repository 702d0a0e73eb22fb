#include "coref/error_taxonomy.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "coref/lexicon.h"

namespace coref {

std::string_view name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kSpanError: return "span_error";
    case ErrorKind::kConflatedEntities: return "conflated_entities";
    case ErrorKind::kExtraMention: return "extra_mention";
    case ErrorKind::kExtraEntity: return "extra_entity";
    case ErrorKind::kDividedEntity: return "divided_entity";
    case ErrorKind::kMissingMention: return "missing_mention";
    case ErrorKind::kMissingEntity: return "missing_entity";
  }
  return "unknown";
}

std::string_view name(ConflationSubkind kind) {
  switch (kind) {
    case ConflationSubkind::kPronoun: return "pronoun";
    case ConflationSubkind::kExactMatch: return "exact_match";
    case ConflationSubkind::kHeadMatch: return "head_match";
    case ConflationSubkind::kOtherMatch: return "other_match";
    case ConflationSubkind::kSemanticOrOther: return "semantic_or_other";
  }
  return "unknown";
}

namespace {

Clustering normalized(std::vector<Cluster> clusters) {
  return Clustering(std::move(clusters)).without_singletons();
}

// Gold cluster ids touched by a system cluster, in first-touch order.
std::vector<size_t> gold_ids(const Cluster &cluster,
                             const std::map<Span, size_t> &gold_index) {
  std::vector<size_t> ids;
  for (const Span &span : cluster) {
    auto it = gold_index.find(span);
    if (it != gold_index.end() &&
        std::find(ids.begin(), ids.end(), it->second) == ids.end()) {
      ids.push_back(it->second);
    }
  }
  return ids;
}

Clustering fix_conflated(const Clustering &system, const Clustering &gold) {
  auto gold_index = gold.cluster_index();
  std::vector<Cluster> result;
  for (const Cluster &cluster : system.clusters()) {
    if (gold_ids(cluster, gold_index).size() < 2) {
      result.push_back(cluster);
      continue;
    }
    std::map<size_t, Cluster> parts;
    for (const Span &span : cluster) {
      auto it = gold_index.find(span);
      if (it != gold_index.end()) parts[it->second].push_back(span);
    }
    for (auto &[id, part] : parts) result.push_back(std::move(part));
  }
  return normalized(std::move(result));
}

Clustering fix_extra_mention(const Clustering &system, const Clustering &gold) {
  SpanSet gold_mentions = gold.mentions();
  std::vector<Cluster> result;
  for (const Cluster &cluster : system.clusters()) {
    bool has_gold = std::any_of(cluster.begin(), cluster.end(),
                                [&](const Span &s) { return gold_mentions.count(s); });
    if (!has_gold) {
      result.push_back(cluster);
      continue;
    }
    Cluster kept;
    for (const Span &span : cluster) {
      if (gold_mentions.count(span)) kept.push_back(span);
    }
    result.push_back(std::move(kept));
  }
  return normalized(std::move(result));
}

Clustering fix_extra_entity(const Clustering &system, const Clustering &gold) {
  SpanSet gold_mentions = gold.mentions();
  std::vector<Cluster> result;
  for (const Cluster &cluster : system.clusters()) {
    if (std::any_of(cluster.begin(), cluster.end(),
                    [&](const Span &s) { return gold_mentions.count(s); })) {
      result.push_back(cluster);
    }
  }
  return normalized(std::move(result));
}

Clustering fix_divided(const Clustering &system, const Clustering &gold) {
  auto system_index = system.cluster_index();
  std::vector<size_t> parent(system.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Cluster &cluster : gold.clusters()) {
    std::optional<size_t> first;
    for (const Span &span : cluster) {
      auto it = system_index.find(span);
      if (it == system_index.end()) continue;
      if (!first) {
        first = it->second;
      } else {
        size_t a = find(*first), b = find(it->second);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  }
  std::map<size_t, Cluster> merged;
  for (size_t i = 0; i < system.size(); ++i) {
    Cluster &target = merged[find(i)];
    const Cluster &source = system.clusters()[i];
    target.insert(target.end(), source.begin(), source.end());
  }
  std::vector<Cluster> result;
  for (auto &[root, cluster] : merged) result.push_back(std::move(cluster));
  return normalized(std::move(result));
}

Clustering fix_missing_mention(const Clustering &system, const Clustering &gold) {
  auto system_index = system.cluster_index();
  std::vector<Cluster> result = system.clusters();
  for (const Cluster &cluster : gold.clusters()) {
    std::map<size_t, long> holders;
    for (const Span &span : cluster) {
      auto it = system_index.find(span);
      if (it != system_index.end()) ++holders[it->second];
    }
    if (holders.empty()) continue;
    // Most siblings wins; ties go to the earlier cluster.
    size_t target = holders.begin()->first;
    for (const auto &[id, count] : holders) {
      if (count > holders[target]) target = id;
    }
    for (const Span &span : cluster) {
      if (!system_index.count(span)) result[target].push_back(span);
    }
  }
  return normalized(std::move(result));
}

Clustering fix_missing_entity(const Clustering &system, const Clustering &gold) {
  SpanSet present = system.mentions();
  std::vector<Cluster> result = system.clusters();
  for (const Cluster &cluster : gold.clusters()) {
    if (std::none_of(cluster.begin(), cluster.end(),
                     [&](const Span &s) { return present.count(s); })) {
      result.push_back(cluster);
    }
  }
  return normalized(std::move(result));
}

}  // namespace

SpanFixResult fix_span_errors(const Clustering &system,
                              const GoldAnnotation &gold, const Document &doc) {
  Clustering base = system.without_singletons();
  SpanSet gold_mentions = gold.anaphoric_spans();
  SpanSet system_mentions = base.mentions();
  SpanSet claimed;
  std::map<Span, Span> remap;
  SpanFixResult result;

  for (const Span &span : system_mentions) {
    if (gold_mentions.count(span)) continue;
    std::optional<Span> match;
    int candidates = 0;
    for (const Span &g : gold_mentions) {
      if (g.start > span.end) break;
      if (!g.overlaps(span) || system_mentions.count(g) || claimed.count(g)) continue;
      if (doc.valid(g) && doc.valid(span) &&
          doc.sentence_of(g.start) != doc.sentence_of(span.start)) {
        continue;
      }
      ++candidates;
      match = g;
    }
    if (candidates != 1) continue;
    claimed.insert(*match);
    remap.emplace(span, *match);
    result.errors.push_back({ErrorKind::kSpanError, {span, *match}, {}});
  }

  std::vector<Cluster> clusters;
  for (const Cluster &cluster : base.clusters()) {
    Cluster mapped;
    for (const Span &span : cluster) {
      auto it = remap.find(span);
      mapped.push_back(it == remap.end() ? span : it->second);
    }
    clusters.push_back(std::move(mapped));
  }
  result.clustering = normalized(std::move(clusters));
  return result;
}

std::vector<ErrorInstance> categorize(const Clustering &system_in,
                                      const Clustering &gold) {
  Clustering system = system_in.without_singletons();
  auto gold_index = gold.cluster_index();
  auto system_index = system.cluster_index();
  SpanSet gold_mentions = gold.mentions();
  std::vector<ErrorInstance> errors;

  for (const Cluster &cluster : system.clusters()) {
    std::vector<size_t> ids = gold_ids(cluster, gold_index);
    if (ids.size() >= 2) {
      std::map<size_t, Cluster> parts;
      for (const Span &span : cluster) {
        auto it = gold_index.find(span);
        if (it != gold_index.end()) parts[it->second].push_back(span);
      }
      ErrorInstance instance{ErrorKind::kConflatedEntities, {}, {}};
      for (auto &[id, part] : parts) instance.clusters.push_back(std::move(part));
      std::sort(instance.clusters.begin(), instance.clusters.end());
      errors.push_back(std::move(instance));
    }
    if (ids.empty()) {
      errors.push_back({ErrorKind::kExtraEntity, {}, {cluster}});
    } else {
      for (const Span &span : cluster) {
        if (!gold_mentions.count(span)) {
          errors.push_back({ErrorKind::kExtraMention, {span}, {cluster}});
        }
      }
    }
  }

  for (const Cluster &cluster : gold.clusters()) {
    std::set<size_t> holders;
    std::vector<Span> absent;
    for (const Span &span : cluster) {
      auto it = system_index.find(span);
      if (it == system_index.end()) {
        absent.push_back(span);
      } else {
        holders.insert(it->second);
      }
    }
    if (holders.size() >= 2) {
      ErrorInstance instance{ErrorKind::kDividedEntity, {}, {}};
      for (size_t id : holders) instance.clusters.push_back(system.clusters()[id]);
      errors.push_back(std::move(instance));
    }
    if (holders.empty()) {
      errors.push_back({ErrorKind::kMissingEntity, {}, {cluster}});
    } else {
      for (const Span &span : absent) {
        errors.push_back({ErrorKind::kMissingMention, {span}, {cluster}});
      }
    }
  }
  return errors;
}

Clustering fix(const Clustering &system_in, const Clustering &gold, ErrorKind kind) {
  Clustering system = system_in.without_singletons();
  switch (kind) {
    case ErrorKind::kConflatedEntities: return fix_conflated(system, gold);
    case ErrorKind::kExtraMention: return fix_extra_mention(system, gold);
    case ErrorKind::kExtraEntity: return fix_extra_entity(system, gold);
    case ErrorKind::kDividedEntity: return fix_divided(system, gold);
    case ErrorKind::kMissingMention: return fix_missing_mention(system, gold);
    case ErrorKind::kMissingEntity: return fix_missing_entity(system, gold);
    case ErrorKind::kSpanError: break;
  }
  throw std::invalid_argument("span errors are fixed with fix_span_errors");
}

Clustering fix_all(const Clustering &system, const GoldAnnotation &gold,
                   const Document &doc) {
  Clustering current = fix_span_errors(system, gold, doc).clustering;
  for (ErrorKind kind : kFixOrder) current = fix(current, gold.anaphoric, kind);
  return current;
}

ErrorReport delta_f1_report(const Clustering &system, const GoldAnnotation &gold,
                            const Document &doc) {
  return delta_f1_report(std::vector<ErrorAnalysisInput>{{&doc, &gold, &system}});
}

ErrorReport delta_f1_report(const std::vector<ErrorAnalysisInput> &documents) {
  MetricAccumulator baseline, span_fixed;
  std::map<ErrorKind, MetricAccumulator> fixed;
  ErrorReport report;
  for (ErrorKind kind : kAllErrorKinds) report.counts[kind] = 0;

  for (const ErrorAnalysisInput &input : documents) {
    const Clustering &key = input.gold->anaphoric;
    baseline.add(key, *input.system);
    SpanFixResult spans = fix_span_errors(*input.system, *input.gold, *input.doc);
    span_fixed.add(key, spans.clustering);
    report.counts[ErrorKind::kSpanError] += static_cast<long>(spans.errors.size());
    for (const ErrorInstance &e : categorize(spans.clustering, key)) ++report.counts[e.kind];
    for (ErrorKind kind : kFixOrder) fixed[kind].add(key, fix(spans.clustering, key, kind));
  }

  report.baseline_f1 = baseline.report().avg_f1();
  report.span_fixed_f1 = span_fixed.report().avg_f1();
  report.delta_f1[ErrorKind::kSpanError] = report.span_fixed_f1 - report.baseline_f1;
  for (ErrorKind kind : kFixOrder) {
    report.delta_f1[kind] = fixed[kind].report().avg_f1() - report.span_fixed_f1;
  }
  return report;
}

namespace {

int gap(const Span &a, const Span &b) {
  if (a.end < b.start) return b.start - a.end;
  if (b.end < a.start) return a.start - b.end;
  return 0;
}

bool is_pronoun(const Document &doc, const Span &span) {
  if (lexicon::is_deictic_word(doc.text(span))) return true;
  if (span.width() != 1) return false;
  if (doc.has_pos()) return lexicon::is_pronoun_tag(doc.pos_tags()[span.start]);
  return lexicon::is_pronoun_word(doc.token(span.start));
}

std::string head_of(const Document &doc, const Span &span) {
  if (doc.has_pos()) {
    for (int i = span.end; i >= span.start; --i) {
      if (!doc.pos_tags()[i].empty() && doc.pos_tags()[i][0] == 'N') {
        return lexicon::fold_case(doc.token(i));
      }
    }
  }
  return lexicon::fold_case(doc.token(span.end));
}

std::set<std::string> content_words(const Document &doc, const Span &span) {
  std::set<std::string> words;
  for (int i = span.start; i <= span.end; ++i) {
    if (!lexicon::is_stopword(doc.token(i))) words.insert(lexicon::fold_case(doc.token(i)));
  }
  return words;
}

}  // namespace

std::vector<SpanPair> conflation_links(const ErrorInstance &conflation) {
  std::vector<Cluster> parts = conflation.clusters;
  std::sort(parts.begin(), parts.end());
  std::vector<SpanPair> links;
  for (size_t i = 1; i < parts.size(); ++i) {
    std::optional<SpanPair> best;
    int best_gap = 0;
    for (size_t j = 0; j < i; ++j) {
      for (const Span &a : parts[j]) {
        for (const Span &b : parts[i]) {
          SpanPair pair = a < b ? SpanPair{a, b} : SpanPair{b, a};
          int g = gap(a, b);
          if (!best || g < best_gap || (g == best_gap && pair < *best)) {
            best = pair;
            best_gap = g;
          }
        }
      }
    }
    if (best) links.push_back(*best);
  }
  return links;
}

ConflationSubkind classify_link(const Document &doc, const Span &a, const Span &b) {
  if (is_pronoun(doc, a) || is_pronoun(doc, b)) return ConflationSubkind::kPronoun;
  if (lexicon::fold_case(doc.text(a)) == lexicon::fold_case(doc.text(b))) {
    return ConflationSubkind::kExactMatch;
  }
  if (head_of(doc, a) == head_of(doc, b)) return ConflationSubkind::kHeadMatch;
  std::set<std::string> wa = content_words(doc, a);
  for (const std::string &w : content_words(doc, b)) {
    if (wa.count(w)) return ConflationSubkind::kOtherMatch;
  }
  return ConflationSubkind::kSemanticOrOther;
}

std::map<ConflationSubkind, long> subtype_conflations(
    const std::vector<ErrorInstance> &instances, const Document &doc) {
  std::map<ConflationSubkind, long> counts;
  for (ConflationSubkind kind : kAllConflationSubkinds) counts[kind] = 0;
  for (const ErrorInstance &instance : instances) {
    if (instance.kind != ErrorKind::kConflatedEntities) continue;
    for (const auto &[a, b] : conflation_links(instance)) ++counts[classify_link(doc, a, b)];
  }
  return counts;
}

}  // namespace coref
