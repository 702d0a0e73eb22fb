#include "coref/types.h"

#include <algorithm>
#include <numeric>

namespace coref {

Clustering::Clustering(std::vector<Cluster> clusters) {
  SpanSet seen;
  for (auto &cluster : clusters) {
    std::sort(cluster.begin(), cluster.end());
    cluster.erase(std::unique(cluster.begin(), cluster.end()), cluster.end());
    if (cluster.empty()) continue;
    for (const Span &span : cluster) {
      if (!seen.insert(span).second) {
        throw InvalidClustering("span " + to_string(span) +
                                " appears in two clusters");
      }
    }
    clusters_.push_back(std::move(cluster));
  }
  std::sort(clusters_.begin(), clusters_.end());
}

SpanSet Clustering::mentions() const {
  SpanSet result;
  for (const Cluster &cluster : clusters_) {
    result.insert(cluster.begin(), cluster.end());
  }
  return result;
}

std::map<Span, size_t> Clustering::cluster_index() const {
  std::map<Span, size_t> index;
  for (size_t i = 0; i < clusters_.size(); ++i) {
    for (const Span &span : clusters_[i]) index.emplace(span, i);
  }
  return index;
}

Clustering Clustering::without_singletons() const {
  Clustering result;
  for (const Cluster &cluster : clusters_) {
    if (cluster.size() >= 2) result.clusters_.push_back(cluster);
  }
  return result;
}

Document::Document(std::string doc_id,
                   std::vector<std::vector<std::string>> sentences, int part)
    : doc_id_(std::move(doc_id)), part_(part), sentences_(std::move(sentences)) {
  for (size_t s = 0; s < sentences_.size(); ++s) {
    offsets_.push_back(static_cast<int>(tokens_.size()));
    for (const std::string &token : sentences_[s]) {
      tokens_.push_back(token);
      token_sentence_.push_back(static_cast<int>(s));
    }
  }
}

bool Document::within_sentence(const Span &span) const {
  return valid(span) && sentence_of(span.start) == sentence_of(span.end);
}

std::string Document::text(const Span &span) const {
  std::string result;
  for (int i = span.start; i <= span.end; ++i) {
    if (i > span.start) result += ' ';
    result += tokens_[i];
  }
  return result;
}

void Document::set_pos_tags(std::vector<std::string> tags) {
  if (!tags.empty() && static_cast<int>(tags.size()) != token_count()) {
    throw std::invalid_argument("document " + doc_id_ + ": " +
                                std::to_string(tags.size()) + " POS tags for " +
                                std::to_string(token_count()) + " tokens");
  }
  pos_tags_ = std::move(tags);
}

void Document::set_parse_spans(std::vector<Constituent> spans) {
  for (const Constituent &c : spans) {
    if (!within_sentence(c.span)) {
      throw std::invalid_argument("document " + doc_id_ + ": constituent " +
                                  c.label + to_string(c.span) +
                                  " crosses a sentence boundary");
    }
  }
  parse_spans_ = std::move(spans);
}

SpanSet GoldAnnotation::singletons() const {
  SpanSet anaphoric_set = anaphoric_spans();
  SpanSet result;
  std::set_difference(all_mentions.begin(), all_mentions.end(),
                      anaphoric_set.begin(), anaphoric_set.end(),
                      std::inserter(result, result.end()));
  return result;
}

void GoldAnnotation::validate(const Document &doc) const {
  for (const Cluster &cluster : anaphoric.clusters()) {
    if (cluster.size() < 2) {
      throw std::invalid_argument("document " + doc.doc_id() +
                                  ": anaphoric cluster of size 1");
    }
  }
  for (const Span &span : anaphoric.mentions()) {
    if (!all_mentions.count(span)) {
      throw std::invalid_argument("document " + doc.doc_id() + ": span " +
                                  to_string(span) +
                                  " missing from all_mentions");
    }
  }
  for (const Span &span : all_mentions) {
    if (!doc.valid(span)) {
      throw std::invalid_argument("document " + doc.doc_id() + ": span " +
                                  to_string(span) + " out of range");
    }
  }
}

bool ScoredCandidateSet::precedes(const ScoredSpan &a, const ScoredSpan &b) {
  if (a.score != b.score) return a.score > b.score;
  return a.span < b.span;
}

ScoredCandidateSet::ScoredCandidateSet(std::vector<ScoredSpan> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), precedes);
  SpanSet seen;
  for (const ScoredSpan &entry : entries_) {
    if (!seen.insert(entry.span).second) {
      throw std::invalid_argument("duplicate candidate span " +
                                  to_string(entry.span));
    }
  }
}

SpanSet ScoredCandidateSet::spans() const {
  SpanSet result;
  for (const ScoredSpan &entry : entries_) result.insert(entry.span);
  return result;
}

bool ScoredCandidateSet::contains(const Span &span) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const ScoredSpan &e) { return e.span == span; });
}

namespace {

class DisjointSets {
 public:
  size_t add(const Span &span) {
    auto [it, inserted] = ids_.emplace(span, parent_.size());
    if (inserted) parent_.push_back(parent_.size());
    return it->second;
  }
  size_t find(size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(size_t a, size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  Clustering clusters() {
    std::map<size_t, Cluster> groups;
    for (const auto &[span, id] : ids_) groups[find(id)].push_back(span);
    std::vector<Cluster> result;
    for (auto &[root, cluster] : groups) {
      if (cluster.size() >= 2) result.push_back(std::move(cluster));
    }
    return Clustering(std::move(result));
  }

 private:
  std::map<Span, size_t> ids_;
  std::vector<size_t> parent_;
};

}  // namespace

Clustering transitive_closure(const std::vector<SpanPair> &links) {
  DisjointSets sets;
  for (const auto &[a, b] : links) sets.unite(sets.add(a), sets.add(b));
  return sets.clusters();
}

Clustering closure_of(const std::vector<AntecedentDecision> &decisions) {
  std::vector<SpanPair> links;
  for (const AntecedentDecision &d : decisions) {
    if (d.antecedent) links.emplace_back(d.mention, *d.antecedent);
  }
  return transitive_closure(links);
}

std::string to_string(const Span &span) {
  return "(" + std::to_string(span.start) + "," + std::to_string(span.end) +
         ")";
}

}  // namespace coref
