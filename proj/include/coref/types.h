#ifndef COREF_TYPES_H_
#define COREF_TYPES_H_

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace coref {

// Inclusive token interval with document-level indices.
struct Span {
  int start = 0;
  int end = 0;

  int width() const { return end - start + 1; }
  bool overlaps(const Span &other) const {
    return start <= other.end && other.start <= end;
  }
  auto operator<=>(const Span &) const = default;
};

using SpanSet = std::set<Span>;
using Cluster = std::vector<Span>;
using SpanPair = std::pair<Span, Span>;  // (mention, antecedent)

// A set of disjoint entity clusters. Kept in canonical form: every cluster
// sorted and deduplicated, clusters ordered lexicographically.
class Clustering {
 public:
  Clustering() = default;
  explicit Clustering(std::vector<Cluster> clusters);

  const std::vector<Cluster> &clusters() const { return clusters_; }
  size_t size() const { return clusters_.size(); }
  bool empty() const { return clusters_.empty(); }

  // All spans in all clusters.
  SpanSet mentions() const;

  // Span -> index of its cluster.
  std::map<Span, size_t> cluster_index() const;

  // Copy with clusters of size < 2 removed.
  Clustering without_singletons() const;

  bool operator==(const Clustering &) const = default;

 private:
  std::vector<Cluster> clusters_;
};

// Thrown when a clustering would place one span in two clusters.
class InvalidClustering : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Constituent {
  Span span;
  std::string label;
  bool operator==(const Constituent &) const = default;
};

class Document {
 public:
  Document() = default;
  Document(std::string doc_id, std::vector<std::vector<std::string>> sentences,
           int part = 0);

  const std::string &doc_id() const { return doc_id_; }
  int part() const { return part_; }
  const std::vector<std::vector<std::string>> &sentences() const {
    return sentences_;
  }
  int token_count() const { return static_cast<int>(tokens_.size()); }
  int sentence_count() const { return static_cast<int>(sentences_.size()); }
  const std::string &token(int i) const { return tokens_[i]; }
  const std::vector<std::string> &tokens() const { return tokens_; }

  // Document-level index of the first token of a sentence.
  int sentence_start(int sentence) const { return offsets_[sentence]; }
  int sentence_length(int sentence) const {
    return static_cast<int>(sentences_[sentence].size());
  }
  int sentence_of(int token) const { return token_sentence_[token]; }
  bool within_sentence(const Span &span) const;
  bool valid(const Span &span) const {
    return span.start >= 0 && span.start <= span.end &&
           span.end < token_count();
  }

  // Space-joined surface string of a span.
  std::string text(const Span &span) const;

  // Optional layers. Empty means absent.
  const std::vector<std::string> &pos_tags() const { return pos_tags_; }
  bool has_pos() const { return !pos_tags_.empty(); }
  void set_pos_tags(std::vector<std::string> tags);

  // Constituents in preorder (parent before child).
  const std::vector<Constituent> &parse_spans() const { return parse_spans_; }
  bool has_parse() const { return !parse_spans_.empty(); }
  void set_parse_spans(std::vector<Constituent> spans);

  bool operator==(const Document &other) const {
    return doc_id_ == other.doc_id_ && part_ == other.part_ &&
           sentences_ == other.sentences_ && pos_tags_ == other.pos_tags_ &&
           parse_spans_ == other.parse_spans_;
  }

 private:
  std::string doc_id_;
  int part_ = 0;
  std::vector<std::vector<std::string>> sentences_;
  std::vector<std::string> tokens_;
  std::vector<int> offsets_;
  std::vector<int> token_sentence_;
  std::vector<std::string> pos_tags_;
  std::vector<Constituent> parse_spans_;
};

// Gold coreference for one document. Anaphoric clusters all have size >= 2;
// all_mentions additionally holds singletons.
struct GoldAnnotation {
  Clustering anaphoric;
  SpanSet all_mentions;

  SpanSet anaphoric_spans() const { return anaphoric.mentions(); }
  SpanSet singletons() const;

  // Checks the annotation invariants; throws std::invalid_argument.
  void validate(const Document &doc) const;

  bool operator==(const GoldAnnotation &) const = default;
};

struct ScoredSpan {
  Span span;
  double score = 0.0;
  bool operator==(const ScoredSpan &) const = default;
};

inline constexpr double kAddedSpanScore =
    std::numeric_limits<double>::infinity();

// Detector output ordered by score descending, ties by (start, end).
class ScoredCandidateSet {
 public:
  ScoredCandidateSet() = default;
  explicit ScoredCandidateSet(std::vector<ScoredSpan> entries);

  const std::vector<ScoredSpan> &entries() const { return entries_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  SpanSet spans() const;
  bool contains(const Span &span) const;

  bool operator==(const ScoredCandidateSet &) const = default;

  // True if a is ordered before b.
  static bool precedes(const ScoredSpan &a, const ScoredSpan &b);

 private:
  std::vector<ScoredSpan> entries_;
};

struct AntecedentDecision {
  Span mention;
  std::optional<Span> antecedent;  // nullopt = dummy
  double score = 0.0;
  bool operator==(const AntecedentDecision &) const = default;
};

struct PredictionSet {
  std::string doc_id;
  int part = 0;
  std::optional<ScoredCandidateSet> candidates;
  std::optional<std::vector<AntecedentDecision>> decisions;
  std::optional<Clustering> clustering;
  // Pairwise linker scores, when the producer exposes them.
  std::map<SpanPair, double> pair_scores;

  bool operator==(const PredictionSet &) const = default;
};

struct Corpus {
  std::vector<Document> documents;
  std::vector<GoldAnnotation> gold;
  std::vector<std::string> warnings;
};

// Transitive closure of pairwise links over the given spans. Spans that are
// never linked form size-1 clusters and are dropped.
Clustering transitive_closure(const std::vector<SpanPair> &links);

// Clustering induced by non-dummy antecedent decisions.
Clustering closure_of(const std::vector<AntecedentDecision> &decisions);

std::string to_string(const Span &span);

}  // namespace coref

#endif  // COREF_TYPES_H_
