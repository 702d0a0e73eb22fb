#ifndef COREF_PIPELINE_SIM_H_
#define COREF_PIPELINE_SIM_H_

#include <cstdint>
#include <map>
#include <vector>

#include "coref/metrics.h"
#include "coref/types.h"

namespace coref {

// Detector/linker hyperparameters.
struct PipelineConfig {
  int max_span_width = 30;        // L
  double spans_per_word = 0.4;    // lambda
  int max_antecedents = 50;       // K
  double dummy_threshold = 0.0;   // links must score strictly above this

  // Throws std::invalid_argument on L < 1, lambda <= 0 or K < 0.
  void validate() const;
  // floor(lambda * T).
  size_t candidate_budget(int token_count) const;

  bool operator==(const PipelineConfig &) const = default;
};

// Fixed weights of the rule-based span scorer.
struct DetectorWeights {
  double pronoun = 2.0;              // width-1 pronoun
  double capitalized = 1.5;          // every token capitalized
  double determiner = 1.0;           // determiner-initial, width >= 2
  double function_word_end = -1.5;   // ends on a determiner or stopword
  double punctuation = -3.0;         // contains a punctuation token
  double width_penalty = -0.5;       // per token beyond the first
};

// Fixed weights of the rule-based antecedent scorer.
struct LinkerWeights {
  double exact_match = 10.0;
  double head_match = 5.0;
  double same_pronoun = 3.0;
  double compatible_pronoun = 2.0;
  double distance_decay = 0.05;      // per intervening candidate
};

// All within-sentence spans of width <= max_width, ordered by (start, end).
std::vector<Span> enumerate_spans(const Document &doc, int max_width);

double detector_score(const Document &doc, const Span &span,
                      const DetectorWeights &weights = {});

ScoredCandidateSet toy_detect(const Document &doc, int max_width,
                              const DetectorWeights &weights = {});

// Keeps the floor(lambda * T) best entries in the candidate order.
ScoredCandidateSet prune_topk(const ScoredCandidateSet &scored, double spans_per_word,
                              int token_count);

// Pair score for linking `mention` to the earlier `antecedent`, where
// `distance` counts candidates between them plus one. Returns -infinity for
// overlapping spans.
double link_score(const Document &doc, const Span &mention, const Span &antecedent,
                  int distance, const LinkerWeights &weights = {});

struct LinkResult {
  std::vector<AntecedentDecision> decisions;  // one per candidate, textual order
  std::map<SpanPair, double> pair_scores;     // every scored pair
  Clustering clustering;
};

// Each candidate, in textual order, picks the best of its max_antecedents
// nearest preceding candidates if that score beats dummy_threshold.
LinkResult toy_link_detailed(const ScoredCandidateSet &cands, const Document &doc,
                             int max_antecedents, double dummy_threshold,
                             const LinkerWeights &weights = {});
Clustering toy_link(const ScoredCandidateSet &cands, const Document &doc,
                    int max_antecedents, double dummy_threshold);

// Detect, prune, link.
PredictionSet run_pipeline(const Document &doc, const PipelineConfig &config);

struct SynthesisConfig {
  uint64_t seed = 13;
  int documents = 10;
  int min_entities = 2;
  int max_entities = 6;
  int min_entity_mentions = 2;
  int max_entity_mentions = 6;
  // Chance that a sentence carries an extra singleton noun phrase.
  double singleton_rate = 0.5;
  // Chance that a non-first entity mention is realized as a pronoun.
  double pronoun_rate = 0.3;
  // Distinct nouns/names/verbs drawn from.
  int vocabulary = 60;
  int max_mentions_per_sentence = 3;

  void validate() const;
};

// Reproducible synthetic corpus with POS tags, a constituency parse and gold
// clusters. Every document satisfies the GoldAnnotation invariants.
Corpus generate_synthetic(const SynthesisConfig &config);

struct SweepGrid {
  std::vector<int> max_span_width = {30};
  std::vector<double> spans_per_word = {0.4};
  std::vector<int> max_antecedents = {50};
  double dummy_threshold = 0.0;
};

struct SweepRow {
  PipelineConfig config;
  MetricReport metrics;
  PRF anaphoric_mentions;  // candidate P/R against anaphoric mentions
  PRF all_mentions;        // candidate P/R against all mentions
};

// One row per grid point, in (L, lambda, K) nesting order. Grid points run on
// up to `threads` worker threads; results do not depend on the count.
std::vector<SweepRow> sweep(const Corpus &corpus, const SweepGrid &grid,
                            int threads = 1);

SweepRow evaluate_config(const Corpus &corpus, const PipelineConfig &config);

}  // namespace coref

#endif  // COREF_PIPELINE_SIM_H_
