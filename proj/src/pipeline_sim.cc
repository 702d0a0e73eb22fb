#include "coref/pipeline_sim.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <thread>

#include "coref/lexicon.h"

namespace coref {

void PipelineConfig::validate() const {
  if (max_span_width < 1) throw std::invalid_argument("max span width must be >= 1");
  if (!(spans_per_word > 0)) throw std::invalid_argument("spans per word must be > 0");
  if (max_antecedents < 0) throw std::invalid_argument("antecedent count must be >= 0");
}

size_t PipelineConfig::candidate_budget(int token_count) const {
  return static_cast<size_t>(std::floor(spans_per_word * token_count));
}

std::vector<Span> enumerate_spans(const Document &doc, int max_width) {
  std::vector<Span> spans;
  for (int s = 0; s < doc.sentence_count(); ++s) {
    int begin = doc.sentence_start(s);
    int end = begin + doc.sentence_length(s);
    for (int i = begin; i < end; ++i) {
      for (int j = i; j < end && j - i + 1 <= max_width; ++j) spans.push_back({i, j});
    }
  }
  return spans;
}

namespace {

bool is_punctuation(const std::string &token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), [](char c) {
    return std::ispunct(static_cast<unsigned char>(c));
  });
}

bool is_pronoun_span(const Document &doc, const Span &span) {
  return span.width() == 1 && lexicon::is_pronoun_word(doc.token(span.start));
}

bool all_capitalized(const Document &doc, const Span &span) {
  for (int i = span.start; i <= span.end; ++i) {
    if (!lexicon::is_capitalized(doc.token(i))) return false;
  }
  return true;
}

enum class PronounClass { kMasculine, kFeminine, kNeuter, kPlural, kFirst, kSecond, kOther };

PronounClass pronoun_class(const std::string &word) {
  std::string w = lexicon::fold_case(word);
  if (w == "he" || w == "him" || w == "his" || w == "himself") return PronounClass::kMasculine;
  if (w == "she" || w == "her" || w == "hers" || w == "herself") return PronounClass::kFeminine;
  if (w == "it" || w == "its" || w == "itself") return PronounClass::kNeuter;
  if (w == "they" || w == "them" || w == "their" || w == "theirs" || w == "themselves") {
    return PronounClass::kPlural;
  }
  if (w == "i" || w == "me" || w == "my" || w == "mine" || w == "myself" || w == "we" ||
      w == "us" || w == "our" || w == "ours" || w == "ourselves") {
    return PronounClass::kFirst;
  }
  if (w.rfind("you", 0) == 0) return PronounClass::kSecond;
  return PronounClass::kOther;
}

}  // namespace

double detector_score(const Document &doc, const Span &span,
                      const DetectorWeights &weights) {
  double score = weights.width_penalty * (span.width() - 1);
  if (is_pronoun_span(doc, span)) score += weights.pronoun;
  if (all_capitalized(doc, span)) score += weights.capitalized;
  const std::string &first = doc.token(span.start);
  const std::string &last = doc.token(span.end);
  if (span.width() >= 2 && lexicon::is_determiner(first)) score += weights.determiner;
  if (lexicon::is_determiner(last) || lexicon::is_stopword(last)) {
    score += weights.function_word_end;
  }
  for (int i = span.start; i <= span.end; ++i) {
    if (is_punctuation(doc.token(i))) {
      score += weights.punctuation;
      break;
    }
  }
  return score;
}

ScoredCandidateSet toy_detect(const Document &doc, int max_width,
                              const DetectorWeights &weights) {
  std::vector<ScoredSpan> entries;
  for (const Span &span : enumerate_spans(doc, max_width)) {
    entries.push_back({span, detector_score(doc, span, weights)});
  }
  return ScoredCandidateSet(std::move(entries));
}

ScoredCandidateSet prune_topk(const ScoredCandidateSet &scored, double spans_per_word,
                              int token_count) {
  size_t budget = static_cast<size_t>(std::floor(spans_per_word * token_count));
  budget = std::min(budget, scored.size());
  std::vector<ScoredSpan> kept(scored.entries().begin(),
                               scored.entries().begin() + static_cast<long>(budget));
  return ScoredCandidateSet(std::move(kept));
}

double link_score(const Document &doc, const Span &mention, const Span &antecedent,
                  int distance, const LinkerWeights &weights) {
  if (mention.overlaps(antecedent)) return -std::numeric_limits<double>::infinity();
  double decay = weights.distance_decay * distance;
  bool mention_pronoun = is_pronoun_span(doc, mention);
  bool antecedent_pronoun = is_pronoun_span(doc, antecedent);
  if (lexicon::fold_case(doc.text(mention)) == lexicon::fold_case(doc.text(antecedent))) {
    return (mention_pronoun ? weights.same_pronoun : weights.exact_match) - decay;
  }
  if (mention_pronoun) {
    PronounClass cls = pronoun_class(doc.token(mention.start));
    if (antecedent_pronoun) {
      if (cls != PronounClass::kOther &&
          cls == pronoun_class(doc.token(antecedent.start))) {
        return weights.same_pronoun - decay;
      }
      return 0.0;
    }
    bool compatible = false;
    switch (cls) {
      case PronounClass::kMasculine:
      case PronounClass::kFeminine:
        compatible = all_capitalized(doc, antecedent);
        break;
      case PronounClass::kNeuter:
        compatible = lexicon::is_determiner(doc.token(antecedent.start)) &&
                     !all_capitalized(doc, antecedent);
        break;
      case PronounClass::kPlural:
        compatible = true;
        break;
      default:
        break;
    }
    return compatible ? weights.compatible_pronoun - decay : 0.0;
  }
  if (!antecedent_pronoun) {
    const std::string &head = doc.token(mention.end);
    if (!lexicon::is_stopword(head) && !is_punctuation(head) &&
        lexicon::fold_case(head) == lexicon::fold_case(doc.token(antecedent.end))) {
      return weights.head_match - decay;
    }
  }
  return 0.0;
}

LinkResult toy_link_detailed(const ScoredCandidateSet &cands, const Document &doc,
                             int max_antecedents, double dummy_threshold,
                             const LinkerWeights &weights) {
  SpanSet spans = cands.spans();
  std::vector<Span> ordered(spans.begin(), spans.end());
  LinkResult result;
  std::vector<SpanPair> links;
  for (size_t i = 0; i < ordered.size(); ++i) {
    AntecedentDecision decision{ordered[i], std::nullopt, dummy_threshold};
    size_t lo = i > static_cast<size_t>(std::max(max_antecedents, 0))
                    ? i - static_cast<size_t>(max_antecedents)
                    : 0;
    // Nearest first, so ties keep the closer antecedent.
    for (size_t j = i; j-- > lo;) {
      int distance = static_cast<int>(i - j);
      double score = link_score(doc, ordered[i], ordered[j], distance, weights);
      if (std::isinf(score)) continue;
      result.pair_scores[{ordered[i], ordered[j]}] = score;
      if (score > decision.score) {
        decision.score = score;
        decision.antecedent = ordered[j];
      }
    }
    if (decision.antecedent) links.emplace_back(ordered[i], *decision.antecedent);
    result.decisions.push_back(decision);
  }
  result.clustering = transitive_closure(links);
  return result;
}

Clustering toy_link(const ScoredCandidateSet &cands, const Document &doc,
                    int max_antecedents, double dummy_threshold) {
  return toy_link_detailed(cands, doc, max_antecedents, dummy_threshold).clustering;
}

PredictionSet run_pipeline(const Document &doc, const PipelineConfig &config) {
  config.validate();
  ScoredCandidateSet scored = toy_detect(doc, config.max_span_width);
  ScoredCandidateSet kept = prune_topk(scored, config.spans_per_word, doc.token_count());
  LinkResult link = toy_link_detailed(kept, doc, config.max_antecedents,
                                      config.dummy_threshold);
  PredictionSet pred;
  pred.doc_id = doc.doc_id();
  pred.part = doc.part();
  pred.candidates = std::move(kept);
  pred.decisions = std::move(link.decisions);
  pred.clustering = std::move(link.clustering);
  pred.pair_scores = std::move(link.pair_scores);
  return pred;
}

void SynthesisConfig::validate() const {
  if (documents < 0) throw std::invalid_argument("documents must be >= 0");
  if (min_entities < 0 || max_entities < min_entities) {
    throw std::invalid_argument("bad entity count range");
  }
  if (min_entity_mentions < 1 || max_entity_mentions < min_entity_mentions) {
    throw std::invalid_argument("bad entity size range");
  }
  if (singleton_rate < 0 || singleton_rate > 1 || pronoun_rate < 0 || pronoun_rate > 1) {
    throw std::invalid_argument("rates must lie in [0, 1]");
  }
  if (vocabulary < 1 || vocabulary > 1000) {
    throw std::invalid_argument("vocabulary must lie in [1, 1000]");
  }
  if (max_mentions_per_sentence < 1) {
    throw std::invalid_argument("need at least one mention per sentence");
  }
}

namespace {

constexpr std::string_view kConsonants = "bdfgklmnprstvz";
constexpr std::string_view kVowels = "aeiou";
constexpr std::array<std::string_view, 6> kAdjectives = {"old", "new", "red",
                                                         "big", "small", "green"};
constexpr std::array<std::string_view, 5> kPrepositions = {"with", "near", "behind",
                                                           "for", "about"};

std::string syllable(int i) {
  int n = static_cast<int>(kVowels.size());
  return {kConsonants[i / n], kVowels[i % n]};
}

// Distinct pronounceable word for every index below 4900.
std::string pseudo_word(int index) {
  int count = static_cast<int>(kConsonants.size() * kVowels.size());
  int a = index % count;
  int b = (index / count + 3 * a) % count;
  return syllable(a) + syllable(b) + (index % 2 ? "n" : "");
}

std::string capitalize(std::string word) {
  word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
  return word;
}

struct Phrase {
  std::vector<std::string> tokens;
  std::vector<std::string> tags;
};

enum class EntityKind { kPerson, kThing };

struct Entity {
  EntityKind kind;
  bool feminine = false;
  Phrase full;
  Phrase short_form;  // head-only variant
  int mentions = 0;
};

class Synthesizer {
 public:
  explicit Synthesizer(const SynthesisConfig &config)
      : config_(config), rng_(config.seed) {}

  Corpus run() {
    Corpus corpus;
    for (int d = 0; d < config_.documents; ++d) make_document(d, &corpus);
    return corpus;
  }

 private:
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

  std::string name_word() { return capitalize(pseudo_word(uniform(0, config_.vocabulary - 1))); }
  std::string noun_word() { return pseudo_word(1000 + uniform(0, config_.vocabulary - 1)); }
  std::string verb_word() { return pseudo_word(2000 + uniform(0, config_.vocabulary - 1)) + "s"; }
  std::string adjective() {
    return std::string(kAdjectives[uniform(0, kAdjectives.size() - 1)]);
  }

  Entity make_entity() {
    Entity e;
    e.kind = chance(0.5) ? EntityKind::kPerson : EntityKind::kThing;
    e.mentions = uniform(config_.min_entity_mentions, config_.max_entity_mentions);
    if (e.kind == EntityKind::kPerson) {
      e.feminine = chance(0.5);
      e.full = {{name_word()}, {"NNP"}};
      if (chance(0.5)) {
        e.full.tokens.push_back(name_word());
        e.full.tags.push_back("NNP");
      }
      e.short_form = {{e.full.tokens.back()}, {"NNP"}};
    } else {
      std::string noun = noun_word();
      e.full = {{"the", adjective(), noun}, {"DT", "JJ", "NN"}};
      e.short_form = {{"the", noun}, {"DT", "NN"}};
    }
    return e;
  }

  Phrase pronoun(const Entity &e, bool subject) {
    if (e.kind == EntityKind::kThing) return {{"it"}, {"PRP"}};
    if (e.feminine) return {{subject ? "she" : "her"}, {"PRP"}};
    return {{subject ? "he" : "him"}, {"PRP"}};
  }

  Phrase singleton_phrase() {
    if (chance(0.3)) return {{name_word()}, {"NNP"}};
    return {{"a", adjective(), noun_word()}, {"DT", "JJ", "NN"}};
  }

  void make_document(int index, Corpus *corpus) {
    int entity_count = uniform(config_.min_entities, config_.max_entities);
    std::vector<Entity> entities;
    std::vector<int> sequence;
    for (int e = 0; e < entity_count; ++e) {
      entities.push_back(make_entity());
      sequence.insert(sequence.end(), entities.back().mentions, e);
    }
    std::shuffle(sequence.begin(), sequence.end(), rng_);

    std::vector<std::vector<std::string>> sentences;
    std::vector<std::string> tags;
    std::vector<Constituent> parse;
    std::vector<Cluster> clusters(entities.size());
    std::vector<bool> introduced(entities.size(), false);
    SpanSet singletons;
    int offset = 0;

    size_t next = 0;
    while (next < sequence.size() || (sequence.empty() && sentences.empty())) {
      // Slots: entity index, or -1 for a singleton phrase.
      std::vector<int> slots;
      int take = uniform(1, config_.max_mentions_per_sentence);
      for (int k = 0; k < take && next < sequence.size(); ++k) slots.push_back(sequence[next++]);
      if (slots.empty() || chance(config_.singleton_rate)) {
        slots.insert(slots.begin() + uniform(0, static_cast<int>(slots.size())), -1);
      }

      std::vector<std::string> words;
      size_t top = parse.size();
      parse.push_back({{offset, -1}, "TOP"});
      parse.push_back({{offset, -1}, "S"});
      size_t vp = 0;
      std::vector<std::pair<Phrase, int>> realized;
      for (size_t k = 0; k < slots.size(); ++k) {
        int e = slots[k];
        Phrase phrase;
        if (e < 0) {
          phrase = singleton_phrase();
        } else if (!introduced[e]) {
          phrase = entities[e].full;
          introduced[e] = true;
        } else if (chance(config_.pronoun_rate)) {
          phrase = pronoun(entities[e], k == 0);
        } else if (chance(0.3)) {
          phrase = entities[e].short_form;
        } else {
          phrase = entities[e].full;
        }
        if (k == 0 && phrase.tokens[0] == "the") phrase.tokens[0] = "The";
        if (k == 0 && phrase.tokens[0] == "a") phrase.tokens[0] = "A";

        auto emit = [&](const std::string &word, const std::string &tag) {
          words.push_back(word);
          tags.push_back(tag);
        };
        int pos = offset + static_cast<int>(words.size());
        if (k == 1) {
          vp = parse.size();
          parse.push_back({{pos, -1}, "VP"});
          emit(verb_word(), "VBZ");
          pos += 1;
        }
        size_t pp = parse.size();
        if (k >= 1) {
          parse.push_back({{pos, -1}, "PP"});
          emit(std::string(kPrepositions[uniform(0, kPrepositions.size() - 1)]), "IN");
          pos += 1;
        }
        Span span{pos, pos + static_cast<int>(phrase.tokens.size()) - 1};
        parse.push_back({span, "NP"});
        for (size_t t = 0; t < phrase.tokens.size(); ++t) emit(phrase.tokens[t], phrase.tags[t]);
        if (k >= 1) parse[pp].span.end = span.end;
        if (e < 0) {
          singletons.insert(span);
        } else {
          clusters[e].push_back(span);
        }
      }
      if (slots.size() == 1) {
        vp = parse.size();
        int pos = offset + static_cast<int>(words.size());
        parse.push_back({{pos, pos}, "VP"});
        words.push_back(verb_word());
        tags.push_back("VBZ");
      }
      int last = offset + static_cast<int>(words.size()) - 1;
      parse[vp].span.end = last;
      words.push_back(".");
      tags.push_back(".");
      parse[top].span.end = last + 1;
      parse[top + 1].span.end = last + 1;
      offset += static_cast<int>(words.size());
      sentences.push_back(std::move(words));
    }

    Document doc("synth_" + std::to_string(index), std::move(sentences));
    doc.set_pos_tags(std::move(tags));
    doc.set_parse_spans(std::move(parse));

    GoldAnnotation gold;
    std::vector<Cluster> anaphoric;
    for (Cluster &cluster : clusters) {
      gold.all_mentions.insert(cluster.begin(), cluster.end());
      if (cluster.size() >= 2) anaphoric.push_back(std::move(cluster));
    }
    gold.all_mentions.insert(singletons.begin(), singletons.end());
    gold.anaphoric = Clustering(std::move(anaphoric));
    corpus->documents.push_back(std::move(doc));
    corpus->gold.push_back(std::move(gold));
  }

  SynthesisConfig config_;
  std::mt19937_64 rng_;
};

}  // namespace

Corpus generate_synthetic(const SynthesisConfig &config) {
  config.validate();
  return Synthesizer(config).run();
}

SweepRow evaluate_config(const Corpus &corpus, const PipelineConfig &config) {
  SweepRow row;
  row.config = config;
  MetricAccumulator scores;
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    PredictionSet pred = run_pipeline(corpus.documents[d], config);
    const GoldAnnotation &gold = corpus.gold[d];
    scores.add(gold.anaphoric, *pred.clustering);
    SpanSet cands = pred.candidates->spans();
    row.anaphoric_mentions += mention_prf(cands, gold.anaphoric_spans());
    row.all_mentions += mention_prf(cands, gold.all_mentions);
  }
  row.metrics = scores.report();
  return row;
}

std::vector<SweepRow> sweep(const Corpus &corpus, const SweepGrid &grid, int threads) {
  std::vector<PipelineConfig> points;
  for (int width : grid.max_span_width) {
    for (double lambda : grid.spans_per_word) {
      for (int k : grid.max_antecedents) {
        PipelineConfig config{width, lambda, k, grid.dummy_threshold};
        config.validate();
        points.push_back(config);
      }
    }
  }
  std::vector<SweepRow> rows(points.size());
  std::atomic<size_t> cursor{0};
  auto worker = [&] {
    for (size_t i = cursor++; i < points.size(); i = cursor++) {
      rows[i] = evaluate_config(corpus, points[i]);
    }
  };
  int workers = std::clamp(threads, 1, static_cast<int>(std::max<size_t>(points.size(), 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread &t : pool) t.join();
  return rows;
}

}  // namespace coref
