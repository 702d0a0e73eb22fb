#include "coref/mention_heuristics.h"

#include <array>
#include <algorithm>

namespace coref {
namespace {

constexpr std::array<std::string_view, 12> kMentionTags = {
    "PRP", "PRP$", "WP", "WDT", "WRB", "NNP",
    "VB",  "VBD",  "VBN", "VBG", "VBZ", "VBP"};

}  // namespace

std::string_view base_label(std::string_view label) {
  size_t cut = label.find_first_of("-=");
  // Labels such as -NONE- or -LRB- start with a dash and have no function tag.
  if (cut == 0) return label;
  return label.substr(0, cut);
}

SpanSet syntactic_mention_candidates(const Document &doc) {
  if (!doc.has_pos()) {
    throw MissingLayer("document " + doc.doc_id() +
                       " has no POS tags; the mention heuristic needs them");
  }
  if (!doc.has_parse()) {
    throw MissingLayer("document " + doc.doc_id() +
                       " has no constituency parse; the mention heuristic needs it");
  }
  SpanSet result;
  for (const Constituent &c : doc.parse_spans()) {
    std::string_view label = base_label(c.label);
    if (label == "NP" || label == "NML") result.insert(c.span);
  }
  for (int t = 0; t < doc.token_count(); ++t) {
    const std::string &tag = doc.pos_tags()[t];
    if (std::find(kMentionTags.begin(), kMentionTags.end(), tag) != kMentionTags.end()) {
      result.insert({t, t});
    }
  }
  return result;
}

SpanSet heuristic_all_mentions(const Document &doc, const GoldAnnotation &gold) {
  SpanSet result = syntactic_mention_candidates(doc);
  SpanSet anaphoric = gold.anaphoric_spans();
  result.insert(anaphoric.begin(), anaphoric.end());
  return result;
}

double HeuristicStats::anaphoric_recall() const {
  return anaphoric ? static_cast<double>(anaphoric_covered) / anaphoric : 0.0;
}

double HeuristicStats::anaphoric_share() const {
  return candidates ? static_cast<double>(anaphoric_covered) / candidates : 0.0;
}

HeuristicStats &HeuristicStats::operator+=(const HeuristicStats &other) {
  candidates += other.candidates;
  anaphoric += other.anaphoric;
  anaphoric_covered += other.anaphoric_covered;
  return *this;
}

HeuristicStats heuristic_stats(const Document &doc, const GoldAnnotation &gold) {
  SpanSet candidates = syntactic_mention_candidates(doc);
  SpanSet anaphoric = gold.anaphoric_spans();
  HeuristicStats stats;
  stats.candidates = static_cast<long>(candidates.size());
  stats.anaphoric = static_cast<long>(anaphoric.size());
  for (const Span &s : anaphoric) stats.anaphoric_covered += candidates.count(s);
  return stats;
}

}  // namespace coref
