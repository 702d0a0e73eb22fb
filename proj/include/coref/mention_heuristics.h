#ifndef COREF_MENTION_HEURISTICS_H_
#define COREF_MENTION_HEURISTICS_H_

#include <stdexcept>
#include <string_view>

#include "coref/types.h"

namespace coref {

class MissingLayer : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Constituent label with function tags stripped: "NP-SBJ=2" -> "NP".
std::string_view base_label(std::string_view label);

// NP/NML constituents plus single words tagged PRP, PRP$, WP, WDT, WRB, NNP,
// VB, VBD, VBN, VBG, VBZ or VBP. Throws MissingLayer when the document has
// no POS tags or no parse.
SpanSet syntactic_mention_candidates(const Document &doc);

// Candidates merged with the gold anaphoric mentions.
SpanSet heuristic_all_mentions(const Document &doc, const GoldAnnotation &gold);

struct HeuristicStats {
  long candidates = 0;           // pre-merge set size
  long anaphoric = 0;            // gold anaphoric mentions
  long anaphoric_covered = 0;    // anaphoric mentions in the pre-merge set

  // Share of anaphoric mentions found before merging.
  double anaphoric_recall() const;
  // Share of the pre-merge set that is anaphoric.
  double anaphoric_share() const;

  HeuristicStats &operator+=(const HeuristicStats &other);
};

HeuristicStats heuristic_stats(const Document &doc, const GoldAnnotation &gold);

}  // namespace coref

#endif  // COREF_MENTION_HEURISTICS_H_
