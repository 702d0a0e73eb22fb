#ifndef COREF_CORPUS_IO_H_
#define COREF_CORPUS_IO_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coref/types.h"

namespace coref {

// Malformed input. line() is 1-based for line-oriented formats, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " +
                                          message
                                    : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// CoNLL-2012 column format. Rows with at least six columns use the standard
// layout (doc, part, index, word, POS, parse bit, ..., coreference); shorter
// rows are read as "word ... coreference" with no POS or parse. Columns other
// than word, POS, parse and coreference are ignored. Chains of size one are
// dropped and reported in Corpus::warnings.
Corpus parse_conll(std::string_view text);
std::string serialize_conll(const Corpus &corpus);

// Line-delimited JSON, one document per line:
//   {"id": ..., "sentences": [[tok, ...], ...],
//    "mention_clusters": [[[sentence, start, end_exclusive], ...], ...]}
// Optional "part", "pos" (per-sentence tag lists) and "constituents"
// ([sentence, start, end_exclusive, label] in preorder) are carried through.
Corpus parse_json_corpus(std::string_view text);
std::string serialize_json(const Corpus &corpus);

// Predictions share the JSON corpus schema; mention_clusters holds the final
// clustering and these optional fields carry the earlier stages:
//   "candidates":  [[sentence, start, end_exclusive, score], ...]
//   "antecedents": [[mention, antecedent-or-null, score], ...]
//   "pair_scores": [[mention, antecedent, score], ...]
// where mention/antecedent are [sentence, start, end_exclusive] triples.
// Scores of +/-infinity are written as the strings "+inf" / "-inf".
struct PredictionFile {
  std::vector<Document> documents;
  std::vector<PredictionSet> predictions;
  std::vector<std::string> warnings;
};

PredictionFile parse_predictions_json(std::string_view text);
std::string serialize_predictions_json(const std::vector<Document> &documents,
                                       const std::vector<PredictionSet> &preds);

// Predictions from a CoNLL file carry only the final clustering.
PredictionFile predictions_from_corpus(const Corpus &corpus);

// Sentence-local (sentence, start, end_exclusive) <-> document-level span.
Span to_document_span(const Document &doc, int sentence, int start,
                      int end_exclusive);
struct LocalSpan {
  int sentence = 0;
  int start = 0;
  int end_exclusive = 0;
  bool operator==(const LocalSpan &) const = default;
};
LocalSpan to_local_span(const Document &doc, const Span &span);

}  // namespace coref

#endif  // COREF_CORPUS_IO_H_
