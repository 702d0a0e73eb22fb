#ifndef COREF_ANAPHORICITY_H_
#define COREF_ANAPHORICITY_H_

#include <map>
#include <optional>
#include <stdexcept>

#include "coref/metrics.h"
#include "coref/types.h"

namespace coref {

// Raised when the anaphoric recall is zero and the index has no value.
class UndefinedConfusionIndex : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct ConfusionCounts {
  long singletons = 0;
  long singletons_accepted = 0;
  long anaphoric = 0;
  long anaphoric_accepted = 0;

  ConfusionCounts &operator+=(const ConfusionCounts &other);
};

struct ConfusionBin {
  ConfusionCounts counts;
  std::optional<double> confusion_index;  // absent if either denominator is 0
};

struct ConfusionReport {
  ConfusionCounts counts;
  std::optional<double> singleton_recall;  // absent with no singletons
  double anaphoric_recall = 0.0;
  std::optional<double> confusion_index;
  std::map<int, ConfusionBin> bins;  // width -> bin, when binned
};

// Builds a report from raw counts; throws UndefinedConfusionIndex if no
// anaphoric mention was accepted.
ConfusionReport confusion_report(const ConfusionCounts &counts);

ConfusionCounts confusion_counts(const SpanSet &accepted, const GoldAnnotation &gold);

// Singleton recall divided by anaphoric mention recall.
ConfusionReport confusion_index(const SpanSet &accepted, const GoldAnnotation &gold);

// Restricts both classes to spans whose case-folded text occurs in the
// document as a singleton and as an anaphoric mention.
ConfusionCounts shared_text_counts(const SpanSet &accepted, const GoldAnnotation &gold,
                                   const Document &doc);
ConfusionReport confusion_index_shared_text(const SpanSet &accepted,
                                            const GoldAnnotation &gold,
                                            const Document &doc);

// Per-width counts; widths above max_width land in the max_width bin.
std::map<int, ConfusionCounts> width_counts(const SpanSet &accepted,
                                            const GoldAnnotation &gold, int max_width);
// Overall index plus per-width bins. The overall index is absent (not an
// error) when no anaphoric mention was accepted.
ConfusionReport confusion_by_width(const SpanSet &accepted, const GoldAnnotation &gold,
                                   int max_width = 30);
ConfusionReport binned_report(const std::map<int, ConfusionCounts> &bins);

PRF classification_prf(const SpanSet &predicted, const SpanSet &target);

}  // namespace coref

#endif  // COREF_ANAPHORICITY_H_
