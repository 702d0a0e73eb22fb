#ifndef COREF_ERROR_TAXONOMY_H_
#define COREF_ERROR_TAXONOMY_H_

#include <array>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "coref/metrics.h"
#include "coref/types.h"

namespace coref {

// Clustering error categories, after Kummerfeld & Klein (2013).
enum class ErrorKind {
  kSpanError,
  kConflatedEntities,
  kExtraMention,
  kExtraEntity,
  kDividedEntity,
  kMissingMention,
  kMissingEntity,
};

inline constexpr std::array<ErrorKind, 7> kAllErrorKinds = {
    ErrorKind::kSpanError,     ErrorKind::kConflatedEntities,
    ErrorKind::kExtraMention,  ErrorKind::kExtraEntity,
    ErrorKind::kDividedEntity, ErrorKind::kMissingMention,
    ErrorKind::kMissingEntity};

// Order in which fix_all applies the fixes after span errors.
inline constexpr std::array<ErrorKind, 6> kFixOrder = {
    ErrorKind::kConflatedEntities, ErrorKind::kDividedEntity,
    ErrorKind::kExtraEntity,       ErrorKind::kExtraMention,
    ErrorKind::kMissingEntity,     ErrorKind::kMissingMention};

enum class ConflationSubkind {
  kPronoun,
  kExactMatch,
  kHeadMatch,
  kOtherMatch,
  kSemanticOrOther,
};

inline constexpr std::array<ConflationSubkind, 5> kAllConflationSubkinds = {
    ConflationSubkind::kPronoun, ConflationSubkind::kExactMatch,
    ConflationSubkind::kHeadMatch, ConflationSubkind::kOtherMatch,
    ConflationSubkind::kSemanticOrOther};

std::string_view name(ErrorKind kind);
std::string_view name(ConflationSubkind kind);

struct ErrorInstance {
  ErrorKind kind;
  // Involved mentions: the remapped (system, gold) pair for span errors, the
  // offending span for extra/missing mentions.
  std::vector<Span> spans;
  // Involved clusters: the gold-induced partition for conflations, the
  // system clusters for divided entities, the cluster itself otherwise.
  std::vector<Cluster> clusters;
};

struct SpanFixResult {
  Clustering clustering;
  std::vector<ErrorInstance> errors;
};

// Re-maps system spans that are not gold mentions onto the unique unmatched
// gold mention in the same sentence that they overlap. Size-1 system
// clusters are dropped first.
SpanFixResult fix_span_errors(const Clustering &system,
                              const GoldAnnotation &gold, const Document &doc);

// Assumes span errors are already fixed. Never reports span errors.
std::vector<ErrorInstance> categorize(const Clustering &system,
                                      const Clustering &gold);

// Applies the fix for one kind. kSpanError needs a document: use
// fix_span_errors instead (std::invalid_argument otherwise).
Clustering fix(const Clustering &system, const Clustering &gold, ErrorKind kind);

// Span fix, then every kind in kFixOrder.
Clustering fix_all(const Clustering &system, const GoldAnnotation &gold,
                   const Document &doc);

struct ErrorReport {
  std::map<ErrorKind, long> counts;
  // F1 change in absolute units (0..1). The span-error entry is
  // span_fixed - baseline; every other kind is measured independently from
  // the span-fixed state.
  std::map<ErrorKind, double> delta_f1;
  double baseline_f1 = 0.0;
  double span_fixed_f1 = 0.0;
};

struct ErrorAnalysisInput {
  const Document *doc;
  const GoldAnnotation *gold;
  const Clustering *system;
};

ErrorReport delta_f1_report(const Clustering &system, const GoldAnnotation &gold,
                            const Document &doc);

// Corpus-level report: every F1 is micro-averaged across documents.
ErrorReport delta_f1_report(const std::vector<ErrorAnalysisInput> &documents);

// The two spans of the wrongest link inside each conflated cluster: for the
// i-th gold sub-entity (by first mention, i >= 1), the closest pair joining it
// to an earlier sub-entity.
std::vector<SpanPair> conflation_links(const ErrorInstance &conflation);

ConflationSubkind classify_link(const Document &doc, const Span &a, const Span &b);

std::map<ConflationSubkind, long> subtype_conflations(
    const std::vector<ErrorInstance> &instances, const Document &doc);

}  // namespace coref

#endif  // COREF_ERROR_TAXONOMY_H_
