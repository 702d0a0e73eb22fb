#include "coref/anaphoricity.h"

#include <algorithm>
#include <set>

#include "coref/lexicon.h"

namespace coref {

ConfusionCounts &ConfusionCounts::operator+=(const ConfusionCounts &other) {
  singletons += other.singletons;
  singletons_accepted += other.singletons_accepted;
  anaphoric += other.anaphoric;
  anaphoric_accepted += other.anaphoric_accepted;
  return *this;
}

namespace {

std::optional<double> index_of(const ConfusionCounts &c) {
  if (c.singletons == 0 || c.anaphoric == 0 || c.anaphoric_accepted == 0) {
    return std::nullopt;
  }
  // (s_acc / s) / (a_acc / a), as one integer ratio.
  return static_cast<double>(c.singletons_accepted * c.anaphoric) /
         static_cast<double>(c.singletons * c.anaphoric_accepted);
}

ConfusionCounts count_over(const SpanSet &accepted, const SpanSet &singletons,
                           const SpanSet &anaphoric) {
  ConfusionCounts c;
  c.singletons = static_cast<long>(singletons.size());
  c.anaphoric = static_cast<long>(anaphoric.size());
  for (const Span &s : singletons) c.singletons_accepted += accepted.count(s);
  for (const Span &s : anaphoric) c.anaphoric_accepted += accepted.count(s);
  return c;
}

ConfusionReport build(const ConfusionCounts &counts) {
  ConfusionReport report;
  report.counts = counts;
  if (counts.anaphoric > 0) {
    report.anaphoric_recall =
        static_cast<double>(counts.anaphoric_accepted) / counts.anaphoric;
  }
  if (counts.singletons > 0) {
    report.singleton_recall =
        static_cast<double>(counts.singletons_accepted) / counts.singletons;
  }
  report.confusion_index = index_of(counts);
  return report;
}

}  // namespace

ConfusionReport confusion_report(const ConfusionCounts &counts) {
  if (counts.anaphoric_accepted == 0) {
    throw UndefinedConfusionIndex(
        "confusion index undefined: anaphoric mention recall is zero");
  }
  return build(counts);
}

ConfusionCounts confusion_counts(const SpanSet &accepted, const GoldAnnotation &gold) {
  return count_over(accepted, gold.singletons(), gold.anaphoric_spans());
}

ConfusionReport confusion_index(const SpanSet &accepted, const GoldAnnotation &gold) {
  return confusion_report(confusion_counts(accepted, gold));
}

ConfusionCounts shared_text_counts(const SpanSet &accepted, const GoldAnnotation &gold,
                                   const Document &doc) {
  SpanSet singletons = gold.singletons();
  SpanSet anaphoric = gold.anaphoric_spans();
  std::set<std::string> singleton_text, anaphoric_text;
  for (const Span &s : singletons) singleton_text.insert(lexicon::fold_case(doc.text(s)));
  for (const Span &s : anaphoric) anaphoric_text.insert(lexicon::fold_case(doc.text(s)));
  auto shared = [&](const Span &s) {
    std::string text = lexicon::fold_case(doc.text(s));
    return singleton_text.count(text) && anaphoric_text.count(text);
  };
  SpanSet kept_singletons, kept_anaphoric;
  std::copy_if(singletons.begin(), singletons.end(),
               std::inserter(kept_singletons, kept_singletons.end()), shared);
  std::copy_if(anaphoric.begin(), anaphoric.end(),
               std::inserter(kept_anaphoric, kept_anaphoric.end()), shared);
  return count_over(accepted, kept_singletons, kept_anaphoric);
}

ConfusionReport confusion_index_shared_text(const SpanSet &accepted,
                                            const GoldAnnotation &gold,
                                            const Document &doc) {
  return confusion_report(shared_text_counts(accepted, gold, doc));
}

std::map<int, ConfusionCounts> width_counts(const SpanSet &accepted,
                                            const GoldAnnotation &gold, int max_width) {
  if (max_width < 1) throw std::invalid_argument("max_width must be at least 1");
  std::map<int, ConfusionCounts> bins;
  auto bin_of = [&](const Span &s) { return std::min(s.width(), max_width); };
  for (const Span &s : gold.singletons()) {
    ConfusionCounts &c = bins[bin_of(s)];
    ++c.singletons;
    c.singletons_accepted += accepted.count(s);
  }
  for (const Span &s : gold.anaphoric_spans()) {
    ConfusionCounts &c = bins[bin_of(s)];
    ++c.anaphoric;
    c.anaphoric_accepted += accepted.count(s);
  }
  return bins;
}

ConfusionReport binned_report(const std::map<int, ConfusionCounts> &bins) {
  ConfusionCounts total;
  for (const auto &[width, counts] : bins) total += counts;
  ConfusionReport report = build(total);
  for (const auto &[width, counts] : bins) {
    report.bins[width] = ConfusionBin{counts, index_of(counts)};
  }
  return report;
}

ConfusionReport confusion_by_width(const SpanSet &accepted, const GoldAnnotation &gold,
                                   int max_width) {
  return binned_report(width_counts(accepted, gold, max_width));
}

PRF classification_prf(const SpanSet &predicted, const SpanSet &target) {
  return mention_prf(predicted, target);
}

}  // namespace coref
