#include "coref/error_taxonomy.h"

#include <random>

#include "coref/pipeline_sim.h"
#include "doctest.h"
#include "oracles.h"

namespace coref {
namespace {

long count_kind(const std::vector<ErrorInstance> &errors, ErrorKind kind) {
  return std::count_if(errors.begin(), errors.end(),
                       [&](const ErrorInstance &e) { return e.kind == kind; });
}

Document flat_document(int tokens) {
  std::vector<std::string> words;
  for (int i = 0; i < tokens; ++i) words.push_back("w" + std::to_string(i));
  return Document("flat", {words});
}

const Span s0{0, 0}, s1{1, 1}, s2{2, 2}, s3{3, 3}, s4{4, 4}, s5{5, 5}, s6{6, 6}, s7{7, 7};

TEST_CASE("categories on a hand-built example") {
  Clustering gold({{s0, s1, s2}, {s3, s4}, {s5, s6}});
  // {s0,s1,s3}: conflates two entities; s2 and s4 then sit apart.
  // {s2,s7}: divides the first entity and adds extra s7.
  // s4 is in no system cluster: a missing mention. {s5,s6} is missing.
  Clustering system({{s0, s1, s3}, {s2, s7}});
  auto errors = categorize(system, gold);
  CHECK(count_kind(errors, ErrorKind::kConflatedEntities) == 1);
  CHECK(count_kind(errors, ErrorKind::kDividedEntity) == 1);
  CHECK(count_kind(errors, ErrorKind::kExtraMention) == 1);
  CHECK(count_kind(errors, ErrorKind::kExtraEntity) == 0);
  CHECK(count_kind(errors, ErrorKind::kMissingMention) == 1);
  CHECK(count_kind(errors, ErrorKind::kMissingEntity) == 1);

  CHECK(fix(system, gold, ErrorKind::kConflatedEntities) ==
        Clustering({{s0, s1}, {s2, s7}}));
  CHECK(fix(system, gold, ErrorKind::kExtraMention) == Clustering({{s0, s1, s3}}));
  CHECK(fix(system, gold, ErrorKind::kDividedEntity) == Clustering({{s0, s1, s2, s3, s7}}));
  CHECK(fix(system, gold, ErrorKind::kMissingMention) ==
        Clustering({{s0, s1, s3, s4}, {s2, s7}}));
  CHECK(fix(system, gold, ErrorKind::kMissingEntity) ==
        Clustering({{s0, s1, s3}, {s2, s7}, {s5, s6}}));
  CHECK_THROWS_AS(fix(system, gold, ErrorKind::kSpanError), std::invalid_argument);
}

TEST_CASE("extra entities are clusters with no gold mention") {
  Clustering gold({{s0, s1}});
  Clustering system({{s0, s1}, {s2, s3}});
  auto errors = categorize(system, gold);
  CHECK(count_kind(errors, ErrorKind::kExtraEntity) == 1);
  CHECK(count_kind(errors, ErrorKind::kExtraMention) == 0);
  CHECK(fix(system, gold, ErrorKind::kExtraEntity) == gold);
}

TEST_CASE("span errors map to overlapping gold mentions") {
  Document doc("d", {{"the", "big", "dog", "barked"}, {"it", "ran", "off"}});
  GoldAnnotation gold;
  gold.anaphoric = Clustering({{Span{0, 2}, Span{4, 4}}});
  gold.all_mentions = gold.anaphoric.mentions();
  Clustering system({{Span{1, 2}, Span{4, 5}}});
  SpanFixResult fixed = fix_span_errors(system, gold, doc);
  CHECK(fixed.errors.size() == 2);
  CHECK(fixed.clustering == gold.anaphoric);

  // A system span in another sentence is not a boundary error.
  Clustering far({{Span{3, 3}, Span{4, 4}}});
  Clustering kept = fix_span_errors(far, gold, doc).clustering;
  CHECK(kept == far);

  ErrorReport report = delta_f1_report(system, gold, doc);
  CHECK(report.counts[ErrorKind::kSpanError] == 2);
  CHECK(report.baseline_f1 == 0.0);
  CHECK(report.span_fixed_f1 == 1.0);
  CHECK(report.delta_f1[ErrorKind::kSpanError] == 1.0);
}

TEST_CASE("perturbed systems are fully repaired in fix order") {
  SynthesisConfig config;
  config.documents = 40;
  config.seed = 5;
  Corpus corpus = generate_synthetic(config);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 80; ++trial) {
    size_t d = static_cast<size_t>(trial) % corpus.documents.size();
    const Document &doc = corpus.documents[d];
    const GoldAnnotation &gold = corpus.gold[d];
    Clustering system = testing::perturb_gold(rng, doc, gold.anaphoric, 1 + trial % 6);
    Clustering repaired = fix_all(system, gold, doc);
    CHECK(average_f1(gold.anaphoric, repaired).exact_avg_f1() == 1);

    Clustering base = fix_span_errors(system, gold, doc).clustering;
    for (ErrorKind kind : kFixOrder) {
      Clustering once = fix(base, gold.anaphoric, kind);
      CHECK(fix(once, gold.anaphoric, kind) == once);
      CHECK(count_kind(categorize(once, gold.anaphoric), kind) == 0);
    }
  }
}

TEST_CASE("corpus report sums counts across documents") {
  Document doc = flat_document(8);
  GoldAnnotation gold;
  gold.anaphoric = Clustering({{s0, s1}, {s2, s3}});
  gold.all_mentions = gold.anaphoric.mentions();
  Clustering merged({{s0, s1, s2, s3}});
  ErrorReport report = delta_f1_report({{&doc, &gold, &merged}, {&doc, &gold, &merged}});
  CHECK(report.counts[ErrorKind::kConflatedEntities] == 2);
  CHECK(report.delta_f1[ErrorKind::kConflatedEntities] ==
        doctest::Approx(1.0 - average_f1(gold.anaphoric, merged).avg_f1()));
  CHECK(report.delta_f1[ErrorKind::kMissingEntity] == 0.0);
}

Document tagged(std::vector<std::string> words, std::vector<std::string> tags) {
  Document doc("t", {words});
  doc.set_pos_tags(std::move(tags));
  return doc;
}

TEST_CASE("conflation links are classified") {
  Document doc = tagged({"Mr.", "Smith", "said", "he", "met", "the", "company", "president",
                         "and", "the", "company", "president", "'s", "company", "this"},
                        {"NNP", "NNP", "VBD", "PRP", "VBD", "DT", "NN", "NN", "CC", "DT", "NN",
                         "NN", "POS", "NN", "DT"});
  CHECK(classify_link(doc, Span{0, 1}, Span{3, 3}) == ConflationSubkind::kPronoun);
  CHECK(classify_link(doc, Span{14, 14}, Span{0, 1}) == ConflationSubkind::kPronoun);
  CHECK(classify_link(doc, Span{5, 7}, Span{9, 11}) == ConflationSubkind::kExactMatch);
  CHECK(classify_link(doc, Span{6, 7}, Span{9, 11}) == ConflationSubkind::kHeadMatch);
  CHECK(classify_link(doc, Span{5, 7}, Span{13, 13}) == ConflationSubkind::kOtherMatch);
  CHECK(classify_link(doc, Span{0, 1}, Span{5, 7}) == ConflationSubkind::kSemanticOrOther);
}

TEST_CASE("untagged documents fall back to the pronoun lexicon") {
  Document doc("u", {{"Alice", "thinks", "she", "won"}});
  CHECK(classify_link(doc, Span{0, 0}, Span{2, 2}) == ConflationSubkind::kPronoun);
  CHECK(classify_link(doc, Span{0, 0}, Span{3, 3}) == ConflationSubkind::kSemanticOrOther);
}

TEST_CASE("one link per extra entity in a conflation") {
  ErrorInstance three{ErrorKind::kConflatedEntities, {}, {{s0, Span{9, 9}}, {s4, s5}, {s2}}};
  auto links = conflation_links(three);
  REQUIRE(links.size() == 2);
  CHECK(links[0] == SpanPair{s0, s2});
  CHECK(links[1] == SpanPair{s2, s4});
}

}  // namespace
}  // namespace coref
