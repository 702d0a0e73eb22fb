#include "coref/mention_heuristics.h"

#include "coref/corpus_io.h"
#include "coref/pipeline_sim.h"
#include "doctest.h"

namespace coref {
namespace {

TEST_CASE("noun phrases and tagged words are candidates") {
  const char *text =
      "#begin document (h); part 000\n"
      "h 0 0 He   PRP (TOP(S(NP*) - - - - * -\n"
      "h 0 1 runs VBZ (VP*)))     - - - - * -\n"
      "#end document\n";
  Corpus corpus = parse_conll(text);
  CHECK(syntactic_mention_candidates(corpus.documents[0]) == SpanSet{Span{0, 0}, Span{1, 1}});
}

TEST_CASE("function tags are stripped") {
  CHECK(base_label("NP-SBJ") == "NP");
  CHECK(base_label("NP=2") == "NP");
  CHECK(base_label("NML") == "NML");
  CHECK(base_label("-NONE-") == "-NONE-");
  Document doc("f", {{"the", "big", "cat", "sat"}});
  doc.set_pos_tags({"DT", "JJ", "NN", "VBD"});
  doc.set_parse_spans({{Span{0, 3}, "S"}, {Span{0, 2}, "NP-SBJ"}, {Span{1, 2}, "NML"},
                       {Span{3, 3}, "VP"}});
  CHECK(syntactic_mention_candidates(doc) == SpanSet{Span{0, 2}, Span{1, 2}, Span{3, 3}});
}

TEST_CASE("missing layers are reported") {
  Document bare("b", {{"a"}});
  CHECK_THROWS_AS(syntactic_mention_candidates(bare), MissingLayer);
  bare.set_pos_tags({"NN"});
  CHECK_THROWS_AS(syntactic_mention_candidates(bare), MissingLayer);
}

TEST_CASE("gold anaphoric mentions are merged in") {
  Document doc("m", {{"the", "cat", "and", "it"}});
  doc.set_pos_tags({"DT", "NN", "CC", "PRP"});
  doc.set_parse_spans({{Span{0, 3}, "S"}, {Span{0, 1}, "NP"}});
  GoldAnnotation gold;
  gold.anaphoric = Clustering({{Span{1, 1}, Span{3, 3}}});
  gold.all_mentions = gold.anaphoric.mentions();
  CHECK(heuristic_all_mentions(doc, gold) == SpanSet{Span{0, 1}, Span{1, 1}, Span{3, 3}});
  HeuristicStats stats = heuristic_stats(doc, gold);
  CHECK(stats.candidates == 2);
  CHECK(stats.anaphoric == 2);
  CHECK(stats.anaphoric_covered == 1);
  CHECK(stats.anaphoric_recall() == 0.5);
  CHECK(stats.anaphoric_share() == 0.5);
}

TEST_CASE("synthetic parses cover every gold mention") {
  SynthesisConfig config;
  config.documents = 10;
  Corpus corpus = generate_synthetic(config);
  HeuristicStats total;
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    total += heuristic_stats(corpus.documents[d], corpus.gold[d]);
    SpanSet merged = heuristic_all_mentions(corpus.documents[d], corpus.gold[d]);
    for (const Span &s : corpus.gold[d].anaphoric_spans()) CHECK(merged.count(s));
  }
  CHECK(total.anaphoric_recall() == 1.0);
}

}  // namespace
}  // namespace coref
