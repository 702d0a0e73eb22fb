#include "coref/corpus_io.h"

#include <cmath>

#include "coref/pipeline_sim.h"
#include "doctest.h"

namespace coref {
namespace {

// "John 's sister saw him ." / "She left ." with John/him nested inside the
// "John 's sister" / She chain.
const char *kNested =
    "#begin document (fx/nested); part 000\n"
    "fx/nested  0  0  John    NNP  (TOP(S(NP(NP*   -  -  -  -  *  (0)|(1\n"
    "fx/nested  0  1  's      POS  *)          -  -  -  -  *  -\n"
    "fx/nested  0  2  sister  NN   *)          -  -  -  -  *  1)\n"
    "fx/nested  0  3  saw     VBD  (VP*        -  -  -  -  *  -\n"
    "fx/nested  0  4  him     PRP  (NP*))      -  -  -  -  *  (0)\n"
    "fx/nested  0  5  .       .    *))         -  -  -  -  *  -\n"
    "\n"
    "fx/nested  0  0  She     PRP  (TOP(S(NP*) -  -  -  -  *  (1)\n"
    "fx/nested  0  1  left    VBD  (VP*)       -  -  -  -  *  -\n"
    "fx/nested  0  2  .       .    *))         -  -  -  -  *  -\n"
    "\n"
    "#end document\n";

TEST_CASE("nested CoNLL mentions") {
  Corpus corpus = parse_conll(kNested);
  REQUIRE(corpus.documents.size() == 1);
  const Document &doc = corpus.documents[0];
  CHECK(doc.doc_id() == "fx/nested");
  CHECK(doc.token_count() == 9);
  CHECK(doc.sentence_count() == 2);
  CHECK(doc.pos_tags()[4] == "PRP");
  Clustering expected({{Span{0, 0}, Span{4, 4}}, {Span{0, 2}, Span{6, 6}}});
  CHECK(corpus.gold[0].anaphoric == expected);
  CHECK(corpus.gold[0].singletons().empty());
  // TOP, S, NP, NP, VP, NP, TOP, S, NP, VP.
  REQUIRE(doc.parse_spans().size() == 10);
  CHECK(doc.parse_spans()[0] == Constituent{Span{0, 5}, "TOP"});
  CHECK(doc.parse_spans()[3] == Constituent{Span{0, 1}, "NP"});
  CHECK(doc.parse_spans()[5] == Constituent{Span{4, 4}, "NP"});
}

TEST_CASE("CoNLL serialization is a fixed point after one pass") {
  Corpus corpus = parse_conll(kNested);
  std::string once = serialize_conll(corpus);
  Corpus again = parse_conll(once);
  CHECK(again.documents == corpus.documents);
  CHECK(again.gold == corpus.gold);
  CHECK(serialize_conll(again) == once);
  // Outer mention opens before the unit mention on the same token.
  CHECK(once.find("  John  NNP  (TOP(S(NP(NP*  -  -  -  -  *  (1|(0)\n") != std::string::npos);
}

TEST_CASE("multi-token mention inside another on one token") {
  const char *text =
      "#begin document (x); part 001\n"
      "x 1 0 a (0|(1\n"
      "x 1 1 b 1)\n"
      "x 1 2 c 0)\n"
      "x 1 3 d (0)\n"
      "x 1 4 e (1)\n"
      "#end document\n";
  Corpus corpus = parse_conll(text);
  CHECK(corpus.documents[0].part() == 1);
  CHECK(corpus.gold[0].anaphoric ==
        Clustering({{Span{0, 2}, Span{3, 3}}, {Span{0, 1}, Span{4, 4}}}));
  CHECK_FALSE(corpus.documents[0].has_pos());
}

TEST_CASE("a span in two chains is rejected") {
  const char *text =
      "#begin document (x); part 000\n"
      "x 0 0 a (0)|(1)\n"
      "x 0 1 b (0)\n"
      "x 0 2 c (1)\n"
      "#end document\n";
  CHECK_THROWS_AS(parse_conll(text), ParseError);
}

TEST_CASE("CoNLL errors carry line numbers") {
  const char *unclosed =
      "#begin document (x); part 000\n"
      "x 0 0 a (3\n"
      "x 0 1 b -\n"
      "#end document\n";
  try {
    parse_conll(unclosed);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("(3") != std::string::npos);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  const char *ragged =
      "#begin document (x); part 000\n"
      "x 0 0 a NN * - - - - * -\n"
      "x 0 1 b NN *\n"
      "#end document\n";
  try {
    parse_conll(ragged);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_conll("#begin document (x); part 000\nx 0 0 a 0)\n#end document\n"),
                  ParseError);
  CHECK_THROWS_AS(parse_conll("#begin document (x); part 000\nx 0 0 a (0)\n"), ParseError);
}

TEST_CASE("size-one chains become warnings") {
  const char *text =
      "#begin document (x); part 000\n"
      "x 0 0 a (0)\n"
      "x 0 1 b (1)\n"
      "x 0 2 c (1)\n"
      "#end document\n";
  Corpus corpus = parse_conll(text);
  CHECK(corpus.gold[0].anaphoric == Clustering({{Span{1, 1}, Span{2, 2}}}));
  CHECK(corpus.warnings.size() == 1);
}

TEST_CASE("mentions crossing sentences are rejected") {
  const char *text =
      "#begin document (x); part 000\n"
      "x 0 0 a (0\n"
      "\n"
      "x 0 0 b 0)\n"
      "x 0 1 c (0)\n"
      "#end document\n";
  CHECK_THROWS_AS(parse_conll(text), ParseError);
}

TEST_CASE("JSON offsets map to document spans") {
  const char *line =
      R"({"id":"d","sentences":[["a","b","c","d"],["e","f"]],"mention_clusters":[[[0,1,3],[1,0,1]]]})"
      "\n";
  Corpus corpus = parse_json_corpus(line);
  CHECK(corpus.gold[0].anaphoric == Clustering({{Span{1, 2}, Span{4, 4}}}));
  const Document &doc = corpus.documents[0];
  CHECK(to_local_span(doc, Span{4, 4}) == LocalSpan{1, 0, 1});
  CHECK(to_document_span(doc, 1, 0, 2) == Span{4, 5});
  CHECK_THROWS_AS(to_document_span(doc, 1, 1, 3), ParseError);
  CHECK_THROWS_AS(to_document_span(doc, 2, 0, 1), ParseError);
}

TEST_CASE("JSON singletons and bad offsets") {
  const char *line =
      R"({"id":"d","sentences":[["a","b","c"]],"mention_clusters":[[[0,0,1],[0,2,3]],[[0,1,2]]]})"
      "\n";
  Corpus corpus = parse_json_corpus(line);
  CHECK(corpus.gold[0].singletons() == SpanSet{Span{1, 1}});
  CHECK(corpus.gold[0].all_mentions.size() == 3);
  CHECK(parse_json_corpus(serialize_json(corpus)).gold == corpus.gold);

  const char *bad = R"({"id":"oops","sentences":[["a"]],"mention_clusters":[[[0,0,1],[0,0,4]]]})";
  try {
    parse_json_corpus(bad);
    FAIL("expected a parse error");
  } catch (const ParseError &e) {
    CHECK(std::string(e.what()).find("oops") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_json_corpus("{not json}\n"), ParseError);
}

TEST_CASE("prediction files round-trip with infinite scores") {
  Document doc("p", {{"a", "b", "c"}});
  PredictionSet pred;
  pred.doc_id = "p";
  pred.candidates = ScoredCandidateSet({{Span{0, 0}, kAddedSpanScore}, {Span{2, 2}, -1.5}});
  pred.decisions = std::vector<AntecedentDecision>{{Span{0, 0}, std::nullopt, 0.0},
                                                   {Span{2, 2}, Span{0, 0}, 2.25}};
  pred.clustering = Clustering({{Span{0, 0}, Span{2, 2}}});
  pred.pair_scores[{Span{2, 2}, Span{0, 0}}] = -std::numeric_limits<double>::infinity();
  std::string text = serialize_predictions_json({doc}, {pred});
  CHECK(text.find("\"+inf\"") != std::string::npos);
  PredictionFile back = parse_predictions_json(text);
  REQUIRE(back.predictions.size() == 1);
  CHECK(back.predictions[0] == pred);
  CHECK(back.documents[0] == doc);
  CHECK(serialize_predictions_json(back.documents, back.predictions) == text);
}

TEST_CASE("synthetic corpora round-trip through both formats") {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    SynthesisConfig config;
    config.seed = seed;
    config.documents = 3;
    Corpus corpus = generate_synthetic(config);
    std::string json_text = serialize_json(corpus);
    Corpus from_json = parse_json_corpus(json_text);
    CHECK(from_json.documents == corpus.documents);
    CHECK(from_json.gold == corpus.gold);
    CHECK(serialize_json(from_json) == json_text);

    std::string conll_text = serialize_conll(corpus);
    Corpus from_conll = parse_conll(conll_text);
    CHECK(from_conll.documents == corpus.documents);
    for (size_t d = 0; d < corpus.gold.size(); ++d) {
      CHECK(from_conll.gold[d].anaphoric == corpus.gold[d].anaphoric);
    }
    CHECK(serialize_conll(from_conll) == conll_text);
  }
}

}  // namespace
}  // namespace coref
