#include "coref/anaphoricity.h"

#include "doctest.h"

namespace coref {
namespace {

GoldAnnotation width_fixture() {
  // Anaphoric: (0,0) (2,3) (5,5) (7,9). Singletons: (1,1) (4,4) (6,7).
  GoldAnnotation gold;
  gold.anaphoric = Clustering({{Span{0, 0}, Span{5, 5}}, {Span{2, 3}, Span{7, 9}}});
  gold.all_mentions = gold.anaphoric.mentions();
  gold.all_mentions.insert({Span{1, 1}, Span{4, 4}, Span{6, 7}});
  return gold;
}

TEST_CASE("accept everything gives index one, accept anaphoric gives zero") {
  GoldAnnotation gold = width_fixture();
  ConfusionReport all = confusion_index(gold.all_mentions, gold);
  CHECK(*all.confusion_index == 1.0);
  CHECK(*all.singleton_recall == 1.0);
  ConfusionReport ana = confusion_index(gold.anaphoric_spans(), gold);
  CHECK(*ana.confusion_index == 0.0);
  CHECK(ana.anaphoric_recall == 1.0);
}

TEST_CASE("index is the ratio of recalls") {
  GoldAnnotation gold = width_fixture();
  // 1 of 3 singletons, 2 of 4 anaphoric.
  SpanSet accepted = {Span{1, 1}, Span{0, 0}, Span{7, 9}, Span{20, 20}};
  ConfusionReport r = confusion_index(accepted, gold);
  CHECK(r.counts.singletons_accepted == 1);
  CHECK(r.counts.anaphoric_accepted == 2);
  CHECK(*r.confusion_index == doctest::Approx((1.0 / 3) / (2.0 / 4)));
}

TEST_CASE("zero anaphoric recall is an error") {
  GoldAnnotation gold = width_fixture();
  CHECK_THROWS_AS(confusion_index({Span{1, 1}}, gold), UndefinedConfusionIndex);
}

TEST_CASE("binning by width") {
  GoldAnnotation gold = width_fixture();
  SpanSet accepted = {Span{0, 0}, Span{1, 1}, Span{6, 7}};
  ConfusionReport r = confusion_by_width(accepted, gold, 2);
  REQUIRE(r.bins.size() == 2);
  // Width 1: singletons (1,1) (4,4), anaphoric (0,0) (5,5).
  CHECK(r.bins.at(1).counts.singletons == 2);
  CHECK(r.bins.at(1).counts.anaphoric_accepted == 1);
  CHECK(*r.bins.at(1).confusion_index == doctest::Approx(1.0));
  // Width >= 2: singleton (6,7) accepted, anaphoric (2,3) (7,9) not.
  CHECK(r.bins.at(2).counts.anaphoric == 2);
  CHECK_FALSE(r.bins.at(2).confusion_index.has_value());
  CHECK(*r.confusion_index == doctest::Approx((2.0 / 3) / (1.0 / 4)));
  CHECK_THROWS_AS(width_counts(accepted, gold, 0), std::invalid_argument);
}

TEST_CASE("shared-text restriction") {
  Document doc("s", {{"it", "rained", "and", "it", "fell", "it", "."}});
  GoldAnnotation gold;
  gold.anaphoric = Clustering({{Span{3, 3}, Span{5, 5}}});
  gold.all_mentions = {Span{0, 0}, Span{3, 3}, Span{5, 5}, Span{4, 4}};
  ConfusionCounts c = shared_text_counts({Span{0, 0}, Span{3, 3}}, gold, doc);
  CHECK(c.singletons == 1);
  CHECK(c.anaphoric == 2);
  CHECK(c.singletons_accepted == 1);
  CHECK(c.anaphoric_accepted == 1);
  CHECK(*confusion_index_shared_text({Span{0, 0}, Span{3, 3}}, gold, doc).confusion_index ==
        doctest::Approx(2.0));
}

TEST_CASE("classification PRF") {
  PRF prf = classification_prf({Span{0, 0}, Span{1, 1}}, {Span{1, 1}, Span{2, 2}});
  CHECK(prf.exact_precision() == Rational(1, 2));
  CHECK(prf.exact_recall() == Rational(1, 2));
}

}  // namespace
}  // namespace coref
