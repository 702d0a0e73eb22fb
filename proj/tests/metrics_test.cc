#include <random>

#include "coref/metrics.h"
#include "doctest.h"
#include "oracles.h"

namespace coref {
namespace {

using testing::as_sets;

const Span a{0, 0}, b{1, 1}, c{2, 2}, d{3, 3}, e{4, 4};

TEST_CASE("merged pair of entities") {
  Clustering key({{a, b}, {c, d}});
  Clustering response({{a, b, c, d}});
  MetricReport r = average_f1(key, response);
  CHECK(r.muc.exact_f1() == Rational(4, 5));
  CHECK(r.b3.exact_f1() == Rational(2, 3));
  CHECK(r.ceaf_phi4.exact_f1() == Rational(4, 9));
  CHECK(r.avg_f1() == doctest::Approx(0.6370).epsilon(1e-4));
  CHECK(r.exact_avg_f1() == (Rational(4, 5) + Rational(2, 3) + Rational(4, 9)) / 3);
  CHECK(r.muc.exact_recall() == 1);
  CHECK(r.muc.exact_precision() == Rational(2, 3));
  CHECK(r.b3.exact_precision() == Rational(1, 2));
  CHECK(r.b3.exact_recall() == 1);
}

TEST_CASE("empty key and response score zero") {
  MetricReport r = average_f1(Clustering{}, Clustering{});
  CHECK(r.exact_avg_f1() == 0);
  r = average_f1(Clustering({{a, b}}), Clustering{});
  CHECK(r.muc.exact_recall() == 0);
  CHECK(r.muc.exact_precision() == 0);
  CHECK(r.exact_avg_f1() == 0);
}

TEST_CASE("singletons are dropped unless kept") {
  Clustering key({{a, b}, {c}});
  Clustering response({{a, b}, {c}, {d}});
  CHECK(average_f1(key, response).exact_avg_f1() == 1);
  MetricReport kept = average_f1(key, response, MetricOptions{true});
  CHECK(kept.b3.exact_recall() == 1);
  CHECK(kept.b3.exact_precision() == Rational(3, 4));
  CHECK(kept.ceaf_phi4.exact_precision() == Rational(2, 3));
  // MUC has no links in singletons either way.
  CHECK(kept.muc.exact_f1() == 1);
}

TEST_CASE("mention PRF") {
  PRF prf = mention_prf({a, b, c}, {b, c, d, e});
  CHECK(prf.exact_precision() == Rational(2, 3));
  CHECK(prf.exact_recall() == Rational(1, 2));
  CHECK(mention_prf({}, {}).exact_f1() == 0);
}

TEST_CASE("phi4") {
  CHECK(phi4({a, b}, {b, c, d}) == Rational(2, 5));
  CHECK(phi4({a}, {b}) == 0);
}

TEST_CASE("alignment works with more key than response clusters") {
  std::vector<Cluster> key = {{a}, {b, c}, {d, e}};
  std::vector<Cluster> response = {{b, c, d}};
  CeafAlignment align = align_clusters(key, response);
  CHECK(align.similarity == Rational(4, 5));
  REQUIRE(align.key_to_response.size() == 3);
  CHECK(align.key_to_response[0] == -1);
  CHECK(align.key_to_response[1] == 0);
  CHECK(align.key_to_response[2] == -1);
}

TEST_CASE("CEAF alignment matches exhaustive enumeration") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> size(0, 6);
  for (int trial = 0; trial < 200; ++trial) {
    Clustering key = testing::random_clustering(rng, 14, size(rng));
    Clustering response = testing::random_clustering(rng, 14, size(rng));
    Rational expected =
        testing::brute_force_ceaf_similarity(as_sets(key), as_sets(response));
    CHECK(align_clusters(key.clusters(), response.clusters()).similarity == expected);
  }
}

TEST_CASE("MUC, B3 and CEAF agree with naive definitions") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> size(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    Clustering key = testing::random_clustering(rng, 12, size(rng));
    Clustering response = testing::random_clustering(rng, 12, size(rng));
    auto k = as_sets(testing::drop_singletons(key));
    auto r = as_sets(testing::drop_singletons(response));
    MetricReport report = average_f1(key, response);

    auto m = testing::naive_muc(k, r);
    CHECK(report.muc.exact_precision() == m.precision);
    CHECK(report.muc.exact_recall() == m.recall);
    auto b3 = testing::naive_b3(k, r);
    CHECK(report.b3.exact_precision() == b3.precision);
    CHECK(report.b3.exact_recall() == b3.recall);
    auto ceaf = testing::naive_ceaf(k, r);
    CHECK(report.ceaf_phi4.exact_precision() == ceaf.precision);
    CHECK(report.ceaf_phi4.exact_recall() == ceaf.recall);

    MetricReport kept = average_f1(key, response, MetricOptions{true});
    auto b3_kept = testing::naive_b3(as_sets(key), as_sets(response));
    CHECK(kept.b3.exact_f1() == b3_kept.f1());
  }
}

TEST_CASE("identity, disjointness and symmetry") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Clustering key = testing::drop_singletons(testing::random_clustering(rng, 12, 4));
    Clustering response = testing::random_clustering(rng, 12, 4);
    if (key.empty()) continue;
    MetricReport same = average_f1(key, key);
    CHECK(same.muc.exact_f1() == 1);
    CHECK(same.b3.exact_f1() == 1);
    CHECK(same.ceaf_phi4.exact_f1() == 1);

    std::vector<Cluster> shifted;
    for (const Cluster &cl : key.clusters()) {
      Cluster moved;
      for (const Span &s : cl) moved.push_back(Span{s.start + 100, s.end + 100});
      shifted.push_back(moved);
    }
    CHECK(average_f1(key, Clustering(shifted)).exact_avg_f1() == 0);

    MetricReport forward = average_f1(key, response);
    MetricReport backward = average_f1(response, key);
    CHECK(forward.muc.exact_precision() == backward.muc.exact_recall());
    CHECK(forward.b3.exact_precision() == backward.b3.exact_recall());
    CHECK(forward.ceaf_phi4.exact_precision() == backward.ceaf_phi4.exact_recall());
  }
}

TEST_CASE("accumulator micro-averages and skips empty keys") {
  MetricAccumulator acc;
  acc.add(Clustering({{a, b}, {c, d}}), Clustering({{a, b, c, d}}));
  acc.add(Clustering{}, Clustering({{a, b}}));
  acc.add(Clustering({{a, b}}), Clustering({{a, b}}));
  CHECK(acc.documents() == 2);
  // MUC: recall (2+1)/(2+1), precision (2+1)/(3+1).
  CHECK(acc.report().muc.exact_precision() == Rational(3, 4));
  CHECK(acc.report().muc.exact_recall() == 1);
}

TEST_CASE("cluster statistics") {
  ClusterStats stats = cluster_stats(Clustering({{Span{0, 1}, Span{5, 6}}, {Span{2, 2}, Span{3, 3}, Span{4, 4}}}));
  CHECK(stats.clusters == 2);
  CHECK(stats.mean_cluster_size == doctest::Approx(2.5));
  CHECK(stats.mean_token_extent == doctest::Approx(5.0));
  stats += cluster_stats(Clustering({{Span{0, 0}, Span{9, 9}}}));
  CHECK(stats.clusters == 3);
  CHECK(stats.mean_cluster_size == doctest::Approx(7.0 / 3));
  CHECK(stats.mean_token_extent == doctest::Approx(20.0 / 3));
  CHECK(cluster_stats(Clustering{}).mean_cluster_size == 0.0);
}

TEST_CASE("score diagnostics") {
  std::map<SpanPair, double> scores = {{{b, a}, 2.0}, {{c, a}, -1.0}, {{c, b}, 5.0}};
  ScoreDiagnostics diag = score_diagnostics(scores, {{b, a}, {c, b}});
  CHECK(diag.pairs == 3);
  CHECK(diag.correct_pairs == 2);
  CHECK(*diag.mean_pair_score == doctest::Approx(2.0));
  CHECK(*diag.mean_correct_pair_score == doctest::Approx(3.5));
  CHECK_FALSE(score_diagnostics({}, {}).mean_pair_score.has_value());
}

}  // namespace
}  // namespace coref
