#include "coref/cli.h"

#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "coref/anaphoricity.h"
#include "coref/corpus_io.h"
#include "coref/error_taxonomy.h"
#include "coref/mention_heuristics.h"
#include "coref/metrics.h"
#include "coref/oracle_lab.h"
#include "coref/pipeline_sim.h"
#include "json.hpp"

namespace coref::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double round4(double x) {
  if (!std::isfinite(x)) return x;
  return std::round(x * 1e4) / 1e4;
}

json number(double x) { return round4(x); }
json number(const std::optional<double> &x) { return x ? number(*x) : json(nullptr); }

std::string fixed4(double x) { return fmt::format("{:.4f}", x); }
std::string fixed4(const std::optional<double> &x) { return x ? fixed4(*x) : "NA"; }

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string sha256_hex(const std::string &data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

bool is_conll_path(const std::string &path) {
  auto ends = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends(".conll") || ends("_conll") || ends(".conll12");
}

// Input files read by a run, recorded in its manifest.
class Inputs {
 public:
  std::string read(const std::string &path) {
    std::string content = read_file(path);
    digests_.push_back({{"path", path}, {"sha256", sha256_hex(content)}});
    return content;
  }
  const json &digests() const { return digests_; }

 private:
  json digests_ = json::array();
};

Corpus load_corpus(Inputs &inputs, const std::string &path) {
  std::string text = inputs.read(path);
  return is_conll_path(path) ? parse_conll(text) : parse_json_corpus(text);
}

PredictionFile load_predictions(Inputs &inputs, const std::string &path) {
  std::string text = inputs.read(path);
  return is_conll_path(path) ? predictions_from_corpus(parse_conll(text))
                             : parse_predictions_json(text);
}

std::string doc_key(const std::string &id, int part) {
  return id + "\x1f" + std::to_string(part);
}

// Predictions aligned to gold documents; documents without a prediction get
// an empty one.
std::vector<PredictionSet> align_predictions(const Corpus &gold,
                                             const PredictionFile &preds,
                                             long *missing) {
  std::map<std::string, size_t> index;
  for (size_t i = 0; i < preds.predictions.size(); ++i) {
    index[doc_key(preds.predictions[i].doc_id, preds.predictions[i].part)] = i;
  }
  std::vector<PredictionSet> aligned;
  *missing = 0;
  for (const Document &doc : gold.documents) {
    auto it = index.find(doc_key(doc.doc_id(), doc.part()));
    if (it == index.end()) {
      ++*missing;
      PredictionSet empty;
      empty.doc_id = doc.doc_id();
      empty.part = doc.part();
      aligned.push_back(std::move(empty));
      continue;
    }
    const PredictionSet &pred = preds.predictions[it->second];
    const Document &pred_doc = preds.documents[it->second];
    if (pred_doc.token_count() != doc.token_count()) {
      throw UsageError("document " + doc.doc_id() + ": prediction has " +
                       std::to_string(pred_doc.token_count()) + " tokens, gold has " +
                       std::to_string(doc.token_count()));
    }
    aligned.push_back(pred);
  }
  return aligned;
}

Clustering response_of(const PredictionSet &pred) {
  if (pred.clustering) return *pred.clustering;
  if (pred.decisions) return closure_of(*pred.decisions);
  return {};
}

json prf_fields(const std::string &prefix, const PRF &prf) {
  return {{prefix + "_p", number(prf.precision())},
          {prefix + "_r", number(prf.recall())},
          {prefix + "_f1", number(prf.f1())}};
}

json metric_json(const MetricReport &report) {
  json j = prf_fields("muc", report.muc);
  j.update(prf_fields("b3", report.b3));
  j.update(prf_fields("ceaf", report.ceaf_phi4));
  j["avg_f1"] = number(report.avg_f1());
  return j;
}

constexpr std::array<const char *, 10> kMetricColumns = {
    "muc_p", "muc_r", "muc_f1", "b3_p", "b3_r", "b3_f1", "ceaf_p", "ceaf_r", "ceaf_f1", "avg_f1"};

std::string metric_tsv(const MetricReport &report) {
  std::vector<double> values = {report.muc.precision(),       report.muc.recall(),
                                report.muc.f1(),              report.b3.precision(),
                                report.b3.recall(),           report.b3.f1(),
                                report.ceaf_phi4.precision(), report.ceaf_phi4.recall(),
                                report.ceaf_phi4.f1(),        report.avg_f1()};
  std::string header, row;
  for (size_t i = 0; i < values.size(); ++i) {
    std::string value = fixed4(values[i]);
    size_t width = std::max(value.size(), std::string(kMetricColumns[i]).size());
    header += fmt::format("{:<{}}", kMetricColumns[i], width) + (i + 1 < values.size() ? "\t" : "\n");
    row += fmt::format("{:<{}}", value, width) + (i + 1 < values.size() ? "\t" : "\n");
  }
  return header + row;
}

json stats_json(const ClusterStats &stats) {
  return {{"clusters", stats.clusters},
          {"mean_cluster_size", number(stats.mean_cluster_size)},
          {"mean_token_extent", number(stats.mean_token_extent)}};
}

json ops_json(const OracleOps &ops) {
  return {{"additions", ops.additions}, {"removals", ops.removals}, {"total", ops.total()}};
}

GoldMode parse_gold_mode(const std::string &mode) {
  return mode == "all" ? GoldMode::kAll : GoldMode::kAnaphoric;
}

// Collected outputs of one run.
class Artifacts {
 public:
  void add(const std::string &name, std::string content, bool primary = false) {
    files_.push_back({name, std::move(content), primary});
  }

  // Writes every artifact under `dir` (each via a temporary and a rename),
  // or prints the primary one when no directory is set.
  void emit(const std::string &dir, std::ostream &out) const {
    if (dir.empty()) {
      for (const auto &f : files_) {
        if (f.primary) out << f.content;
      }
      return;
    }
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create " + dir + ": " + ec.message());
    for (const auto &f : files_) {
      fs::path target = fs::path(dir) / f.name;
      fs::path temp = target;
      temp += ".tmp";
      {
        std::ofstream stream(temp, std::ios::binary);
        if (!stream) throw IoError("cannot write " + temp.string());
        stream << f.content;
        if (!stream) throw IoError("failed writing " + temp.string());
      }
      fs::rename(temp, target, ec);
      if (ec) throw IoError("cannot rename to " + target.string() + ": " + ec.message());
    }
  }

 private:
  struct File {
    std::string name;
    std::string content;
    bool primary;
  };
  std::vector<File> files_;
};

json manifest(const std::string &subcommand, const json &flags, const Inputs &inputs,
              std::optional<uint64_t> seed) {
  json m = {{"tool", kToolName},
            {"version", kToolVersion},
            {"subcommand", subcommand},
            {"flags", flags},
            {"inputs", inputs.digests()}};
  m["seed"] = seed ? json(*seed) : json(nullptr);
  return m;
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

int thread_count(int flag) {
  if (const char *env = std::getenv("COREF_LAB_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception &) {
    }
    throw UsageError(std::string("COREF_LAB_THREADS must be a positive integer, got '") +
                     env + "'");
  }
  return std::max(flag, 1);
}

// ---------------------------------------------------------------- score

struct ScoreFlags {
  std::string gold, pred, out;
  bool keep_singletons = false;
  bool tsv = false;
};

int cmd_score(const ScoreFlags &f, std::ostream &out) {
  Inputs inputs;
  Corpus gold = load_corpus(inputs, f.gold);
  PredictionFile preds = load_predictions(inputs, f.pred);
  long missing = 0;
  std::vector<PredictionSet> aligned = align_predictions(gold, preds, &missing);

  MetricAccumulator scores(MetricOptions{f.keep_singletons});
  PRF ana, all;
  bool have_candidates = false;
  ClusterStats system_stats, gold_stats;
  ScoreDiagnostics diagnostics;
  bool have_pairs = false;
  for (size_t d = 0; d < gold.documents.size(); ++d) {
    const GoldAnnotation &g = gold.gold[d];
    const PredictionSet &p = aligned[d];
    Clustering response = response_of(p);
    if (f.keep_singletons) {
      // Singleton-aware scoring puts gold singletons into the key.
      std::vector<Cluster> key = g.anaphoric.clusters();
      for (const Span &s : g.singletons()) key.push_back({s});
      scores.add(Clustering(std::move(key)), response);
    } else {
      scores.add(g.anaphoric, response);
    }
    system_stats += cluster_stats(response.without_singletons());
    gold_stats += cluster_stats(g.anaphoric);
    if (p.candidates) {
      have_candidates = true;
      SpanSet cands = p.candidates->spans();
      ana += mention_prf(cands, g.anaphoric_spans());
      all += mention_prf(cands, g.all_mentions);
    }
    if (!p.pair_scores.empty()) {
      have_pairs = true;
      auto gold_index = g.anaphoric.cluster_index();
      std::set<SpanPair> correct;
      for (const auto &[pair, score] : p.pair_scores) {
        auto a = gold_index.find(pair.first);
        auto b = gold_index.find(pair.second);
        if (a != gold_index.end() && b != gold_index.end() && a->second == b->second) {
          correct.insert(pair);
        }
      }
      diagnostics += score_diagnostics(p.pair_scores, correct);
    }
  }

  json flags = {{"gold", f.gold}, {"pred", f.pred}, {"keep_singletons", f.keep_singletons},
                {"tsv", f.tsv}, {"out", f.out}};
  json report = {{"manifest", manifest("score", flags, inputs, std::nullopt)},
                 {"documents", gold.documents.size()},
                 {"scored_documents", scores.documents()},
                 {"missing_predictions", missing},
                 {"metrics", metric_json(scores.report())},
                 {"cluster_stats", {{"system", stats_json(system_stats)},
                                    {"gold", stats_json(gold_stats)}}}};
  if (have_candidates) {
    json mentions = prf_fields("ana", ana);
    mentions.update(prf_fields("all", all));
    report["mentions"] = mentions;
  }
  if (have_pairs) {
    report["score_diagnostics"] = {
        {"pairs", diagnostics.pairs},
        {"correct_pairs", diagnostics.correct_pairs},
        {"mean_pair_score", number(diagnostics.mean_pair_score)},
        {"mean_correct_pair_score", number(diagnostics.mean_correct_pair_score)}};
  }
  Artifacts artifacts;
  artifacts.add("score.json", dump(report), true);
  if (f.tsv) artifacts.add("score.tsv", metric_tsv(scores.report()));
  artifacts.emit(f.out, out);
  return kOk;
}

// ---------------------------------------------------------------- oracle

struct OracleFlags {
  std::string corpus, pred, out;
  std::string mode = "perfect-p";
  std::string gold_mode = "anaphoric";
  int k = 50;
  int antecedents = 50;
  double dummy_threshold = 0.0;
};

struct OracleOutcome {
  std::vector<PredictionSet> predictions;
  std::vector<OracleOps> ops;
};

OracleOutcome apply_oracle(const Corpus &gold, const std::vector<PredictionSet> &aligned,
                           const std::string &mode, GoldMode gold_mode, int k,
                           int antecedents, double dummy_threshold) {
  OracleOutcome outcome;
  for (size_t d = 0; d < gold.documents.size(); ++d) {
    const Document &doc = gold.documents[d];
    const GoldAnnotation &g = gold.gold[d];
    const PredictionSet &p = aligned[d];
    if (!p.candidates) {
      throw UsageError("document " + doc.doc_id() +
                       ": oracle modes need detector candidates in the predictions");
    }
    GoldTarget target = GoldTarget::from(g, gold_mode);
    PredictionSet result;
    result.doc_id = p.doc_id;
    result.part = p.part;
    OracleOps ops;
    if (mode == "oracle-linker" || mode == "oracle-linker-pruned") {
      result.candidates = p.candidates;
      result.clustering = mode == "oracle-linker"
                              ? oracle_linker(*p.candidates, g.anaphoric)
                              : oracle_linker_pruned(*p.candidates, g.anaphoric,
                                                     p.pair_scores, k);
    } else {
      ScoredCandidateSet cands;
      if (mode == "perfect-p") {
        cands = perfect_precision(*p.candidates, target);
      } else if (mode == "perfect-r") {
        cands = perfect_recall(*p.candidates, target);
      } else if (mode == "perfect-pr") {
        cands = perfect_both(*p.candidates, target);
      } else if (mode == "budget-p") {
        cands = budget_matched_precision(*p.candidates, target);
      } else {
        throw UsageError("unknown oracle mode " + mode);
      }
      OracleOps before = count_operations(*p.candidates, target);
      OracleOps after = count_operations(cands, target);
      ops.additions = before.additions - after.additions;
      ops.removals = before.removals - after.removals;
      LinkResult link = toy_link_detailed(cands, doc, antecedents, dummy_threshold);
      result.candidates = std::move(cands);
      result.decisions = std::move(link.decisions);
      result.clustering = std::move(link.clustering);
      result.pair_scores = std::move(link.pair_scores);
    }
    outcome.predictions.push_back(std::move(result));
    outcome.ops.push_back(ops);
  }
  return outcome;
}

double corpus_f1(const Corpus &gold, const std::vector<PredictionSet> &preds) {
  MetricAccumulator acc;
  for (size_t d = 0; d < gold.documents.size(); ++d) acc.add(gold.gold[d].anaphoric, response_of(preds[d]));
  return acc.report().avg_f1();
}

std::vector<double> document_f1(const Corpus &gold, const std::vector<PredictionSet> &preds) {
  std::vector<double> scores;
  for (size_t d = 0; d < gold.documents.size(); ++d) {
    scores.push_back(average_f1(gold.gold[d].anaphoric, response_of(preds[d])).avg_f1());
  }
  return scores;
}

int cmd_oracle(const OracleFlags &f, std::ostream &out) {
  Inputs inputs;
  Corpus gold = load_corpus(inputs, f.corpus);
  PredictionFile preds = load_predictions(inputs, f.pred);
  long missing = 0;
  std::vector<PredictionSet> aligned = align_predictions(gold, preds, &missing);
  OracleOutcome outcome = apply_oracle(gold, aligned, f.mode, parse_gold_mode(f.gold_mode),
                                       f.k, f.antecedents, f.dummy_threshold);
  OracleOps total;
  for (const OracleOps &ops : outcome.ops) total += ops;
  double baseline = corpus_f1(gold, aligned);
  double oracle = corpus_f1(gold, outcome.predictions);

  json flags = {{"corpus", f.corpus}, {"pred", f.pred}, {"mode", f.mode},
                {"gold", f.gold_mode}, {"k", f.k}, {"antecedents", f.antecedents},
                {"dummy_threshold", f.dummy_threshold}, {"out", f.out}};
  json record = {{"manifest", manifest("oracle", flags, inputs, std::nullopt)},
                 {"mode", f.mode},
                 {"gold", f.gold_mode},
                 {"ops", ops_json(total)},
                 {"baseline_avg_f1", number(baseline)},
                 {"oracle_avg_f1", number(oracle)},
                 {"delta_f1", number(oracle - baseline)}};
  record["per_op_effect"] =
      total.total() > 0 ? number(per_op_effect(oracle - baseline, total)) : json(nullptr);

  Artifacts artifacts;
  artifacts.add("oracle_ops.json", dump(record), true);
  artifacts.add("oracle_predictions.jsonl",
                serialize_predictions_json(gold.documents, outcome.predictions));
  artifacts.emit(f.out, out);
  return kOk;
}

// ---------------------------------------------------------------- errors

struct ErrorsFlags {
  std::string gold, pred, out;
  bool subtype = false;
  bool tsv = false;
};

int cmd_errors(const ErrorsFlags &f, std::ostream &out) {
  Inputs inputs;
  Corpus gold = load_corpus(inputs, f.gold);
  PredictionFile preds = load_predictions(inputs, f.pred);
  long missing = 0;
  std::vector<PredictionSet> aligned = align_predictions(gold, preds, &missing);

  std::vector<Clustering> responses;
  for (const PredictionSet &p : aligned) responses.push_back(response_of(p));
  std::vector<ErrorAnalysisInput> inputs_list;
  std::map<ConflationSubkind, long> subtypes;
  for (ConflationSubkind kind : kAllConflationSubkinds) subtypes[kind] = 0;
  for (size_t d = 0; d < gold.documents.size(); ++d) {
    inputs_list.push_back({&gold.documents[d], &gold.gold[d], &responses[d]});
    if (f.subtype) {
      Clustering fixed =
          fix_span_errors(responses[d], gold.gold[d], gold.documents[d]).clustering;
      auto counts = subtype_conflations(categorize(fixed, gold.gold[d].anaphoric),
                                        gold.documents[d]);
      for (const auto &[kind, n] : counts) subtypes[kind] += n;
    }
  }
  ErrorReport report = delta_f1_report(inputs_list);

  json counts, deltas;
  for (ErrorKind kind : kAllErrorKinds) {
    counts[std::string(name(kind))] = report.counts[kind];
    deltas[std::string(name(kind))] = number(report.delta_f1[kind]);
  }
  json flags = {{"gold", f.gold}, {"pred", f.pred}, {"subtype", f.subtype},
                {"tsv", f.tsv}, {"out", f.out}};
  json j = {{"manifest", manifest("errors", flags, inputs, std::nullopt)},
            {"baseline_avg_f1", number(report.baseline_f1)},
            {"span_fixed_avg_f1", number(report.span_fixed_f1)},
            {"counts", counts},
            {"delta_f1", deltas}};
  if (f.subtype) {
    json sub;
    for (const auto &[kind, n] : subtypes) sub[std::string(name(kind))] = n;
    j["conflation_subtypes"] = sub;
  }

  Artifacts artifacts;
  artifacts.add("errors.json", dump(j), true);
  if (f.tsv) {
    std::string header = "row", count_row = "count", delta_row = "delta_f1";
    for (ErrorKind kind : kAllErrorKinds) {
      header += "\t" + std::string(name(kind));
      count_row += "\t" + std::to_string(report.counts[kind]);
      delta_row += "\t" + fixed4(report.delta_f1[kind]);
    }
    artifacts.add("errors.tsv", header + "\n" + count_row + "\n" + delta_row + "\n");
    if (f.subtype) {
      std::string table = "subkind\tcount\n";
      for (const auto &[kind, n] : subtypes) {
        table += std::string(name(kind)) + "\t" + std::to_string(n) + "\n";
      }
      artifacts.add("conflation_subtypes.tsv", table);
    }
  }
  artifacts.emit(f.out, out);
  return kOk;
}

// ---------------------------------------------------------------- confusion

struct ConfusionFlags {
  std::string gold, pred, out;
  bool by_width = false;
  bool shared_text = false;
  int max_width = 30;
};

json confusion_json(const ConfusionReport &r) {
  json j = {{"singletons", r.counts.singletons},
            {"singletons_accepted", r.counts.singletons_accepted},
            {"anaphoric", r.counts.anaphoric},
            {"anaphoric_accepted", r.counts.anaphoric_accepted},
            {"singleton_recall", number(r.singleton_recall)},
            {"anaphoric_recall", number(r.anaphoric_recall)},
            {"confusion_index", number(r.confusion_index)}};
  return j;
}

int cmd_confusion(const ConfusionFlags &f, std::ostream &out) {
  if (f.max_width < 1) throw UsageError("--max-width must be at least 1");
  Inputs inputs;
  Corpus gold = load_corpus(inputs, f.gold);
  PredictionFile preds = load_predictions(inputs, f.pred);
  long missing = 0;
  std::vector<PredictionSet> aligned = align_predictions(gold, preds, &missing);

  ConfusionCounts overall, shared;
  std::map<int, ConfusionCounts> bins;
  for (size_t d = 0; d < gold.documents.size(); ++d) {
    const PredictionSet &p = aligned[d];
    SpanSet accepted = p.candidates ? p.candidates->spans() : response_of(p).mentions();
    overall += confusion_counts(accepted, gold.gold[d]);
    if (f.shared_text) shared += shared_text_counts(accepted, gold.gold[d], gold.documents[d]);
    if (f.by_width) {
      for (const auto &[w, c] : width_counts(accepted, gold.gold[d], f.max_width)) bins[w] += c;
    }
  }

  json flags = {{"gold", f.gold}, {"pred", f.pred}, {"by_width", f.by_width},
                {"shared_text", f.shared_text}, {"max_width", f.max_width}, {"out", f.out}};
  json j = {{"manifest", manifest("confusion", flags, inputs, std::nullopt)},
            {"overall", confusion_json(confusion_report(overall))}};
  if (f.shared_text) {
    ConfusionReport r = shared.anaphoric_accepted > 0 ? confusion_report(shared)
                                                      : binned_report({{1, shared}});
    r.bins.clear();
    j["shared_text"] = confusion_json(r);
  }
  Artifacts artifacts;
  if (f.by_width) {
    ConfusionReport r = binned_report(bins);
    json by_width = json::array();
    std::string csv = "width,confusion_index\n";
    for (const auto &[w, bin] : r.bins) {
      json entry = {{"width", w},
                    {"singletons", bin.counts.singletons},
                    {"singletons_accepted", bin.counts.singletons_accepted},
                    {"anaphoric", bin.counts.anaphoric},
                    {"anaphoric_accepted", bin.counts.anaphoric_accepted},
                    {"confusion_index", number(bin.confusion_index)}};
      by_width.push_back(entry);
      csv += std::to_string(w) + "," + (bin.confusion_index ? fixed4(*bin.confusion_index) : "") + "\n";
    }
    j["by_width"] = by_width;
    artifacts.add("confusion.csv", csv);
  }
  artifacts.add("confusion.json", dump(j), true);
  artifacts.emit(f.out, out);
  return kOk;
}

// ---------------------------------------------------------------- mentions-heuristic

struct HeuristicFlags {
  std::string gold, out;
  bool stats = false;
};

int cmd_mentions(const HeuristicFlags &f, std::ostream &out) {
  Inputs inputs;
  Corpus gold = load_corpus(inputs, f.gold);
  Corpus result;
  result.documents = gold.documents;
  HeuristicStats stats;
  for (size_t d = 0; d < gold.documents.size(); ++d) {
    GoldAnnotation annotation = gold.gold[d];
    annotation.all_mentions = heuristic_all_mentions(gold.documents[d], gold.gold[d]);
    stats += heuristic_stats(gold.documents[d], gold.gold[d]);
    result.gold.push_back(std::move(annotation));
  }
  Artifacts artifacts;
  artifacts.add("mentions.jsonl", serialize_json(result), true);
  if (f.stats) {
    json flags = {{"gold", f.gold}, {"stats", f.stats}, {"out", f.out}};
    json j = {{"manifest", manifest("mentions-heuristic", flags, inputs, std::nullopt)},
              {"candidates", stats.candidates},
              {"anaphoric", stats.anaphoric},
              {"anaphoric_covered", stats.anaphoric_covered},
              {"pre_merge_anaphoric_recall", number(stats.anaphoric_recall())},
              {"anaphoric_share", number(stats.anaphoric_share())}};
    artifacts.add("mention_stats.json", dump(j));
    if (f.out.empty()) {
      out << dump(j);
      return kOk;
    }
  }
  artifacts.emit(f.out, out);
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateFlags {
  std::string gold, out;
  SynthesisConfig synthesis;
  PipelineConfig pipeline;
};

json synthesis_json(const SynthesisConfig &s) {
  return {{"documents", s.documents},
          {"min_entities", s.min_entities},
          {"max_entities", s.max_entities},
          {"min_entity_mentions", s.min_entity_mentions},
          {"max_entity_mentions", s.max_entity_mentions},
          {"singleton_rate", s.singleton_rate},
          {"pronoun_rate", s.pronoun_rate},
          {"vocabulary", s.vocabulary},
          {"max_mentions_per_sentence", s.max_mentions_per_sentence}};
}

json pipeline_json(const PipelineConfig &p) {
  return {{"L", p.max_span_width},
          {"lambda", p.spans_per_word},
          {"K", p.max_antecedents},
          {"dummy_threshold", p.dummy_threshold}};
}

int cmd_simulate(const SimulateFlags &f, std::ostream &out) {
  f.pipeline.validate();
  Inputs inputs;
  Corpus corpus = f.gold.empty() ? generate_synthetic(f.synthesis) : load_corpus(inputs, f.gold);
  std::vector<PredictionSet> preds;
  MetricAccumulator scores;
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    preds.push_back(run_pipeline(corpus.documents[d], f.pipeline));
    scores.add(corpus.gold[d].anaphoric, *preds.back().clustering);
  }
  json flags = {{"gold", f.gold}, {"out", f.out}, {"pipeline", pipeline_json(f.pipeline)}};
  std::optional<uint64_t> seed;
  if (f.gold.empty()) {
    flags["synthesis"] = synthesis_json(f.synthesis);
    seed = f.synthesis.seed;
  }
  json j = {{"manifest", manifest("simulate", flags, inputs, seed)},
            {"documents", corpus.documents.size()},
            {"metrics", metric_json(scores.report())}};
  Artifacts artifacts;
  artifacts.add("simulate.json", dump(j), true);
  artifacts.add("gold.jsonl", serialize_json(corpus));
  artifacts.add("gold.conll", serialize_conll(corpus));
  artifacts.add("pred.jsonl", serialize_predictions_json(corpus.documents, preds));
  artifacts.emit(f.out, out);
  return kOk;
}

// ---------------------------------------------------------------- sweep

struct SweepFlags {
  std::string gold, out;
  SynthesisConfig synthesis;
  std::vector<int> widths = {30};
  std::vector<double> lambdas = {0.4};
  std::vector<int> ks = {50};
  double dummy_threshold = 0.0;
  int threads = 1;
};

int cmd_sweep(const SweepFlags &f, std::ostream &out) {
  Inputs inputs;
  Corpus corpus = f.gold.empty() ? generate_synthetic(f.synthesis) : load_corpus(inputs, f.gold);
  SweepGrid grid{f.widths, f.lambdas, f.ks, f.dummy_threshold};
  std::vector<SweepRow> rows = sweep(corpus, grid, thread_count(f.threads));

  std::string tsv = "L\tlambda\tK\tavg_f1\tana_p\tana_r\n";
  json table = json::array();
  for (const SweepRow &row : rows) {
    tsv += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", row.config.max_span_width,
                       fixed4(row.config.spans_per_word), row.config.max_antecedents,
                       fixed4(row.metrics.avg_f1()), fixed4(row.anaphoric_mentions.precision()),
                       fixed4(row.anaphoric_mentions.recall()));
    json entry = pipeline_json(row.config);
    entry["metrics"] = metric_json(row.metrics);
    entry.update(prf_fields("ana", row.anaphoric_mentions));
    entry.update(prf_fields("all", row.all_mentions));
    table.push_back(entry);
  }
  json flags = {{"gold", f.gold}, {"out", f.out}, {"L", f.widths}, {"lambda", f.lambdas},
                {"K", f.ks}, {"dummy_threshold", f.dummy_threshold}};
  std::optional<uint64_t> seed;
  if (f.gold.empty()) {
    flags["synthesis"] = synthesis_json(f.synthesis);
    seed = f.synthesis.seed;
  }
  json j = {{"manifest", manifest("sweep", flags, inputs, seed)}, {"rows", table}};
  Artifacts artifacts;
  artifacts.add("sweep.tsv", tsv, true);
  artifacts.add("sweep.json", dump(j));
  artifacts.emit(f.out, out);
  return kOk;
}

// ---------------------------------------------------------------- report

struct ReportFlags {
  std::string gold, pred, out;
  int k = 50;
  int antecedents = 50;
  double dummy_threshold = 0.0;
  bool per_document = false;
};

int cmd_report(const ReportFlags &f, std::ostream &out) {
  Inputs inputs;
  Corpus gold = load_corpus(inputs, f.gold);
  PredictionFile preds = load_predictions(inputs, f.pred);
  long missing = 0;
  std::vector<PredictionSet> aligned = align_predictions(gold, preds, &missing);
  double baseline = corpus_f1(gold, aligned);
  std::vector<double> baseline_docs = document_f1(gold, aligned);

  struct Row {
    std::string gold_mode, mode;
  };
  std::vector<Row> plan;
  for (const char *g : {"anaphoric", "all"}) {
    for (const char *m : {"perfect-p", "perfect-r", "perfect-pr", "budget-p"}) plan.push_back({g, m});
  }
  plan.push_back({"anaphoric", "oracle-linker"});
  plan.push_back({"anaphoric", "oracle-linker-pruned"});

  json rows = json::array();
  std::string tsv = "gold\tmode\tavg_f1\tdelta_f1\tadditions\tremovals\tper_op_effect\n";
  tsv += fmt::format("-\tbaseline\t{}\t{}\t0\t0\tNA\n", fixed4(baseline), fixed4(0.0));
  for (const Row &r : plan) {
    OracleOutcome outcome = apply_oracle(gold, aligned, r.mode, parse_gold_mode(r.gold_mode),
                                         f.k, f.antecedents, f.dummy_threshold);
    OracleOps total;
    for (const OracleOps &ops : outcome.ops) total += ops;
    double f1 = corpus_f1(gold, outcome.predictions);
    std::optional<double> effect;
    bool is_linker = r.mode.rfind("oracle-linker", 0) == 0;
    if (!is_linker && total.total() > 0) {
      if (f.per_document) {
        std::vector<double> deltas = document_f1(gold, outcome.predictions);
        for (size_t d = 0; d < deltas.size(); ++d) deltas[d] -= baseline_docs[d];
        effect = per_op_effect_by_document(deltas, outcome.ops);
      } else {
        effect = per_op_effect(f1 - baseline, total);
      }
    }
    rows.push_back({{"gold", r.gold_mode},
                    {"mode", r.mode},
                    {"avg_f1", number(f1)},
                    {"delta_f1", number(f1 - baseline)},
                    {"ops", ops_json(total)},
                    {"per_op_effect", number(effect)}});
    tsv += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", r.gold_mode, r.mode, fixed4(f1),
                       fixed4(f1 - baseline), total.additions, total.removals, fixed4(effect));
  }
  json flags = {{"gold", f.gold}, {"pred", f.pred}, {"k", f.k}, {"antecedents", f.antecedents},
                {"dummy_threshold", f.dummy_threshold}, {"per_document", f.per_document},
                {"out", f.out}};
  json j = {{"manifest", manifest("report", flags, inputs, std::nullopt)},
            {"baseline_avg_f1", number(baseline)},
            {"rows", rows}};
  Artifacts artifacts;
  artifacts.add("report.json", dump(j), true);
  artifacts.add("report.tsv", tsv);
  artifacts.emit(f.out, out);
  return kOk;
}

void add_synthesis_options(CLI::App *cmd, SynthesisConfig *s) {
  cmd->add_option("--seed", s->seed, "random seed")->capture_default_str();
  cmd->add_option("--docs", s->documents, "synthetic documents")->capture_default_str();
  cmd->add_option("--min-entities", s->min_entities)->capture_default_str();
  cmd->add_option("--max-entities", s->max_entities)->capture_default_str();
  cmd->add_option("--min-entity-mentions", s->min_entity_mentions)->capture_default_str();
  cmd->add_option("--max-entity-mentions", s->max_entity_mentions)->capture_default_str();
  cmd->add_option("--singleton-rate", s->singleton_rate)->capture_default_str();
  cmd->add_option("--pronoun-rate", s->pronoun_rate)->capture_default_str();
  cmd->add_option("--vocabulary", s->vocabulary)->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Coreference evaluation, oracle and error-analysis toolkit", kToolName};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  const std::vector<std::string> gold_modes = {"anaphoric", "all"};

  ScoreFlags score;
  auto *c_score = app.add_subcommand("score", "MUC, B3, CEAF-phi4 and average F1");
  c_score->add_option("--gold", score.gold, "gold corpus (.conll or .jsonl)")->required();
  c_score->add_option("--pred", score.pred, "predictions (.conll or .jsonl)")->required();
  c_score->add_flag("--keep-singletons", score.keep_singletons, "score singleton clusters");
  c_score->add_flag("--tsv", score.tsv, "also write score.tsv");
  c_score->add_option("--out", score.out, "output directory");

  OracleFlags oracle;
  auto *c_oracle = app.add_subcommand("oracle", "oracle detectors and linkers");
  c_oracle->add_option("--corpus", oracle.corpus, "gold corpus (.conll or .jsonl)")->required();
  c_oracle->add_option("--pred", oracle.pred, "predictions with candidates")->required();
  c_oracle->add_option("--mode", oracle.mode)
      ->check(CLI::IsMember({"perfect-p", "perfect-r", "perfect-pr", "budget-p",
                             "oracle-linker", "oracle-linker-pruned"}))
      ->capture_default_str();
  c_oracle->add_option("--gold", oracle.gold_mode, "gold mention set")
      ->check(CLI::IsMember(gold_modes))
      ->capture_default_str();
  c_oracle->add_option("--k", oracle.k, "antecedents kept by the pruned oracle linker")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_oracle->add_option("--antecedents", oracle.antecedents, "linker K for re-linking")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_oracle->add_option("--dummy-threshold", oracle.dummy_threshold)->capture_default_str();
  c_oracle->add_option("--out", oracle.out, "output directory");

  ErrorsFlags errors;
  auto *c_errors = app.add_subcommand("errors", "error categories and per-kind F1 gains");
  c_errors->add_option("--gold", errors.gold)->required();
  c_errors->add_option("--pred", errors.pred)->required();
  c_errors->add_flag("--subtype", errors.subtype, "break down conflated entities");
  c_errors->add_flag("--tsv", errors.tsv, "also write TSV tables");
  c_errors->add_option("--out", errors.out, "output directory");

  ConfusionFlags confusion;
  auto *c_conf = app.add_subcommand("confusion", "anaphoricity confusion index");
  c_conf->add_option("--gold", confusion.gold)->required();
  c_conf->add_option("--pred", confusion.pred, "accepted spans: candidates or mentions")
      ->required();
  c_conf->add_flag("--by-width", confusion.by_width);
  c_conf->add_flag("--shared-text", confusion.shared_text);
  c_conf->add_option("--max-width", confusion.max_width)->capture_default_str();
  c_conf->add_option("--out", confusion.out, "output directory");

  HeuristicFlags heuristic;
  auto *c_heur = app.add_subcommand("mentions-heuristic", "syntactic all-mention sets");
  c_heur->add_option("--gold", heuristic.gold, "corpus with POS and parse")->required();
  c_heur->add_flag("--stats", heuristic.stats, "pre-merge coverage statistics");
  c_heur->add_option("--out", heuristic.out, "output directory");

  SimulateFlags simulate;
  auto *c_sim = app.add_subcommand("simulate", "synthetic corpus and toy pipeline run");
  c_sim->add_option("--gold", simulate.gold, "run on this corpus instead of generating one");
  add_synthesis_options(c_sim, &simulate.synthesis);
  c_sim->add_option("--L", simulate.pipeline.max_span_width)->capture_default_str();
  c_sim->add_option("--lambda", simulate.pipeline.spans_per_word)->capture_default_str();
  c_sim->add_option("--K", simulate.pipeline.max_antecedents)->capture_default_str();
  c_sim->add_option("--dummy-threshold", simulate.pipeline.dummy_threshold)
      ->capture_default_str();
  c_sim->add_option("--out", simulate.out, "output directory");

  SweepFlags sweep_flags;
  auto *c_sweep = app.add_subcommand("sweep", "L / lambda / K grid over the toy pipeline");
  c_sweep->add_option("--gold", sweep_flags.gold, "corpus; synthetic when omitted");
  add_synthesis_options(c_sweep, &sweep_flags.synthesis);
  c_sweep->add_option("--L", sweep_flags.widths)->delimiter(',')->capture_default_str();
  c_sweep->add_option("--lambda", sweep_flags.lambdas)->delimiter(',')->capture_default_str();
  c_sweep->add_option("--K", sweep_flags.ks)->delimiter(',')->capture_default_str();
  c_sweep->add_option("--dummy-threshold", sweep_flags.dummy_threshold)->capture_default_str();
  c_sweep->add_option("--threads", sweep_flags.threads, "overridden by COREF_LAB_THREADS")
      ->capture_default_str();
  c_sweep->add_option("--out", sweep_flags.out, "output directory");

  ReportFlags report;
  auto *c_report = app.add_subcommand("report", "oracle comparison table");
  c_report->add_option("--gold", report.gold)->required();
  c_report->add_option("--pred", report.pred, "predictions with candidates")->required();
  c_report->add_option("--k", report.k)->capture_default_str();
  c_report->add_option("--antecedents", report.antecedents)->capture_default_str();
  c_report->add_option("--dummy-threshold", report.dummy_threshold)->capture_default_str();
  c_report->add_flag("--per-document", report.per_document,
                     "average per-operation effects over documents");
  c_report->add_option("--out", report.out, "output directory");

  std::vector<const char *> argv = {kToolName};
  for (const std::string &a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion &) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kValidationError;
  }

  try {
    if (c_score->parsed()) return cmd_score(score, out);
    if (c_oracle->parsed()) return cmd_oracle(oracle, out);
    if (c_errors->parsed()) return cmd_errors(errors, out);
    if (c_conf->parsed()) return cmd_confusion(confusion, out);
    if (c_heur->parsed()) return cmd_mentions(heuristic, out);
    if (c_sim->parsed()) return cmd_simulate(simulate, out);
    if (c_sweep->parsed()) return cmd_sweep(sweep_flags, out);
    if (c_report->parsed()) return cmd_report(report, out);
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::domain_error &e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const fs::filesystem_error &e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kValidationError;
}

}  // namespace coref::cli
