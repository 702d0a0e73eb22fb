#include "coref/corpus_io.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "json.hpp"

namespace coref {

using nlohmann::json;

namespace {

std::vector<std::string> split_whitespace(std::string_view line) {
  std::vector<std::string> fields;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) fields.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return fields;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// Assembles mention chains keyed by id, deduplicating within a chain.
class ChainBuilder {
 public:
  void add(const std::string &doc_id, long id, const Span &span, int line) {
    auto [it, inserted] = owner_.emplace(span, id);
    if (!inserted) {
      if (it->second == id) {
        warnings_.push_back("document " + doc_id + ": duplicate mention " +
                            to_string(span) + " in cluster " +
                            std::to_string(id) + " removed");
        return;
      }
      throw ParseError("document " + doc_id + ": mention " + to_string(span) +
                           " appears in clusters " + std::to_string(it->second) +
                           " and " + std::to_string(id),
                       line);
    }
    chains_[id].push_back(span);
  }

  const std::map<long, Cluster> &chains() const { return chains_; }
  std::vector<std::string> &warnings() { return warnings_; }

 private:
  std::map<Span, long> owner_;
  std::map<long, Cluster> chains_;
  std::vector<std::string> warnings_;
};

// Parser state for one CoNLL document.
struct ConllDocument {
  std::string name;
  int part = 0;
  int begin_line = 0;
  size_t columns = 0;
  std::vector<std::vector<std::string>> sentences;
  std::vector<std::string> current;
  std::vector<std::string> pos;
  std::vector<std::string> parse_bits;
  std::vector<int> parse_lines;
  std::vector<std::string> coref;
  std::vector<int> coref_lines;

  void end_sentence() {
    if (!current.empty()) sentences.push_back(std::move(current));
    current.clear();
  }
};

void parse_header(std::string_view line, int line_no, ConllDocument *doc) {
  std::string_view rest = line.substr(std::string_view("#begin document").size());
  size_t open = rest.find('(');
  size_t close = rest.find(')');
  if (open != std::string_view::npos && close != std::string_view::npos &&
      close > open) {
    doc->name = std::string(rest.substr(open + 1, close - open - 1));
    rest = rest.substr(close + 1);
  } else {
    auto fields = split_whitespace(rest);
    if (fields.empty()) throw ParseError("document header without a name", line_no);
    doc->name = fields[0];
    while (!doc->name.empty() && doc->name.back() == ';') doc->name.pop_back();
    rest = rest.substr(rest.find(fields[0]) + fields[0].size());
  }
  size_t part = rest.find("part");
  if (part != std::string_view::npos) {
    auto fields = split_whitespace(rest.substr(part + 4));
    if (!fields.empty()) {
      try {
        doc->part = std::stoi(fields[0]);
      } catch (const std::exception &) {
        throw ParseError("bad part number '" + fields[0] + "'", line_no);
      }
    }
  }
}

long parse_chain_id(const std::string &text, int line_no) {
  if (text.empty() ||
      !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw ParseError("bad coreference id '" + text + "'", line_no);
  }
  return std::stol(text);
}

void parse_coref_column(const ConllDocument &raw, ChainBuilder *chains) {
  struct Open {
    int token;
    int line;
  };
  std::map<long, std::vector<Open>> open;
  for (size_t t = 0; t < raw.coref.size(); ++t) {
    const std::string &cell = raw.coref[t];
    int line_no = raw.coref_lines[t];
    int token = static_cast<int>(t);
    if (cell == "-") continue;
    std::stringstream items(cell);
    std::string item;
    while (std::getline(items, item, '|')) {
      bool opens = !item.empty() && item.front() == '(';
      bool closes = !item.empty() && item.back() == ')';
      std::string body = item.substr(opens ? 1 : 0);
      if (closes && !body.empty()) body.pop_back();
      if (!opens && !closes) {
        throw ParseError("bad coreference item '" + item + "'", line_no);
      }
      long id = parse_chain_id(body, line_no);
      if (opens && closes) {
        chains->add(raw.name, id, {token, token}, line_no);
      } else if (opens) {
        open[id].push_back({token, line_no});
      } else {
        auto it = open.find(id);
        if (it == open.end() || it->second.empty()) {
          throw ParseError("document " + raw.name + ": closing bracket for " +
                               std::to_string(id) + " without an opening",
                           line_no);
        }
        Open start = it->second.back();
        it->second.pop_back();
        chains->add(raw.name, id, {start.token, token}, line_no);
      }
    }
  }
  for (const auto &[id, stack] : open) {
    if (!stack.empty()) {
      throw ParseError("document " + raw.name + ": coreference bracket (" +
                           std::to_string(id) + " opened here is never closed",
                       stack.back().line);
    }
  }
}

std::vector<Constituent> parse_tree_column(const ConllDocument &raw,
                                           const Document &doc) {
  std::vector<Constituent> result;
  struct Open {
    size_t index;
    int sentence;
  };
  std::vector<Open> stack;
  for (size_t t = 0; t < raw.parse_bits.size(); ++t) {
    const std::string &bit = raw.parse_bits[t];
    int line_no = raw.parse_lines[t];
    int token = static_cast<int>(t);
    if (bit == "-") continue;
    bool leaf = false;
    size_t i = 0;
    while (i < bit.size()) {
      char c = bit[i];
      if (c == '(') {
        size_t j = i + 1;
        while (j < bit.size() && bit[j] != '(' && bit[j] != '*' && bit[j] != ')') ++j;
        std::string label = bit.substr(i + 1, j - i - 1);
        if (label.empty()) throw ParseError("empty constituent label", line_no);
        stack.push_back({result.size(), doc.sentence_of(token)});
        result.push_back({{token, -1}, label});
        i = j;
      } else if (c == '*') {
        leaf = true;
        ++i;
      } else if (c == ')') {
        if (stack.empty()) throw ParseError("unbalanced parse bracket", line_no);
        Open top = stack.back();
        stack.pop_back();
        if (top.sentence != doc.sentence_of(token)) {
          throw ParseError("constituent crosses a sentence boundary", line_no);
        }
        result[top.index].span.end = token;
        ++i;
      } else {
        throw ParseError("unexpected character in parse bit '" + bit + "'", line_no);
      }
    }
    if (!leaf) throw ParseError("parse bit '" + bit + "' has no leaf", line_no);
  }
  if (!stack.empty()) {
    throw ParseError("document " + raw.name + ": unclosed constituent " +
                     result[stack.back().index].label);
  }
  return result;
}

void finish_document(ConllDocument &raw, Corpus *corpus) {
  raw.end_sentence();
  Document doc(raw.name, raw.sentences, raw.part);
  bool any_pos = std::any_of(raw.pos.begin(), raw.pos.end(),
                             [](const std::string &p) { return p != "-"; });
  if (any_pos) doc.set_pos_tags(raw.pos);
  bool any_parse = std::any_of(raw.parse_bits.begin(), raw.parse_bits.end(),
                               [](const std::string &p) { return p != "-"; });
  if (any_parse) doc.set_parse_spans(parse_tree_column(raw, doc));

  ChainBuilder chains;
  parse_coref_column(raw, &chains);
  GoldAnnotation gold;
  std::vector<Cluster> clusters;
  for (const auto &[id, cluster] : chains.chains()) {
    for (const Span &span : cluster) {
      if (!doc.within_sentence(span)) {
        throw ParseError("document " + raw.name + ": mention " + to_string(span) +
                         " of cluster " + std::to_string(id) +
                         " crosses a sentence boundary");
      }
    }
    if (cluster.size() < 2) {
      corpus->warnings.push_back("document " + raw.name + ": cluster " +
                                 std::to_string(id) + " has a single mention " +
                                 to_string(cluster[0]) + "; dropped");
      continue;
    }
    clusters.push_back(cluster);
    gold.all_mentions.insert(cluster.begin(), cluster.end());
  }
  gold.anaphoric = Clustering(std::move(clusters));
  for (auto &w : chains.warnings()) corpus->warnings.push_back(std::move(w));
  corpus->documents.push_back(std::move(doc));
  corpus->gold.push_back(std::move(gold));
}

std::string format_part(int part) {
  std::string digits = std::to_string(part);
  while (digits.size() < 3) digits.insert(digits.begin(), '0');
  return digits;
}

std::string parse_bit(const Document &doc, int token,
                      const std::vector<std::vector<size_t>> &opens,
                      const std::vector<std::vector<size_t>> &closes) {
  std::string bit;
  for (size_t c : opens[token]) bit += "(" + doc.parse_spans()[c].label;
  bit += "*";
  bit.append(closes[token].size(), ')');
  return bit;
}

std::string coref_cell(int token, const std::vector<std::pair<Span, size_t>> &mentions) {
  // Openings outermost first, then width-1 mentions, then closings innermost
  // first.
  std::vector<std::pair<Span, size_t>> opening, single, closing;
  for (const auto &m : mentions) {
    if (m.first.start == token && m.first.end == token) {
      single.push_back(m);
    } else if (m.first.start == token) {
      opening.push_back(m);
    } else if (m.first.end == token) {
      closing.push_back(m);
    }
  }
  std::sort(opening.begin(), opening.end(), [](const auto &a, const auto &b) {
    return std::tie(b.first.end, a.second) < std::tie(a.first.end, b.second);
  });
  std::sort(closing.begin(), closing.end(), [](const auto &a, const auto &b) {
    return std::tie(b.first.start, a.second) < std::tie(a.first.start, b.second);
  });
  std::string cell;
  auto append = [&](const std::string &item) {
    if (!cell.empty()) cell += '|';
    cell += item;
  };
  for (const auto &[span, id] : opening) append("(" + std::to_string(id));
  for (const auto &[span, id] : single) append("(" + std::to_string(id) + ")");
  for (const auto &[span, id] : closing) append(std::to_string(id) + ")");
  return cell.empty() ? "-" : cell;
}

// JSON helpers.

json span_triple(const Document &doc, const Span &span) {
  LocalSpan local = to_local_span(doc, span);
  return json::array({local.sentence, local.start, local.end_exclusive});
}

Span read_triple(const Document &doc, const json &triple) {
  if (!triple.is_array() || triple.size() < 3) {
    throw ParseError("document " + doc.doc_id() +
                     ": mention must be a [sentence, start, end] triple");
  }
  return to_document_span(doc, triple[0].get<int>(), triple[1].get<int>(),
                          triple[2].get<int>());
}

json score_value(double score) {
  if (std::isinf(score)) return score > 0 ? "+inf" : "-inf";
  return score;
}

double read_score(const json &value) {
  if (value.is_string()) {
    const std::string &s = value.get_ref<const std::string &>();
    if (s == "+inf" || s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParseError("bad score '" + s + "'");
  }
  return value.get<double>();
}

json document_record(const Document &doc) {
  json record;
  record["id"] = doc.doc_id();
  if (doc.part() != 0) record["part"] = doc.part();
  record["sentences"] = doc.sentences();
  if (doc.has_pos()) {
    json pos = json::array();
    for (int s = 0; s < doc.sentence_count(); ++s) {
      auto begin = doc.pos_tags().begin() + doc.sentence_start(s);
      pos.push_back(std::vector<std::string>(begin, begin + doc.sentence_length(s)));
    }
    record["pos"] = std::move(pos);
  }
  if (doc.has_parse()) {
    json constituents = json::array();
    for (const Constituent &c : doc.parse_spans()) {
      json entry = span_triple(doc, c.span);
      entry.push_back(c.label);
      constituents.push_back(std::move(entry));
    }
    record["constituents"] = std::move(constituents);
  }
  return record;
}

Document read_document(const json &record) {
  if (!record.is_object() || !record.contains("id") || !record.contains("sentences")) {
    throw ParseError("record needs 'id' and 'sentences'");
  }
  std::string id = record["id"].is_string() ? record["id"].get<std::string>()
                                            : record["id"].dump();
  Document doc(id, record["sentences"].get<std::vector<std::vector<std::string>>>(),
               record.value("part", 0));
  if (record.contains("pos")) {
    std::vector<std::string> tags;
    for (const auto &sentence : record["pos"]) {
      for (const auto &tag : sentence) tags.push_back(tag.get<std::string>());
    }
    try {
      doc.set_pos_tags(std::move(tags));
    } catch (const std::invalid_argument &e) {
      throw ParseError(e.what());
    }
  }
  if (record.contains("constituents")) {
    std::vector<Constituent> constituents;
    for (const auto &entry : record["constituents"]) {
      constituents.push_back({read_triple(doc, entry), entry.at(3).get<std::string>()});
    }
    doc.set_parse_spans(std::move(constituents));
  }
  return doc;
}

// Parses mention_clusters; size-1 clusters become singletons.
GoldAnnotation read_gold(const Document &doc, const json &record,
                         std::vector<std::string> *warnings) {
  GoldAnnotation gold;
  ChainBuilder chains;
  if (record.contains("mention_clusters")) {
    long id = 0;
    for (const auto &cluster : record["mention_clusters"]) {
      for (const auto &triple : cluster) {
        chains.add(doc.doc_id(), id, read_triple(doc, triple), 0);
      }
      ++id;
    }
  }
  std::vector<Cluster> clusters;
  for (const auto &[id, cluster] : chains.chains()) {
    gold.all_mentions.insert(cluster.begin(), cluster.end());
    if (cluster.size() >= 2) clusters.push_back(cluster);
  }
  gold.anaphoric = Clustering(std::move(clusters));
  for (auto &w : chains.warnings()) warnings->push_back(std::move(w));
  return gold;
}

template <typename Fn>
void for_each_json_line(std::string_view text, Fn fn) {
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t next = text.find('\n', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view line = text.substr(pos, next - pos);
    ++line_no;
    pos = next + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error &e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    try {
      fn(record);
    } catch (const ParseError &e) {
      throw ParseError(e.what(), line_no);
    } catch (const json::exception &e) {
      throw ParseError(std::string("bad record: ") + e.what(), line_no);
    } catch (const std::invalid_argument &e) {
      throw ParseError(e.what(), line_no);
    }
  }
}

}  // namespace

Span to_document_span(const Document &doc, int sentence, int start,
                      int end_exclusive) {
  if (sentence < 0 || sentence >= doc.sentence_count() || start < 0 ||
      end_exclusive <= start || end_exclusive > doc.sentence_length(sentence)) {
    throw ParseError("document " + doc.doc_id() + ": mention [" +
                     std::to_string(sentence) + "," + std::to_string(start) +
                     "," + std::to_string(end_exclusive) + "] out of range");
  }
  int offset = doc.sentence_start(sentence);
  return {offset + start, offset + end_exclusive - 1};
}

LocalSpan to_local_span(const Document &doc, const Span &span) {
  int sentence = doc.sentence_of(span.start);
  int offset = doc.sentence_start(sentence);
  return {sentence, span.start - offset, span.end - offset + 1};
}

Corpus parse_conll(std::string_view text) {
  Corpus corpus;
  std::optional<ConllDocument> doc;
  int line_no = 0;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t next = text.find('\n', pos);
    if (next == std::string_view::npos) next = text.size();
    std::string_view line = text.substr(pos, next - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = next + 1;
    ++line_no;

    if (starts_with(line, "#begin document")) {
      if (doc) throw ParseError("nested #begin document", line_no);
      doc.emplace();
      doc->begin_line = line_no;
      parse_header(line, line_no, &*doc);
      continue;
    }
    if (starts_with(line, "#end document")) {
      if (!doc) throw ParseError("#end document without #begin", line_no);
      finish_document(*doc, &corpus);
      doc.reset();
      continue;
    }
    if (starts_with(line, "#")) continue;
    auto fields = split_whitespace(line);
    if (fields.empty()) {
      if (doc) doc->end_sentence();
      continue;
    }
    if (!doc) throw ParseError("token row outside a document", line_no);
    if (fields.size() < 2) {
      throw ParseError("token row needs at least 2 columns", line_no);
    }
    if (doc->columns == 0) {
      doc->columns = fields.size();
    } else if (doc->columns != fields.size()) {
      throw ParseError("ragged columns: expected " + std::to_string(doc->columns) +
                           ", found " + std::to_string(fields.size()),
                       line_no);
    }
    bool standard = fields.size() >= 6;
    doc->current.push_back(standard ? fields[3] : fields[0]);
    doc->pos.push_back(standard ? fields[4] : "-");
    doc->parse_bits.push_back(standard ? fields[5] : "-");
    doc->parse_lines.push_back(line_no);
    doc->coref.push_back(fields.back());
    doc->coref_lines.push_back(line_no);
  }
  if (doc) {
    throw ParseError("document " + doc->name + " is missing #end document",
                     doc->begin_line);
  }
  return corpus;
}

std::string serialize_conll(const Corpus &corpus) {
  std::string out;
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    const Document &doc = corpus.documents[d];
    std::string part = format_part(doc.part());
    out += "#begin document (" + doc.doc_id() + "); part " + part + "\n";

    std::vector<std::vector<size_t>> opens(doc.token_count()), closes(doc.token_count());
    for (size_t c = 0; c < doc.parse_spans().size(); ++c) {
      const Span &span = doc.parse_spans()[c].span;
      opens[span.start].push_back(c);
      closes[span.end].push_back(c);
    }

    std::vector<std::vector<std::pair<Span, size_t>>> mentions(doc.token_count());
    if (d < corpus.gold.size()) {
      const auto &clusters = corpus.gold[d].anaphoric.clusters();
      for (size_t id = 0; id < clusters.size(); ++id) {
        for (const Span &span : clusters[id]) {
          mentions[span.start].emplace_back(span, id);
          if (span.end != span.start) mentions[span.end].emplace_back(span, id);
        }
      }
    }

    for (int s = 0; s < doc.sentence_count(); ++s) {
      for (int i = 0; i < doc.sentence_length(s); ++i) {
        int t = doc.sentence_start(s) + i;
        out += doc.doc_id() + "  " + std::to_string(doc.part()) + "  " +
               std::to_string(i) + "  " + doc.token(t) + "  " +
               (doc.has_pos() ? doc.pos_tags()[t] : "-") + "  " +
               (doc.has_parse() ? parse_bit(doc, t, opens, closes) : "-") +
               "  -  -  -  -  *  " + coref_cell(t, mentions[t]) + "\n";
      }
      out += "\n";
    }
    out += "#end document\n";
  }
  return out;
}

Corpus parse_json_corpus(std::string_view text) {
  Corpus corpus;
  for_each_json_line(text, [&](const json &record) {
    Document doc = read_document(record);
    GoldAnnotation gold = read_gold(doc, record, &corpus.warnings);
    corpus.documents.push_back(std::move(doc));
    corpus.gold.push_back(std::move(gold));
  });
  return corpus;
}

std::string serialize_json(const Corpus &corpus) {
  std::string out;
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    const Document &doc = corpus.documents[d];
    json record = document_record(doc);
    json clusters = json::array();
    if (d < corpus.gold.size()) {
      const GoldAnnotation &gold = corpus.gold[d];
      for (const Cluster &cluster : gold.anaphoric.clusters()) {
        json entry = json::array();
        for (const Span &span : cluster) entry.push_back(span_triple(doc, span));
        clusters.push_back(std::move(entry));
      }
      for (const Span &span : gold.singletons()) {
        clusters.push_back(json::array({span_triple(doc, span)}));
      }
    }
    record["mention_clusters"] = std::move(clusters);
    out += record.dump() + "\n";
  }
  return out;
}

PredictionFile parse_predictions_json(std::string_view text) {
  PredictionFile file;
  for_each_json_line(text, [&](const json &record) {
    Document doc = read_document(record);
    PredictionSet pred;
    pred.doc_id = doc.doc_id();
    pred.part = doc.part();
    if (record.contains("mention_clusters")) {
      // Predicted clusters keep their size-1 members.
      std::vector<Cluster> clusters;
      for (const auto &cluster : record["mention_clusters"]) {
        Cluster c;
        for (const auto &triple : cluster) c.push_back(read_triple(doc, triple));
        clusters.push_back(std::move(c));
      }
      pred.clustering = Clustering(std::move(clusters));
    }
    if (record.contains("candidates")) {
      std::vector<ScoredSpan> entries;
      for (const auto &entry : record["candidates"]) {
        entries.push_back({read_triple(doc, entry), read_score(entry.at(3))});
      }
      pred.candidates = ScoredCandidateSet(std::move(entries));
    }
    if (record.contains("antecedents")) {
      std::vector<AntecedentDecision> decisions;
      for (const auto &entry : record["antecedents"]) {
        AntecedentDecision d;
        d.mention = read_triple(doc, entry.at(0));
        if (!entry.at(1).is_null()) d.antecedent = read_triple(doc, entry.at(1));
        d.score = read_score(entry.at(2));
        decisions.push_back(d);
      }
      pred.decisions = std::move(decisions);
    }
    if (record.contains("pair_scores")) {
      for (const auto &entry : record["pair_scores"]) {
        pred.pair_scores[{read_triple(doc, entry.at(0)), read_triple(doc, entry.at(1))}] =
            read_score(entry.at(2));
      }
    }
    file.documents.push_back(std::move(doc));
    file.predictions.push_back(std::move(pred));
  });
  return file;
}

std::string serialize_predictions_json(const std::vector<Document> &documents,
                                       const std::vector<PredictionSet> &preds) {
  if (documents.size() != preds.size()) {
    throw std::invalid_argument("documents and predictions differ in length");
  }
  std::string out;
  for (size_t d = 0; d < documents.size(); ++d) {
    const Document &doc = documents[d];
    const PredictionSet &pred = preds[d];
    json record = document_record(doc);
    json clusters = json::array();
    if (pred.clustering) {
      for (const Cluster &cluster : pred.clustering->clusters()) {
        json entry = json::array();
        for (const Span &span : cluster) entry.push_back(span_triple(doc, span));
        clusters.push_back(std::move(entry));
      }
    }
    record["mention_clusters"] = std::move(clusters);
    if (pred.candidates) {
      json entries = json::array();
      for (const ScoredSpan &entry : pred.candidates->entries()) {
        json triple = span_triple(doc, entry.span);
        triple.push_back(score_value(entry.score));
        entries.push_back(std::move(triple));
      }
      record["candidates"] = std::move(entries);
    }
    if (pred.decisions) {
      json entries = json::array();
      for (const AntecedentDecision &d : *pred.decisions) {
        entries.push_back(json::array(
            {span_triple(doc, d.mention),
             d.antecedent ? span_triple(doc, *d.antecedent) : json(nullptr),
             score_value(d.score)}));
      }
      record["antecedents"] = std::move(entries);
    }
    if (!pred.pair_scores.empty()) {
      json entries = json::array();
      for (const auto &[pair, score] : pred.pair_scores) {
        entries.push_back(json::array({span_triple(doc, pair.first),
                                       span_triple(doc, pair.second),
                                       score_value(score)}));
      }
      record["pair_scores"] = std::move(entries);
    }
    out += record.dump() + "\n";
  }
  return out;
}

PredictionFile predictions_from_corpus(const Corpus &corpus) {
  PredictionFile file;
  file.documents = corpus.documents;
  file.warnings = corpus.warnings;
  for (size_t d = 0; d < corpus.documents.size(); ++d) {
    PredictionSet pred;
    pred.doc_id = corpus.documents[d].doc_id();
    pred.part = corpus.documents[d].part();
    pred.clustering = corpus.gold[d].anaphoric;
    file.predictions.push_back(std::move(pred));
  }
  return file;
}

}  // namespace coref
