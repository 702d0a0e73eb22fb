#include "coref/lexicon.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace coref::lexicon {
namespace {

template <size_t N>
bool contains(const std::array<std::string_view, N> &words,
              std::string_view word) {
  return std::find(words.begin(), words.end(), word) != words.end();
}

constexpr std::array<std::string_view, 39> kPronouns = {
    "i",        "me",     "my",        "mine",     "myself",   "you",
    "your",     "yours",  "yourself",  "yourselves", "he",     "him",
    "his",      "himself", "she",      "her",      "hers",     "herself",
    "it",       "its",    "itself",    "we",       "us",       "our",
    "ours",     "ourselves", "they",   "them",     "their",    "theirs",
    "themselves", "who",  "whom",      "whose",    "which",    "what",
    "where",    "when",   "how"};

constexpr std::array<std::string_view, 8> kDeictics = {
    "this", "that", "these", "those", "here", "there", "then", "now"};

constexpr std::array<std::string_view, 12> kDeterminers = {
    "the", "a",     "an",   "this", "that", "these",
    "those", "some", "every", "each", "any", "no"};

constexpr std::array<std::string_view, 32> kStopwords = {
    "the",  "a",   "an",   "of",   "in",   "on",  "at",   "to",
    "for",  "and", "or",   "but",  "with", "by",  "from", "as",
    "is",   "was", "are",  "were", "be",   "'s",  ",",    ".",
    "this", "that", "these", "those", "er", "ah",  "uh",   "um"};

}  // namespace

std::string fold_case(std::string_view word) {
  std::string result(word);
  for (char &c : result) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return result;
}

bool is_pronoun_word(std::string_view word) {
  return contains(kPronouns, fold_case(word));
}

bool is_deictic_word(std::string_view word) {
  return contains(kDeictics, fold_case(word));
}

bool is_determiner(std::string_view word) {
  return contains(kDeterminers, fold_case(word));
}

bool is_stopword(std::string_view word) {
  return contains(kStopwords, fold_case(word));
}

bool is_pronoun_tag(std::string_view tag) {
  return tag == "PRP" || tag == "PRP$" || tag == "WP" || tag == "WDT" ||
         tag == "WRB";
}

bool is_capitalized(std::string_view word) {
  return !word.empty() && std::isupper(static_cast<unsigned char>(word[0]));
}

}  // namespace coref::lexicon
