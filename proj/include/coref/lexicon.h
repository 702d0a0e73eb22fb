#ifndef COREF_LEXICON_H_
#define COREF_LEXICON_H_

#include <string>
#include <string_view>

// Small closed-class word lists shared by the linker heuristics and the
// conflation sub-typer.
namespace coref::lexicon {

// ASCII lower-casing; non-ASCII bytes pass through unchanged.
std::string fold_case(std::string_view word);

// Personal, possessive, reflexive, relative and interrogative pronouns.
bool is_pronoun_word(std::string_view word);

// this, that, these, those, here, there, then, now.
bool is_deictic_word(std::string_view word);

bool is_determiner(std::string_view word);
bool is_stopword(std::string_view word);

// POS tags treated as pronouns: PRP, PRP$, WP, WDT, WRB.
bool is_pronoun_tag(std::string_view tag);

bool is_capitalized(std::string_view word);

}  // namespace coref::lexicon

#endif  // COREF_LEXICON_H_
