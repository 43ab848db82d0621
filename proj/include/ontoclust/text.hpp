#pragma once

#include "ontoclust/ontology.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ontoclust {

enum class TokenKind { Word, Number, Unit, Stopword, Punctuation };

struct Token {
    std::string surface;    // exact substring of the raw text
    std::string normalized; // lower-cased; for words also corrected and stemmed
    TokenKind kind = TokenKind::Word;
    std::size_t position = 0; // character offset in the raw text
};

struct ProcessedRequest {
    std::string raw;
    std::vector<Token> tokens;
    // normalized word tokens only (numbers, units, stopwords, punctuation
    // excluded), in request order
    std::vector<std::string> match_words;
};

struct TextOptions {
    std::string language = "en";
    std::set<std::string> stopwords;
    std::set<std::string> units;
    int max_correction_distance = 2;
    // words shorter than this are never spell-corrected (attribute names
    // contain single-letter words like "X")
    std::size_t min_correction_length = 4;
};

/// Built-in stop-word and unit lexicons. Only "en" is shipped; other
/// languages must supply lexicon files (ConfigError otherwise).
TextOptions default_text_options(const std::string& language = "en");

/// Loads a one-term-per-line UTF-8 lexicon file.
std::set<std::string> load_lexicon_file(const std::filesystem::path& path);

std::string to_lower(std::string_view text);

/// Splits on whitespace; every punctuation character is its own token.
/// Concatenating surfaces with the skipped separators reproduces the input.
std::vector<Token> tokenize(std::string_view text, const TextOptions& options);

/// Levenshtein distance (insert/delete/substitute, unit costs).
int edit_distance(std::string_view a, std::string_view b);

/// Returns the vocabulary term with minimum edit distance <= max_distance
/// (ties broken lexicographically), flagged corrected=true. Words already in
/// the vocabulary, and words with no candidate in range, come back unchanged.
std::pair<std::string, bool> correct_spelling(const std::string& word,
                                              const std::set<std::string>& vocab,
                                              int max_distance);

/// Suffix-stripping stem of a lower-cased word. Idempotent:
/// stem(stem(w)) == stem(w).
std::string stem(const std::string& word, const std::string& language = "en");

/// Full pipeline: tokenize, classify numbers/units/stopwords, spell-correct
/// words against the ontology vocabulary, stem.
ProcessedRequest preprocess(std::string_view text, const Ontology& ontology,
                            const TextOptions& options);

} // namespace ontoclust
