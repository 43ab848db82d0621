#pragma once

#include "ontoclust/ontology.hpp"
#include "ontoclust/text.hpp"

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ontoclust {

struct ClassScore {
    std::string class_id;
    double sim = 0.0; // CU similarity in (0, 1]
};

struct AttributeScore {
    std::string attribute_id;
    double sim = 0.0; // AU similarity in (0, 1]
};

/// Per-request similarity result; zero-score entries are omitted.
struct SimilarityReport {
    std::string request_id;
    std::vector<ClassScore> class_scores;
    std::vector<AttributeScore> attribute_scores;
};

struct SimilarityOptions {
    // class scores below this threshold are clamped to 0
    double class_threshold = 0.3;
};

/// All distinct contiguous substrings of s with length 1..len(s)-1
/// ("motor" has 13). DomainError on empty input.
std::set<std::string> proper_substrings(std::string_view s);

/// Fraction of a's distinct proper substrings found in b, both lower-cased.
/// Positions are anchored: a substring taken from position p of a must occur
/// in b at p or later, so "motor" scores 5/13 against "mortar" and every
/// string scores 1 against itself. Directional: similarity(a, b) !=
/// similarity(b, a) in general. A single-character a scores by containment.
double fuzzy_string_similarity(std::string_view a, std::string_view b);

/// Class-name words normalized the same way match_words are (stopwords,
/// numbers, units, punctuation dropped; rest lower-cased and stemmed).
std::vector<std::string> normalize_name_words(std::string_view name, const TextOptions& options);

/// Best fuzzy similarity of every match_word and every contiguous match-word
/// n-gram (up to the class-name word count) against the normalized class
/// name; below-threshold scores clamp to 0.
double request_class_similarity(const ProcessedRequest& req, const OntologyClass& cls,
                                const TextOptions& topt, const SimilarityOptions& sopt);

struct AttributeMatch {
    double similarity = 0.0;
    // texts of maximal matched attribute-name fragments, longest first
    std::vector<std::string> entries;
};

/// Positional attribute matching on the raw lower-cased request: contiguous
/// runs of attribute-name words are located at strictly increasing request
/// positions, branching over every occurrence; each maximal run scores
/// (words_matched / total_words) * (chars_matched / total_chars) and the
/// result is the maximum over runs. 1.0 iff the whole name occurs in order.
AttributeMatch match_attribute(std::string_view raw_request, std::string_view attribute_name);

double request_attribute_similarity(std::string_view raw_request, const OntologyAttribute& attr);

/// Scores the request against every class and attribute of the ontology;
/// only strictly positive scores are reported.
SimilarityReport match_request(const ProcessedRequest& req, std::string request_id,
                               const Ontology& ontology, const TextOptions& topt,
                               const SimilarityOptions& sopt);

/// XML with one <Request> element carrying <CID>/<CWeight> per class entry
/// and <AID>/<AWeight> per attribute entry; weights printed with 4 decimals.
std::string emit_similarity_xml(const SimilarityReport& report);
std::string emit_similarity_xml(std::span<const SimilarityReport> reports);

/// Strict parser for the emitted schema; round-trips byte-identically.
std::vector<SimilarityReport> parse_similarity_xml(std::string_view xml);

} // namespace ontoclust
