#include "ontoclust/text.hpp"
#include "ontoclust/errors.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace ontoclust;

namespace {

const TextOptions& opts() {
    static TextOptions o = default_text_options();
    return o;
}

const Ontology& example_ontology() {
    static Ontology ont = load_ontology_file(ONTOCLUST_DATA_DIR "/example_ontology.json");
    return ont;
}

} // namespace

TEST_CASE("tokenize classifies words, numbers and units") {
    auto tokens = tokenize("Pay load 5 kg", opts());
    REQUIRE(tokens.size() == 4);
    CHECK(tokens[0].kind == TokenKind::Word);
    CHECK(tokens[0].normalized == "pay");
    CHECK(tokens[1].kind == TokenKind::Word);
    CHECK(tokens[1].normalized == "load");
    CHECK(tokens[2].kind == TokenKind::Number);
    CHECK(tokens[2].surface == "5");
    CHECK(tokens[3].kind == TokenKind::Unit);
    CHECK(tokens[3].normalized == "kg");
}

TEST_CASE("tokenize handles empty input and punctuation") {
    CHECK(tokenize("", opts()).empty());

    auto tokens = tokenize("Stroke = 5", opts());
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0].kind == TokenKind::Word);
    CHECK(tokens[0].normalized == "stroke");
    CHECK(tokens[1].kind == TokenKind::Punctuation);
    CHECK(tokens[1].surface == "=");
    CHECK(tokens[2].kind == TokenKind::Number);
}

TEST_CASE("token offsets reconstruct the input") {
    std::mt19937 rng(7);
    const std::string alphabet = "ab5 ,.&x  Kg";
    for (int iter = 0; iter < 200; ++iter) {
        std::string text;
        std::uniform_int_distribution<std::size_t> len(0, 30);
        std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
        std::size_t n = len(rng);
        for (std::size_t i = 0; i < n; ++i)
            text += alphabet[pick(rng)];

        auto tokens = tokenize(text, opts());
        std::vector<char> covered(text.size(), 0);
        std::size_t last_end = 0;
        for (const auto& t : tokens) {
            CHECK(t.position >= last_end); // ascending, non-overlapping
            REQUIRE(t.position + t.surface.size() <= text.size());
            CHECK(text.substr(t.position, t.surface.size()) == t.surface);
            for (std::size_t i = t.position; i < t.position + t.surface.size(); ++i)
                covered[i] = 1;
            last_end = t.position + t.surface.size();
        }
        for (std::size_t i = 0; i < text.size(); ++i)
            if (!covered[i])
                CHECK(std::isspace(static_cast<unsigned char>(text[i])));
    }
}

TEST_CASE("correct_spelling leaves vocabulary members alone") {
    std::set<std::string> vocab{"stroke", "pick", "place"};
    auto [word, corrected] = correct_spelling("stroke", vocab, 2);
    CHECK(word == "stroke");
    CHECK_FALSE(corrected);
}

TEST_CASE("correct_spelling fixes near misses") {
    std::set<std::string> vocab{"stroke", "pick", "place"};
    auto [word, corrected] = correct_spelling("strke", vocab, 2);
    CHECK(word == "stroke");
    CHECK(corrected);
    CHECK(oracles::levenshtein("strke", "stroke") == 1);
    CHECK(edit_distance("strke", "stroke") == 1);
}

TEST_CASE("correct_spelling gives up outside the distance budget") {
    std::set<std::string> vocab{"stroke", "pick"};
    auto [word, corrected] = correct_spelling("zzzzz", vocab, 2);
    CHECK(word == "zzzzz");
    CHECK_FALSE(corrected);
}

TEST_CASE("correct_spelling breaks ties lexicographically") {
    std::set<std::string> vocab{"aaac", "aaab"};
    auto [word, corrected] = correct_spelling("aaaa", vocab, 2);
    CHECK(word == "aaab");
    CHECK(corrected);
}

TEST_CASE("edit_distance matches the recursive oracle") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<std::size_t> len(0, 8);
    std::uniform_int_distribution<int> letter('a', 'e');
    for (int iter = 0; iter < 500; ++iter) {
        std::string a, b;
        std::size_t la = len(rng), lb = len(rng);
        for (std::size_t i = 0; i < la; ++i)
            a += static_cast<char>(letter(rng));
        for (std::size_t i = 0; i < lb; ++i)
            b += static_cast<char>(letter(rng));
        CHECK(edit_distance(a, b) == oracles::levenshtein(a, b));
    }
}

TEST_CASE("stem strips standard English suffixes") {
    CHECK(stem("loading") == "load");
    CHECK(stem("kg") == "kg");
    CHECK(stem("strokes") == "stroke");
    CHECK(stem("conveyors") == "conveyor");
    CHECK(stem("projects") == "project");
    CHECK(stem("pay") == "pay");
}

TEST_CASE("stem is idempotent") {
    std::vector<std::string> words{"loading",  "strokes", "relational", "happiness",
                                   "conveyors", "valves",  "controllers", "axes",
                                   "generalization", "operator", "possibly", "agreed"};
    std::mt19937 rng(13);
    std::uniform_int_distribution<std::size_t> len(1, 12);
    std::uniform_int_distribution<int> letter('a', 'z');
    for (int iter = 0; iter < 2000; ++iter) {
        std::string w;
        std::size_t n = len(rng);
        for (std::size_t i = 0; i < n; ++i)
            w += static_cast<char>(letter(rng));
        words.push_back(w);
    }
    for (const auto& w : words)
        CHECK(stem(stem(w)) == stem(w));
}

TEST_CASE("stem rejects unsupported languages") {
    CHECK_THROWS_AS(stem("wort", "de"), ConfigError);
    CHECK_THROWS_AS(default_text_options("de"), ConfigError);
}

TEST_CASE("preprocess runs the full pipeline in order") {
    auto pr = preprocess("Pay load 5 kg, Stroke X 100 mm, Stroke Y 200 mm", example_ontology(), opts());
    CHECK(pr.match_words ==
          std::vector<std::string>{"pay", "load", "stroke", "x", "stroke", "y"});
}

TEST_CASE("preprocess of the empty request is empty") {
    auto pr = preprocess("", example_ontology(), opts());
    CHECK(pr.raw.empty());
    CHECK(pr.tokens.empty());
    CHECK(pr.match_words.empty());
}

TEST_CASE("preprocess classifies '&' as punctuation") {
    auto pr = preprocess("Pick & place", example_ontology(), opts());
    CHECK(pr.match_words == std::vector<std::string>{"pick", "place"});
    REQUIRE(pr.tokens.size() == 3);
    CHECK(pr.tokens[1].kind == TokenKind::Punctuation);
}

TEST_CASE("preprocess corrects misspelled request words against the vocabulary") {
    auto pr = preprocess("Conveyrs speed", example_ontology(), opts());
    CHECK(pr.match_words == std::vector<std::string>{"conveyor", "speed"});
}

TEST_CASE("spell correction never fires on numbers, units or short words") {
    auto pr = preprocess("12345 kg X", example_ontology(), opts());
    REQUIRE(pr.tokens.size() == 3);
    CHECK(pr.tokens[0].kind == TokenKind::Number);
    CHECK(pr.tokens[0].normalized == "12345");
    CHECK(pr.tokens[1].kind == TokenKind::Unit);
    CHECK(pr.tokens[1].normalized == "kg");
    CHECK(pr.tokens[2].normalized == "x");
}

TEST_CASE("preprocess is deterministic") {
    auto a = preprocess("Pick & place pay load > 0 and Stroke = 5", example_ontology(), opts());
    auto b = preprocess("Pick & place pay load > 0 and Stroke = 5", example_ontology(), opts());
    CHECK(a.match_words == b.match_words);
    REQUIRE(a.tokens.size() == b.tokens.size());
    for (std::size_t i = 0; i < a.tokens.size(); ++i) {
        CHECK(a.tokens[i].normalized == b.tokens[i].normalized);
        CHECK(a.tokens[i].kind == b.tokens[i].kind);
        CHECK(a.tokens[i].position == b.tokens[i].position);
    }
}

TEST_CASE("stopwords are excluded from match words") {
    auto pr = preprocess("the stroke of the axes", example_ontology(), opts());
    CHECK(pr.match_words == std::vector<std::string>{"stroke", "ax"});
}

TEST_CASE("lexicon files load one term per line") {
    auto stop = load_lexicon_file(ONTOCLUST_DATA_DIR "/stopwords_en.txt");
    CHECK(stop.count("and") == 1);
    auto units = load_lexicon_file(ONTOCLUST_DATA_DIR "/units.txt");
    CHECK(units == opts().units);
}
