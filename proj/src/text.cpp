#include "ontoclust/text.hpp"

#include "ontoclust/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>

namespace ontoclust {

namespace {

const char* kDefaultStopwordsEn[] = {
    "a",    "an",   "and",  "are",  "as",   "at",   "be",   "but", "by",   "for",
    "from", "has",  "have", "if",   "in",   "into", "is",   "it",  "its",  "no",
    "not",  "of",   "on",   "or",   "such", "that", "the",  "their", "then", "there",
    "these", "they", "this", "to",  "was",  "were", "will", "with"};

const char* kDefaultUnits[] = {"kg", "mm", "cm", "m", "g", "s", "n", "nm", "bar"};

bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }

// Non-ASCII bytes are treated as letters so UTF-8 words stay in one token.
bool is_letter(unsigned char c) { return std::isalpha(c) != 0 || c >= 0x80; }

} // namespace

TextOptions default_text_options(const std::string& language) {
    if (language != "en")
        throw ConfigError("no built-in lexicons for language '" + language +
                          "'; supply stop-word and unit files");
    TextOptions opt;
    opt.language = language;
    for (const char* w : kDefaultStopwordsEn)
        opt.stopwords.insert(w);
    for (const char* u : kDefaultUnits)
        opt.units.insert(u);
    return opt;
}

std::set<std::string> load_lexicon_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw IoError("lexicon file not found: " + path.string());
    std::set<std::string> terms;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        if (!line.empty())
            terms.insert(to_lower(line));
    }
    return terms;
}

std::string to_lower(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (unsigned char c : text)
        out.push_back(c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c));
    return out;
}

std::vector<Token> tokenize(std::string_view text, const TextOptions& options) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        std::size_t start = i;
        TokenKind kind;
        if (is_ascii_digit(text[i])) {
            ++i;
            while (i < n && is_ascii_digit(text[i]))
                ++i;
            if (i + 1 < n && text[i] == '.' && is_ascii_digit(text[i + 1])) {
                ++i;
                while (i < n && is_ascii_digit(text[i]))
                    ++i;
            }
            kind = TokenKind::Number;
        } else if (is_letter(c)) {
            ++i;
            while (i < n && is_letter(static_cast<unsigned char>(text[i])))
                ++i;
            kind = TokenKind::Word;
        } else {
            ++i; // each punctuation character stands alone
            kind = TokenKind::Punctuation;
        }
        Token t;
        t.surface = std::string(text.substr(start, i - start));
        t.normalized = to_lower(t.surface);
        t.position = start;
        t.kind = kind;
        if (kind == TokenKind::Word) {
            if (options.units.count(t.normalized))
                t.kind = TokenKind::Unit;
            else if (options.stopwords.count(t.normalized))
                t.kind = TokenKind::Stopword;
        }
        out.push_back(std::move(t));
    }
    return out;
}

int edit_distance(std::string_view a, std::string_view b) {
    if (a == b)
        return 0;
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j)
        prev[j] = static_cast<int>(j);
    for (std::size_t i = 0; i < a.size(); ++i) {
        cur[0] = static_cast<int>(i) + 1;
        for (std::size_t j = 0; j < b.size(); ++j) {
            int subst = prev[j] + (a[i] == b[j] ? 0 : 1);
            cur[j + 1] = std::min({cur[j] + 1, prev[j + 1] + 1, subst});
        }
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

std::pair<std::string, bool> correct_spelling(const std::string& word,
                                              const std::set<std::string>& vocab,
                                              int max_distance) {
    if (vocab.count(word))
        return {word, false};
    const std::string* best = nullptr;
    int best_distance = max_distance + 1;
    // std::set iterates in lexicographic order, so strict improvement keeps
    // the lexicographically smallest term among equal distances.
    for (const auto& term : vocab) {
        auto len_gap = static_cast<long>(term.size()) - static_cast<long>(word.size());
        if (std::labs(len_gap) > max_distance)
            continue;
        int d = edit_distance(word, term);
        if (d < best_distance) {
            best_distance = d;
            best = &term;
        }
    }
    if (best && best_distance <= max_distance)
        return {*best, true};
    return {word, false};
}

// ---------------------------------------------------------------------------
// Porter suffix-stripping stemmer. One deviation from the original rules:
// y -> i fires only when the y is preceded by a non-vowel that is not the
// first letter ("happy" -> "happi" but "pay" stays "pay"), as in the revised
// algorithm. stem() iterates the pass to a fixpoint.
// ---------------------------------------------------------------------------
namespace porter {

bool is_vowel_letter(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_consonant(const std::string& w, std::size_t i) {
    char c = w[i];
    if (is_vowel_letter(c))
        return false;
    if (c == 'y')
        return i == 0 ? true : !is_consonant(w, i - 1);
    return true;
}

// number of vowel->consonant transitions in the [C](VC)^m[V] form
int measure(const std::string& w) {
    std::size_t i = 0;
    const std::size_t n = w.size();
    int m = 0;
    while (i < n && is_consonant(w, i))
        ++i;
    while (i < n) {
        while (i < n && !is_consonant(w, i))
            ++i;
        if (i >= n)
            break;
        ++m;
        while (i < n && is_consonant(w, i))
            ++i;
    }
    return m;
}

bool contains_vowel(const std::string& w) {
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!is_consonant(w, i))
            return true;
    return false;
}

bool ends_double_consonant(const std::string& w) {
    std::size_t n = w.size();
    return n >= 2 && w[n - 1] == w[n - 2] && is_consonant(w, n - 1);
}

// stem ends consonant-vowel-consonant and the final consonant is not w, x, y
bool ends_cvc(const std::string& w) {
    std::size_t n = w.size();
    if (n < 3)
        return false;
    char last = w[n - 1];
    return is_consonant(w, n - 3) && !is_consonant(w, n - 2) && is_consonant(w, n - 1) &&
           last != 'w' && last != 'x' && last != 'y';
}

bool ends_with(const std::string& w, std::string_view suffix) {
    return w.size() >= suffix.size() &&
           w.compare(w.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct Rule {
    std::string_view suffix;
    std::string_view replacement;
};

// Longest matching suffix wins; if its measure condition fails, no rule of
// the step applies.
void apply_step(std::string& w, std::initializer_list<Rule> rules, int min_measure) {
    const Rule* best = nullptr;
    for (const auto& r : rules)
        if (ends_with(w, r.suffix) && (!best || r.suffix.size() > best->suffix.size()))
            best = &r;
    if (!best)
        return;
    std::string stem = w.substr(0, w.size() - best->suffix.size());
    if (measure(stem) > min_measure) {
        stem += best->replacement;
        w = std::move(stem);
    }
}

void step1a(std::string& w) {
    if (ends_with(w, "sses"))
        w.resize(w.size() - 2);
    else if (ends_with(w, "ies"))
        w.resize(w.size() - 2);
    else if (ends_with(w, "ss"))
        ;
    else if (ends_with(w, "s"))
        w.resize(w.size() - 1);
}

void step1b(std::string& w) {
    if (ends_with(w, "eed")) {
        if (measure(w.substr(0, w.size() - 3)) > 0)
            w.resize(w.size() - 1);
        return;
    }
    bool stripped = false;
    if (ends_with(w, "ed") && contains_vowel(w.substr(0, w.size() - 2))) {
        w.resize(w.size() - 2);
        stripped = true;
    } else if (ends_with(w, "ing") && contains_vowel(w.substr(0, w.size() - 3))) {
        w.resize(w.size() - 3);
        stripped = true;
    }
    if (!stripped)
        return;
    if (ends_with(w, "at") || ends_with(w, "bl") || ends_with(w, "iz")) {
        w.push_back('e');
    } else if (ends_double_consonant(w)) {
        char last = w.back();
        if (last != 'l' && last != 's' && last != 'z')
            w.resize(w.size() - 1);
    } else if (measure(w) == 1 && ends_cvc(w)) {
        w.push_back('e');
    }
}

void step1c(std::string& w) {
    std::size_t n = w.size();
    if (n >= 3 && w[n - 1] == 'y' && !is_vowel_letter(w[n - 2]))
        w[n - 1] = 'i';
}

void step2(std::string& w) {
    apply_step(w,
               {{"ational", "ate"}, {"tional", "tion"}, {"enci", "ence"}, {"anci", "ance"},
                {"izer", "ize"},    {"abli", "able"},   {"alli", "al"},   {"entli", "ent"},
                {"eli", "e"},       {"ousli", "ous"},   {"ization", "ize"}, {"ation", "ate"},
                {"ator", "ate"},    {"alism", "al"},    {"iveness", "ive"}, {"fulness", "ful"},
                {"ousness", "ous"}, {"aliti", "al"},    {"iviti", "ive"},  {"biliti", "ble"}},
               0);
}

void step3(std::string& w) {
    apply_step(w,
               {{"icate", "ic"}, {"ative", ""}, {"alize", "al"}, {"iciti", "ic"},
                {"ical", "ic"},  {"ful", ""},   {"ness", ""}},
               0);
}

void step4(std::string& w) {
    const Rule rules[] = {{"al", ""},  {"ance", ""}, {"ence", ""},  {"er", ""},   {"ic", ""},
                          {"able", ""}, {"ible", ""}, {"ant", ""},  {"ement", ""}, {"ment", ""},
                          {"ent", ""},  {"ion", ""},  {"ou", ""},   {"ism", ""},  {"ate", ""},
                          {"iti", ""},  {"ous", ""},  {"ive", ""},  {"ize", ""}};
    const Rule* best = nullptr;
    for (const auto& r : rules)
        if (ends_with(w, r.suffix) && (!best || r.suffix.size() > best->suffix.size()))
            best = &r;
    if (!best)
        return;
    std::string stem = w.substr(0, w.size() - best->suffix.size());
    if (best->suffix == "ion" && !(ends_with(stem, "s") || ends_with(stem, "t")))
        return;
    if (measure(stem) > 1)
        w = std::move(stem);
}

void step5(std::string& w) {
    if (ends_with(w, "e")) {
        std::string stem = w.substr(0, w.size() - 1);
        int m = measure(stem);
        if (m > 1 || (m == 1 && !ends_cvc(stem)))
            w = std::move(stem);
    }
    if (measure(w) > 1 && ends_double_consonant(w) && w.back() == 'l')
        w.resize(w.size() - 1);
}

std::string pass(std::string w) {
    if (w.size() <= 2)
        return w;
    step1a(w);
    step1b(w);
    step1c(w);
    step2(w);
    step3(w);
    step4(w);
    step5(w);
    return w;
}

} // namespace porter

std::string stem(const std::string& word, const std::string& language) {
    if (language != "en")
        throw ConfigError("stemming not supported for language '" + language + "'");
    for (char c : word)
        if (!(c >= 'a' && c <= 'z'))
            return word; // stem plain lower-cased ASCII words only
    std::string w = word;
    for (int i = 0; i < 4; ++i) {
        std::string next = porter::pass(w);
        if (next == w)
            break;
        w = std::move(next);
    }
    return w;
}

ProcessedRequest preprocess(std::string_view text, const Ontology& ontology,
                            const TextOptions& options) {
    ProcessedRequest pr;
    pr.raw = std::string(text);
    pr.tokens = tokenize(text, options);
    auto vocab = vocabulary(ontology);
    for (auto& t : pr.tokens) {
        if (t.kind != TokenKind::Word)
            continue;
        if (t.normalized.size() >= options.min_correction_length)
            t.normalized = correct_spelling(t.normalized, vocab, options.max_correction_distance).first;
        t.normalized = stem(t.normalized, options.language);
        pr.match_words.push_back(t.normalized);
    }
    return pr;
}

} // namespace ontoclust
