#include "ontoclust/similarity.hpp"

#include "ontoclust/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <sstream>

namespace ontoclust {

std::set<std::string> proper_substrings(std::string_view s) {
    if (s.empty())
        throw DomainError("proper_substrings: empty string");
    std::set<std::string> out;
    for (std::size_t len = 1; len < s.size(); ++len)
        for (std::size_t i = 0; i + len <= s.size(); ++i)
            out.emplace(s.substr(i, len));
    return out;
}

double fuzzy_string_similarity(std::string_view a, std::string_view b) {
    if (a.empty() || b.empty())
        throw DomainError("fuzzy_string_similarity: empty string");
    std::string la = to_lower(a);
    std::string lb = to_lower(b);
    if (la.size() == 1)
        return lb.find(la) != std::string::npos ? 1.0 : 0.0;
    // Every distinct proper substring is anchored at its first position in a
    // and must occur in b at that position or later ("motor" vs "mortar"
    // scores 5/13: "or" sits at 3 in "motor" but only at 1 in "mortar").
    // Identical strings always score 1.
    std::size_t total = 0, hits = 0;
    for (std::size_t len = 1; len < la.size(); ++len)
        for (std::size_t i = 0; i + len <= la.size(); ++i) {
            std::string_view sub(la.data() + i, len);
            if (std::string_view(la).find(sub) != i)
                continue; // count each distinct substring once, at its anchor
            ++total;
            if (lb.find(sub, i) != std::string::npos)
                ++hits;
        }
    return static_cast<double>(hits) / static_cast<double>(total);
}

std::vector<std::string> normalize_name_words(std::string_view name, const TextOptions& options) {
    std::vector<std::string> words;
    for (const auto& t : tokenize(name, options))
        if (t.kind == TokenKind::Word)
            words.push_back(stem(t.normalized, options.language));
    return words;
}

double request_class_similarity(const ProcessedRequest& req, const OntologyClass& cls,
                                const TextOptions& topt, const SimilarityOptions& sopt) {
    auto name_words = normalize_name_words(cls.name, topt);
    if (name_words.empty() || req.match_words.empty())
        return 0.0;
    std::string name;
    for (const auto& w : name_words) {
        if (!name.empty())
            name += ' ';
        name += w;
    }
    const std::size_t max_ngram = name_words.size();
    double best = 0.0;
    // candidate substrings are searched inside the class name, so the worked
    // "motor" request scores 5/13 against a "mortar" class
    for (std::size_t i = 0; i < req.match_words.size(); ++i) {
        std::string candidate;
        for (std::size_t n = 1; n <= max_ngram && i + n <= req.match_words.size(); ++n) {
            if (n > 1)
                candidate += ' ';
            candidate += req.match_words[i + n - 1];
            best = std::max(best, fuzzy_string_similarity(candidate, name));
        }
    }
    return best < sopt.class_threshold ? 0.0 : best;
}

namespace {

std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
            ++i;
        if (i > start)
            words.emplace_back(text.substr(start, i - start));
    }
    return words;
}

// occurrence assignment of one contiguous run of attribute words
struct RunMatch {
    std::size_t start_word = 0;
    std::vector<std::size_t> positions; // one per matched word, strictly increasing
    std::size_t word_count() const { return positions.size(); }
};

bool dominated_by(const RunMatch& a, const RunMatch& b) {
    if (&a == &b || a.word_count() >= b.word_count())
        return false;
    // every (word index, position) pair of a also matched in b
    for (std::size_t k = 0; k < a.positions.size(); ++k) {
        std::size_t word = a.start_word + k;
        if (word < b.start_word || word >= b.start_word + b.word_count())
            return false;
        if (b.positions[word - b.start_word] != a.positions[k])
            return false;
    }
    return true;
}

} // namespace

AttributeMatch match_attribute(std::string_view raw_request, std::string_view attribute_name) {
    AttributeMatch result;
    const auto words = split_whitespace(attribute_name);
    if (words.empty())
        return result;
    std::vector<std::string> lower_words;
    lower_words.reserve(words.size());
    std::size_t chars_total = 0;
    for (const auto& w : words) {
        lower_words.push_back(to_lower(w));
        chars_total += w.size();
    }
    const std::string request = to_lower(raw_request);
    const double n_words = static_cast<double>(words.size());

    std::vector<RunMatch> leaves;
    RunMatch current;

    // Depth-first over occurrence choices: a run extends while the next
    // attribute word occurs at or after the current position; a run that
    // cannot extend is a maximal leaf.
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t word_idx,
                                                               std::size_t from) {
        bool found = false;
        if (word_idx < lower_words.size()) {
            const std::string& w = lower_words[word_idx];
            for (std::size_t p = request.find(w, from); p != std::string::npos;
                 p = request.find(w, p + 1)) {
                found = true;
                current.positions.push_back(p);
                extend(word_idx + 1, p + w.size());
                current.positions.pop_back();
            }
        }
        if (!found && !current.positions.empty())
            leaves.push_back(current);
    };
    for (std::size_t start = 0; start < lower_words.size(); ++start) {
        current.start_word = start;
        extend(start, 0);
    }

    std::set<std::string> entry_texts;
    for (const auto& leaf : leaves) {
        std::size_t chars_matched = 0;
        for (std::size_t k = 0; k < leaf.word_count(); ++k)
            chars_matched += words[leaf.start_word + k].size();
        double score = (static_cast<double>(leaf.word_count()) / n_words) *
                       (static_cast<double>(chars_matched) / static_cast<double>(chars_total));
        result.similarity = std::max(result.similarity, score);

        bool dominated = false;
        for (const auto& other : leaves)
            if (dominated_by(leaf, other)) {
                dominated = true;
                break;
            }
        if (!dominated) {
            std::string text;
            for (std::size_t k = 0; k < leaf.word_count(); ++k) {
                if (k > 0)
                    text += ' ';
                text += words[leaf.start_word + k];
            }
            entry_texts.insert(std::move(text));
        }
    }

    result.entries.assign(entry_texts.begin(), entry_texts.end());
    std::stable_sort(result.entries.begin(), result.entries.end(),
                     [](const std::string& a, const std::string& b) {
                         return a.size() > b.size();
                     });
    return result;
}

double request_attribute_similarity(std::string_view raw_request, const OntologyAttribute& attr) {
    return match_attribute(raw_request, attr.name).similarity;
}

SimilarityReport match_request(const ProcessedRequest& req, std::string request_id,
                               const Ontology& ontology, const TextOptions& topt,
                               const SimilarityOptions& sopt) {
    SimilarityReport report;
    report.request_id = std::move(request_id);
    for (const auto& cls : ontology.classes()) {
        double s = request_class_similarity(req, cls, topt, sopt);
        if (s > 0.0)
            report.class_scores.push_back({cls.id, s});
    }
    for (const auto& attr : ontology.attributes()) {
        double s = match_attribute(req.raw, attr.name).similarity;
        if (s > 0.0)
            report.attribute_scores.push_back({attr.id, s});
    }
    return report;
}

// ---------------------------------------------------------------------------
// XML report
// ---------------------------------------------------------------------------
namespace {

std::string xml_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

std::string xml_unescape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        if (s[i] == '&') {
            if (s.substr(i, 5) == "&amp;") { out += '&'; i += 5; continue; }
            if (s.substr(i, 4) == "&lt;") { out += '<'; i += 4; continue; }
            if (s.substr(i, 4) == "&gt;") { out += '>'; i += 4; continue; }
            if (s.substr(i, 6) == "&quot;") { out += '"'; i += 6; continue; }
        }
        out += s[i++];
    }
    return out;
}

std::string format_weight(double w) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", w);
    return buf;
}

void emit_request_element(std::ostringstream& out, const SimilarityReport& r) {
    if (r.class_scores.empty() && r.attribute_scores.empty()) {
        out << "  <Request id=\"" << xml_escape(r.request_id) << "\"/>\n";
        return;
    }
    out << "  <Request id=\"" << xml_escape(r.request_id) << "\">\n";
    for (const auto& cs : r.class_scores)
        out << "    <Class><CID>" << xml_escape(cs.class_id) << "</CID><CWeight>"
            << format_weight(cs.sim) << "</CWeight></Class>\n";
    for (const auto& as : r.attribute_scores)
        out << "    <Attribute><AID>" << xml_escape(as.attribute_id) << "</AID><AWeight>"
            << format_weight(as.sim) << "</AWeight></Attribute>\n";
    out << "  </Request>\n";
}

} // namespace

std::string emit_similarity_xml(std::span<const SimilarityReport> reports) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<SimilarityReports>\n";
    for (const auto& r : reports)
        emit_request_element(out, r);
    out << "</SimilarityReports>\n";
    return out.str();
}

std::string emit_similarity_xml(const SimilarityReport& report) {
    return emit_similarity_xml(std::span<const SimilarityReport>(&report, 1));
}

namespace {

// cursor over the restricted XML grammar emitted above
struct XmlCursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_space() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }
    bool accept(std::string_view literal) {
        skip_space();
        if (text.substr(pos, literal.size()) == literal) {
            pos += literal.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view literal) {
        if (!accept(literal))
            throw ParseError("similarity xml: expected '" + std::string(literal) +
                             "' at offset " + std::to_string(pos));
    }
    std::string until(char delimiter) {
        std::size_t end = text.find(delimiter, pos);
        if (end == std::string_view::npos)
            throw ParseError("similarity xml: unterminated value");
        std::string raw(text.substr(pos, end - pos));
        pos = end;
        return xml_unescape(raw);
    }
};

double parse_weight(const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size())
            throw ParseError("similarity xml: bad weight '" + s + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("similarity xml: bad weight '" + s + "'");
    }
}

} // namespace

std::vector<SimilarityReport> parse_similarity_xml(std::string_view xml) {
    XmlCursor c{xml};
    c.expect("<?xml");
    c.until('>');
    c.expect(">");
    c.expect("<SimilarityReports>");
    std::vector<SimilarityReport> reports;
    while (true) {
        if (c.accept("</SimilarityReports>"))
            break;
        c.expect("<Request id=\"");
        SimilarityReport r;
        r.request_id = c.until('"');
        c.expect("\"");
        if (c.accept("/>")) {
            reports.push_back(std::move(r));
            continue;
        }
        c.expect(">");
        while (true) {
            if (c.accept("<Class><CID>")) {
                ClassScore cs;
                cs.class_id = c.until('<');
                c.expect("</CID><CWeight>");
                cs.sim = parse_weight(c.until('<'));
                c.expect("</CWeight></Class>");
                r.class_scores.push_back(std::move(cs));
            } else if (c.accept("<Attribute><AID>")) {
                AttributeScore as;
                as.attribute_id = c.until('<');
                c.expect("</AID><AWeight>");
                as.sim = parse_weight(c.until('<'));
                c.expect("</AWeight></Attribute>");
                r.attribute_scores.push_back(std::move(as));
            } else {
                c.expect("</Request>");
                break;
            }
        }
        reports.push_back(std::move(r));
    }
    return reports;
}

} // namespace ontoclust
