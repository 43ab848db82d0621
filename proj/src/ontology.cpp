#include "ontoclust/ontology.hpp"

#include "ontoclust/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace ontoclust {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string to_lower_ascii(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s)
        out.push_back(static_cast<char>(std::tolower(c)));
    return out;
}

// 64-bit FNV-1a, hex-encoded.
std::string fnv1a_hex(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

void detect_parent_cycles(const std::vector<OntologyClass>& classes,
                          const std::map<std::string, std::size_t, std::less<>>& index) {
    // colors: 0 unvisited, 1 on current chain, 2 done
    std::vector<int> color(classes.size(), 0);
    for (std::size_t start = 0; start < classes.size(); ++start) {
        std::size_t i = start;
        std::vector<std::size_t> chain;
        while (color[i] == 0) {
            color[i] = 1;
            chain.push_back(i);
            if (!classes[i].parent)
                break;
            i = index.at(*classes[i].parent);
            if (color[i] == 1)
                throw ValidationError("ontology: parent links form a cycle through class '" +
                                      classes[i].id + "'");
        }
        for (std::size_t j : chain)
            color[j] = 2;
    }
}

} // namespace

Ontology Ontology::from_parts(std::vector<OntologyClass> classes,
                              std::vector<OntologyAttribute> attributes,
                              std::map<std::string, std::string> synonyms) {
    Ontology o;
    o.classes_ = std::move(classes);
    o.attributes_ = std::move(attributes);
    o.synonyms_ = std::move(synonyms);

    for (std::size_t i = 0; i < o.classes_.size(); ++i) {
        const auto& c = o.classes_[i];
        if (c.id.empty())
            throw ValidationError("ontology: class with empty id");
        if (!o.class_index_.emplace(c.id, i).second)
            throw ValidationError("ontology: duplicate class id '" + c.id + "'");
    }
    for (std::size_t i = 0; i < o.attributes_.size(); ++i) {
        const auto& a = o.attributes_[i];
        if (a.id.empty())
            throw ValidationError("ontology: attribute with empty id");
        if (!o.attribute_index_.emplace(a.id, i).second)
            throw ValidationError("ontology: duplicate attribute id '" + a.id + "'");
        if (a.name.find_first_not_of(" \t\r\n") == std::string::npos)
            throw ValidationError("ontology: attribute '" + a.id + "' has an empty name");
    }

    std::vector<std::string> dangling;
    for (const auto& c : o.classes_)
        if (c.parent && !o.class_index_.count(*c.parent))
            dangling.push_back(c.id + " -> parent " + *c.parent);
    for (const auto& a : o.attributes_)
        if (!o.class_index_.count(a.owner_class))
            dangling.push_back(a.id + " -> owner " + a.owner_class);
    for (const auto& [term, target] : o.synonyms_)
        if (!o.class_index_.count(target) && !o.attribute_index_.count(target))
            dangling.push_back("synonym '" + term + "' -> " + target);
    if (!dangling.empty()) {
        std::string msg = "ontology: dangling references:";
        for (const auto& d : dangling)
            msg += " [" + d + "]";
        throw ValidationError(msg);
    }

    detect_parent_cycles(o.classes_, o.class_index_);

    // attribute_ids on classes are derived; rebuild them from the owners so
    // both views stay consistent.
    for (auto& c : o.classes_)
        c.attribute_ids.clear();
    for (const auto& a : o.attributes_)
        o.classes_[o.class_index_.at(a.owner_class)].attribute_ids.push_back(a.id);

    o.digest_ = fnv1a_hex(serialize_ontology(o));
    return o;
}

const OntologyClass* Ontology::find_class(std::string_view id) const {
    auto it = class_index_.find(id);
    return it == class_index_.end() ? nullptr : &classes_[it->second];
}

const OntologyAttribute* Ontology::find_attribute(std::string_view id) const {
    auto it = attribute_index_.find(id);
    return it == attribute_index_.end() ? nullptr : &attributes_[it->second];
}

namespace {

std::string require_string(const ordered_json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string())
        throw ParseError("ontology: " + where + ": missing or non-string field '" + key + "'");
    return it->get<std::string>();
}

} // namespace

Ontology load_ontology(const std::string& document) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("ontology: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("classes") || !doc["classes"].is_array())
        throw ParseError("ontology: top-level object with a 'classes' array required");

    std::vector<OntologyClass> classes;
    std::vector<OntologyAttribute> attributes;
    std::size_t ci = 0;
    for (const auto& jc : doc["classes"]) {
        std::string where = "classes[" + std::to_string(ci++) + "]";
        if (!jc.is_object())
            throw ParseError("ontology: " + where + ": expected an object");
        OntologyClass c;
        c.id = require_string(jc, "id", where);
        c.name = require_string(jc, "name", where);
        if (jc.contains("parent")) {
            if (!jc["parent"].is_string())
                throw ParseError("ontology: " + where + ".parent: expected a string");
            c.parent = jc["parent"].get<std::string>();
        }
        if (jc.contains("attributes")) {
            if (!jc["attributes"].is_array())
                throw ParseError("ontology: " + where + ".attributes: expected an array");
            std::size_t ai = 0;
            for (const auto& ja : jc["attributes"]) {
                std::string awhere = where + ".attributes[" + std::to_string(ai++) + "]";
                if (!ja.is_object())
                    throw ParseError("ontology: " + awhere + ": expected an object");
                OntologyAttribute a;
                a.id = require_string(ja, "id", awhere);
                a.name = require_string(ja, "name", awhere);
                a.owner_class = c.id;
                if (ja.contains("unit")) {
                    if (!ja["unit"].is_string())
                        throw ParseError("ontology: " + awhere + ".unit: expected a string");
                    a.unit = ja["unit"].get<std::string>();
                }
                attributes.push_back(std::move(a));
            }
        }
        classes.push_back(std::move(c));
    }

    std::map<std::string, std::string> synonyms;
    if (doc.contains("synonyms")) {
        if (!doc["synonyms"].is_object())
            throw ParseError("ontology: 'synonyms' must be an object of term -> id");
        for (const auto& [term, target] : doc["synonyms"].items()) {
            if (!target.is_string())
                throw ParseError("ontology: synonyms['" + term + "']: expected a string id");
            synonyms.emplace(term, target.get<std::string>());
        }
    }

    return Ontology::from_parts(std::move(classes), std::move(attributes), std::move(synonyms));
}

Ontology load_ontology_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("ontology not found: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_ontology(buf.str());
}

std::string serialize_ontology(const Ontology& ontology) {
    ordered_json doc;
    doc["classes"] = ordered_json::array();
    for (const auto& c : ontology.classes()) {
        ordered_json jc;
        jc["id"] = c.id;
        jc["name"] = c.name;
        if (c.parent)
            jc["parent"] = *c.parent;
        ordered_json jattrs = ordered_json::array();
        for (const auto& aid : c.attribute_ids) {
            const auto* a = ontology.find_attribute(aid);
            ordered_json ja;
            ja["id"] = a->id;
            ja["name"] = a->name;
            if (a->unit)
                ja["unit"] = *a->unit;
            jattrs.push_back(std::move(ja));
        }
        jc["attributes"] = std::move(jattrs);
        doc["classes"].push_back(std::move(jc));
    }
    ordered_json jsyn = ordered_json::object();
    for (const auto& [term, target] : ontology.synonyms()) // std::map: sorted
        jsyn[term] = target;
    doc["synonyms"] = std::move(jsyn);
    return doc.dump(2) + "\n";
}

std::set<std::string> vocabulary(const Ontology& ontology) {
    std::set<std::string> words;
    auto add_words = [&](std::string_view text) {
        std::size_t i = 0;
        while (i < text.size()) {
            while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            std::size_t start = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])))
                ++i;
            if (i > start)
                words.insert(to_lower_ascii(text.substr(start, i - start)));
        }
    };
    for (const auto& c : ontology.classes())
        add_words(c.name);
    for (const auto& a : ontology.attributes())
        add_words(a.name);
    for (const auto& [term, target] : ontology.synonyms())
        add_words(term);
    return words;
}

std::vector<TaxonomyArc> taxonomy_arcs(const Ontology& ontology) {
    std::vector<TaxonomyArc> arcs;
    for (const auto& c : ontology.classes())
        if (c.parent)
            arcs.push_back({c.id, *c.parent, ArcKind::CC});
    for (const auto& a : ontology.attributes())
        arcs.push_back({a.id, a.owner_class, ArcKind::CA});
    return arcs;
}

} // namespace ontoclust
