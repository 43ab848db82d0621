#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ontoclust {

struct OntologyAttribute {
    std::string id;
    std::string name; // one or more whitespace-separated words
    std::string owner_class;
    std::optional<std::string> unit;
};

struct OntologyClass {
    std::string id;
    std::string name;
    std::optional<std::string> parent;
    std::vector<std::string> attribute_ids;
};

enum class ArcKind { CC, CA };

/// Undirected taxonomy arc: child class -> parent class (CC) or
/// attribute -> owner class (CA).
struct TaxonomyArc {
    std::string from;
    std::string to;
    ArcKind kind;
};

/// Immutable after construction; safe for concurrent readers.
class Ontology {
public:
    Ontology() = default;

    /// Validates all invariants: unique ids, resolvable parent/owner/synonym
    /// references, acyclic parent links, non-empty attribute names.
    static Ontology from_parts(std::vector<OntologyClass> classes,
                               std::vector<OntologyAttribute> attributes,
                               std::map<std::string, std::string> synonyms);

    const std::vector<OntologyClass>& classes() const { return classes_; }
    const std::vector<OntologyAttribute>& attributes() const { return attributes_; }
    const std::map<std::string, std::string>& synonyms() const { return synonyms_; }

    const OntologyClass* find_class(std::string_view id) const;
    const OntologyAttribute* find_attribute(std::string_view id) const;

    /// Content digest of the canonical serialization; used to key cached
    /// similarity reports against the ontology version they were computed for.
    const std::string& digest() const { return digest_; }

private:
    std::vector<OntologyClass> classes_;
    std::vector<OntologyAttribute> attributes_;
    std::map<std::string, std::string> synonyms_;
    std::map<std::string, std::size_t, std::less<>> class_index_;
    std::map<std::string, std::size_t, std::less<>> attribute_index_;
    std::string digest_;
};

/// Parses and validates the JSON ontology document (top-level keys
/// `classes` and `synonyms`; see docs/formats.md).
Ontology load_ontology(const std::string& document);
Ontology load_ontology_file(const std::filesystem::path& path);

/// Canonical serialization; load_ontology(serialize_ontology(o)) is identity.
std::string serialize_ontology(const Ontology& ontology);

/// All whitespace-separated words of class names, attribute names, and
/// synonym keys, lower-cased. Feeds spell correction.
std::set<std::string> vocabulary(const Ontology& ontology);

/// One CC arc per (child, parent) pair, one CA arc per (attribute, owner).
std::vector<TaxonomyArc> taxonomy_arcs(const Ontology& ontology);

} // namespace ontoclust
