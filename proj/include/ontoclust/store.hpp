#pragma once

#include "ontoclust/graph.hpp"
#include "ontoclust/ontology.hpp"
#include "ontoclust/similarity.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ontoclust {

struct RequestRecord {
    std::string request_id;
    std::string user_id;
    std::string timestamp; // ISO-8601, e.g. "2005-03-14T09:26:53Z"
    std::string language = "en";
    std::string text; // non-empty raw request text
    // similarity result cached against a specific ontology version
    std::optional<SimilarityReport> cached_report;
    std::optional<std::string> report_ontology_version;
};

std::string record_to_json_line(const RequestRecord& record);
RequestRecord record_from_json_line(const std::string& line, std::size_t line_number);

/// Append-only line-delimited JSON request log, one RequestRecord per line.
/// Single writer; readers see a consistent prefix.
class RequestLog {
public:
    explicit RequestLog(std::filesystem::path path) : path_(std::move(path)) {}

    const std::filesystem::path& path() const { return path_; }

    /// Validates and appends; ConflictError on duplicate request_id.
    void append(const RequestRecord& record);

    /// All records ordered by (timestamp, file order). A missing file reads
    /// as an empty log; an unreadable one raises IoError.
    std::vector<RequestRecord> load() const;

private:
    std::filesystem::path path_;
};

/// Groups records into per-user profiles (sorted by user_id, reports in
/// timestamp order). Cached reports are reused when their ontology version
/// matches, otherwise the request is re-matched and a note goes to std::clog.
std::vector<UserProfile> load_profiles(const RequestLog& log, const Ontology& ontology,
                                       const TextOptions& topt, const SimilarityOptions& sopt);

/// One pseudo-user per request (request clustering mode); pseudo-user ids
/// are the request ids.
std::vector<UserProfile> load_request_profiles(const RequestLog& log, const Ontology& ontology,
                                               const TextOptions& topt,
                                               const SimilarityOptions& sopt);

/// Optional personal-data sidecar: {"users": [{"user_id": ..., "personal": {...}}]}.
std::map<std::string, std::map<std::string, std::string>>
load_personal_data(const std::filesystem::path& path);

} // namespace ontoclust
