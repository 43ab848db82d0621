#include "ontoclust/store.hpp"

#include "ontoclust/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ontoclust {

namespace {

using ordered_json = nlohmann::ordered_json;

bool timestamp_parseable(const std::string& ts) {
    // YYYY-MM-DDTHH:MM:SS with an optional zone suffix
    if (ts.size() < 19)
        return false;
    static const char* pattern = "dddd-dd-ddTdd:dd:dd";
    for (std::size_t i = 0; i < 19; ++i) {
        char p = pattern[i];
        char c = ts[i];
        if (p == 'd' && !std::isdigit(static_cast<unsigned char>(c)))
            return false;
        if (p != 'd' && c != p)
            return false;
    }
    int month = (ts[5] - '0') * 10 + (ts[6] - '0');
    int day = (ts[8] - '0') * 10 + (ts[9] - '0');
    int hour = (ts[11] - '0') * 10 + (ts[12] - '0');
    int minute = (ts[14] - '0') * 10 + (ts[15] - '0');
    int second = (ts[17] - '0') * 10 + (ts[18] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31 && hour < 24 && minute < 60 &&
           second < 60;
}

void validate_record(const RequestRecord& r) {
    if (r.request_id.empty())
        throw ValidationError("request record: empty request_id");
    if (r.user_id.empty())
        throw ValidationError("request record '" + r.request_id + "': empty user_id");
    if (r.text.empty())
        throw ValidationError("request record '" + r.request_id + "': empty text");
    if (!timestamp_parseable(r.timestamp))
        throw ValidationError("request record '" + r.request_id + "': unparseable timestamp '" +
                              r.timestamp + "'");
    if (r.cached_report.has_value() != r.report_ontology_version.has_value())
        throw ValidationError("request record '" + r.request_id +
                              "': cached report and ontology_version must come together");
}

ordered_json report_to_json(const SimilarityReport& report) {
    ordered_json jr;
    jr["classes"] = ordered_json::array();
    for (const auto& cs : report.class_scores)
        jr["classes"].push_back({{"id", cs.class_id}, {"sim", cs.sim}});
    jr["attributes"] = ordered_json::array();
    for (const auto& as : report.attribute_scores)
        jr["attributes"].push_back({{"id", as.attribute_id}, {"sim", as.sim}});
    return jr;
}

SimilarityReport report_from_json(const ordered_json& jr, const std::string& request_id) {
    if (!jr.is_object() || !jr.contains("classes") || !jr["classes"].is_array() ||
        !jr.contains("attributes") || !jr["attributes"].is_array())
        throw ParseError("request record '" + request_id + "': malformed cached report");
    SimilarityReport report;
    report.request_id = request_id;
    for (const auto& e : jr["classes"]) {
        if (!e.is_object() || !e.contains("id") || !e["id"].is_string() || !e.contains("sim") ||
            !e["sim"].is_number())
            throw ParseError("request record '" + request_id + "': malformed class score");
        report.class_scores.push_back({e["id"].get<std::string>(), e["sim"].get<double>()});
    }
    for (const auto& e : jr["attributes"]) {
        if (!e.is_object() || !e.contains("id") || !e["id"].is_string() || !e.contains("sim") ||
            !e["sim"].is_number())
            throw ParseError("request record '" + request_id + "': malformed attribute score");
        report.attribute_scores.push_back({e["id"].get<std::string>(), e["sim"].get<double>()});
    }
    return report;
}

} // namespace

std::string record_to_json_line(const RequestRecord& record) {
    validate_record(record);
    ordered_json j;
    j["request_id"] = record.request_id;
    j["user_id"] = record.user_id;
    j["timestamp"] = record.timestamp;
    j["language"] = record.language;
    j["text"] = record.text;
    if (record.cached_report) {
        j["ontology_version"] = *record.report_ontology_version;
        j["report"] = report_to_json(*record.cached_report);
    }
    return j.dump();
}

RequestRecord record_from_json_line(const std::string& line, std::size_t line_number) {
    ordered_json j;
    try {
        j = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("request log line " + std::to_string(line_number) + ": " + e.what());
    }
    if (!j.is_object())
        throw ParseError("request log line " + std::to_string(line_number) +
                         ": expected an object");
    RequestRecord r;
    auto get_string = [&](const char* key, bool required) -> std::string {
        auto it = j.find(key);
        if (it == j.end()) {
            if (required)
                throw ParseError("request log line " + std::to_string(line_number) +
                                 ": missing field '" + key + "'");
            return {};
        }
        if (!it->is_string())
            throw ParseError("request log line " + std::to_string(line_number) + ": field '" +
                             key + "' must be a string");
        return it->get<std::string>();
    };
    r.request_id = get_string("request_id", true);
    r.user_id = get_string("user_id", true);
    r.timestamp = get_string("timestamp", true);
    std::string language = get_string("language", false);
    if (!language.empty())
        r.language = language;
    r.text = get_string("text", true);
    if (j.contains("report")) {
        r.report_ontology_version = get_string("ontology_version", true);
        r.cached_report = report_from_json(j["report"], r.request_id);
    }
    try {
        validate_record(r);
    } catch (const ValidationError& e) {
        throw ValidationError("request log line " + std::to_string(line_number) + ": " + e.what());
    }
    return r;
}

void RequestLog::append(const RequestRecord& record) {
    validate_record(record);
    for (const auto& existing : load())
        if (existing.request_id == record.request_id)
            throw ConflictError("request id '" + record.request_id + "' already present in " +
                                path_.string());
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    if (!out)
        throw IoError("cannot open request log for append: " + path_.string());
    out << record_to_json_line(record) << '\n';
    out.flush();
    if (!out)
        throw IoError("write to request log failed: " + path_.string());
}

std::vector<RequestRecord> RequestLog::load() const {
    std::vector<RequestRecord> records;
    if (!std::filesystem::exists(path_))
        return records;
    std::ifstream in(path_, std::ios::binary);
    if (!in)
        throw IoError("cannot read request log: " + path_.string());
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        try {
            records.push_back(record_from_json_line(line, line_number));
        } catch (const ParseError& e) {
            throw ParseError(path_.string() + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ValidationError(path_.string() + ": " + e.what());
        }
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const RequestRecord& a, const RequestRecord& b) {
                         return a.timestamp < b.timestamp;
                     });
    return records;
}

namespace {

std::vector<UserProfile> profiles_from_records(std::vector<RequestRecord> records,
                                               const Ontology& ontology, const TextOptions& topt,
                                               const SimilarityOptions& sopt,
                                               bool one_user_per_request) {
    std::map<std::string, UserProfile> by_user;
    for (auto& record : records) {
        const std::string user_id = one_user_per_request ? record.request_id : record.user_id;
        auto& profile = by_user[user_id];
        profile.user_id = user_id;
        SimilarityReport report;
        if (record.cached_report && *record.report_ontology_version == ontology.digest()) {
            report = std::move(*record.cached_report);
            report.request_id = record.request_id;
        } else {
            if (record.cached_report)
                std::clog << "ontoclust: cached report for request '" << record.request_id
                          << "' is stale (ontology version changed), recomputing\n";
            auto processed = preprocess(record.text, ontology, topt);
            report = match_request(processed, record.request_id, ontology, topt, sopt);
        }
        profile.reports.push_back(std::move(report));
    }
    std::vector<UserProfile> profiles;
    profiles.reserve(by_user.size());
    for (auto& [id, profile] : by_user)
        profiles.push_back(std::move(profile));
    return profiles;
}

} // namespace

std::vector<UserProfile> load_profiles(const RequestLog& log, const Ontology& ontology,
                                       const TextOptions& topt, const SimilarityOptions& sopt) {
    return profiles_from_records(log.load(), ontology, topt, sopt, false);
}

std::vector<UserProfile> load_request_profiles(const RequestLog& log, const Ontology& ontology,
                                               const TextOptions& topt,
                                               const SimilarityOptions& sopt) {
    return profiles_from_records(log.load(), ontology, topt, sopt, true);
}

std::map<std::string, std::map<std::string, std::string>>
load_personal_data(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read profiles file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    ordered_json doc;
    try {
        doc = ordered_json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("profiles file: " + std::string(e.what()));
    }
    if (!doc.is_object() || !doc.contains("users") || !doc["users"].is_array())
        throw ParseError("profiles file: object with a 'users' array required");
    std::map<std::string, std::map<std::string, std::string>> personal;
    for (const auto& ju : doc["users"]) {
        if (!ju.is_object() || !ju.contains("user_id") || !ju["user_id"].is_string())
            throw ParseError("profiles file: every user needs a string user_id");
        auto& fields = personal[ju["user_id"].get<std::string>()];
        if (ju.contains("personal")) {
            if (!ju["personal"].is_object())
                throw ParseError("profiles file: 'personal' must be an object");
            for (const auto& [k, v] : ju["personal"].items()) {
                if (!v.is_string())
                    throw ParseError("profiles file: personal values must be strings");
                fields[k] = v.get<std::string>();
            }
        }
    }
    return personal;
}

} // namespace ontoclust
