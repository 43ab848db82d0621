#include "ontoclust/store.hpp"
#include "ontoclust/clustering.hpp"
#include "ontoclust/errors.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

using namespace ontoclust;
namespace fs = std::filesystem;

namespace {

const Ontology& example_ontology() {
    static Ontology ont = load_ontology_file(ONTOCLUST_DATA_DIR "/example_ontology.json");
    return ont;
}

struct TempDir {
    fs::path path;
    TempDir() {
        static std::mt19937_64 rng(std::random_device{}());
        path = fs::temp_directory_path() /
               ("ontoclust_store_" + std::to_string(rng()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

RequestRecord make_record(std::string id, std::string user, std::string ts, std::string text) {
    RequestRecord r;
    r.request_id = std::move(id);
    r.user_id = std::move(user);
    r.timestamp = std::move(ts);
    r.text = std::move(text);
    return r;
}

} // namespace

TEST_CASE("record JSON lines round-trip") {
    auto r = make_record("r1", "u1", "2005-03-14T09:00:00Z", "Pick & place");
    auto line = record_to_json_line(r);
    auto parsed = record_from_json_line(line, 1);
    CHECK(record_to_json_line(parsed) == line);
    CHECK(parsed.language == "en");
}

TEST_CASE("records validate their fields") {
    CHECK_THROWS_AS(record_to_json_line(make_record("", "u", "2005-03-14T09:00:00Z", "x")),
                    ValidationError);
    CHECK_THROWS_AS(record_to_json_line(make_record("r", "u", "yesterday", "x")),
                    ValidationError);
    CHECK_THROWS_AS(record_to_json_line(make_record("r", "u", "2005-03-14T09:00:00Z", "")),
                    ValidationError);
    CHECK_THROWS_WITH_AS(record_from_json_line("{\"user_id\":\"u\"}", 7),
                         doctest::Contains("line 7"), ParseError);
    CHECK_THROWS_AS(record_from_json_line("not json", 1), ParseError);
}

TEST_CASE("append then load returns the record verbatim") {
    TempDir tmp;
    RequestLog log(tmp.path / "log.jsonl");
    auto r = make_record("r1", "u1", "2005-03-14T09:00:00Z", "Conveyors");
    log.append(r);
    auto records = log.load();
    REQUIRE(records.size() == 1);
    CHECK(records[0].request_id == "r1");
    CHECK(records[0].user_id == "u1");
    CHECK(records[0].text == "Conveyors");
}

TEST_CASE("duplicate request ids conflict") {
    TempDir tmp;
    RequestLog log(tmp.path / "log.jsonl");
    log.append(make_record("r1", "u1", "2005-03-14T09:00:00Z", "a"));
    CHECK_THROWS_AS(log.append(make_record("r1", "u2", "2005-03-14T10:00:00Z", "b")),
                    ConflictError);
}

TEST_CASE("a thousand appended records load in timestamp order") {
    TempDir tmp;
    RequestLog log(tmp.path / "log.jsonl");
    std::vector<int> order(1000);
    for (int i = 0; i < 1000; ++i)
        order[i] = i;
    std::shuffle(order.begin(), order.end(), std::mt19937(61));
    for (int i : order) {
        char ts[32];
        std::snprintf(ts, sizeof(ts), "2005-03-14T%02d:%02d:00Z", i / 60, i % 60);
        log.append(make_record("r" + std::to_string(i), "u" + std::to_string(i % 7), ts,
                               "request " + std::to_string(i)));
    }
    auto records = log.load();
    REQUIRE(records.size() == 1000);
    for (std::size_t i = 1; i < records.size(); ++i)
        CHECK(records[i - 1].timestamp <= records[i].timestamp);
    for (std::size_t i = 0; i < records.size(); ++i)
        CHECK(records[i].request_id == "r" + std::to_string(i));
}

TEST_CASE("missing log reads as empty") {
    TempDir tmp;
    RequestLog log(tmp.path / "nonexistent.jsonl");
    CHECK(log.load().empty());
    CHECK(load_profiles(log, example_ontology(), default_text_options(), SimilarityOptions{}).empty());
}

TEST_CASE("profiles group records per user") {
    TempDir tmp;
    RequestLog log(tmp.path / "log.jsonl");
    log.append(make_record("r1", "ua", "2005-03-14T09:00:00Z", "Conveyors"));
    log.append(make_record("r2", "ub", "2005-03-14T09:01:00Z", "Pick & place"));
    log.append(make_record("r3", "ua", "2005-03-14T09:02:00Z", "Conveyors speed"));

    auto profiles = load_profiles(log, example_ontology(), default_text_options(), SimilarityOptions{});
    REQUIRE(profiles.size() == 2);
    CHECK(profiles[0].user_id == "ua");
    CHECK(profiles[0].reports.size() == 2);
    CHECK(profiles[0].reports[0].request_id == "r1");
    CHECK(profiles[0].reports[1].request_id == "r3");
    CHECK(profiles[1].user_id == "ub");
    CHECK(profiles[1].reports.size() == 1);

    auto request_profiles =
        load_request_profiles(log, example_ontology(), default_text_options(), SimilarityOptions{});
    CHECK(request_profiles.size() == 3);
}

TEST_CASE("fresh caches are reused, stale caches recomputed") {
    TempDir tmp;
    RequestLog log(tmp.path / "log.jsonl");

    // a deliberately wrong cached score proves the cache is trusted when the
    // ontology version matches
    auto fresh = make_record("r1", "u1", "2005-03-14T09:00:00Z", "Conveyors");
    SimilarityReport bogus;
    bogus.request_id = "r1";
    bogus.class_scores.push_back({"valves", 0.123});
    fresh.cached_report = bogus;
    fresh.report_ontology_version = example_ontology().digest();
    log.append(fresh);

    auto stale = make_record("r2", "u2", "2005-03-14T09:01:00Z", "Conveyors");
    stale.cached_report = bogus;
    stale.report_ontology_version = "0000000000000000";
    log.append(stale);

    auto profiles = load_profiles(log, example_ontology(), default_text_options(), SimilarityOptions{});
    REQUIRE(profiles.size() == 2);
    REQUIRE(profiles[0].reports.size() == 1);
    CHECK(profiles[0].reports[0].class_scores[0].class_id == "valves"); // cache hit
    bool conveyors = false;
    for (const auto& cs : profiles[1].reports[0].class_scores)
        if (cs.class_id == "conveyors" && cs.sim == 1.0)
            conveyors = true;
    CHECK(conveyors); // recomputed from text
}

TEST_CASE("clustering is invariant under record reordering within a user") {
    TempDir tmp;
    RequestLog log_a(tmp.path / "a.jsonl");
    RequestLog log_b(tmp.path / "b.jsonl");
    auto r1 = make_record("r1", "u1", "2005-03-14T09:00:00Z", "Conveyors");
    auto r2 = make_record("r2", "u1", "2005-03-14T09:01:00Z", "Conveyors speed");
    auto r3 = make_record("r3", "u2", "2005-03-14T09:02:00Z", "Pick & place");
    log_a.append(r1);
    log_a.append(r2);
    log_a.append(r3);
    log_b.append(r2); // different append order, same timestamps
    log_b.append(r3);
    log_b.append(r1);

    auto topt = default_text_options();
    SimilarityOptions sopt;
    auto pa = load_profiles(log_a, example_ontology(), topt, sopt);
    auto pb = load_profiles(log_b, example_ontology(), topt, sopt);
    GraphParams params;
    auto ta = all_pairs_user_distances(build_user_ontology_graph(pa, example_ontology(), params));
    auto tb = all_pairs_user_distances(build_user_ontology_graph(pb, example_ontology(), params));
    CHECK(clustering_to_json(cluster_users(ta, 0.6)) ==
          clustering_to_json(cluster_users(tb, 0.6)));
}

TEST_CASE("the shipped request log round-trips byte-identically") {
    std::ifstream in(ONTOCLUST_DATA_DIR "/example_requests.jsonl");
    REQUIRE(in.good());
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (line.empty())
            continue;
        auto record = record_from_json_line(line, line_number);
        CHECK(record_to_json_line(record) == line);
    }
    CHECK(line_number == 5);
}

TEST_CASE("personal data sidecar") {
    TempDir tmp;
    auto path = tmp.path / "profiles.json";
    std::ofstream(path) << R"({"users": [
        {"user_id": "u1", "personal": {"name": "Ada", "country": "UK"}},
        {"user_id": "u2"}
    ]})";
    auto personal = load_personal_data(path);
    REQUIRE(personal.size() == 2);
    CHECK(personal.at("u1").at("name") == "Ada");
    CHECK(personal.at("u2").empty());
    CHECK_THROWS_AS(load_personal_data(tmp.path / "missing.json"), IoError);
}
