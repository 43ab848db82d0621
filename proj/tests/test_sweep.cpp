#include "ontoclust/sweep.hpp"
#include "ontoclust/errors.hpp"
#include "ontoclust/store.hpp"

#include <doctest.h>

#include <random>

using namespace ontoclust;

namespace {

const Ontology& example_ontology() {
    static Ontology ont = load_ontology_file(ONTOCLUST_DATA_DIR "/example_ontology.json");
    return ont;
}

std::vector<UserProfile> example_request_profiles() {
    RequestLog log(ONTOCLUST_DATA_DIR "/example_requests.jsonl");
    return load_request_profiles(log, example_ontology(), default_text_options(), SimilarityOptions{});
}

std::vector<std::pair<double, std::size_t>> curve_for(const SweepResult& result, double cc) {
    std::vector<std::pair<double, std::size_t>> curve;
    for (const auto& row : result.rows)
        if (row.cc_weight == cc)
            curve.emplace_back(row.d_max, row.cluster_count);
    return curve;
}

} // namespace

TEST_CASE("find_plateau extracts maximal constant runs") {
    std::vector<std::pair<double, std::size_t>> curve{
        {0.1, 5}, {0.2, 5}, {0.3, 2}, {0.4, 2}, {0.5, 2}, {0.6, 1}};
    auto plateaus = find_plateau(curve, 5);
    REQUIRE(plateaus.size() == 1);
    CHECK(plateaus[0].d_max_start == 0.3);
    CHECK(plateaus[0].d_max_end == 0.5);
    CHECK(plateaus[0].cluster_count == 2);
}

TEST_CASE("find_plateau returns nothing for strictly decreasing counts") {
    std::vector<std::pair<double, std::size_t>> curve{{0.1, 5}, {0.2, 4}, {0.3, 3}, {0.4, 1}};
    CHECK(find_plateau(curve, 5).empty());
}

TEST_CASE("find_plateau excludes the all-users and single-cluster levels") {
    std::vector<std::pair<double, std::size_t>> ones{{0.1, 1}, {0.2, 1}, {0.3, 1}};
    CHECK(find_plateau(ones, 5).empty());

    std::vector<std::pair<double, std::size_t>> all{{0.1, 5}, {0.2, 5}};
    CHECK(find_plateau(all, 5).empty());
    // the same run is a plateau once the user count is higher
    CHECK(find_plateau(all, 6).size() == 1);
}

TEST_CASE("a plateau needs at least two grid points") {
    std::vector<std::pair<double, std::size_t>> curve{{0.1, 5}, {0.2, 3}, {0.3, 2}, {0.4, 1}};
    CHECK(find_plateau(curve, 6).empty());
}

TEST_CASE("sweep over a single user is constant 1") {
    UserProfile p;
    p.user_id = "solo";
    SimilarityReport rep;
    rep.request_id = "r1";
    rep.class_scores.push_back({"conveyors", 1.0});
    p.reports.push_back(rep);
    std::vector<UserProfile> profiles{p};

    SweepGrid grid;
    grid.d_max_values = {0.0005, 0.1, 1.0};
    grid.cc_weight_values = {0.001, 0.2};
    auto result = run_sweep(profiles, example_ontology(), grid);
    REQUIRE(result.rows.size() == 6);
    for (const auto& row : result.rows)
        CHECK(row.cluster_count == 1);
    CHECK(result.plateaus.empty());
}

TEST_CASE("sweep reproduces the two-cluster setting and the all-singletons floor") {
    auto profiles = example_request_profiles();
    SweepGrid grid;
    grid.d_max_values = {0.0005, 0.6};
    grid.cc_weight_values = {0.2};
    grid.epsilon = 0.001;
    auto result = run_sweep(profiles, example_ontology(), grid);
    REQUIRE(result.rows.size() == 2);
    CHECK(result.rows[0].cluster_count == 5); // d_max below epsilon: every user alone
    CHECK(result.rows[1].cluster_count == 2);
}

TEST_CASE("cluster counts are non-increasing along every sweep row") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> simd(0.3, 1.0);
    std::vector<std::string> class_ids;
    for (const auto& c : example_ontology().classes())
        class_ids.push_back(c.id);
    for (int iter = 0; iter < 10; ++iter) {
        std::vector<UserProfile> profiles;
        std::uniform_int_distribution<std::size_t> users(2, 10), reqs(1, 3),
            cls(0, class_ids.size() - 1);
        std::size_t n = users(rng);
        for (std::size_t u = 0; u < n; ++u) {
            UserProfile p;
            p.user_id = "u" + std::to_string(u);
            std::size_t r = reqs(rng);
            for (std::size_t i = 0; i < r; ++i) {
                SimilarityReport rep;
                rep.request_id = p.user_id + "_" + std::to_string(i);
                rep.class_scores.push_back({class_ids[cls(rng)], simd(rng)});
                p.reports.push_back(std::move(rep));
            }
            profiles.push_back(std::move(p));
        }
        SweepGrid grid;
        grid.d_max_values = {0.0005, 0.01, 0.05, 0.2, 0.5, 1.0, 3.0, 10.0};
        grid.cc_weight_values = {0.001, 0.2, 0.5};
        auto result = run_sweep(profiles, example_ontology(), grid);
        for (double cc : grid.cc_weight_values) {
            auto curve = curve_for(result, cc);
            REQUIRE(curve.size() == grid.d_max_values.size());
            CHECK(curve.front().second == n); // d_max below epsilon
            for (std::size_t i = 1; i < curve.size(); ++i)
                CHECK(curve[i].second <= curve[i - 1].second);
        }
    }
}

TEST_CASE("sweep CSV has rows and a plateau block") {
    auto profiles = example_request_profiles();
    SweepGrid grid;
    grid.d_max_values = {0.0005, 0.01, 0.6, 0.7};
    grid.cc_weight_values = {0.2};
    auto result = run_sweep(profiles, example_ontology(), grid);
    auto csv = sweep_to_csv(result);
    CHECK(csv.find("cc_weight,d_max,cluster_count\n") == 0);
    CHECK(csv.find("0.2,0.6,2") != std::string::npos);
    CHECK(csv.find("# plateau") != std::string::npos);
}

TEST_CASE("sweep grid validation") {
    SweepGrid grid;
    CHECK_THROWS_AS(grid.validate(), DomainError); // empty lists

    grid.d_max_values = {0.2, 0.1};
    grid.cc_weight_values = {0.2};
    CHECK_THROWS_AS(grid.validate(), DomainError); // not ascending

    grid.d_max_values = {0.1, 0.2};
    grid.cc_weight_values = {0.00001};
    CHECK_THROWS_AS(grid.validate(), DomainError); // cc below epsilon

    grid.cc_weight_values = {0.001, 0.2};
    CHECK_NOTHROW(grid.validate()); // cc == epsilon is allowed
}
