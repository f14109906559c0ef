#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "boustro/scenario.hpp"
#include "test_helpers.hpp"

using namespace boustro;
using namespace boustro::testing;

namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "boustro_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("paper configuration generates 50 sources and 100 tracklines") {
    const Scenario s = generate_random_scenario(paper_scenario_config(), 42);
    CHECK(s.sources.size() == 50);
    CHECK(s.tracklines.size() == 100);

    int low = 0, mid = 0, high = 0;
    for (const auto& src : s.sources) {
        if (src.prior == 0.05) ++low;
        else if (src.prior == 0.15) ++mid;
        else if (src.prior == 0.80) ++high;
    }
    CHECK(low == 42);
    CHECK(mid == 5);
    CHECK(high == 3);

    for (const auto& src : s.sources) {
        for (const auto& v : src.spill.vertices) CHECK(s.area.contains(v));
        CHECK(src.spill.contains(src.origin, 1e-6));
    }
}

TEST_CASE("zero requested sources fails generation") {
    ScenarioGenConfig cfg = paper_scenario_config();
    cfg.tiers = {};
    CHECK_THROWS_AS(generate_random_scenario(cfg, 1), GenerationFailure);
    cfg.tiers = {{0, 0.5}};
    CHECK_THROWS_AS(generate_random_scenario(cfg, 1), GenerationFailure);
}

TEST_CASE("generation is deterministic and files are byte-identical") {
    ScenarioGenConfig cfg = paper_scenario_config();
    cfg.tiers = {{6, 0.1}, {2, 0.7}};
    const Scenario a = generate_random_scenario(cfg, 987);
    const Scenario b = generate_random_scenario(cfg, 987);
    CHECK(scenario_to_json(a) == scenario_to_json(b));

    const Scenario c = generate_random_scenario(cfg, 988);
    CHECK(scenario_to_json(a) != scenario_to_json(c));
}

TEST_CASE("save/load round-trip preserves every field") {
    ScenarioGenConfig cfg = paper_scenario_config();
    cfg.tiers = {{4, 0.05}, {1, 0.8}};
    const Scenario s = generate_random_scenario(cfg, 7);
    const auto path = temp_file("roundtrip.json");
    save_scenario(s, path);
    const Scenario loaded = load_scenario(path);

    CHECK(scenario_to_json(loaded) == scenario_to_json(s));
    REQUIRE(loaded.sources.size() == s.sources.size());
    for (std::size_t i = 0; i < s.sources.size(); ++i) {
        CHECK(loaded.sources[i].id == s.sources[i].id);
        CHECK(loaded.sources[i].prior == s.sources[i].prior);
        CHECK(loaded.sources[i].origin.x == s.sources[i].origin.x);
        REQUIRE(loaded.sources[i].spill.vertices.size() == s.sources[i].spill.vertices.size());
        for (std::size_t v = 0; v < s.sources[i].spill.vertices.size(); ++v) {
            CHECK(loaded.sources[i].spill.vertices[v].x == s.sources[i].spill.vertices[v].x);
            CHECK(loaded.sources[i].spill.vertices[v].y == s.sources[i].spill.vertices[v].y);
        }
    }
    REQUIRE(loaded.tracklines.size() == s.tracklines.size());
    for (std::size_t j = 0; j < s.tracklines.size(); ++j)
        CHECK(loaded.tracklines[j].y == s.tracklines[j].y);
    CHECK(loaded.rng_seed == s.rng_seed);
}

TEST_CASE("out-of-range prior is a validation error naming the field") {
    ScenarioGenConfig cfg = paper_scenario_config();
    cfg.tiers = {{2, 0.5}};
    Scenario s = generate_random_scenario(cfg, 3);
    const auto path = temp_file("bad_prior.json");
    save_scenario(s, path);

    std::string text = slurp(path);
    const auto pos = text.find("\"prior\": 0.5");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 12, "\"prior\": 1.5");
    std::ofstream(path) << text;

    try {
        load_scenario(path);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(e.field == "prior");
    }
}

TEST_CASE("truncated file is a parse error") {
    ScenarioGenConfig cfg = paper_scenario_config();
    cfg.tiers = {{2, 0.5}};
    const Scenario s = generate_random_scenario(cfg, 3);
    const auto path = temp_file("truncated.json");
    const std::string text = scenario_to_json(s);
    std::ofstream(path) << text.substr(0, text.size() / 2);
    CHECK_THROWS_AS(load_scenario(path), ParseError);

    std::ofstream(temp_file("missing.json")) << "{\"version\": 1}";
    CHECK_THROWS_AS(load_scenario(temp_file("missing.json")), ParseError);
}

TEST_CASE("tracklines are regenerated when the file omits them") {
    ScenarioGenConfig cfg = paper_scenario_config();
    cfg.tiers = {{3, 0.2}};
    const Scenario s = generate_random_scenario(cfg, 11);
    const auto path = temp_file("no_lines.json");
    std::string text = scenario_to_json(s);
    const auto pos = text.find("\"tracklines\"");
    REQUIRE(pos != std::string::npos);
    // drop the tracklines array entirely (it is the last field)
    std::string cut = text.substr(0, pos);
    cut.erase(cut.find_last_of(','));
    cut += "\n}\n";
    std::ofstream(path) << cut;

    const Scenario loaded = load_scenario(path);
    REQUIRE(loaded.tracklines.size() == s.tracklines.size());
    for (std::size_t j = 0; j < s.tracklines.size(); ++j)
        CHECK(loaded.tracklines[j].y == doctest::Approx(s.tracklines[j].y));
}

TEST_CASE("validation rejects broken hand-built scenarios") {
    const AreaBounds area{0, 0, 1000, 1000};
    Scenario s = make_scenario(area, {{square(100, 100, 50), 0.3}}, {100.0, 150.0});
    CHECK_NOTHROW(validate_scenario(s));

    SUBCASE("empty tracklines") {
        s.tracklines.clear();
        CHECK_THROWS_AS(validate_scenario(s), ValidationError);
    }
    SUBCASE("unsorted tracklines") {
        s.tracklines = {Trackline{500, 0, 1000}, Trackline{100, 0, 1000}};
        CHECK_THROWS_AS(validate_scenario(s), ValidationError);
    }
    SUBCASE("duplicate ids") {
        s.sources.push_back(s.sources.front());
        CHECK_THROWS_AS(validate_scenario(s), ValidationError);
    }
    SUBCASE("spill outside the area") {
        s.sources.front().spill = square(900, 900, 200);
        s.sources.front().origin = Point2{950, 950};
        CHECK_THROWS_AS(validate_scenario(s), ValidationError);
    }
    SUBCASE("z_max below one") {
        s.limits.z_max = 0;
        CHECK_THROWS_AS(validate_scenario(s), ValidationError);
    }
}
