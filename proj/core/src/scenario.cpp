#include "boustro/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "boustro/rng.hpp"
#include "boustro/units.hpp"

namespace boustro {

using json = nlohmann::ordered_json;

std::vector<double> Scenario::priors() const {
    std::vector<double> p;
    p.reserve(sources.size());
    for (const auto& s : sources) p.push_back(s.prior);
    return p;
}

double Scenario::prior_mass() const {
    double total = 0.0;
    for (const auto& s : sources) total += s.prior;
    return total;
}

void validate_scenario(const Scenario& s) {
    if (!s.area.valid())
        throw ValidationError("area", "area bounds must satisfy x_min < x_max and y_min < y_max");
    const AuvLimits& lim = s.limits;
    if (!(lim.v_min > 0.0) || !(lim.v_min <= lim.v_max))
        throw ValidationError("v_min", "speed limits must satisfy 0 < v_min <= v_max");
    if (!(lim.t_max > 0.0))
        throw ValidationError("t_max", "time budget t_max must be positive");
    if (lim.z_max < 1)
        throw ValidationError("z_max", "z_max must be at least 1");
    if (!(lim.tau > 0.0))
        throw ValidationError("tau", "sensor characteristic time tau must be positive");

    std::vector<int> ids;
    for (const auto& src : s.sources) {
        const std::string where = "source " + std::to_string(src.id);
        if (!(src.prior > 0.0) || src.prior > 1.0)
            throw ValidationError("prior", where + ": prior must be in (0, 1], got " +
                                               std::to_string(src.prior));
        try {
            src.spill.validate();
        } catch (const ValidationError& e) {
            throw ValidationError("spill", where + ": " + e.what());
        }
        if (!src.spill.contains(src.origin, 1e-6))
            throw ValidationError("origin", where + ": spill polygon must contain the origin");
        for (const auto& v : src.spill.vertices) {
            if (!s.area.contains(v, 1e-6))
                throw ValidationError("spill", where + ": spill polygon leaves the area bounds");
        }
        ids.push_back(src.id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw ValidationError("id", "source ids must be unique");

    if (s.tracklines.empty())
        throw ValidationError("tracklines", "scenario needs at least one trackline");
    double prev_y = -std::numeric_limits<double>::infinity();
    for (const auto& t : s.tracklines) {
        if (!(t.x_start < t.x_end))
            throw ValidationError("tracklines", "trackline must satisfy x_start < x_end");
        if (t.y < prev_y)
            throw ValidationError("tracklines", "tracklines must be sorted by y");
        prev_y = t.y;
    }
}

ScenarioGenConfig paper_scenario_config() {
    ScenarioGenConfig cfg;
    cfg.area = AreaBounds{0.0, 0.0, 10'000.0, 10'000.0};
    cfg.tiers = {{42, 0.05}, {5, 0.15}, {3, 0.80}};
    cfg.semi_axis_min = 300.0;
    cfg.semi_axis_max = 1200.0;
    cfg.ellipse_samples = 32;
    cfg.limits.v_min = knots_to_mps(2.0);
    cfg.limits.v_max = knots_to_mps(5.0);
    cfg.limits.t_max = hours_to_seconds(10.0);
    cfg.limits.z_max = 3;
    cfg.limits.tau = 200.0;
    return cfg;
}

Scenario generate_random_scenario(const ScenarioGenConfig& config, std::uint64_t seed) {
    if (!config.area.valid())
        throw ValidationError("area", "generator area bounds are invalid");
    int total = 0;
    for (const auto& tier : config.tiers) {
        if (tier.count < 0)
            throw ValidationError("tiers", "tier counts must be non-negative");
        if (!(tier.prior > 0.0) || tier.prior > 1.0)
            throw ValidationError("tiers", "tier priors must be in (0, 1]");
        total += tier.count;
    }
    if (total <= 0)
        throw GenerationFailure("no sources requested: the trackline set would be empty");
    if (!(config.semi_axis_min > 0.0) || config.semi_axis_min > config.semi_axis_max)
        throw ValidationError("semi_axis_min", "need 0 < semi_axis_min <= semi_axis_max");

    Rng rng(seed);
    Scenario s;
    s.area = config.area;
    s.limits = config.limits;
    s.rng_seed = seed;

    // Ordinates already claimed by accepted spills; a new spill whose
    // y-extrema land within the dedup tolerance of a claimed ordinate is
    // resampled, so every source contributes exactly two tracklines.
    std::vector<double> claimed;
    int id = 0;
    for (const auto& tier : config.tiers) {
        for (int c = 0; c < tier.count; ++c) {
            bool placed = false;
            for (int attempt = 0; attempt < config.max_retries; ++attempt) {
                const Point2 center{rng.uniform(config.area.x_min, config.area.x_max),
                                    rng.uniform(config.area.y_min, config.area.y_max)};
                const double a = rng.uniform(config.semi_axis_min, config.semi_axis_max);
                const double b = rng.uniform(config.semi_axis_min, config.semi_axis_max);
                const double rot = rng.uniform(0.0, std::numbers::pi);
                ConvexPolygon poly = ellipse_polygon(center, a, b, rot, config.ellipse_samples);

                const bool inside = std::all_of(
                    poly.vertices.begin(), poly.vertices.end(),
                    [&](const Point2& v) { return config.area.contains(v); });
                if (!inside) continue;

                const double y_lo = poly.min_y();
                const double y_hi = poly.max_y();
                if (y_hi - y_lo < config.trackline_dedup_tol) continue;
                const bool collides = std::any_of(
                    claimed.begin(), claimed.end(), [&](double y) {
                        return std::abs(y - y_lo) < config.trackline_dedup_tol ||
                               std::abs(y - y_hi) < config.trackline_dedup_tol;
                    });
                if (collides) continue;

                claimed.push_back(y_lo);
                claimed.push_back(y_hi);
                s.sources.push_back(LeakSource{id, center, std::move(poly), tier.prior});
                placed = true;
                break;
            }
            if (!placed)
                throw GenerationFailure("could not place source " + std::to_string(id) +
                                        " after " + std::to_string(config.max_retries) +
                                        " attempts");
            ++id;
        }
    }

    std::vector<ConvexPolygon> spills;
    spills.reserve(s.sources.size());
    for (const auto& src : s.sources) spills.push_back(src.spill);
    s.tracklines = generate_tracklines(spills, s.area, config.trackline_dedup_tol);

    validate_scenario(s);
    return s;
}

namespace {

constexpr int kSchemaVersion = 1;

const json& require_field(const json& j, const char* key, const std::string& ctx) {
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(ctx + ": missing field '" + key + "'");
    return *it;
}

double require_number(const json& j, const char* key, const std::string& ctx) {
    const json& v = require_field(j, key, ctx);
    if (!v.is_number())
        throw ParseError(ctx + ": field '" + key + "' must be a number");
    return v.get<double>();
}

AreaBounds area_from_json(const json& j, const std::string& ctx) {
    if (!j.is_object()) throw ParseError(ctx + ": 'area' must be an object");
    return AreaBounds{require_number(j, "x_min", ctx), require_number(j, "y_min", ctx),
                      require_number(j, "x_max", ctx), require_number(j, "y_max", ctx)};
}

AuvLimits limits_from_json(const json& j, const std::string& ctx) {
    if (!j.is_object()) throw ParseError(ctx + ": 'limits' must be an object");
    AuvLimits lim;
    lim.v_min = require_number(j, "v_min", ctx);
    lim.v_max = require_number(j, "v_max", ctx);
    lim.t_max = require_number(j, "t_max", ctx);
    lim.z_max = static_cast<int>(require_number(j, "z_max", ctx));
    lim.tau = require_number(j, "tau", ctx);
    return lim;
}

Point2 point_from_json(const json& j, const std::string& ctx) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(ctx + ": point must be a [x, y] number pair");
    return Point2{j[0].get<double>(), j[1].get<double>()};
}

json point_to_json(const Point2& p) { return json::array({p.x, p.y}); }

json area_to_json(const AreaBounds& a) {
    return json{{"x_min", a.x_min}, {"y_min", a.y_min}, {"x_max", a.x_max}, {"y_max", a.y_max}};
}

json limits_to_json(const AuvLimits& lim) {
    return json{{"v_min", lim.v_min},
                {"v_max", lim.v_max},
                {"t_max", lim.t_max},
                {"z_max", lim.z_max},
                {"tau", lim.tau}};
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["version"] = kSchemaVersion;
    j["area"] = area_to_json(s.area);
    j["limits"] = limits_to_json(s.limits);
    j["rng_seed"] = s.rng_seed;
    json sources = json::array();
    for (const auto& src : s.sources) {
        json spill = json::array();
        for (const auto& v : src.spill.vertices) spill.push_back(point_to_json(v));
        sources.push_back(json{{"id", src.id},
                               {"origin", point_to_json(src.origin)},
                               {"prior", src.prior},
                               {"spill", std::move(spill)}});
    }
    j["sources"] = std::move(sources);
    json lines = json::array();
    for (const auto& t : s.tracklines)
        lines.push_back(json{{"y", t.y}, {"x_start", t.x_start}, {"x_end", t.x_end}});
    j["tracklines"] = std::move(lines);
    return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text, const std::string& context) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(context + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(context + ": top level must be an object");
    const json& version = require_field(j, "version", context);
    if (!version.is_number_integer() || version.get<int>() != kSchemaVersion)
        throw ParseError(context + ": unsupported schema version");

    Scenario s;
    s.area = area_from_json(require_field(j, "area", context), context);
    s.limits = limits_from_json(require_field(j, "limits", context), context);
    s.rng_seed = j.value("rng_seed", std::uint64_t{0});

    const json& sources = require_field(j, "sources", context);
    if (!sources.is_array()) throw ParseError(context + ": 'sources' must be an array");
    for (const auto& js : sources) {
        if (!js.is_object()) throw ParseError(context + ": source entries must be objects");
        LeakSource src;
        src.id = static_cast<int>(require_number(js, "id", context));
        src.origin = point_from_json(require_field(js, "origin", context), context);
        src.prior = require_number(js, "prior", context);
        const json& spill = require_field(js, "spill", context);
        if (!spill.is_array()) throw ParseError(context + ": 'spill' must be an array of points");
        for (const auto& jp : spill) src.spill.vertices.push_back(point_from_json(jp, context));
        s.sources.push_back(std::move(src));
    }

    if (auto it = j.find("tracklines"); it != j.end() && !it->is_null()) {
        if (!it->is_array()) throw ParseError(context + ": 'tracklines' must be an array");
        for (const auto& jt : *it) {
            Trackline t;
            t.y = require_number(jt, "y", context);
            t.x_start = require_number(jt, "x_start", context);
            t.x_end = require_number(jt, "x_end", context);
            s.tracklines.push_back(t);
        }
    } else {
        std::vector<ConvexPolygon> spills;
        for (const auto& src : s.sources) spills.push_back(src.spill);
        s.tracklines = generate_tracklines(spills, s.area);
    }

    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return scenario_from_json(buf.str(), path.string());
}

void save_scenario(const Scenario& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write scenario file: " + path.string());
    out << scenario_to_json(s);
}

std::string scenario_digest(const Scenario& s) {
    const std::string text = scenario_to_json(s);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

ScenarioGenConfig gen_config_from_json(const std::string& text, const std::string& context) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(context + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(context + ": top level must be an object");

    ScenarioGenConfig cfg = paper_scenario_config();
    if (auto it = j.find("area"); it != j.end()) cfg.area = area_from_json(*it, context);
    if (auto it = j.find("limits"); it != j.end()) cfg.limits = limits_from_json(*it, context);
    if (auto it = j.find("tiers"); it != j.end()) {
        if (!it->is_array()) throw ParseError(context + ": 'tiers' must be an array");
        cfg.tiers.clear();
        for (const auto& jt : *it) {
            PriorTier tier;
            tier.count = static_cast<int>(require_number(jt, "count", context));
            tier.prior = require_number(jt, "prior", context);
            cfg.tiers.push_back(tier);
        }
    }
    if (auto it = j.find("semi_axis_min"); it != j.end()) cfg.semi_axis_min = it->get<double>();
    if (auto it = j.find("semi_axis_max"); it != j.end()) cfg.semi_axis_max = it->get<double>();
    if (auto it = j.find("ellipse_samples"); it != j.end()) cfg.ellipse_samples = it->get<int>();
    if (auto it = j.find("max_retries"); it != j.end()) cfg.max_retries = it->get<int>();
    return cfg;
}

ScenarioGenConfig load_gen_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return gen_config_from_json(buf.str(), path.string());
}

}  // namespace boustro
