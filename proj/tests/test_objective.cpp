#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boustro/objective.hpp"
#include "boustro/rng.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace boustro;
using namespace boustro::testing;

namespace {

// 3 sources, 4 tracklines, assorted chords; the shared fixture for the
// randomized objective tests.
Scenario small_scenario() {
    const AreaBounds area{0, 0, 2000, 2000};
    return make_scenario(area,
                         {{square(100, 100, 400), 0.3},
                          {square(600, 350, 500), 0.6},
                          {square(1200, 800, 300), 0.1}},
                         {150.0, 420.0, 700.0, 950.0});
}

PathPlan random_plan(const Scenario& s, Rng& rng) {
    PathPlan plan;
    const std::size_t m = s.tracklines.size();
    plan.counts.assign(m, 0);
    plan.speeds.assign(m, 0.0);
    bool any = false;
    for (std::size_t j = 0; j < m; ++j) {
        plan.counts[j] = static_cast<int>(rng.uniform(0.0, s.limits.z_max + 1.0));
        plan.counts[j] = std::min(plan.counts[j], s.limits.z_max);
        if (plan.counts[j] > 0) {
            plan.speeds[j] = rng.uniform(s.limits.v_min, s.limits.v_max);
            any = true;
        }
    }
    if (!any) {
        plan.counts[0] = 1;
        plan.speeds[0] = rng.uniform(s.limits.v_min, s.limits.v_max);
    }
    return plan;
}

}  // namespace

TEST_CASE("effort matrix rows match chord clipping") {
    const Scenario s = small_scenario();
    const EffortMatrix em = build_effort_matrix(s);
    REQUIRE(em.source_count == 3);
    REQUIRE(em.trackline_count == 4);
    for (std::size_t i = 0; i < em.source_count; ++i) {
        for (std::size_t j = 0; j < em.trackline_count; ++j) {
            const Trackline& t = s.tracklines[j];
            CHECK(em.chord(i, j) ==
                  doctest::Approx(clip_segment_length(s.sources[i].spill, t.y, t.x_start,
                                                      t.x_end)));
            CHECK(em.chord(i, j) <= em.trackline_lengths[j] + 1e-12);
        }
    }
    // square 2 spans y in [800, 1100]; only the 950 line crosses it
    CHECK(em.chord(2, 3) == doctest::Approx(300.0));
    CHECK(em.chord(2, 0) == 0.0);
}

TEST_CASE("a source missed by every trackline has an all-zero row") {
    const AreaBounds area{0, 0, 2000, 2000};
    const Scenario s = make_scenario(area, {{square(100, 1500, 100), 0.4}}, {100.0, 300.0});
    const EffortMatrix em = build_effort_matrix(s);
    CHECK(em.chord(0, 0) == 0.0);
    CHECK(em.chord(0, 1) == 0.0);
}

TEST_CASE("empty plan evaluates to the total prior mass at zero duration") {
    const Scenario s = small_scenario();
    const EffortMatrix em = build_effort_matrix(s);
    PathPlan plan{std::vector<int>(4, 0), std::vector<double>(4, 0.0)};
    const PlanEvaluation eval = evaluate_plan(plan, em, s.priors(), s.limits.tau);
    CHECK(eval.p_nd == doctest::Approx(s.prior_mass()).epsilon(1e-12));
    CHECK(eval.duration == 0.0);
    CHECK(std::all_of(eval.per_source_exponent.begin(), eval.per_source_exponent.end(),
                      [](double e) { return e == 0.0; }));
}

TEST_CASE("unit exponent gives e^-1") {
    // One source with prior 1, one trackline whose chord equals v * tau.
    const AreaBounds area{0, 0, 2000, 2000};
    AuvLimits lim = default_limits();
    lim.tau = 100.0;
    const double v = 1.5;
    const double chord = v * lim.tau;  // 150 m chord
    const Scenario s =
        make_scenario(area, {{square(500, 200, chord), 1.0}}, {275.0}, lim);
    const EffortMatrix em = build_effort_matrix(s);
    REQUIRE(em.chord(0, 0) == doctest::Approx(chord));
    PathPlan plan{{1}, {v}};
    const PlanEvaluation eval = evaluate_plan(plan, em, s.priors(), s.limits.tau);
    CHECK(eval.p_nd == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(eval.per_source_exponent[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("duration is plain distance over speed") {
    const AreaBounds area{0, 0, 3600, 1000};
    const Scenario s = make_scenario(area, {{square(100, 100, 200), 0.5}}, {150.0});
    const EffortMatrix em = build_effort_matrix(s);
    PathPlan plan{{1}, {1.0}};
    const PlanEvaluation eval = evaluate_plan(plan, em, s.priors(), s.limits.tau);
    CHECK(eval.duration == doctest::Approx(3600.0));
}

TEST_CASE("posterior update discounts by the effort exponent") {
    const Scenario s = small_scenario();
    const EffortMatrix em = build_effort_matrix(s);

    SUBCASE("zero effort keeps the priors") {
        PathPlan plan{std::vector<int>(4, 0), std::vector<double>(4, 0.0)};
        const PlanEvaluation eval = evaluate_plan(plan, em, s.priors(), s.limits.tau);
        const auto post = posterior_update(s.priors(), eval);
        for (std::size_t i = 0; i < post.size(); ++i)
            CHECK(post[i] == doctest::Approx(s.priors()[i]).epsilon(1e-15));
    }
    SUBCASE("pi 0.8 with exponent 1 gives 0.8/e") {
        PlanEvaluation eval;
        eval.per_source_exponent = {1.0};
        const auto post = posterior_update({0.8}, eval);
        CHECK(post[0] == doctest::Approx(0.8 * std::exp(-1.0)).epsilon(1e-12));
        CHECK(post[0] == doctest::Approx(0.294304).epsilon(1e-6));
    }
    SUBCASE("posteriors never exceed priors; equality exactly at zero effort") {
        Rng rng(5);
        for (int trial = 0; trial < 20; ++trial) {
            const PathPlan plan = random_plan(s, rng);
            const PlanEvaluation eval = evaluate_plan(plan, em, s.priors(), s.limits.tau);
            const auto post = posterior_update(s.priors(), eval);
            for (std::size_t i = 0; i < post.size(); ++i) {
                CHECK(post[i] <= s.priors()[i] + 1e-15);
                if (eval.per_source_exponent[i] == 0.0)
                    CHECK(post[i] == s.priors()[i]);
            }
        }
    }
}

TEST_CASE("plan evaluation is self-consistent and permutation invariant") {
    const Scenario s = small_scenario();
    const EffortMatrix em = build_effort_matrix(s);
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const PathPlan plan = random_plan(s, rng);
        const PlanEvaluation eval = evaluate_plan(plan, em, s.priors(), s.limits.tau);

        double recon = 0.0;
        for (std::size_t i = 0; i < em.source_count; ++i)
            recon += s.priors()[i] * std::exp(-eval.per_source_exponent[i]);
        CHECK(std::abs(recon - eval.p_nd) <= 1e-12);
        CHECK(eval.p_nd >= 0.0);
        CHECK(eval.p_nd <= s.prior_mass() + 1e-12);

        // permute trackline indices consistently
        std::vector<std::size_t> perm{2, 0, 3, 1};
        Scenario sp = s;
        PathPlan pp;
        pp.counts.resize(4);
        pp.speeds.resize(4);
        for (std::size_t j = 0; j < 4; ++j) {
            sp.tracklines[j] = s.tracklines[perm[j]];
            pp.counts[j] = plan.counts[perm[j]];
            pp.speeds[j] = plan.speeds[perm[j]];
        }
        const EffortMatrix emp = build_effort_matrix(sp);
        const PlanEvaluation evp = evaluate_plan(pp, emp, sp.priors(), sp.limits.tau);
        CHECK(evp.p_nd == doctest::Approx(eval.p_nd).epsilon(1e-12));
        CHECK(evp.duration == doctest::Approx(eval.duration).epsilon(1e-12));
    }
}

TEST_CASE("speeding up weakly raises p_nd; extra traversals lower it") {
    const Scenario s = small_scenario();
    const EffortMatrix em = build_effort_matrix(s);
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        PathPlan plan = random_plan(s, rng);
        const PlanEvaluation base = evaluate_plan(plan, em, s.priors(), s.limits.tau);

        for (std::size_t j = 0; j < plan.counts.size(); ++j) {
            if (plan.counts[j] == 0) continue;
            PathPlan faster = plan;
            faster.speeds[j] = std::min(plan.speeds[j] * 1.2, s.limits.v_max);
            const PlanEvaluation fe = evaluate_plan(faster, em, s.priors(), s.limits.tau);
            CHECK(fe.p_nd >= base.p_nd - 1e-12);
            if (faster.speeds[j] > plan.speeds[j])
                CHECK(fe.duration < base.duration);
        }

        PathPlan more = plan;
        std::size_t target = 0;  // trackline with a positive chord somewhere
        for (std::size_t j = 0; j < more.counts.size(); ++j) {
            if (more.counts[j] > 0 && more.counts[j] < s.limits.z_max) target = j;
        }
        if (more.counts[target] > 0 && more.counts[target] < s.limits.z_max) {
            more.counts[target] += 1;
            const PlanEvaluation me = evaluate_plan(more, em, s.priors(), s.limits.tau);
            CHECK(me.p_nd <= base.p_nd + 1e-12);
            CHECK(me.duration > base.duration);
        }
    }
}

TEST_CASE("analytic gradient in mu matches central differences") {
    const Scenario s = small_scenario();
    const EffortMatrix em = build_effort_matrix(s);
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        const PathPlan plan = random_plan(s, rng);
        std::vector<double> mu(plan.counts.size(), 0.0);
        for (std::size_t j = 0; j < mu.size(); ++j)
            if (plan.counts[j] > 0) mu[j] = 1.0 / plan.speeds[j];
        const auto analytic =
            nondetection_gradient_mu(em, plan.counts, mu, s.priors(), s.limits.tau);
        const auto fd = fd_gradient_mu(em, plan.counts, mu, s.priors(), s.limits.tau);
        for (std::size_t j = 0; j < mu.size(); ++j) {
            if (plan.counts[j] == 0) {
                CHECK(analytic[j] == 0.0);
                CHECK(fd[j] == 0.0);
                continue;
            }
            const double scale = std::max({std::abs(analytic[j]), std::abs(fd[j]), 1e-12});
            CHECK(std::abs(analytic[j] - fd[j]) / scale <= 1e-6);
        }
    }
}

TEST_CASE("monte carlo oracle: zero effort estimates the prior mass") {
    const Scenario s = small_scenario();
    PathPlan plan{std::vector<int>(4, 0), std::vector<double>(4, 0.0)};
    const auto mc = monte_carlo_nondetection(plan, s, 200'000, 99);
    CHECK(std::abs(mc.estimate - s.prior_mass()) <= 3.0 * mc.std_error);
}

TEST_CASE("monte carlo oracle: single certain source with unit exponent") {
    const AreaBounds area{0, 0, 2000, 2000};
    AuvLimits lim = default_limits();
    lim.tau = 100.0;
    const double v = 1.5;
    const Scenario s =
        make_scenario(area, {{square(500, 200, v * lim.tau), 1.0}}, {275.0}, lim);
    PathPlan plan{{1}, {v}};
    const auto mc = monte_carlo_nondetection(plan, s, 1'000'000, 12345);
    CHECK(std::abs(mc.estimate - std::exp(-1.0)) <= 3.0 * mc.std_error);
    CHECK(mc.std_error < 1e-3);
}

TEST_CASE("monte carlo oracle is deterministic and tracks the analytic value") {
    const Scenario s = small_scenario();
    const EffortMatrix em = build_effort_matrix(s);
    Rng rng(41);
    const PathPlan plan = random_plan(s, rng);
    const PlanEvaluation eval = evaluate_plan(plan, em, s.priors(), s.limits.tau);

    const auto a = monte_carlo_nondetection(plan, s, 1'000'000, 7);
    const auto b = monte_carlo_nondetection(plan, s, 1'000'000, 7);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
    CHECK(std::abs(a.estimate - eval.p_nd) <= 3.0 * a.std_error);
}
