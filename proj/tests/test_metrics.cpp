#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "pirnet/metrics.hpp"

using namespace pirnet;

namespace {

// piecewise-linear trace through (t, v) knots
Trace knots(const std::vector<std::pair<double, double>>& k, double dt, double T) {
    Trace tr;
    tr.dt = dt;
    long n = std::lround(T / dt);
    for (long i = 0; i <= n; ++i) {
        double t = i * dt, v = 0.0;
        for (std::size_t j = 1; j < k.size(); ++j)
            if (t >= k[j - 1].first && t <= k[j].first) {
                double f = (t - k[j - 1].first) / (k[j].first - k[j - 1].first);
                v = k[j - 1].second + f * (k[j].second - k[j - 1].second);
                break;
            }
        tr.v.push_back(v);
    }
    return tr;
}

// -100 mV plateau on [10, 30], +50 mV plateau on [40, 60], 2 ms ramps outside each plateau
Trace biphasic(double dt) {
    return knots({{0, 0}, {8, 0}, {10, -100}, {30, -100}, {32, 0}, {38, 0}, {40, 50}, {60, 50}, {62, 0}, {80, 0}},
                 dt, 80);
}

}  // namespace

TEST_CASE("baseline_subtract") {
    Trace c;
    c.v.assign(100, 3.25);
    for (double x : baseline_subtract(c, 0.5).v) CHECK(x == 0.0);

    Trace t;
    t.dt = 0.1;
    for (int i = 0; i < 200; ++i) t.v.push_back(i < 50 ? 12.5 : 12.5 + i);
    Trace s = baseline_subtract(t, 5.0);
    CHECK(s.v[0] == 0.0);
    CHECK(s.v[150] == doctest::Approx(150.0));

    CHECK_THROWS_AS(baseline_subtract(t, 0.0), std::invalid_argument);
}

TEST_CASE("extract_metrics: flat trace has no valid metric") {
    Trace z;
    z.v.assign(1000, 0.0);
    DelayMetrics m = extract_metrics(z);
    CHECK(m.valid == 0);
    CHECK(m.no_excursion());
}

TEST_CASE("extract_metrics: piecewise-linear oracle") {
    // half levels sit on the ramp midpoints: 9, 31 (inhibition) and 39, 61 (excitation)
    for (double dt : {0.01, 0.05, 0.1}) {
        DelayMetrics m = extract_metrics(biphasic(dt));
        CAPTURE(dt);
        CHECK(m.all_valid());
        CHECK(m.V_min == doctest::Approx(-100));
        CHECK(m.V_max == doctest::Approx(50));
        CHECK(std::fabs(m.tau_inh - 22.0) <= dt / 2);
        CHECK(std::fabs(m.tau_exc - 22.0) <= dt / 2);
        CHECK(std::fabs(m.tau_delay - 30.0) <= dt / 2);
        CHECK(std::fabs(m.tau_delay_alt - 52.0) <= dt / 2);
        CHECK(std::fabs(m.inh_onset - 9.0) <= dt / 2);
        CHECK(std::fabs(m.exc_offset - 61.0) <= dt / 2);
    }
}

TEST_CASE("extract_metrics: V_max is taken after the minimum") {
    Trace t = knots({{0, 0}, {2, 80}, {4, 0}, {10, -50}, {20, -50}, {25, 0}, {30, 20}, {40, 0}, {50, 0}}, 0.01, 50);
    DelayMetrics m = extract_metrics(t);
    CHECK(m.V_max == doctest::Approx(20));
    CHECK(m.V_min == doctest::Approx(-50));
}

TEST_CASE("extract_metrics: significance floor") {
    Trace t = knots({{0, 0}, {10, -0.5}, {20, 0}, {30, 30}, {40, 0}, {50, 0}}, 0.01, 50);
    DelayMetrics m = extract_metrics(t);
    CHECK_FALSE((m.valid & kValidVmin) != 0);
    CHECK_FALSE((m.valid & kValidTauDelay) != 0);
    CHECK((m.valid & kValidVmax) != 0);
}

TEST_CASE("extract_metrics: excursion that never returns is not a closed width") {
    Trace t = knots({{0, 0}, {10, -50}, {20, 0}, {30, 40}, {50, 40}}, 0.01, 50);
    DelayMetrics m = extract_metrics(t);
    CHECK((m.valid & kValidTauInh) != 0);
    CHECK((m.valid & kValidVmax) != 0);
    CHECK_FALSE((m.valid & kValidTauExc) != 0);
}

TEST_CASE("count_spikes: half-open window") {
    CHECK(count_spikes({}, 0, 10) == 0);
    CHECK(count_spikes({1, 2, 3}, 0, 2.5) == 2);
    CHECK(count_spikes({1, 2, 3}, 2, 3) == 1);
}

TEST_CASE("classify") {
    auto counts = [](std::vector<int> ln4) {
        std::vector<IpiCount> c;
        const double ipis[] = {0, 10, 20, 30, 40, 50};
        for (int i = 0; i < 6; ++i) c.push_back({ipis[i], 0, ln4[i]});
        return c;
    };
    CHECK(classify(counts({0, 0, 1, 0, 0, 0}), 20).verdict == Verdict::correct);
    auto fp = classify(counts({0, 1, 1, 0, 0, 0}), 20);
    CHECK(fp.verdict == Verdict::false_positive);
    CHECK(fp.false_positive);
    CHECK_FALSE(fp.false_negative);
    auto fn = classify(counts({0, 0, 0, 0, 0, 0}), 20);
    CHECK(fn.verdict == Verdict::false_negative);
    auto both = classify(counts({0, 2, 0, 0, 0, 0}), 20);
    CHECK(both.false_positive);
    CHECK(both.false_negative);
    CHECK_THROWS(classify(counts({0, 0, 1, 0, 0, 0}), 25));
    CHECK(std::string(to_string(Verdict::false_positive)) == "false-positive");
}

TEST_CASE("summarize") {
    SummaryStats s = summarize({1, 2, 3, 4});
    CHECK(s.mean == 2.5);
    CHECK(s.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
    CHECK(s.min == 1);
    CHECK(s.max == 4);
    CHECK(summarize({}).n == 0);
}
