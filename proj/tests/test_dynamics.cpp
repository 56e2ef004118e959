#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "pirnet/dynamics.hpp"

using namespace pirnet;

namespace {

NeuronParams linear_cell(double C, double g_L) {
    NeuronParams p;
    p.C = C;
    p.g_L = g_L;
    p.exp_enabled = false;
    p.adapt_enabled = false;
    return p;
}

// max |sim - exact| over a rectangular pulse, sampled after every step
double dpi_max_error(const SynapseParams& p, double start, double end, double dt, double T) {
    SynapseState s;
    bool delivered = false;
    double err = 0.0;
    long n = std::lround(T / dt);
    for (long k = 0; k < n; ++k) {
        double t = k * dt;
        if (!delivered && start <= t + kTimeEps) {
            s = dpi_receive_spike(s, p, start);
            delivered = true;
        }
        s = dpi_step(s, p, t, dt);
        err = std::fmax(err, std::fabs(s.I_out - dpi_analytic_response(p, start, end, (k + 1) * dt)));
    }
    return err;
}

SynapseParams pulse_syn(double tau, double width) {
    SynapseParams p;
    p.tau = tau;
    p.gain = 2.0;
    p.weight = 50.0;
    p.pulse_width = width;
    return p;
}

}  // namespace

TEST_CASE("adex: leak fixed point is exact for any dt") {
    NeuronParams p = linear_cell(7.0, 1.0);
    for (double dt : {0.001, 0.01, 0.1, 1.0}) {
        NeuronState s = resting_state(p);
        for (int k = 0; k < 1000; ++k) {
            auto r = adex_step(s, p, 0.0, k * dt, dt);
            CHECK_FALSE(r.spiked);
            s = r.state;
        }
        CHECK(s.V == p.E_L);
        CHECK(s.w == 0.0);
    }
}

TEST_CASE("adex: linear decay against the closed form") {
    const double dt = 0.01;
    for (double C : {3.0, 7.0, 10.0}) {
        NeuronParams p = linear_cell(C, 1.0);
        const double tau = p.tau_m();
        NeuronState s;
        s.V = p.E_L + 10.0;
        double max_err = 0.0;
        long n = std::lround(5 * tau / dt);
        for (long k = 0; k < n; ++k) {
            s = adex_step(s, p, 0.0, k * dt, dt).state;
            double exact = 10.0 * std::exp(-(k + 1) * dt / tau);
            max_err = std::fmax(max_err, std::fabs((s.V - p.E_L) - exact));
            if (k + 1 == std::lround(tau / dt)) CHECK((s.V - p.E_L) == doctest::Approx(3.679).epsilon(2e-3));
        }
        // relative to the initial 10 mV displacement
        CHECK(max_err / 10.0 <= 1e-3);
    }
}

TEST_CASE("adex: spike resets V and bumps w by b") {
    NeuronParams p;
    p.C = 3.0;
    p.exp_enabled = true;
    p.adapt_enabled = false;
    p.b = 7.5;
    NeuronState s = resting_state(p);
    bool spiked = false;
    double t = 0.0;
    for (int k = 0; k < 100000 && !spiked; ++k) {
        t = k * 0.01;
        auto r = adex_step(s, p, 400.0, t, 0.01);
        spiked = r.spiked;
        s = r.state;
    }
    REQUIRE(spiked);
    CHECK(s.V == p.V_r);
    CHECK(s.w == 7.5);
    CHECK(s.refr_until == doctest::Approx(t + p.t_refr));
    REQUIRE(s.last_spike.has_value());
    CHECK(*s.last_spike == doctest::Approx(t + 0.01));

    SUBCASE("held at V_r while refractory") {
        for (int k = 1; k * 0.01 < p.t_refr - 1e-9; ++k) {
            s = adex_step(s, p, 400.0, t + k * 0.01, 0.01).state;
            CHECK(s.V == p.V_r);
        }
    }
}

TEST_CASE("adex: adaptation increment with subthreshold coupling") {
    NeuronParams p;
    p.C = 3.0;
    p.exp_enabled = true;
    p.adapt_enabled = true;
    p.a = 0.5;
    p.b = 3.0;
    p.tau_w = 50.0;
    NeuronState s = resting_state(p);
    for (int k = 0; k < 100000; ++k) {
        double t = k * 0.01;
        NeuronState before = s;
        auto r = adex_step(s, p, 500.0, t, 0.01);
        if (r.spiked) {
            double w_flow = before.w + 0.01 * ((p.a * (before.V - p.E_L) - before.w) / p.tau_w);
            CHECK(r.state.w == doctest::Approx(w_flow + p.b).epsilon(1e-12));
            CHECK(r.state.V == p.V_r);
            return;
        }
        s = r.state;
    }
    FAIL("no spike");
}

TEST_CASE("adex: membrane clamp") {
    NeuronParams p = linear_cell(1.0, 1.0);
    NeuronState s = resting_state(p);
    for (int k = 0; k < 1000; ++k) {
        s = adex_step(s, p, -1e6, k * 0.01, 0.01).state;
        CHECK(s.V >= p.V_floor);
        CHECK(s.V <= p.V_peak);
    }
    CHECK(s.V == p.V_floor);
}

TEST_CASE("adex: non-finite input is reported") {
    NeuronParams p = linear_cell(1.0, 1.0);
    NeuronState s = resting_state(p);
    try {
        adex_step_inplace(s, p, std::numeric_limits<double>::quiet_NaN(), 4.25, 0.01, "LN9");
        FAIL("expected divergence");
    } catch (const NumericalDivergence& e) {
        CHECK(e.who() == "LN9");
        CHECK(e.time() == 4.25);
    }
}

TEST_CASE("adex: parameter validation") {
    NeuronParams p;
    CHECK_NOTHROW(validate(p));
    p.V_T = p.E_L - 1;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
    p = NeuronParams{};
    p.C = 0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("dpi: zero is a fixed point") {
    SynapseParams p = pulse_syn(5.0, 1.0);
    SynapseState s;
    for (int k = 0; k < 1000; ++k) s = dpi_step(s, p, k * 0.01, 0.01);
    CHECK(s.I_out == 0.0);
}

TEST_CASE("dpi: steady state under constant drive") {
    SynapseParams p = pulse_syn(5.0, 1e9);
    SynapseState s = dpi_receive_spike({}, p, 0.0);
    long n = std::lround(10 * p.tau / 0.01);
    for (long k = 0; k < n; ++k) s = dpi_step(s, p, k * 0.01, 0.01);
    CHECK(s.I_out == doctest::Approx(p.gain * p.weight).epsilon(1e-4));
}

TEST_CASE("dpi: free decay by 1/e per tau") {
    SynapseParams p = pulse_syn(10.0, 1.0);
    SynapseState s;
    s.I_out = 100.0;
    long n = std::lround(p.tau / 0.01);
    for (long k = 0; k < n; ++k) s = dpi_step(s, p, k * 0.01, 0.01);
    // Euler bias is dt/(2 tau) relative
    CHECK(s.I_out == doctest::Approx(100.0 * std::exp(-1.0)).epsilon(1e-3));
}

TEST_CASE("dpi: spike pulse extension") {
    SynapseParams p = pulse_syn(5.0, 1.0);
    SynapseState s = dpi_receive_spike({}, p, 5.0);
    CHECK(s.drive_until == 6.0);
    s = dpi_receive_spike(dpi_receive_spike({}, p, 0.0), p, 0.1);
    CHECK(s.drive_until == doctest::Approx(1.1));
    CHECK(s.I_out == 0.0);

    // four equally spaced spikes over 20 ms give four disjoint 1 ms windows
    std::vector<double> spikes{0.0, 20.0 / 3, 40.0 / 3, 20.0};
    SynapseState q;
    int edges = 0;
    bool prev = false;
    std::size_t c = 0;
    for (long k = 0; k < 3000; ++k) {
        double t = k * 0.01;
        while (c < spikes.size() && spikes[c] <= t + kTimeEps) q = dpi_receive_spike(q, p, spikes[c++]);
        bool on = t + kTimeEps < q.drive_until;
        edges += on && !prev;
        prev = on;
    }
    CHECK(edges == 4);
}

TEST_CASE("dpi: analytic response") {
    SynapseParams p = pulse_syn(4.0, 200.0);
    CHECK(dpi_analytic_response(p, 10.0, 210.0, 5.0) == 0.0);
    CHECK(dpi_analytic_response(p, 10.0, 210.0, 210.0) == doctest::Approx(p.gain * p.weight).epsilon(1e-4));
    double at_end = dpi_analytic_response(p, 10.0, 15.0, 15.0);
    CHECK(dpi_analytic_response(p, 10.0, 15.0, 19.0) == doctest::Approx(at_end * std::exp(-1.0)));
}

TEST_CASE("dpi: simulation matches the analytic pulse response") {
    for (double tau : {2.0, 5.0, 10.0})
        for (double width : {1.0, 5.0, 20.0}) {
            SynapseParams p = pulse_syn(tau, width);
            const double peak = p.gain * p.weight;
            std::vector<double> errs;
            for (double dt : {0.04, 0.02, 0.01, 0.005}) errs.push_back(dpi_max_error(p, 1.0, 1.0 + width, dt, 60.0));
            CAPTURE(tau);
            CAPTURE(width);
            CHECK(errs[2] <= 5e-3 * peak);
            for (std::size_t i = 1; i < errs.size(); ++i) CHECK(errs[i] < errs[i - 1]);

            // Richardson extrapolation of the step-halved pair is closer still
            SynapseState a, b;
            a = dpi_receive_spike(a, p, 1.0);
            b = dpi_receive_spike(b, p, 1.0);
            const double T = 1.0 + width;
            for (long k = std::lround(1.0 / 0.01); k < std::lround(T / 0.01); ++k) a = dpi_step(a, p, k * 0.01, 0.01);
            for (long k = std::lround(1.0 / 0.005); k < std::lround(T / 0.005); ++k) b = dpi_step(b, p, k * 0.005, 0.005);
            double exact = dpi_analytic_response(p, 1.0, T, T);
            double rich = 2 * b.I_out - a.I_out;
            CHECK(std::fabs(rich - exact) < std::fabs(b.I_out - exact));
        }
}

TEST_CASE("stepping is deterministic") {
    NeuronParams p;
    p.exp_enabled = true;
    p.adapt_enabled = true;
    p.a = 0.3;
    p.b = 2;
    NeuronState a = resting_state(p), b = resting_state(p);
    for (int k = 0; k < 20000; ++k) {
        double I = 300.0 * std::sin(k * 0.001);
        a = adex_step(a, p, I, k * 0.01, 0.01).state;
        b = adex_step(b, p, I, k * 0.01, 0.01).state;
        REQUIRE(a.V == b.V);
        REQUIRE(a.w == b.w);
    }
}
