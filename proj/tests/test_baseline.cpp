#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "isac/baseline.hpp"
#include "isac/channel.hpp"
#include "isac/signal.hpp"
#include "test_util.hpp"

using namespace isac;
using test_util::max_abs_diff;
using test_util::random_unimodular;

namespace {

cvec bench_chirp() { return lfm_waveform(64, 10e6, 6.4e-6, 1e-7); }

cvec qpsk_block(std::uint64_t seed, std::size_t L) {
    Rng rng(seed, "baseline bits");
    const Constellation c = make_constellation(ConstellationKind::QPSK);
    std::vector<int> bits(2 * L);
    for (auto& b : bits) b = int(rng.next_bit());
    return modulate(bits, c);
}

}  // namespace

TEST_SUITE_BEGIN("baseline");

TEST_CASE("chirp samples have unit modulus and quadratic phase") {
    const cvec x = bench_chirp();
    REQUIRE(x.size() == 64);
    CHECK(energy(x) == doctest::Approx(64.0).epsilon(1e-12));
    for (std::size_t l = 0; l < x.size(); ++l) {
        CHECK(std::abs(x[l]) == doctest::Approx(1.0).epsilon(1e-12));
        const double phase = M_PI * (10e6 / 6.4e-6) * (double(l) * 1e-7) *
                             (double(l) * 1e-7);
        CHECK(std::abs(x[l] - std::polar(1.0, phase)) < 1e-12);
    }
    // spot value: l = 5 -> exp(j pi 25/64)
    CHECK(x[5].real() == doctest::Approx(0.33688985339222005).epsilon(1e-12));
    CHECK(x[5].imag() == doctest::Approx(0.9415440651830208).epsilon(1e-12));
}

TEST_CASE("chirp autocorrelation sidelobes sit at the known level") {
    const cvec x64 = bench_chirp();
    CHECK(pslr_db(xcorr_fft(x64, x64)) == doctest::Approx(-24.3582).epsilon(1e-3));
    const cvec x256 = lfm_waveform(256, 10e6, 2.56e-5, 1e-7);
    CHECK(pslr_db(xcorr_fft(x256, x256)) == doctest::Approx(-30.4444).epsilon(1e-3));
}

TEST_CASE("chirp construction validates its timing") {
    CHECK_THROWS_AS((void)lfm_waveform(63, 10e6, 6.4e-6, 1e-7),
                    std::invalid_argument);  // length/timing mismatch
    CHECK_THROWS_AS((void)lfm_waveform(64, -1.0, 6.4e-6, 1e-7),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)lfm_waveform(64, 10e6, 0.0, 1e-7), std::invalid_argument);
    CHECK_THROWS_AS((void)lfm_waveform(64, 10e6, 6.4e-6, 0.0),
                    std::invalid_argument);
}

TEST_CASE("radar-only weight returns the chirp itself") {
    Rng rng(80, "chan");
    const MultipathChannel ch = build_channel({0, 5, 8}, 64, rng);
    TradeoffConfig cfg;
    cfg.rho = 0.0;
    const cvec x = tradeoff_waveform(ch, qpsk_block(80, 64), bench_chirp(), cfg);
    CHECK(max_abs_diff(x, bench_chirp()) < 1e-9);
}

TEST_CASE("communication-only weight through a flat channel returns the block") {
    const MultipathChannel identity = build_channel({{cdouble{1, 0}, 0}}, 64);
    const cvec s = qpsk_block(81, 64);
    TradeoffConfig cfg;
    cfg.rho = 1.0;
    const cvec x = tradeoff_waveform(identity, s, bench_chirp(), cfg);
    CHECK(max_abs_diff(x, s) < 1e-9);
}

TEST_CASE("balanced weight beats both anchors on the blended objective") {
    Rng rng(82, "balance");
    const MultipathChannel ch = build_channel({0, 5, 8}, 64, rng);
    const cvec s = qpsk_block(82, 64);
    const cvec chirp = bench_chirp();
    TradeoffConfig cfg;  // rho = 0.1
    const cvec x = tradeoff_waveform(ch, s, chirp, cfg);
    const double at_x = tradeoff_objective(x, ch, s, chirp, cfg.rho);
    CHECK(at_x <= tradeoff_objective(chirp, ch, s, chirp, cfg.rho) + 1e-9);
    const cvec s_scaled = scale_to_energy(s, 64.0);
    CHECK(at_x <= tradeoff_objective(s_scaled, ch, s, chirp, cfg.rho) + 1e-9);
}

TEST_CASE("result satisfies the transmit constraints") {
    Rng rng(83, "constraints");
    const MultipathChannel ch = build_channel({0, 5, 8}, 64, rng);
    TradeoffConfig cfg;
    const cvec x = tradeoff_waveform(ch, qpsk_block(83, 64), bench_chirp(), cfg);
    CHECK(energy(x) == doctest::Approx(64.0).epsilon(1e-8));
    CHECK(papr(x) <= cfg.gamma * cfg.gamma * (1 + 1e-9));
}

TEST_CASE("construction is deterministic") {
    Rng rng(84, "det");
    const MultipathChannel ch = build_channel({0, 5, 8}, 64, rng);
    const cvec s = qpsk_block(84, 64);
    const cvec a = tradeoff_waveform(ch, s, bench_chirp(), TradeoffConfig{});
    const cvec b = tradeoff_waveform(ch, s, bench_chirp(), TradeoffConfig{});
    CHECK(max_abs_diff(a, b) == 0.0);
}

TEST_CASE("malformed blends are rejected") {
    const MultipathChannel identity = build_channel({{cdouble{1, 0}, 0}}, 64);
    const cvec s = qpsk_block(85, 64);
    TradeoffConfig cfg;
    cfg.rho = 1.5;
    CHECK_THROWS_AS((void)tradeoff_waveform(identity, s, bench_chirp(), cfg),
                    std::invalid_argument);
    cfg = TradeoffConfig{};
    cfg.gamma = 0.0;
    CHECK_THROWS_AS((void)tradeoff_waveform(identity, s, bench_chirp(), cfg),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)tradeoff_waveform(identity, qpsk_block(85, 32),
                                            bench_chirp(), TradeoffConfig{}),
                    std::invalid_argument);  // length mismatch
}

TEST_SUITE_END();
