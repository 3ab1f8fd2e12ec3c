#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "ssfm/signal.hpp"

using namespace ssfm;

namespace {

oracle::Vec to_vec(const ComplexVector& v) { return {v.begin(), v.end()}; }

ComplexVector from_vec(const oracle::Vec& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("make_grid derives dt, rate and sample count") {
  const auto g = make_grid(4, 8, 100.0);
  CHECK(g.n_samples() == 32);
  CHECK(g.dt() == 12.5);
  CHECK(g.sampling_rate() == doctest::Approx(0.08).epsilon(1e-15));

  const auto minimal = make_grid(1, 2, 100.0);
  CHECK(minimal.n_samples() == 2);
  CHECK(minimal.dt() == 50.0);

  const auto bench = make_grid(64, 30, 100.0);
  CHECK(bench.n_samples() == 1920);
  CHECK(bench.dt() == doctest::Approx(100.0 / 30.0).epsilon(1e-15));
  CHECK(bench.dt() * bench.samples_per_symbol() == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(bench.sampling_rate() * bench.dt() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("make_grid rejects bad input") {
  CHECK_THROWS_AS(make_grid(0, 8, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 1, 100.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 8, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 8, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(3, 7, 100.0), std::invalid_argument);  // odd sample count
}

TEST_CASE("frequency bins cover the symmetric range [-n/2, n/2)") {
  const auto g = make_grid(4, 8, 100.0);
  const double df = 1.0 / (32 * 12.5);
  CHECK(g.frequency(0) == 0.0);
  CHECK(g.frequency(1) == doctest::Approx(df));
  CHECK(g.frequency(15) == doctest::Approx(15 * df));
  CHECK(g.signed_bin(16) == -16);
  CHECK(g.frequency(16) == doctest::Approx(-g.sampling_rate() / 2));
  CHECK(g.frequency(31) == doctest::Approx(-df));
}

TEST_CASE("dbm_to_watts") {
  CHECK(dbm_to_watts(0.0) == doctest::Approx(1e-3).epsilon(1e-15));
  CHECK(dbm_to_watts(10.0) == doctest::Approx(10e-3).epsilon(1e-15));
  CHECK(dbm_to_watts(9.6) == doctest::Approx(9.120108393559097e-3).epsilon(1e-12));
}

TEST_CASE("16-QAM constellation has unit mean power and zero mean") {
  double power = 0.0;
  Complex mean{};
  for (unsigned i = 0; i < 16; ++i) {
    power += std::norm(qam16_point(i));
    mean += qam16_point(i);
  }
  CHECK(power / 16 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(mean) < 1e-15);
  const double unit = 1.0 / std::sqrt(10.0);
  for (unsigned i = 0; i < 16; ++i) {
    const auto p = qam16_point(i);
    for (double c : {p.real(), p.imag()}) {
      const double level = c / unit;
      CHECK(std::abs(std::abs(level) - std::round(std::abs(level))) < 1e-12);
      CHECK((std::round(std::abs(level)) == 1.0 || std::round(std::abs(level)) == 3.0));
    }
  }
}

TEST_CASE("gen_symbols is deterministic and draws only constellation points") {
  const auto a = gen_symbols(42, 1000);
  const auto b = gen_symbols(42, 1000);
  CHECK(a.symbols == b.symbols);
  CHECK(a.n_symbols() == 1000);
  CHECK(gen_symbols(43, 1000).symbols != a.symbols);
  for (const auto& s : a.symbols) {
    bool found = false;
    for (unsigned i = 0; i < 16; ++i) found = found || s == qam16_point(i);
    CHECK(found);
  }
  CHECK_THROWS_AS(gen_symbols(1, 0), std::invalid_argument);
}

TEST_CASE("gen_symbols histogram is uniform (chi-square, 1e6 draws)") {
  constexpr int draws = 1'000'000;
  const auto seq = gen_symbols(7, draws);
  std::array<long, 16> counts{};
  Complex mean{};
  for (const auto& s : seq.symbols) {
    for (unsigned i = 0; i < 16; ++i)
      if (s == qam16_point(i)) ++counts[i];
    mean += s;
  }
  const double expected = draws / 16.0;
  const double sigma = std::sqrt(draws * (1.0 / 16) * (15.0 / 16));
  double chi2 = 0.0;
  for (long c : counts) {
    CHECK(std::abs(c - expected) < 3 * sigma);
    chi2 += (c - expected) * (c - expected) / expected;
  }
  // 15 degrees of freedom: mean 15, sd sqrt(30).
  CHECK(chi2 < 15 + 3 * std::sqrt(30.0));
  CHECK(std::abs(mean / static_cast<double>(draws)) < 5e-3);
}

TEST_CASE("shape_pulse at zero roll-off is a Nyquist sinc peaked on its symbol") {
  const auto grid = make_grid(8, 16, 100.0);
  SymbolSequence seq;
  seq.symbols.assign(8, Complex{});
  seq.symbols[3] = 1.0;
  const auto w = shape_pulse(seq, grid, LaunchSpec{0.0, 0.0, 10e9});
  const std::size_t peak = 3 * 16;
  for (std::size_t i = 0; i < w.samples.size(); ++i)
    if (i != peak) CHECK(std::abs(w.samples[i]) < std::abs(w.samples[peak]));
  for (int m = 0; m < 8; ++m)
    if (m != 3) CHECK(std::abs(w.samples[m * 16]) < 1e-12 * std::abs(w.samples[peak]));
  CHECK(std::abs(w.samples[peak - 5] - w.samples[peak + 5]) < 1e-12);
}

TEST_CASE("shape_pulse calibrates mean power for every roll-off and oversampling") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rolloff(0.0, 1.0);
  std::uniform_real_distribution<double> power(-10.0, 15.0);
  for (int trial = 0; trial < 40; ++trial) {
    const int spp = 2 + static_cast<int>(rng() % 30);
    const int n_symbols = 2 * (1 + static_cast<int>(rng() % 40));
    const LaunchSpec launch{power(rng), trial == 0 ? 0.0 : (trial == 1 ? 1.0 : rolloff(rng)), 10e9};
    const auto w = shape_pulse(gen_symbols(rng(), n_symbols), make_grid(n_symbols, spp, 100.0), launch);
    CHECK(w.mean_power() == doctest::Approx(dbm_to_watts(launch.power_dbm)).epsilon(1e-12));
    CHECK(w.samples.size() == w.grid.n_samples());
    CHECK(w.all_finite());
    CHECK(w.z_position == 0.0);
  }
}

TEST_CASE("shaped spectrum vanishes beyond (1 + rolloff) / (2 Ts)") {
  const double rolloff = 0.1;
  const auto grid = make_grid(256, 8, 100.0);
  const auto w = shape_pulse(gen_symbols(3, 256), grid, LaunchSpec{0.0, rolloff, 10e9});
  const auto spec = oracle::dft(to_vec(w.samples));
  const double edge = (1 + rolloff) / (2 * 100.0);
  double in_band = 0.0;
  double out_band = 0.0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double f = std::abs(grid.frequency(k));
    (f > edge ? out_band : in_band) += std::norm(spec[k]);
  }
  CHECK(out_band < 1e-26 * in_band);
}

TEST_CASE("shape_pulse rejects mismatched lengths") {
  CHECK_THROWS_AS(shape_pulse(gen_symbols(1, 10), make_grid(12, 4, 100.0), LaunchSpec{}), std::invalid_argument);
  CHECK_THROWS_AS(shape_pulse(gen_symbols(1, 10), make_grid(10, 4, 100.0), LaunchSpec{0.0, 1.5, 10e9}),
                  std::invalid_argument);
}

TEST_CASE("resample round trip restores the original samples") {
  const auto grid = make_grid(32, 8, 100.0);
  const auto w = shape_pulse(gen_symbols(5, 32), grid, LaunchSpec{3.0, 0.1, 10e9});
  const auto up = resample_bandlimited(w, make_grid(32, 30, 100.0));
  const auto back = resample_bandlimited(up, grid);
  CHECK(oracle::relative_l2(to_vec(w.samples), to_vec(back.samples)) < 1e-10);
  CHECK(back.grid == grid);
}

TEST_CASE("resample round trip holds even with a populated Nyquist bin") {
  std::mt19937_64 rng(9);
  const auto grid = make_grid(8, 4, 100.0);
  Waveform w{from_vec(oracle::random_vector(rng, grid.n_samples())), grid, 0.0};
  const auto back = resample_bandlimited(resample_bandlimited(w, make_grid(8, 10, 100.0)), grid);
  CHECK(oracle::relative_l2(to_vec(w.samples), to_vec(back.samples)) < 1e-12);
}

TEST_CASE("a pure tone keeps its amplitude and frequency when upsampled") {
  const auto grid = make_grid(8, 4, 100.0);
  const int bin = 5;
  Waveform tone{ComplexVector(grid.n_samples()), grid, 0.0};
  for (std::size_t i = 0; i < tone.samples.size(); ++i)
    tone.samples[i] = std::polar(0.7, 2 * std::numbers::pi * bin * static_cast<double>(i) / grid.n_samples());

  const auto fine = make_grid(8, 8, 100.0);
  const auto up = resample_bandlimited(tone, fine);
  for (std::size_t i = 0; i < up.samples.size(); ++i) {
    const auto expected = std::polar(0.7, 2 * std::numbers::pi * bin * static_cast<double>(i) / fine.n_samples());
    CHECK(std::abs(up.samples[i] - expected) < 1e-13);
  }
}

TEST_CASE("downsampling removes energy above the target Nyquist and keeps the rest") {
  std::mt19937_64 rng(21);
  const auto fine = make_grid(16, 8, 100.0);
  const auto coarse = make_grid(16, 4, 100.0);
  const std::size_t n = fine.n_samples();
  const std::size_t m = coarse.n_samples();
  const auto x = oracle::random_vector(rng, n);
  const auto spec = oracle::dft(x);

  // Expected coarse spectrum: bins strictly inside the target band, scaled by
  // m/n for the unnormalized forward transform.
  double below = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (std::labs(oracle::signed_bin(k, n)) < static_cast<long>(m / 2)) below += std::norm(spec[k]);

  const auto y = resample_bandlimited(Waveform{from_vec(x), fine, 0.0}, coarse);
  const auto out_spec = oracle::dft(to_vec(y.samples));
  const double scale = static_cast<double>(m) / static_cast<double>(n);
  double kept = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const long b = oracle::signed_bin(k, m);
    if (std::labs(b) == static_cast<long>(m / 2)) continue;
    const std::size_t src = b >= 0 ? static_cast<std::size_t>(b) : n - static_cast<std::size_t>(-b);
    CHECK(std::abs(out_spec[k] - spec[src] * scale) < 1e-10 * std::sqrt(below));
    kept += std::norm(out_spec[k]);
  }
  CHECK(kept == doctest::Approx(below * scale * scale).epsilon(1e-10));
}

TEST_CASE("resampling preserves energy of band-limited waveforms") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const int n_symbols = 2 * (1 + static_cast<int>(rng() % 8));
    const int spp_a = 2 + static_cast<int>(rng() % 12);
    const int spp_b = 2 + static_cast<int>(rng() % 12);
    const auto a = make_grid(n_symbols, spp_a, 100.0);
    const auto b = make_grid(n_symbols, spp_b, 100.0);
    const long limit = static_cast<long>(std::min(a.n_samples(), b.n_samples()) / 2) - 1;
    Waveform w{from_vec(oracle::random_bandlimited(rng, a.n_samples(), limit)), a, 0.0};
    const auto r = resample_bandlimited(w, b);
    CHECK(r.energy() == doctest::Approx(w.energy()).epsilon(1e-10));
  }
}

TEST_CASE("resample rejects a duration mismatch") {
  const auto w = shape_pulse(gen_symbols(1, 8), make_grid(8, 4, 100.0), LaunchSpec{});
  CHECK_THROWS_AS(resample_bandlimited(w, make_grid(10, 4, 100.0)), std::invalid_argument);
  CHECK_THROWS_AS(resample_bandlimited(w, make_grid(8, 4, 90.0)), std::invalid_argument);
}

TEST_CASE("fft wrapper matches the naive DFT") {
  std::mt19937_64 rng(2);
  for (std::size_t n : {2u, 6u, 16u, 30u, 448u}) {
    const auto x = oracle::random_vector(rng, n);
    const auto expected = oracle::dft(x);
    const auto got = fft_forward_copy(from_vec(x));
    CHECK(oracle::relative_l2(expected, to_vec(got)) < 1e-13);
    const auto back = fft_inverse_copy(got);
    CHECK(oracle::relative_l2(x, to_vec(back)) < 1e-13);
    // Unaligned storage goes through a different plan.
    oracle::Vec plain = x;
    fft_forward(std::span<Complex>(plain.data() + 0, plain.size()));
    CHECK(oracle::relative_l2(expected, plain) < 1e-13);
  }
}
