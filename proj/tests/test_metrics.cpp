#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ssfm/engine.hpp"
#include "ssfm/metrics.hpp"

using namespace ssfm;

namespace {

Waveform random_waveform(std::mt19937_64& rng, const SamplingGrid& grid, double z = 0.0) {
  const auto v = oracle::random_vector(rng, grid.n_samples());
  return Waveform{ComplexVector(v.begin(), v.end()), grid, z};
}

Waveform scaled(const Waveform& w, Complex c) {
  Waveform out = w;
  for (auto& x : out.samples) x *= c;
  return out;
}

double brute_nsd(const Waveform& a, const Waveform& b) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    num += std::norm(a.samples[i] - b.samples[i]) * a.grid.dt();
    den += std::norm(a.samples[i]) * a.grid.dt();
  }
  return num / den;
}

}  // namespace

TEST_CASE("nsd of identical and of vanishing candidates") {
  std::mt19937_64 rng(1);
  const auto grid = make_grid(8, 8, 100.0);
  const auto a = random_waveform(rng, grid);
  CHECK(nsd(a, a).nsd == 0.0);
  CHECK(nsd(a, scaled(a, 0.0)).nsd == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("nsd(a, c a) = |1 - c|^2 against brute force") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> coef(-2.0, 3.0);
  const auto grid = make_grid(16, 4, 100.0);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_waveform(rng, grid);
    const double c = coef(rng);
    const auto b = scaled(a, c);
    const double got = nsd(a, b).nsd;
    CHECK(got == doctest::Approx((1 - c) * (1 - c)).epsilon(1e-12));
    CHECK(got == doctest::Approx(brute_nsd(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("nsd is covariant under a common complex scale") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const auto grid = make_grid(16, 6, 100.0);
  for (int trial = 0; trial < 25; ++trial) {
    const auto a = random_waveform(rng, grid);
    const auto b = random_waveform(rng, grid);
    const Complex lambda(g(rng) * 10, g(rng) * 10);
    CHECK(nsd(scaled(a, lambda), scaled(b, lambda)).nsd == doctest::Approx(nsd(a, b).nsd).epsilon(1e-12));
  }
}

TEST_CASE("nsd of a band-limited candidate does not depend on the comparison grid") {
  std::mt19937_64 rng(4);
  const auto ref_grid = make_grid(16, 8, 100.0);
  const auto cand_grid = make_grid(16, 4, 100.0);
  const auto fine_grid = make_grid(16, 16, 100.0);
  const long limit = static_cast<long>(cand_grid.n_samples() / 2) - 1;
  for (int trial = 0; trial < 10; ++trial) {
    const auto a_raw = oracle::random_bandlimited(rng, ref_grid.n_samples(), limit + 5);
    const auto b_raw = oracle::random_bandlimited(rng, cand_grid.n_samples(), limit);
    const Waveform a{ComplexVector(a_raw.begin(), a_raw.end()), ref_grid, 0.0};
    const Waveform b{ComplexVector(b_raw.begin(), b_raw.end()), cand_grid, 0.0};
    const double on_reference = nsd(a, b).nsd;
    const double on_fine = nsd(resample_bandlimited(a, fine_grid), resample_bandlimited(b, fine_grid)).nsd;
    CHECK(on_fine == doctest::Approx(on_reference).epsilon(1e-8));
  }
}

TEST_CASE("nsd never exceeds the triangle-inequality bound") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const int spp_a = 2 + static_cast<int>(rng() % 20);
    const int spp_b = 2 + static_cast<int>(rng() % 20);
    const auto a = random_waveform(rng, make_grid(8, spp_a, 100.0));
    const auto b = random_waveform(rng, make_grid(8, spp_b, 100.0));
    const double ratio = b.energy() / a.energy();
    const auto report = nsd(a, b);
    CHECK(report.nsd >= 0.0);
    CHECK(report.nsd <= 2 * (1 + ratio));
  }
}

TEST_CASE("nsd report carries the grids and compares on the reference grid") {
  const auto symbols = gen_symbols(1, 16);
  const LaunchSpec launch{0.0, 0.1, 10e9};
  const auto ref = shape_pulse(symbols, make_grid(16, 30, 100.0), launch);
  const auto cand = shape_pulse(symbols, make_grid(16, 8, 100.0), launch);
  const auto report = nsd(ref, cand);
  CHECK(report.reference_grid == ref.grid);
  CHECK(report.candidate_grid == cand.grid);
  CHECK(report.comparison_grid == ref.grid);
  // The same band-limited pulse train on two grids.
  CHECK(report.nsd < 1e-20);
}

TEST_CASE("nsd input errors") {
  std::mt19937_64 rng(6);
  const auto a = random_waveform(rng, make_grid(8, 4, 100.0));
  CHECK_THROWS_AS(nsd(a, random_waveform(rng, make_grid(10, 4, 100.0))), std::invalid_argument);
  CHECK_THROWS_AS(nsd(a, random_waveform(rng, make_grid(8, 4, 100.0), 10.0)), std::invalid_argument);
  const Waveform zero{ComplexVector(a.samples.size()), a.grid, 0.0};
  CHECK_THROWS_AS(nsd(zero, a), DegenerateInput);
}
