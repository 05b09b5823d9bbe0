#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "plbars/spectrum.hpp"

#include <algorithm>

using namespace plbars;
using namespace plbars::testing;

namespace {

PLProfile tent() {
  return make_profile({{0, 0}, {Rat(1, 2), Rat(1, 4)}, {1, 0}});
}

// Independent enumeration: loop over every source, apply the degree formulas
// directly, and scan a wide recapping window.
std::vector<IndexedAction> oracle_spectrum(const PLProfile& f, const ManifoldParams& p, long d) {
  std::vector<IndexedAction> out;
  auto emit = [&](const ActionSource& s, long baseDeg, const Rat& baseVal) {
    if (p.N == 0) {
      if (baseDeg == d) out.push_back({baseVal, d, s, 0});
      return;
    }
    for (long k = -60; k <= 60; ++k)
      if (baseDeg + 2 * p.N * k == d)
        out.push_back({baseVal + Rat(k) * Rat(p.lambdaSign) * p.gammaHat, d, s, k});
  };
  long n = p.n;
  for (const Kink& kk : classify_kinks(f)) {
    for (long l : kk.crossedLevels) {
      Rat base = -Rat(l) * kk.r + kk.value;
      if (kk.orientation == KinkOrientation::Down) {
        emit(ActionSource::kink_down(kk.r, l), -2 * l * n + n, base);
        emit(ActionSource::kink_down(kk.r, l), -2 * l * n - n + 1, base);
      } else {
        emit(ActionSource::kink_up(kk.r, l), -2 * l * n + n - 1, base);
        emit(ActionSource::kink_up(kk.r, l), -2 * l * n - n, base);
      }
    }
  }
  long l0 = (long)rat_floor(f.first_slope());
  emit(ActionSource::y_intercept(l0), -2 * l0 * n - n, f.value_at(0));
  for (long j : p.exteriorMorseIndices)
    emit(ActionSource::exterior(j), j - n, f.value_at(f.R));
  std::sort(out.begin(), out.end());
  return out;
}

ManifoldParams random_params(std::mt19937_64& rng, const Rat& R) {
  ManifoldParams p;
  p.n = rand_in(rng, 1, 3);
  p.R = R;
  switch (rand_in(rng, 0, 3)) {
    case 0: break;  // aspherical: N = 0, gamma = 0, sigma = 0
    case 1:
      p.N = rand_in(rng, 1, 3);
      break;  // sigma = 0
    case 2:
    case 3:
      p.N = rand_in(rng, 1, 3);
      p.lambdaSign = rng() % 2 ? 1 : -1;
      p.gammaHat = 2 * R + Rat(rand_in(rng, 0, 3));
      break;
  }
  p.exteriorMorseIndices = {0};
  for (long j = 1; j < 2 * p.n; ++j)
    if (rng() % 3 == 0) p.exteriorMorseIndices.push_back(j);
  p.validate();
  return p;
}

}  // namespace

TEST_CASE("base degrees and values") {
  ManifoldParams p;  // n = 1
  auto dn = base_degrees(ActionSource::kink_down(Rat(1, 2), 0), p);
  std::sort(dn.begin(), dn.end());
  CHECK(dn == std::vector<long>{0, 1});
  auto up = base_degrees(ActionSource::kink_up(Rat(1, 2), 1), p);
  std::sort(up.begin(), up.end());
  CHECK(up == std::vector<long>{-3, -2});
  CHECK(base_degrees(ActionSource::y_intercept(0), p) == std::vector<long>{-1});
  CHECK(base_degrees(ActionSource::exterior(1), p) == std::vector<long>{0});
  PLProfile f = tent();
  CHECK(base_value(ActionSource::kink_down(Rat(1, 2), 0), f) == Rat(1, 4));
  CHECK(base_value(ActionSource::kink_down(Rat(1, 2), -1), f) == Rat(3, 4));
  CHECK(base_value(ActionSource::y_intercept(0), f) == 0);
  CHECK(base_value(ActionSource::exterior(0), f) == 0);
}

TEST_CASE("spectrum enumeration, fixed examples") {
  PLProfile f = tent();
  ManifoldParams p;  // n=1, N=0, aspherical

  auto d1 = enumerate_spectrum(f, p, 1);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].value == Rat(1, 4));
  CHECK(d1[0].source == ActionSource::kink_down(Rat(1, 2), 0));
  CHECK(d1[0].k == 0);

  auto dm1 = enumerate_spectrum(f, p, -1);
  REQUIRE(dm1.size() == 2);
  CHECK(dm1[0].value == 0);
  CHECK(dm1[1].value == 0);
  bool sawY = false, sawExt = false;
  for (const auto& a : dm1) {
    if (a.source == ActionSource::y_intercept(0)) sawY = true;
    if (a.source == ActionSource::exterior(0)) sawExt = true;
  }
  CHECK(sawY);
  CHECK(sawExt);

  ManifoldParams q;
  q.n = 1;
  q.N = 2;
  q.lambdaSign = 1;
  q.gammaHat = 2;
  q.validate();
  CHECK(enumerate_spectrum(f, q, 2).empty());
}

TEST_CASE("spectrum matches the brute-force oracle") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    PLProfile f = random_profile(rng);
    ManifoldParams p = random_params(rng, f.R);
    for (long d = -20; d <= 20; ++d) {
      auto got = enumerate_spectrum(f, p, d);
      auto want = oracle_spectrum(f, p, d);
      REQUIRE(got.size() == want.size());
      CHECK(got == want);
      CHECK(std::is_sorted(got.begin(), got.end()));
    }
  }
}

TEST_CASE("recapping shifts degree by 2N and value by sigma gamma") {
  std::mt19937_64 rng(5);
  int seen = 0;
  for (int trial = 0; trial < 60 && seen < 30; ++trial) {
    PLProfile f = random_profile(rng);
    ManifoldParams p = random_params(rng, f.R);
    if (p.N == 0) continue;
    for (long d = -8; d <= 8; ++d)
      for (const auto& a : enumerate_spectrum(f, p, d)) {
        auto up = enumerate_spectrum(f, p, d + 2 * p.N);
        IndexedAction shifted{a.value + Rat(p.lambdaSign) * p.gammaHat, d + 2 * p.N, a.source,
                              a.k + 1};
        CHECK(std::count(up.begin(), up.end(), shifted) >= 1);
        ++seen;
      }
  }
  CHECK(seen >= 30);
}

TEST_CASE("y-intercept degrees share the parity of n") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    PLProfile f = random_profile(rng);
    ManifoldParams p = random_params(rng, f.R);
    for (long d = -10; d <= 10; ++d)
      for (const auto& a : enumerate_spectrum(f, p, d))
        if (a.source.kind == SourceKind::YIntercept)
          CHECK(((a.degree - p.n) % 2 + 2) % 2 == 0);
  }
}

TEST_CASE("degree parametrization families") {
  ManifoldParams p;
  p.n = 1;
  p.N = 2;
  p.lambdaSign = 1;
  p.gammaHat = 2;
  auto fam = solve_degree_parametrization(2, 0, p);
  long z1 = fam.z_of_k(1);
  CHECK(fam.k(z1) == 1);
  CHECK(fam.l(z1) == 1);
  // substitute back: 2n(-l) + 0 + 2Nk = 2
  for (long z = -3; z <= 3; ++z) CHECK(2 * fam.neg_l(z) + 4 * fam.k(z) == 2);

  ManifoldParams q = p;
  q.N = 1;
  auto fam2 = solve_degree_parametrization(2, 0, q);
  long z0 = fam2.z_of_k(0);
  CHECK(fam2.l(z0) == -1);
  for (long z = -3; z <= 3; ++z) CHECK(2 * fam2.neg_l(z) + 2 * fam2.k(z) == 2);

  ManifoldParams r;
  r.n = 2;
  r.N = 3;
  auto fam3 = solve_degree_parametrization(-5, -3, r);
  long zk = fam3.z_of_k(1);
  CHECK(fam3.k(zk) == 1);
  CHECK(fam3.l(zk) == 2);
  for (long z = -3; z <= 3; ++z) CHECK(4 * fam3.neg_l(z) - 3 + 6 * fam3.k(z) == -5);

  // parity obstruction: 2(-l) + 2k = 1 has no integer solutions
  ManifoldParams s = q;
  CHECK_THROWS_AS(solve_degree_parametrization(1, 0, s), Error);
  try {
    solve_degree_parametrization(1, 0, s);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoSolution);
  }
}

TEST_CASE("distinct kink actions predicate") {
  ManifoldParams p;
  p.n = 1;
  p.N = 2;
  p.lambdaSign = 1;
  p.gammaHat = 2;
  p.validate();

  CHECK(has_distinct_kink_actions(tent(), p).distinct);

  PLProfile twin = make_profile({{0, 0},
                                 {Rat(1, 4), Rat(1, 8)},
                                 {Rat(1, 2), 0},
                                 {Rat(3, 4), Rat(1, 8)},
                                 {1, 0}});
  auto res = has_distinct_kink_actions(twin, p);
  CHECK(!res.distinct);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->a != res.witness->b);

  // kink base value exceeds f(R) by exactly one recapping step
  PLProfile step = make_profile(
      {{0, 0}, {Rat(1, 2), Rat(9, 4)}, {Rat(9, 10), Rat(1, 5)}, {1, Rat(1, 4)}});
  auto res2 = has_distinct_kink_actions(step, p);
  CHECK(!res2.distinct);
  CHECK(res2.witness.has_value());

  // gamma = 0, N != 0: exact equality is the only collision mode
  ManifoldParams q;
  q.n = 1;
  q.N = 2;
  q.validate();
  CHECK(has_distinct_kink_actions(tent(), q).distinct);
  CHECK(!has_distinct_kink_actions(twin, q).distinct);
}
