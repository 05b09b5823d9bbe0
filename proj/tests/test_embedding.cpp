#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "plbars/embedding.hpp"

#include <algorithm>

using namespace plbars;
using namespace plbars::testing;

namespace {

ManifoldParams sphere_like(Rat R) {
  ManifoldParams p;
  p.n = 1;
  p.N = 2;
  p.lambdaSign = 1;
  p.gammaHat = 2;
  p.R = std::move(R);
  p.validate();
  return p;
}

}  // namespace

TEST_CASE("generator family landmarks") {
  ManifoldParams p = sphere_like(Rat(9, 10));
  Rat eps(1, 20);
  GeneratorFamily fam = build_generators(p, eps, 1);
  REQUIRE(fam.gens.size() == 1);
  const GeneratorProfile& g1 = fam.gens[0];
  CHECK(g1.lo == Rat(7, 8));
  CHECK(g1.hi == Rat(9, 10));
  CHECK(g1.r2 == Rat(71, 80));
  CHECK(g1.f.max_value() == Rat(9, 10));
  CHECK(g1.lo < g1.r1);
  CHECK(g1.r1 < g1.r2);
  CHECK(g1.r2 < g1.r3);
  CHECK(g1.r3 < g1.hi);
  CHECK(g1.f.value_at(g1.r1) == p.R);
  CHECK(g1.f.value_at(g1.r2) == 0);
  CHECK(g1.f.value_at(g1.r3) == p.R);
  g1.f.validate_domain();

  GeneratorFamily fam2 = build_generators(p, eps, 2);
  REQUIRE(fam2.gens.size() == 2);
  const GeneratorProfile& g2 = fam2.gens[1];
  CHECK(g2.lo == p.R - 3 * eps / 4);
  CHECK(g2.hi == p.R - eps / 2);
  CHECK(g2.hi <= fam2.gens[0].lo);  // supports meet in at most a point
  for (const auto& g : fam2.gens) {
    // support confined to [lo, hi]
    CHECK(g.f.value_at(g.lo) == 0);
    CHECK(g.f.value_at(g.hi) == 0);
    if (g.lo > 0) CHECK(g.f.value_at(g.lo / 2) == 0);
  }

  try {
    build_generators(p, p.R, 1);
    FAIL("expected ParameterError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParameterError);
  }
}

TEST_CASE("profiles of embedding points") {
  ManifoldParams p = sphere_like(Rat(9, 10));
  GeneratorFamily fam = build_generators(p, Rat(1, 20), 2);

  EmbeddingPoint zero;
  zero.coeffs = {Rat(0), Rat(0)};
  CHECK(sup_distance(phi_profile(zero, fam), zero_profile(p.R)) == 0);

  EmbeddingPoint e1;
  e1.coeffs = {Rat(1), Rat(0)};
  CHECK(sup_distance(phi_profile(e1, fam), fam.gens[0].f) == 0);

  EmbeddingPoint mixed;
  mixed.coeffs = {Rat(1, 2), Rat(1)};
  PLProfile mix = phi_profile(mixed, fam);
  CHECK(mix.value_at(fam.gens[0].r1) == p.R / 2);
  CHECK(mix.value_at(fam.gens[1].r1) == p.R);
  CHECK(mix.max_value() == p.R);

  // linearity on the shared breakpoint grid
  EmbeddingPoint other;
  other.coeffs = {Rat(1, 4), Rat(0)};
  EmbeddingPoint sum;
  sum.coeffs = {Rat(3, 4), Rat(1)};
  PLProfile lhs = linear_combine({1, 1}, {phi_profile(mixed, fam), phi_profile(other, fam)});
  CHECK(sup_distance(lhs, phi_profile(sum, fam)) == 0);

  EmbeddingPoint oversized;
  oversized.coeffs = {Rat(1), Rat(0), Rat(1)};
  CHECK_THROWS_AS(oversized.validate(fam.count), Error);
  try {
    oversized.validate(fam.count);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SupportError);
  }
  EmbeddingPoint outOfRange;
  outOfRange.coeffs = {Rat(3, 2)};
  try {
    outOfRange.validate(fam.count);
    FAIL("expected ParameterError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParameterError);
  }
}

TEST_CASE("generic perturbation") {
  ManifoldParams p = sphere_like(1);
  PLProfile tent = make_profile({{0, 0}, {Rat(1, 2), Rat(1, 4)}, {1, 0}});
  Rat eps(1, 20);

  // already generic: returned unchanged
  CHECK(perturb_to_generic(tent, p, eps, {}) == tent);

  // integer slopes get nudged; kink radii and the sup bound are preserved
  PLProfile doubled = linear_combine({2}, {tent});
  PLProfile g = perturb_to_generic(doubled, p, eps, {});
  g.validate();
  CHECK(sup_distance(doubled, g) < eps);
  auto ka = classify_kinks(doubled);
  auto kb = classify_kinks(g);
  REQUIRE(ka.size() == kb.size());
  for (size_t i = 0; i < ka.size(); ++i) CHECK(ka[i].r == kb[i].r);
  CHECK(has_distinct_kink_actions(g, p).distinct);

  // deterministic per seed
  CHECK(perturb_to_generic(doubled, p, eps, {}, 7) == perturb_to_generic(doubled, p, eps, {}, 7));

  // pinning every breakpoint of a degenerate profile is contradictory
  std::vector<Breakpoint> allPts(doubled.pts.begin(), doubled.pts.end());
  try {
    perturb_to_generic(doubled, p, eps, allPts);
    FAIL("expected CannotPerturb");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::CannotPerturb);
  }
}

TEST_CASE("first theorem window, fixed points") {
  ManifoldParams p = sphere_like(Rat(9, 10));
  Rat eps(1, 20);
  GeneratorFamily fam = build_generators(p, eps, 2);

  EmbeddingPoint a, b;
  a.coeffs = {Rat(1, 2), Rat(1, 4)};
  b = a;
  HoferWindow same = theorem1_bounds(a, b, p, eps, fam);
  CHECK(same.lower == RealVal(0, 0));
  CHECK(same.upper == RealVal(0, 0));
  CHECK(same.oscillation2pi == 0);

  EmbeddingPoint zero, e1;
  zero.coeffs = {Rat(0), Rat(0)};
  e1.coeffs = {Rat(1), Rat(0)};
  HoferWindow unit = theorem1_bounds(zero, e1, p, eps, fam);
  CHECK(unit.upper == RealVal(2 * p.R, 0));
  CHECK(unit.oscillation2pi == p.R);

  EmbeddingPoint half;
  half.coeffs = {Rat(1, 2), Rat(0)};
  HoferWindow hw = theorem1_bounds(zero, half, p, eps, fam);
  CHECK(hw.oscillation2pi == p.R / 2);
  CHECK(hw.upper == RealVal(p.R, 0));
}

TEST_CASE("window ordering on random pairs") {
  ManifoldParams p = sphere_like(Rat(9, 10));
  Rat eps(1, 20);
  GeneratorFamily fam = build_generators(p, eps, 3);
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 100; ++trial) {
    EmbeddingPoint a, b;
    for (int i = 0; i < 3; ++i) {
      a.coeffs.push_back(Rat(rand_in(rng, 0, 8), 8));
      b.coeffs.push_back(Rat(rand_in(rng, 0, 8), 8));
    }
    HoferWindow w = theorem1_bounds(a, b, p, eps, fam);
    Rat d = 0;
    for (int i = 0; i < 3; ++i) d = std::max(d, rat_abs(a.coeffs[i] - b.coeffs[i]));
    CHECK(w.lower <= RealVal(w.oscillation2pi, 0));
    CHECK(w.oscillation2pi <= 2 * p.R * d);
    CHECK(RealVal(w.oscillation2pi, 0) <= w.upper);
    CHECK(w.upper == RealVal(2 * p.R * d, 0));
    CHECK(w.lower >= RealVal(0, 0));
  }
}

TEST_CASE("ball volumes") {
  CHECK(ball_volume(1, Rat(19, 20)) == Rat(19, 20));
  CHECK(ball_volume(1, 1) == 1);
  CHECK(ball_volume(2, 1) == 1);
  CHECK(ball_volume(2, Rat(1, 2)) == Rat(1, 4));
  CHECK(ball_volume(3, Rat(2)) == 8);
}

TEST_CASE("auxiliary profile") {
  ManifoldParams p = sphere_like(Rat(9, 10));
  Rat eps(1, 20), delta(1, 100);
  PLProfile f0 = f0_profile(p, eps, delta);
  f0.validate_domain();
  CHECK(f0.value_at(0) == Rat(9, 10));
  CHECK(f0.value_at(Rat(7, 10)) == Rat(9, 10));
  CHECK(f0.value_at(Rat(1, 2)) == Rat(9, 10));
  CHECK(f0.value_at(Rat(3, 4)) == 0);
  CHECK(f0.value_at(Rat(4, 5)) == Rat(9, 10));
  CHECK(f0.value_at(Rat(17, 20) - delta) == 0);
  CHECK(f0.value_at(Rat(9, 10)) == 0);
  CHECK(f0.value_at(Rat(7, 8)) == 0);

  try {
    f0_profile(p, Rat(1, 4), delta);  // 4*eps >= R
    FAIL("expected ParameterError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParameterError);
  }
  CHECK_THROWS_AS(f0_profile(p, eps, Rat(0)), Error);
}

TEST_CASE("second theorem constants on the sphere") {
  Rat eps(1, 50);
  ManifoldParams p;
  p.n = 1;
  p.N = 2;
  p.lambdaSign = 1;
  p.gammaHat = 2;
  p.R = 1 - eps;
  p.validate();
  EmbeddingPoint a;
  a.coeffs = {};
  a.a0 = Rat(1);
  // Vol(S^2) = 4pi = 2 * (2pi)^1
  EmbeddingConstants ec = theorem2_constants(p, eps, Rat(2), a);
  CHECK(ec.C == (1 - eps) / 2 - eps);

  try {
    theorem2_constants(p, eps, Rat(1, 2), a);  // VolM below the ball volume
    FAIL("expected VolumeError");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::VolumeError);
  }

  // lower bound grows affinely in a0 with slope Vol(B_{R-4eps})/VolM * R
  EmbeddingPoint big = a;
  big.a0 = Rat(10);
  EmbeddingPoint bigger = a;
  bigger.a0 = Rat(11);
  RealVal l1 = theorem2_constants(p, eps, Rat(2), big).lowerBound;
  RealVal l2 = theorem2_constants(p, eps, Rat(2), bigger).lowerBound;
  RealVal l3 = theorem2_constants(p, eps, Rat(2), a).lowerBound;
  CHECK(l2 > l1);
  CHECK((l2 - l1) == RealVal(p.R * ball_volume(1, p.R - 4 * eps) / 2, 0));
  CHECK(l1 > l3);
}
