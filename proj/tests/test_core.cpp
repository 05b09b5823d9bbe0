#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "plbars/core.hpp"

#include <functional>

using namespace plbars;
using namespace plbars::testing;

namespace {

PLProfile tent() {
  return make_profile({{0, 0}, {Rat(1, 2), Rat(1, 4)}, {1, 0}});
}

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  throw std::logic_error("expected an Error");
}

}  // namespace

TEST_CASE("profile construction") {
  PLProfile f = tent();
  CHECK(f.R == 1);
  CHECK(f.segments() == 2);
  CHECK(f.slope(0) == Rat(1, 2));
  CHECK(f.slope(1) == Rat(-1, 2));
  CHECK(f.first_slope() == Rat(1, 2));
  CHECK(f.final_slope() == Rat(-1, 2));

  CHECK(code_of([] { make_profile({{0, 0}, {Rat(1, 2), Rat(1, 2)}, {1, 0}}); }) ==
        Errc::SlopeConditionViolation);  // interior slope 1
  CHECK(code_of([] { make_profile({{0, 0}, {Rat(1, 2), Rat(3, 4)}, {1, 0}}); }) ==
        Errc::SlopeConditionViolation);  // final slope -3/2
  CHECK(code_of([] { make_profile({{0, 0}}); }) == Errc::DomainError);
  CHECK(code_of([] {
          make_profile({{0, 0}, {Rat(1, 2), Rat(1, 4)}, {Rat(1, 2), Rat(1, 8)}, {1, 0}});
        }) == Errc::DomainError);
  CHECK(code_of([] { make_profile({{Rat(1, 4), 0}, {1, 0}}); }) == Errc::DomainError);
  CHECK_NOTHROW(make_profile_unchecked({{0, 0}, {Rat(1, 2), Rat(1, 2)}, {1, 0}}));
}

TEST_CASE("evaluation and extrema") {
  PLProfile f = tent();
  CHECK(f.value_at(0) == 0);
  CHECK(f.value_at(Rat(1, 4)) == Rat(1, 8));
  CHECK(f.value_at(Rat(1, 2)) == Rat(1, 4));
  CHECK(f.value_at(Rat(3, 4)) == Rat(1, 8));
  CHECK(f.value_at(1) == 0);
  CHECK(f.min_value() == 0);
  CHECK(f.max_value() == Rat(1, 4));
  CHECK(zero_profile(Rat(3, 4)).max_value() == 0);
}

TEST_CASE("linear combinations") {
  PLProfile f = tent();
  PLProfile z = zero_profile(1);
  CHECK(linear_combine({1, 0}, {f, z}) == f);
  PLProfile neg = linear_combine({-1}, {f});
  CHECK(neg.value_at(Rat(1, 2)) == Rat(-1, 4));
  CHECK(neg.min_value() == Rat(-1, 4));

  // Disjointly supported bumps.
  PLProfile b1 = make_profile_unchecked(
      {{0, 0}, {Rat(1, 8), Rat(1, 8)}, {Rat(1, 4), 0}, {1, 0}});
  PLProfile b2 = make_profile_unchecked(
      {{0, 0}, {Rat(1, 2), 0}, {Rat(5, 8), Rat(3, 8)}, {Rat(3, 4), 0}, {1, 0}});
  PLProfile sum = linear_combine({1, 1}, {b1, b2});
  CHECK(sum.max_value() == Rat(3, 8));
  CHECK(sum.value_at(Rat(1, 8)) == Rat(1, 8));
  CHECK(sum.value_at(Rat(3, 8)) == 0);

  PLProfile other = zero_profile(Rat(1, 2));
  CHECK(code_of([&] { linear_combine({1, 1}, {f, other}); }) == Errc::DomainMismatch);
}

TEST_CASE("sup distance") {
  PLProfile f = tent();
  PLProfile z = zero_profile(1);
  CHECK(sup_distance(f, f) == 0);
  CHECK(sup_distance(f, z) == Rat(1, 4));
  PLProfile shifted =
      make_profile_unchecked({{0, Rat(1, 8)}, {Rat(1, 2), Rat(3, 8)}, {1, Rat(1, 8)}});
  CHECK(sup_distance(f, shifted) == Rat(1, 8));
  CHECK(code_of([&] { sup_distance(f, zero_profile(Rat(1, 2))); }) == Errc::DomainMismatch);
}

TEST_CASE("sup distance is a metric on random profiles") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 60; ++trial) {
    PLProfile a = random_profile(rng), b = random_profile(rng), c = random_profile(rng);
    Rat ab = sup_distance(a, b), ba = sup_distance(b, a);
    CHECK(ab == ba);
    CHECK(ab >= 0);
    CHECK(sup_distance(a, c) <= ab + sup_distance(b, c));
    CHECK(sup_distance(a, a) == 0);
  }
}

TEST_CASE("oscillation") {
  CHECK(oscillation(zero_profile(1)) == 0);
  CHECK(oscillation(tent()) == Rat(1, 4));
  PLProfile mix = make_profile_unchecked(
      {{0, 0}, {Rat(1, 4), Rat(-1, 8)}, {Rat(1, 2), Rat(1, 4)}, {1, 0}});
  CHECK(oscillation(mix) == Rat(3, 8));

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    PLProfile f = random_profile(rng);
    Rat a = rand_rat(rng, -3, 3, 5);
    CHECK(oscillation(linear_combine({a}, {f})) == rat_abs(a) * oscillation(f));
  }
}

TEST_CASE("kink classification") {
  auto ks = classify_kinks(tent());
  REQUIRE(ks.size() == 1);
  CHECK(ks[0].r == Rat(1, 2));
  CHECK(ks[0].value == Rat(1, 4));
  CHECK(ks[0].leftSlope == Rat(1, 2));
  CHECK(ks[0].rightSlope == Rat(-1, 2));
  CHECK(ks[0].orientation == KinkOrientation::Down);
  CHECK(ks[0].crossedLevels == std::vector<long>{0});

  PLProfile v = make_profile({{0, Rat(1, 4)}, {Rat(1, 2), 0}, {1, Rat(1, 4)}});
  auto kv = classify_kinks(v);
  REQUIRE(kv.size() == 1);
  CHECK(kv[0].orientation == KinkOrientation::Up);
  CHECK(kv[0].crossedLevels == std::vector<long>{0});

  PLProfile steep = make_profile(
      {{0, 0}, {Rat(2, 5), 1}, {Rat(4, 5), 0}, {1, Rat(1, 10)}});
  auto kst = classify_kinks(steep);
  REQUIRE(kst.size() == 2);
  CHECK(kst[0].leftSlope == Rat(5, 2));
  CHECK(kst[0].rightSlope == Rat(-5, 2));
  CHECK(kst[0].orientation == KinkOrientation::Down);
  CHECK(kst[0].crossedLevels == std::vector<long>{-2, -1, 0, 1, 2});

  // A breakpoint with equal slopes on both sides is not a kink.
  PLProfile flat = make_profile_unchecked(
      {{0, 0}, {Rat(1, 2), Rat(1, 4)}, {Rat(3, 4), Rat(3, 8)}, {1, Rat(1, 2)}});
  CHECK(classify_kinks(flat).empty());
  CHECK(flat.simplified().segments() == 1);
}

TEST_CASE("serialization round-trips bit-exactly") {
  PLProfile f = tent();
  PLProfile g = parse_profile(serialize_profile(f));
  CHECK(f == g);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    PLProfile h = random_profile(rng, Rat(rand_in(rng, 1, 5), rand_in(rng, 1, 5)));
    CHECK(parse_profile(serialize_profile(h)) == h);
  }
  CHECK(code_of([] { parse_profile("nonsense"); }) == Errc::ParseError);
  CHECK(code_of([] { parse_profile("R=1\n0 0\n"); }) == Errc::DomainError);
}

TEST_CASE("manifold parameter validation") {
  ManifoldParams p;
  CHECK_NOTHROW(p.validate());

  ManifoldParams bad = p;
  bad.N = 0;
  bad.gammaHat = 2;
  bad.lambdaSign = 1;
  CHECK(code_of([&] { bad.validate(); }) == Errc::ParameterError);

  bad = p;
  bad.N = 2;
  bad.gammaHat = 2;
  bad.lambdaSign = 0;  // sign 0 forces gammaHat = 0
  CHECK(code_of([&] { bad.validate(); }) == Errc::ParameterError);

  bad = p;
  bad.N = 2;
  bad.gammaHat = 2;
  bad.lambdaSign = 1;
  bad.R = Rat(3, 2);  // needs 2R <= gammaHat
  CHECK(code_of([&] { bad.validate(); }) == Errc::ParameterError);
  bad.R = 1;
  CHECK_NOTHROW(bad.validate());

  bad = p;
  bad.exteriorMorseIndices = {1};  // must contain the minimum
  CHECK(code_of([&] { bad.validate(); }) == Errc::ParameterError);
  bad.exteriorMorseIndices = {0, 2};  // out of [0, 2n-1] for n=1
  CHECK(code_of([&] { bad.validate(); }) == Errc::ParameterError);
  bad.exteriorMorseIndices = {};
  CHECK(code_of([&] { bad.validate(); }) == Errc::ParameterError);

  bad = p;
  bad.n = 0;
  CHECK(code_of([&] { bad.validate(); }) == Errc::ParameterError);
  bad = p;
  bad.R = 0;
  CHECK(code_of([&] { bad.validate(); }) == Errc::ParameterError);
}
