#ifndef PLBARS_TESTS_HELPERS_HPP
#define PLBARS_TESTS_HELPERS_HPP

#include "plbars/barcodes.hpp"
#include "plbars/core.hpp"

#include <algorithm>
#include <random>

namespace plbars::testing {

inline long rand_in(std::mt19937_64& rng, long lo, long hi) {
  return lo + (long)(rng() % (unsigned long)(hi - lo + 1));
}

// Rational in [lo, hi] with denominator q.
inline Rat rand_rat(std::mt19937_64& rng, long lo, long hi, long q) {
  return Rat(rand_in(rng, lo * q, hi * q), q);
}

// Valid profile: random breakpoints, slopes of the form a + 1/q (never an
// integer), final slope of magnitude below 1.
inline PLProfile random_profile(std::mt19937_64& rng, const Rat& R = Rat(1)) {
  size_t segs = (size_t)rand_in(rng, 1, 5);
  std::vector<Rat> rs{0};
  for (size_t i = 1; i < segs; ++i) rs.push_back(Rat(rand_in(rng, 1, 99), 100) * R);
  rs.push_back(R);
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  std::vector<std::pair<Rat, Rat>> pts;
  Rat v = rand_rat(rng, -1, 1, 4);
  pts.emplace_back(rs[0], v);
  for (size_t i = 1; i < rs.size(); ++i) {
    long q = 3 + 2 * rand_in(rng, 0, 4);
    Rat slope = (i + 1 == rs.size()) ? Rat(rng() % 2 ? 2 : -2, 2 * q + 1)
                                     : Rat(rand_in(rng, -2, 2)) + Rat(1, q);
    v += slope * (rs[i] - rs[i - 1]);
    pts.emplace_back(rs[i], v);
  }
  PLProfile f = make_profile_unchecked(pts);
  f.validate();
  return f;
}

inline Bar random_bar(std::mt19937_64& rng) {
  Rat left = rand_rat(rng, -4, 4, 8);
  if (rng() % 4 == 0) return Bar(left, ExtRat::inf());
  return Bar(left, ExtRat(left + rand_rat(rng, 1, 24, 8)));
}

inline Barcode random_barcode(std::mt19937_64& rng, long degree, size_t maxBars) {
  Barcode bc;
  bc.degree = degree;
  size_t count = (size_t)rand_in(rng, 0, (long)maxBars);
  for (size_t i = 0; i < count; ++i) bc.bars.push_back(random_bar(rng));
  return bc;
}

// Interval-module complex (pairs plus free generators) mixed by random
// filtration-preserving changes of basis.  Actions sit on a 1/8 grid so a
// perturbation below 1/16 keeps the filtration strict.
inline FilteredComplex random_complex(std::mt19937_64& rng) {
  FilteredComplex K;
  size_t pairs = (size_t)rand_in(rng, 0, 4);
  size_t frees = (size_t)rand_in(rng, 1, 4);
  for (size_t i = 0; i < pairs; ++i) {
    long d = rand_in(rng, -2, 2);
    Rat ax = Rat(rand_in(rng, -16, 8), 8);
    Rat ay = ax + Rat(rand_in(rng, 1, 16), 8);
    size_t xi = K.generators.size();
    K.generators.push_back({d, ax, "x" + std::to_string(i)});
    K.boundary.push_back({});
    K.generators.push_back({d + 1, ay, "y" + std::to_string(i)});
    K.boundary.push_back({{xi, Rat(1)}});
  }
  for (size_t i = 0; i < frees; ++i) {
    K.generators.push_back({rand_in(rng, -2, 3), Rat(rand_in(rng, -16, 16), 8),
                            "z" + std::to_string(i)});
    K.boundary.push_back({});
  }
  // Random elementary changes of basis e_i <- e_i + c e_j with
  // action(e_j) < action(e_i), same degree.
  size_t n = K.generators.size();
  for (int step = 0; step < 12; ++step) {
    size_t i = (size_t)rand_in(rng, 0, (long)n - 1);
    size_t j = (size_t)rand_in(rng, 0, (long)n - 1);
    if (i == j || K.generators[i].degree != K.generators[j].degree) continue;
    if (!(K.generators[j].action < K.generators[i].action)) continue;
    Rat c = Rat(rand_in(rng, -2, 2));
    if (c == 0) continue;
    for (auto& [gi, coef] : K.boundary[j]) {
      bool found = false;
      for (auto& [gk, ck] : K.boundary[i])
        if (gk == gi) {
          ck += c * coef;
          found = true;
        }
      if (!found) K.boundary[i].push_back({gi, c * coef});
    }
    for (size_t y = 0; y < n; ++y) {
      Rat ci = 0;
      for (auto& [gk, ck] : K.boundary[y])
        if (gk == i) ci = ck;
      if (ci == 0) continue;
      bool found = false;
      for (auto& [gk, ck] : K.boundary[y])
        if (gk == j) {
          ck -= c * ci;
          found = true;
        }
      if (!found) K.boundary[y].push_back({j, -c * ci});
    }
    for (auto& col : K.boundary)
      col.erase(std::remove_if(col.begin(), col.end(),
                               [](const auto& e) { return e.second == 0; }),
                col.end());
  }
  K.validate();
  return K;
}

}  // namespace plbars::testing

#endif
