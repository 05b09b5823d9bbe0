#ifndef PLBARS_BARCODES_HPP
#define PLBARS_BARCODES_HPP

#include "plbars/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace plbars {

// Half-open interval [left, right), right possibly +inf.  Zero-length bars
// are disallowed.
struct Bar {
  Rat left;
  ExtRat right;

  Bar() = default;
  Bar(Rat l, ExtRat r) : left(std::move(l)), right(std::move(r)) {}

  bool finite() const { return !right.infinite; }
  Rat length() const {  // finite bars only
    if (!finite()) throw Error(Errc::DomainError, "length of infinite bar");
    return right.value - left;
  }
  void validate() const {
    if (!(ExtRat(left) < right)) throw Error(Errc::DomainError, "bar must have left < right");
  }
  bool operator==(const Bar& o) const { return left == o.left && right == o.right; }
  bool operator<(const Bar& o) const {
    if (left != o.left) return left < o.left;
    return right < o.right;
  }
};

struct Barcode {
  long degree = 0;
  std::vector<Bar> bars;  // multiset

  void validate() const {
    for (const Bar& b : bars) b.validate();
  }
};

// Partial injection between indexed bars of two barcodes.
struct Matching {
  std::vector<std::pair<size_t, size_t>> pairs;  // (index in B, index in C)
  Rat epsilon;
};

struct MatchingReport {
  bool ok = true;
  std::vector<std::string> violations;
};

MatchingReport verify_matching(const Matching& m, const Barcode& B, const Barcode& C);

// Exact bottleneck distance.  Finite candidate set (endpoint differences and
// half-lengths) with feasibility by maximum bipartite matching; the returned
// minimum feasible candidate equals the infimum of the strict definition.
// +inf iff the infinite-bar counts differ.
ExtRat bottleneck_distance(const Barcode& B, const Barcode& C);

struct BoundaryDepth {
  Rat beta;
  std::map<long, Rat> perDegree;
};

BoundaryDepth boundary_depth(const std::map<long, Barcode>& barcodes);

enum class Field { Q, Z2 };

struct ComplexGenerator {
  long degree;
  Rat action;
  std::string label;
};

// Filtered chain complex over Q (or Z/2) with strictly action-decreasing
// boundary.
struct FilteredComplex {
  std::vector<ComplexGenerator> generators;
  // boundary[i] = list of (generator index, coefficient) making up d(gen i);
  // every listed index must have degree one less than generator i.
  std::vector<std::vector<std::pair<size_t, Rat>>> boundary;

  void validate(Field field = Field::Q) const;  // NotAComplex / FiltrationViolation
};

std::map<long, Barcode> reduce_filtered_complex(const FilteredComplex& K,
                                                Field field = Field::Q);

}  // namespace plbars

#endif
