#include "plbars/barcodes.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace plbars {

namespace {

std::string bar_str(const Bar& b) {
  return "[" + rat_str(b.left) + ", " + b.right.str() + ")";
}

}  // namespace

MatchingReport verify_matching(const Matching& m, const Barcode& B, const Barcode& C) {
  if (B.degree != C.degree) throw Error(Errc::DegreeMismatch, "barcode degrees differ");
  MatchingReport rep;
  std::vector<bool> usedB(B.bars.size(), false), usedC(C.bars.size(), false);
  const Rat& eps = m.epsilon;
  for (const auto& [i, j] : m.pairs) {
    if (i >= B.bars.size() || j >= C.bars.size()) {
      rep.ok = false;
      rep.violations.push_back("pair index out of range");
      continue;
    }
    if (usedB[i] || usedC[j]) {
      rep.ok = false;
      rep.violations.push_back("matching is not a partial injection");
      continue;
    }
    usedB[i] = usedC[j] = true;
    const Bar& b = B.bars[i];
    const Bar& c = C.bars[j];
    if (!(rat_abs(b.left - c.left) < eps)) {
      rep.ok = false;
      rep.violations.push_back("left endpoints " + bar_str(b) + " / " + bar_str(c) +
                               " differ by >= epsilon");
    }
    if (b.finite() != c.finite()) {
      rep.ok = false;
      rep.violations.push_back("matched " + bar_str(b) + " with " + bar_str(c) +
                               ": one endpoint infinite");
    } else if (b.finite() && !(rat_abs(b.right.value - c.right.value) < eps)) {
      rep.ok = false;
      rep.violations.push_back("right endpoints " + bar_str(b) + " / " + bar_str(c) +
                               " differ by >= epsilon");
    }
  }
  // Unmatched bars must be short (length <= 2*epsilon).
  auto check_unmatched = [&](const Barcode& X, const std::vector<bool>& used,
                             const char* name) {
    for (size_t i = 0; i < X.bars.size(); ++i) {
      if (used[i]) continue;
      const Bar& b = X.bars[i];
      if (!b.finite() || b.length() > 2 * eps) {
        rep.ok = false;
        rep.violations.push_back(std::string("unmatched long bar ") + bar_str(b) + " in " +
                                 name);
      }
    }
  };
  check_unmatched(B, usedB, "B");
  check_unmatched(C, usedC, "C");
  return rep;
}

namespace {

// Pairing cost, infinity when the finiteness types differ.
std::optional<Rat> pair_cost(const Bar& b, const Bar& c) {
  if (b.finite() != c.finite()) return std::nullopt;
  Rat d = rat_abs(b.left - c.left);
  if (b.finite()) d = std::max(d, rat_abs(b.right.value - c.right.value));
  return d;
}

// Deletion cost: half the length; infinite bars cannot be deleted.
std::optional<Rat> delete_cost(const Bar& b) {
  if (!b.finite()) return std::nullopt;
  return b.length() / 2;
}

// Kuhn's augmenting-path maximum matching on an adjacency list.
struct Kuhn {
  std::vector<std::vector<size_t>> adj;  // left -> rights
  std::vector<long> matchR;
  std::vector<bool> seen;

  bool try_augment(size_t u) {
    for (size_t v : adj[u]) {
      if (seen[v]) continue;
      seen[v] = true;
      if (matchR[v] < 0 || try_augment((size_t)matchR[v])) {
        matchR[v] = (long)u;
        return true;
      }
    }
    return false;
  }

  size_t run(size_t nLeft, size_t nRight) {
    matchR.assign(nRight, -1);
    size_t total = 0;
    for (size_t u = 0; u < nLeft; ++u) {
      seen.assign(nRight, false);
      if (try_augment(u)) ++total;
    }
    return total;
  }
};

// Feasibility of a (non-strict) eps-matching via the doubled bipartite graph:
// left = bars of B plus one deletion slot per bar of C, right = bars of C plus
// one deletion slot per bar of B.  Slot-slot edges are always present.
bool feasible(const Barcode& B, const Barcode& C, const Rat& eps) {
  const size_t nb = B.bars.size(), nc = C.bars.size();
  Kuhn k;
  k.adj.assign(nb + nc, {});
  for (size_t i = 0; i < nb; ++i) {
    for (size_t j = 0; j < nc; ++j) {
      auto c = pair_cost(B.bars[i], C.bars[j]);
      if (c && *c <= eps) k.adj[i].push_back(j);
    }
    auto d = delete_cost(B.bars[i]);
    if (d && *d <= eps) k.adj[i].push_back(nc + i);  // b deleted
  }
  for (size_t j = 0; j < nc; ++j) {
    auto d = delete_cost(C.bars[j]);
    k.adj[nb + j].reserve(nb + 1);
    if (d && *d <= eps) k.adj[nb + j].push_back(j);  // c deleted
    for (size_t i = 0; i < nb; ++i) k.adj[nb + j].push_back(nc + i);  // slot-slot
  }
  return k.run(nb + nc, nb + nc) == nb + nc;
}

}  // namespace

ExtRat bottleneck_distance(const Barcode& B, const Barcode& C) {
  if (B.degree != C.degree) throw Error(Errc::DegreeMismatch, "barcode degrees differ");
  B.validate();
  C.validate();
  size_t infB = 0, infC = 0;
  for (const Bar& b : B.bars) infB += !b.finite();
  for (const Bar& c : C.bars) infC += !c.finite();
  if (infB != infC) return ExtRat::inf();
  std::vector<Rat> cand{0};
  for (const Bar& b : B.bars) {
    for (const Bar& c : C.bars)
      if (auto v = pair_cost(b, c)) cand.push_back(*v);
    if (auto v = delete_cost(b)) cand.push_back(*v);
  }
  for (const Bar& c : C.bars)
    if (auto v = delete_cost(c)) cand.push_back(*v);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  // Feasibility is monotone in eps; binary search the least feasible value.
  size_t lo = 0, hi = cand.size() - 1;
  if (!feasible(B, C, cand[hi]))
    throw Error(Errc::Internal, "bottleneck: largest candidate infeasible");
  while (lo < hi) {
    size_t mid = (lo + hi) / 2;
    if (feasible(B, C, cand[mid]))
      hi = mid;
    else
      lo = mid + 1;
  }
  return ExtRat(cand[lo]);
}

BoundaryDepth boundary_depth(const std::map<long, Barcode>& barcodes) {
  BoundaryDepth out;
  out.beta = 0;
  for (const auto& [d, bc] : barcodes) {
    Rat best = 0;
    for (const Bar& b : bc.bars)
      if (b.finite()) best = std::max(best, b.length());
    out.perDegree[d] = best;
    out.beta = std::max(out.beta, best);
  }
  return out;
}

namespace {

// Coefficient handling for the two supported fields.
Rat normalize_coeff(const Rat& c, Field field) {
  if (field == Field::Q) return c;
  if (rat_den(c) % 2 == 0)
    throw Error(Errc::DomainError, "Z/2 reduction needs odd denominators");
  return Rat(rat_num(c) % 2 == 0 ? 0 : 1);
}

using Column = std::map<size_t, Rat>;  // row (sorted position) -> coefficient

void axpy(Column& dst, const Rat& c, const Column& src, Field field) {
  for (const auto& [row, v] : src) {
    Rat nv = normalize_coeff(dst[row] + c * v, field);
    if (nv == 0)
      dst.erase(row);
    else
      dst[row] = nv;
  }
}

}  // namespace

void FilteredComplex::validate(Field field) const {
  if (boundary.size() != generators.size())
    throw Error(Errc::NotAComplex, "boundary column count mismatch");
  // Degree and strict filtration checks.
  for (size_t i = 0; i < generators.size(); ++i) {
    for (const auto& [j, c] : boundary[i]) {
      if (j >= generators.size() || generators[j].degree != generators[i].degree - 1)
        throw Error(Errc::NotAComplex, "boundary entry with wrong degree");
      if (normalize_coeff(c, field) != 0 && !(generators[j].action < generators[i].action))
        throw Error(Errc::FiltrationViolation,
                    "boundary must strictly decrease the action");
    }
  }
  // d(d(x)) = 0 for every generator.
  for (size_t i = 0; i < generators.size(); ++i) {
    std::map<size_t, Rat> acc;
    for (const auto& [j, c] : boundary[i])
      for (const auto& [k, c2] : boundary[j]) acc[k] += c * c2;
    for (const auto& [k, c] : acc)
      if (normalize_coeff(c, field) != 0)
        throw Error(Errc::NotAComplex, "d(d(x)) != 0");
  }
}

std::map<long, Barcode> reduce_filtered_complex(const FilteredComplex& K, Field field) {
  K.validate(field);
  const size_t m = K.generators.size();
  // Sort generators by action; ties broken by (degree, index) for determinism.
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (K.generators[a].action != K.generators[b].action)
      return K.generators[a].action < K.generators[b].action;
    return K.generators[a].degree < K.generators[b].degree;
  });
  std::vector<size_t> pos(m);
  for (size_t p = 0; p < m; ++p) pos[order[p]] = p;

  std::vector<Column> cols(m);
  for (size_t i = 0; i < m; ++i)
    for (const auto& [j, c] : K.boundary[i]) {
      Rat nc = normalize_coeff(c, field);
      if (nc != 0) cols[pos[i]][pos[j]] = nc;
    }

  std::vector<long> lowOwner(m, -1);  // row -> column with that low
  for (size_t j = 0; j < m; ++j) {
    while (!cols[j].empty()) {
      size_t low = cols[j].rbegin()->first;
      long other = lowOwner[low];
      if (other < 0) break;
      Rat factor = -cols[j].rbegin()->second / cols[(size_t)other].rbegin()->second;
      axpy(cols[j], factor, cols[(size_t)other], field);
    }
    if (!cols[j].empty()) lowOwner[cols[j].rbegin()->first] = (long)j;
  }

  std::map<long, Barcode> out;
  auto barcode_for = [&](long d) -> Barcode& {
    auto it = out.find(d);
    if (it == out.end()) {
      Barcode bc;
      bc.degree = d;
      it = out.emplace(d, std::move(bc)).first;
    }
    return it->second;
  };
  for (size_t j = 0; j < m; ++j) {
    if (!cols[j].empty()) continue;  // cycle: a birth
    const ComplexGenerator& g = K.generators[order[j]];
    if (lowOwner[j] >= 0) {
      const ComplexGenerator& death = K.generators[order[(size_t)lowOwner[j]]];
      barcode_for(g.degree).bars.push_back(Bar(g.action, ExtRat(death.action)));
    } else {
      barcode_for(g.degree).bars.push_back(Bar(g.action, ExtRat::inf()));
    }
  }
  for (auto& [d, bc] : out) std::sort(bc.bars.begin(), bc.bars.end());
  return out;
}

}  // namespace plbars
