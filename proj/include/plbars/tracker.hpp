#ifndef PLBARS_TRACKER_HPP
#define PLBARS_TRACKER_HPP

#include "plbars/barcodes.hpp"
#include "plbars/embedding.hpp"
#include "plbars/homotopy.hpp"

namespace plbars {

// The five monotonicity regimes.  Exactly one matches any valid parameter
// set: Case1 N != 0, sigma = +1, n*gammaHat >= N*R; Case2 N = 0; Case3
// N != 0, sigma = +1, n*gammaHat < N*R; Case4 sigma = -1; Case5 sigma = 0
// with N != 0.
enum class CaseTag { Case1 = 1, Case2 = 2, Case3 = 3, Case4 = 4, Case5 = 5 };

CaseTag dispatch_case(const ManifoldParams& p);

// n for cases 1, 2, 4; -3n for cases 3, 5.
long tracked_degree(CaseTag tag, const ManifoldParams& p);

struct LoggedEvent {
  int leg = 1;  // 1 or 2
  Event event;
  std::string rule;
  Rat barLeft, barRight;  // snapshot of the tracked bar at the event time
};

// Record of one bar tracked through both homotopy legs.  finalBar is the
// bar at the end of the first leg; lowerBound is the certified boundary
// depth for the generating family member (real units: 2pi*two_pi + raw).
struct BarCertificate {
  CaseTag caseTag = CaseTag::Case2;
  long trackedDegree = 0;
  Bar finalBar;
  bool exchanged = false;  // left endpoint switched to the y-intercept track
  std::vector<LoggedEvent> eventLog;
  RealVal lowerBound;
  std::vector<std::string> appliedTheorems;
};

// Rule used when a track collides with the current right endpoint; empty
// string means no rule applies (a RuleConflict).
std::string right_endpoint_rule(const ActionTrack& incumbent, const ActionTrack& other,
                                int caseNumber, int leg);

BarCertificate run_certificate(const ManifoldParams& p, const CaseData& data);

struct BoundCheck {
  std::string label;
  bool holds = true;
  std::string description;
};

// Evaluates every labeled action-family bound of the dispatched case at
// time t, including the recapping-index admissibility constraints.
std::vector<BoundCheck> verify_case_bounds(CaseTag tag, const CaseData& data, const Rat& t);

bool all_bounds_hold(const std::vector<BoundCheck>& checks);

// Case data for tracking generator k of the family under coefficients b
// (b[k-1] must be 1): the combined profile is tilted by the default end
// slopes m0 = -eps/(8 r1) and m1 = eps/(8 (R - r3)), nudged
// deterministically if a slope would land on an integer.
CaseData make_case_data(const GeneratorFamily& fam, const std::vector<Rat>& b, size_t k);

struct DepthBound {
  RealVal bound;
  std::optional<BarCertificate> certificate;
};

// Certified lower bound 2piR*max|a_i| - (4pi+7)*eps for the boundary depth
// of the diffeomorphism generated by sum a_i f_i.  Coefficients must lie in
// [-1, 1]; throws AllZero when every coefficient vanishes.
DepthBound boundary_depth_lower_bound(const std::vector<Rat>& a, const GeneratorFamily& family,
                                      const ManifoldParams& p, const Rat& eps);

}  // namespace plbars

#endif
