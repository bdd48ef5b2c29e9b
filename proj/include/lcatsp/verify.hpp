#pragma once

#include <vector>

#include "lcatsp/local_connectivity.hpp"

namespace lcatsp {

struct ComponentReport {
  std::vector<int> vertices;
  double weight = 0;
  double lbs_sum = 0;
  double lb_sum = 0;
  double ratio = 0;        // weight / lb_sum
  bool light_ok = true;
  long long debt = 0;      // filled only when provenance is supplied
  long long bad_sum = 0;
  bool debt_ok = true;
};

// Everything here is recomputed from (graph, lbs, partition, F); nothing is
// trusted from the solver. The debt audit additionally needs solver
// provenance (y_sp and the per-class walks) and stays empty without it.
struct Certificate {
  bool eulerian_ok = false;
  std::vector<int> crossing_witness;  // per class: edge id; -1 fail; -2 vacuous
  bool crossings_ok = false;
  std::vector<ComponentReport> components;
  double max_ratio = 0;
  bool lightness_ok = false;
  bool scale_agreement_ok = true;  // factor*lbs and (factor*scale)*lb agree
  bool debt_audit_done = false;
  bool debt_ok = true;
  bool pass = false;
};

struct LightnessSpec {
  std::vector<double> lbs;
  double factor = kLbsScale;    // pass iff w(comp) <= factor * lbs(comp)
  double lb_scale = kLbsScale;  // lb = lbs / lb_scale
};

Certificate verify_solution(const TwoWeightDigraph& g, const LightnessSpec& spec,
                            const Partition& part, const EdgeMultiset& f,
                            const LcSolution* provenance = nullptr);

// Exact ATSP value: all-pairs shortest paths followed by the bitmask dynamic
// program over the metric completion. Equals the minimum weight of a
// connected Eulerian multisubset.
double brute_force_atsp(const TwoWeightDigraph& g, int max_n = 12);

// Repeatedly solves Local-Connectivity ATSP on the weak components of the
// accumulated solution until it is connected. No approximation factor is
// claimed; the empirical ratio against the LP objective is reported.
struct TourResult {
  EdgeMultiset f;
  double weight = 0;
  double ratio_vs_lp = 0;
  int rounds = 0;
};
TourResult assemble_tour(const TwoWeightDigraph& g,
                         const FractionalCirculation& lp);

}  // namespace lcatsp
