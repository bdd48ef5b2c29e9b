#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "lcatsp/verify.hpp"

namespace lcatsp {

struct PipelineOptions {
  bool singletons = false;  // use the all-singleton partition
  bool timings = true;      // wall_ms per stage in the report
  bool parallel = true;
  std::optional<std::uint64_t> seed;  // echoed into the report when known
};

// One full run: solve-lp -> terminal routing (or the 6-light branch) ->
// split -> local-connectivity -> verify. Produces every intermediate file
// plus the JSON report; pass mirrors the certificate. With timings disabled
// the output is byte-identical across runs.
struct PipelineResult {
  bool pass = false;
  std::string report_json;
  std::map<std::string, std::string> files;  // file name -> content
  Certificate certificate;
  double lp_objective = 0;
  double max_ratio = 0;
  bool six_light = false;
};

PipelineResult run_pipeline(const TwoWeightDigraph& g, const Partition* part,
                            const PipelineOptions& opts = {});

std::string certificate_json(const TwoWeightDigraph& g, const Certificate& cert,
                             const std::vector<WalkInfo>& walks);

std::string split_arcs_dump(const SplitGraph& sp);

}  // namespace lcatsp
