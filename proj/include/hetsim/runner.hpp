#pragma once

#include <string>

#include "hetsim/config.hpp"

namespace hetsim {

/// Executes the configured experiment over its sweep and renders the CSV
/// document:
///   experiment,mode,sweep_param,sweep_value,estimate,std_error,reps,capped_fraction,seed
/// Floating-point fields use up to 9 significant digits ('.' separator,
/// '\n' newlines). Output is byte-identical for a fixed config and seed,
/// regardless of thread count.
std::string run(const RunConfig& cfg);

/// run() plus atomic file output: the CSV is written to a temporary sibling
/// and renamed into place, so a failed run never leaves partial output.
/// cfg.out empty writes to stdout.
void run_to_output(const RunConfig& cfg);

}  // namespace hetsim
