#pragma once

#include <iosfwd>
#include <string>

#include "ecfjump/experiments.hpp"

namespace ecf {

// Parses an experiment plan from flat key-value text with [section] headers.
// '#' starts a comment; lists are space separated. Unknown sections or keys
// are rejected.
//
//   [plan]                 name, kind (level|power|power-curve),
//                          replications, alpha, seed, tests (cluster st),
//                          keep-raw, slope (local-average|single-spacing)
//   [grid]                 n = <list>; for power curves exactly one of
//                          tau = <list> or eta = <list>
//   [model]                mu, sigma
//   [jumps] / [jumps.X]    kind (none|constant|compound-poisson|bernoulli)
//                          plus the kind's parameters: lambda, height, prob,
//                          size (normal|double-exponential|constant),
//                          mean, var, location, scale
//
// Cells are the cross product of the n grid with the jump sections (file
// order), and with the swept parameter for power curves.
ExperimentPlan parse_plan(std::istream& in);
ExperimentPlan parse_plan_file(const std::string& path);

}  // namespace ecf
