#pragma once

#include <string>

#include "gave/integrators.hpp"
#include "gave/problem.hpp"
#include "gave/reformulations.hpp"

namespace gave {

/// Shortest text form that parses back to the identical double (17
/// significant digits).
std::string format_double(double value);

/// Problem files: {"n": int, "A": [n*n row-major], "B": [n*n], "c": [n]}.
/// Readers throw std::invalid_argument on unreadable or malformed input;
/// writers throw std::runtime_error when the path cannot be written.
GaveProblem read_problem_json(const std::string& path);
void write_problem_json(const std::string& path, const GaveProblem& problem);

/// LCP files: {"l": int, "M": [l*l row-major], "q": [l]}.
LcpProblem read_lcp_json(const std::string& path);
void write_lcp_json(const std::string& path, const LcpProblem& lcp);

/// HLCP files: {"l": int, "C": [l*l row-major], "D": [l*l], "p": [l]}.
HlcpProblem read_hlcp_json(const std::string& path);
void write_hlcp_json(const std::string& path, const HlcpProblem& hlcp);

/// CSV export, header `k_or_t,x_1,...,x_n,residual_norm`, one row per
/// iterate/sample, full double precision.
void write_trace_csv(const std::string& path, const IterateLog& log);
void write_trace_csv(const std::string& path, const GaveProblem& problem,
                     const Trajectory& traj);

}  // namespace gave
