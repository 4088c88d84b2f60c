#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace vbroadcast {

/// A fully parsed command invocation. `parameters` holds the command-specific
/// flags as raw strings; each command handler converts and validates them and
/// rejects keys it does not recognise.
struct RunConfig {
  std::string command;
  std::map<std::string, std::string> parameters;
  std::uint64_t seed = 0;
  std::string output_path;
};

/// One panel of the overhead figure: x locations with the virtual-protocol
/// cost curve (`blue`, squared overheads) and the naive baseline (`red`).
struct FigureData {
  std::string panel;
  std::vector<double> x;
  std::vector<double> blue;
  std::vector<double> red;
};

/// Exit statuses shared by `run` and the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapability = 3;
inline constexpr int kExitNoConvergence = 4;

/// Executes one command, writing any artifacts atomically. Prints a one-line
/// summary to stdout on success. Throws argument_error for bad parameters,
/// capability_error for unsupported sizes, convergence_error when a solve or
/// certificate fails; the front end maps these to exit statuses 2/3/4.
void run(const RunConfig& config);

/// Like `run` but with exceptions folded into the documented exit statuses.
/// On failure prints one line of machine-readable error JSON to stderr.
int run_with_status(const RunConfig& config);

/// Computes both overhead panels: panel "a" sweeps dimensions at N = 2
/// (cost d^2 versus naive cost 2), panel "b" sweeps receiver counts at d = 2
/// (cost u_N^2 versus naive cost N). Every solve must produce a certified
/// optimum; a failed certificate raises convergence_error.
std::pair<FigureData, FigureData> emit_figure2(const std::vector<int>& d_range,
                                               const std::vector<int>& n_range,
                                               double tol);

}  // namespace vbroadcast
