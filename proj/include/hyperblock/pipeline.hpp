#pragma once

#include "hyperblock/scheme.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace hyperblock {

enum class Depth { Counts, Lemmas, Full };
enum class Format { Json, Csv, Off };

struct RunConfig {
  std::string command;
  int q = 0;
  std::optional<std::array<int, 3>> bands;
  Depth depth = Depth::Full;
  std::string out; ///< artifact path; empty means report only
  Format format = Format::Json;
  std::uint64_t seed = kDefaultSeed;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerification = 2;

struct RunResult {
  int exit_code = kExitPass;
  /// Always carries "command", "q" and "pass"; claims live under "claims",
  /// each with its own "pass". Failures add an "error" object.
  nlohmann::json report;
};

/// Spectral analysis is skipped above this many cusps.
inline constexpr std::size_t kSpectralMaxV = 700;

/// Runs one command end to end. Never throws.
RunResult run(const RunConfig &config);

/// The claim-level report for one command; throws hyperblock::Error.
/// `report` is filled incrementally so a failure keeps earlier claims.
void run_command(const RunConfig &config, nlohmann::json &report);

Depth parse_depth(const std::string &s);
Format parse_format(const std::string &s);
std::string to_string(Depth d);

} // namespace hyperblock
