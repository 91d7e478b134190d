#pragma once

#include "hyperblock/scheme.hpp"
#include "hyperblock/surface.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace hyperblock {

/// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Writes through a temporary sibling and renames it into place. Throws IOError.
void write_atomic(const std::filesystem::path &path, std::string_view content);

/// Parsed form of a design export.
struct DesignData {
  int q = 0;
  std::array<std::int64_t, 2> pi{};
  std::size_t v = 0, b = 0, r = 0, k = 0, m = 0;
  std::vector<int> lambda;
  std::vector<std::array<int, 2>> vertices; ///< encoded (u, w) per cusp
  std::vector<std::array<std::uint32_t, 6>> blocks;
  std::vector<std::array<std::array<std::uint32_t, 2>, 3>> diagonals;
  std::string digest;
};

/// Blocks as sorted 6-tuples in lexicographic order, each with its
/// three diagonals as sorted index pairs.
std::vector<std::pair<std::array<std::uint32_t, 6>, std::array<std::array<std::uint32_t, 2>, 3>>>
canonical_blocks(const Cellulation &cell);

/// lambda per scheme class, read off the base row of the membership table.
std::vector<int> lambda_by_class(const Cellulation &cell, const AssociationScheme &scheme);

/// Design export with a content digest over everything except the digest itself.
nlohmann::json design_json(const Cellulation &cell, const AssociationScheme &scheme,
                           const nlohmann::json &verification);

/// Inverse of design_json. Throws IOError on malformed input or a digest mismatch.
DesignData parse_design_json(const std::string &text);

/// v rows by b columns of 0/1, comma separated, no header.
std::string incidence_csv(const Cellulation &cell);

/// OFF text with spectral coordinates; faces follow the coherent orientation.
/// Throws NotClosedSurface if the surface is not orientable.
std::string surface_off(const SurfaceComplex &s);

/// Pretty-printed JSON followed by a newline.
std::string dump(const nlohmann::json &j);

} // namespace hyperblock
