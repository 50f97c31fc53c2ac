#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "levywalk/limit.hpp"
#include "levywalk/stats.hpp"
#include "levywalk/walk.hpp"

namespace levywalk {

/// Model tag stored in binary frame headers.
enum class FrameKind : std::uint16_t {
  lw = 0,
  olw = 1,
  glw = 2,
  golw = 3,
  limit_stable = 4,
  limit_distributed = 5,
};

FrameKind frame_kind(WalkKind kind);

/// Binary frame: a fixed little-endian header followed by `rows` records of
/// `columns` little-endian IEEE-754 doubles.
///
///   offset  size  field
///   0       4     magic "LWBF"
///   4       2     format version (1)
///   6       2     FrameKind
///   8       4     dim
///   12      4     columns
///   16      8     seed
///   24      8     rows
///
/// Walk paths use columns (trajectory, epoch, x1..xd); jump lists use
/// (trajectory, epoch, x1..xd, magnitude) where x is the jump direction.
struct FrameHeader {
  FrameKind kind = FrameKind::lw;
  std::uint32_t dim = 1;
  std::uint32_t columns = 0;
  std::uint64_t seed = 0;
  std::uint64_t rows = 0;
};

struct Frame {
  FrameHeader header;
  std::vector<double> data;  // rows x columns
};

inline constexpr std::size_t kFrameHeaderBytes = 32;

void write_frame(std::ostream& out, const FrameHeader& header, std::span<const double> data);
Frame read_frame(std::istream& in);

/// Appends the rows of one trajectory to a walk-path table (trajectory, epoch, x...).
void append_path_rows(std::vector<double>& table, std::uint64_t trajectory, const WalkPath& path);
/// Appends the rows of one jump list (trajectory, epoch, u..., magnitude).
void append_jump_rows(std::vector<double>& table, std::uint64_t trajectory,
                      const CoupledJumpList& list);

/// CSV with header "trajectory,epoch,x1..xd" for rows produced by append_path_rows.
void write_path_csv(std::ostream& out, std::size_t dim, std::span<const double> table);

/// CSV "trajectory,time,x1..xd" of positions; ensembles share one row order.
void write_ensemble_csv(std::ostream& out, std::span<const Ensemble> ensembles);
std::vector<Ensemble> read_ensemble_csv(std::istream& in);

/// Hex SHA-256 of a file's bytes. Throws IoError when unreadable.
std::string file_sha256(const std::filesystem::path& path);
std::string sha256_hex(std::string_view bytes);

}  // namespace levywalk
