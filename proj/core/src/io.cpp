#include "levywalk/io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "levywalk/errors.hpp"

namespace levywalk {

FrameKind frame_kind(WalkKind kind) {
  switch (kind) {
    case WalkKind::lw: return FrameKind::lw;
    case WalkKind::olw: return FrameKind::olw;
    case WalkKind::glw: return FrameKind::glw;
    case WalkKind::golw: return FrameKind::golw;
  }
  return FrameKind::lw;
}

namespace {

constexpr std::array<char, 4> kMagic = {'L', 'W', 'B', 'F'};
constexpr std::uint16_t kFrameVersion = 1;

template <class T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

template <class T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw IoError("truncated binary frame");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

}  // namespace

void write_frame(std::ostream& out, const FrameHeader& header, std::span<const double> data) {
  if (header.columns == 0 || data.size() != header.rows * header.columns) {
    throw InputError("frame data does not match rows x columns");
  }
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint16_t>(out, kFrameVersion);
  put_le<std::uint16_t>(out, static_cast<std::uint16_t>(header.kind));
  put_le<std::uint32_t>(out, header.dim);
  put_le<std::uint32_t>(out, header.columns);
  put_le<std::uint64_t>(out, header.seed);
  put_le<std::uint64_t>(out, header.rows);
  for (double v : data) put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(v));
  if (!out) throw IoError("failed writing binary frame");
}

Frame read_frame(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw IoError("not a levywalk binary frame");
  if (get_le<std::uint16_t>(in) != kFrameVersion) throw IoError("unsupported frame version");
  Frame f;
  f.header.kind = static_cast<FrameKind>(get_le<std::uint16_t>(in));
  f.header.dim = get_le<std::uint32_t>(in);
  f.header.columns = get_le<std::uint32_t>(in);
  f.header.seed = get_le<std::uint64_t>(in);
  f.header.rows = get_le<std::uint64_t>(in);
  f.data.resize(f.header.rows * f.header.columns);
  for (auto& v : f.data) v = std::bit_cast<double>(get_le<std::uint64_t>(in));
  return f;
}

void append_path_rows(std::vector<double>& table, std::uint64_t trajectory, const WalkPath& path) {
  for (std::size_t k = 0; k < path.size(); ++k) {
    table.push_back(static_cast<double>(trajectory));
    table.push_back(path.epochs()[k]);
    const auto p = path.position(k);
    table.insert(table.end(), p.begin(), p.end());
  }
}

void append_jump_rows(std::vector<double>& table, std::uint64_t trajectory,
                      const CoupledJumpList& list) {
  for (std::size_t i = 0; i < list.size(); ++i) {
    table.push_back(static_cast<double>(trajectory));
    table.push_back(list.epochs[i]);
    const auto u = list.direction(i);
    table.insert(table.end(), u.begin(), u.end());
    table.push_back(list.magnitudes[i]);
  }
}

void write_path_csv(std::ostream& out, std::size_t dim, std::span<const double> table) {
  out << "trajectory,epoch";
  for (std::size_t c = 0; c < dim; ++c) out << ",x" << (c + 1);
  out << '\n';
  const std::size_t cols = dim + 2;
  for (std::size_t r = 0; r * cols < table.size(); ++r) {
    out << static_cast<std::uint64_t>(table[r * cols]);
    for (std::size_t c = 1; c < cols; ++c) out << ',' << format_double(table[r * cols + c]);
    out << '\n';
  }
}

void write_ensemble_csv(std::ostream& out, std::span<const Ensemble> ensembles) {
  if (ensembles.empty()) throw InputError("no ensembles to write");
  const std::size_t d = ensembles.front().dim();
  out << "trajectory,time";
  for (std::size_t c = 0; c < d; ++c) out << ",x" << (c + 1);
  out << '\n';
  for (const auto& e : ensembles) {
    const std::string t = format_double(e.time());
    for (std::size_t j = 0; j < e.size(); ++j) {
      out << j << ',' << t;
      for (double v : e.row(j)) out << ',' << format_double(v);
      out << '\n';
    }
  }
}

std::vector<Ensemble> read_ensemble_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty ensemble CSV");
  const auto columns = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',') + 1);
  if (columns < 3 || line.rfind("trajectory,time", 0) != 0) {
    throw InputError("ensemble CSV header must start with trajectory,time");
  }
  const std::size_t d = columns - 2;
  std::vector<double> order;  // times in first-seen order
  std::map<double, std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    std::vector<double> values;
    while (std::getline(ls, field, ',')) values.push_back(std::stod(field));
    if (values.size() != columns) throw InputError("ragged ensemble CSV row");
    auto [it, inserted] = rows.try_emplace(values[1]);
    if (inserted) order.push_back(values[1]);
    it->second.insert(it->second.end(), values.begin() + 2, values.end());
  }
  std::vector<Ensemble> out;
  for (double t : order) out.emplace_back(d, t, std::move(rows[t]));
  return out;
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[md[i] >> 4]);
    hex.push_back(kHex[md[i] & 0xF]);
  }
  return hex;
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return sha256_hex(bytes);
}

}  // namespace levywalk
