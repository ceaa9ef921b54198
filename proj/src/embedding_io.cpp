#include "fti/embedding_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "fti/errors.hpp"

namespace fti {
namespace {

constexpr std::array<char, 4> kMagic = {'F', 'T', 'I', 'E'};

static_assert(std::endian::native == std::endian::little,
              "binary embedding I/O assumes a little-endian host");

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::uint32_t read_u32(std::istream& in, const char* what) {
  std::array<unsigned char, 4> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), 4)) {
    throw ParseError(std::string("truncated header: missing ") + what);
  }
  return std::uint32_t(b[0]) | (std::uint32_t(b[1]) << 8) |
         (std::uint32_t(b[2]) << 16) | (std::uint32_t(b[3]) << 24);
}

void write_u32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> b = {char(v & 0xff), char((v >> 8) & 0xff),
                                 char((v >> 16) & 0xff), char((v >> 24) & 0xff)};
  out.write(b.data(), 4);
}

}  // namespace

FileFormat parse_file_format(std::string_view name) {
  if (name == "csv") return FileFormat::kCsv;
  if (name == "bin") return FileFormat::kBinary;
  throw InputError("unknown format '" + std::string(name) +
                   "' (expected csv or bin)");
}

EmbeddingSet parse_csv(std::istream& in, bool skip_header) {
  std::vector<double> values;
  std::size_t dim = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skip_header && line_no == 1) continue;
    const std::string_view content = trim(line);
    if (content.empty()) continue;

    std::size_t columns = 0;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = content.find(',', pos);
      const std::string_view field = trim(content.substr(
          pos, comma == std::string_view::npos ? std::string_view::npos
                                               : comma - pos));
      double v = 0.0;
      const auto [ptr, ec] =
          std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc() ||
          ptr != field.data() + field.size()) {
        throw ParseError("line " + std::to_string(line_no) + ", column " +
                         std::to_string(columns + 1) + ": cannot parse '" +
                         std::string(field) + "' as a number");
      }
      if (!std::isfinite(v)) {
        throw InputError("line " + std::to_string(line_no) + " (row " +
                         std::to_string(rows) + "): non-finite value '" +
                         std::string(field) + "'");
      }
      values.push_back(v);
      ++columns;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (rows == 0) {
      dim = columns;
    } else if (columns != dim) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(dim) + " columns, found " +
                       std::to_string(columns));
    }
    ++rows;
  }
  if (rows == 0) throw InputError("no rows");
  return EmbeddingSet(std::move(values), dim);
}

EmbeddingSet parse_binary(std::istream& in) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), 4)) throw ParseError("truncated header: missing magic");
  if (magic != kMagic) throw ParseError("offset 0: bad magic, expected FTIE");
  const std::uint32_t n = read_u32(in, "N");
  const std::uint32_t d = read_u32(in, "D");
  const std::uint32_t width = read_u32(in, "element width");
  if (width != 4 && width != 8) {
    throw ParseError("offset 12: element width must be 4 or 8, got " +
                     std::to_string(width));
  }
  if (n == 0) throw InputError("no rows");
  if (d == 0) throw ParseError("offset 8: dimension must be at least 1");

  const std::size_t count = std::size_t(n) * d;
  std::vector<double> values(count);
  std::vector<char> buffer(count * width);
  in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
  if (static_cast<std::size_t>(in.gcount()) != buffer.size()) {
    throw ParseError("offset " + std::to_string(16 + in.gcount()) +
                     ": truncated payload, expected " +
                     std::to_string(buffer.size()) + " bytes");
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ParseError("offset " + std::to_string(16 + buffer.size()) +
                     ": trailing bytes after payload");
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (width == 8) {
      std::memcpy(&values[i], buffer.data() + i * 8, 8);
    } else {
      float f = 0.0f;
      std::memcpy(&f, buffer.data() + i * 4, 4);
      values[i] = static_cast<double>(f);
    }
    if (!std::isfinite(values[i])) {
      throw InputError("row " + std::to_string(i / d) +
                       ": non-finite value at offset " +
                       std::to_string(16 + i * width));
    }
  }
  return EmbeddingSet(std::move(values), d);
}

EmbeddingSet load_embeddings(const std::filesystem::path& path,
                             const LoadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  try {
    return options.format == FileFormat::kCsv
               ? parse_csv(in, options.skip_header)
               : parse_binary(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

void write_binary_matrix(std::ostream& out, std::span<const double> values,
                         std::size_t rows, std::size_t cols) {
  if (values.size() != rows * cols) {
    throw ShapeError("matrix payload does not match rows * cols");
  }
  out.write(kMagic.data(), 4);
  write_u32(out, static_cast<std::uint32_t>(rows));
  write_u32(out, static_cast<std::uint32_t>(cols));
  write_u32(out, 8);
  out.write(reinterpret_cast<const char*>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
}

void write_csv(std::ostream& out, const EmbeddingSet& set) {
  std::array<char, 32> buf{};
  for (std::size_t i = 0; i < set.size(); ++i) {
    const Point p = set.row(i);
    for (std::size_t d = 0; d < p.size(); ++d) {
      if (d > 0) out << ',';
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), p[d]);
      out.write(buf.data(), res.ptr - buf.data());
    }
    out << '\n';
  }
}

}  // namespace fti
