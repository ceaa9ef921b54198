#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string_view>

#include "fti/embedding.hpp"

namespace fti {

enum class FileFormat { kCsv, kBinary };

// "csv" or "bin"; throws InputError otherwise.
FileFormat parse_file_format(std::string_view name);

struct LoadOptions {
  FileFormat format = FileFormat::kCsv;
  bool skip_header = false;  // CSV only
};

// CSV: one point per line, comma separated, no header unless skip_header.
// Binary: "FTIE", u32 N, u32 D, u32 element width (4 or 8), then N*D
// little-endian IEEE-754 values row-major. float32 input is widened.
EmbeddingSet load_embeddings(const std::filesystem::path& path,
                             const LoadOptions& options = {});
EmbeddingSet parse_csv(std::istream& in, bool skip_header = false);
EmbeddingSet parse_binary(std::istream& in);

// Row-major matrix in the binary embedding format with 8-byte elements.
void write_binary_matrix(std::ostream& out, std::span<const double> values,
                         std::size_t rows, std::size_t cols);
void write_csv(std::ostream& out, const EmbeddingSet& set);

}  // namespace fti
