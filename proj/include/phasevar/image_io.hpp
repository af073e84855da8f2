#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "phasevar/field.hpp"

namespace phasevar::io {

// PFM ("Pf", one channel): header "Pf\n<w> <h>\n<scale>\n" followed by
// 32-bit floats, rows stored bottom-up. A negative scale means little-endian.
// Row 0 of a ScalarField is the bottom row (y = c), so it is written first.
// Samples are narrowed to float on write.

/// Exact header bytes written for a w x h little-endian map.
std::string pfm_header(std::size_t width, std::size_t height);

std::vector<std::uint8_t> encode_pfm(const ScalarField& field);
/// Decodes onto `grid` when given (sample counts must match), else onto a pixel grid.
ScalarField decode_pfm(std::span<const std::uint8_t> bytes, const std::optional<GridSpec>& grid = {});

void write_pfm(const std::filesystem::path& path, const ScalarField& field);
ScalarField read_pfm(const std::filesystem::path& path, const std::optional<GridSpec>& grid = {});

/// Linear map [lo, hi] -> [0, maxval] used for a PGM preview.
struct GrayMapping {
    double lo = 0.0;
    double hi = 1.0;
    unsigned maxval = 255;
};

/// P5 graymap, top row first (so the image is upright). Values outside
/// [lo, hi] are clamped. maxval <= 255 gives 8-bit samples, else 16-bit big-endian.
std::vector<std::uint8_t> encode_pgm(const ScalarField& field, const GrayMapping& mapping);

/// Reads a P5 file into [0,1] (sample / maxval), bottom row first.
ScalarField decode_pgm(std::span<const std::uint8_t> bytes);

/// Writes the PGM plus "<path>.txt" recording the min/max mapping.
void write_pgm_preview(const std::filesystem::path& path, const ScalarField& field,
                       std::optional<GrayMapping> mapping = {});
ScalarField read_pgm(const std::filesystem::path& path);

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Comma-separated table with a header row.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells);
    std::string render() const;
    const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

}  // namespace phasevar::io
