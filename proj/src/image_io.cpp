#include "phasevar/image_io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "phasevar/errors.hpp"

namespace phasevar::io {

namespace {

using Kind = FormatError::Kind;

// Largest raster we accept; keeps width*height*4 far from size_t overflow.
constexpr std::uint64_t kMaxSamples = std::uint64_t{1} << 31;

bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

class HeaderCursor {
public:
    explicit HeaderCursor(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t offset() const noexcept { return pos_; }

    void expect_magic(std::string_view magic) {
        if (bytes_.size() < magic.size() ||
            std::memcmp(bytes_.data(), magic.data(), magic.size()) != 0) {
            throw FormatError(Kind::MalformedHeader, 0, "expected magic '" + std::string(magic) + "'");
        }
        pos_ = magic.size();
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
            throw FormatError(Kind::MalformedHeader, pos_, "expected whitespace after magic");
        }
    }

    // Skips whitespace (and '#' comments when allowed), returns the next token.
    std::string_view token(bool comments) {
        while (pos_ < bytes_.size()) {
            if (is_space(bytes_[pos_])) {
                ++pos_;
            } else if (comments && bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && !is_space(bytes_[pos_])) ++pos_;
        if (start == pos_) throw FormatError(Kind::MalformedHeader, start, "header ended early");
        return {reinterpret_cast<const char*>(bytes_.data()) + start, pos_ - start};
    }

    std::uint64_t unsigned_token(bool comments, const char* what) {
        const std::size_t at = pos_;
        auto tok = token(comments);
        std::uint64_t value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec == std::errc::result_out_of_range) {
            throw FormatError(Kind::DimensionOverflow, at, std::string(what) + " out of range");
        }
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
            throw FormatError(Kind::MalformedHeader, at, std::string("bad ") + what);
        }
        return value;
    }

    double double_token(const char* what) {
        const std::size_t at = pos_;
        auto tok = token(false);
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(value)) {
            throw FormatError(Kind::MalformedHeader, at, std::string("bad ") + what);
        }
        return value;
    }

    // Exactly one whitespace byte separates the header from the payload.
    std::size_t end_of_header() {
        if (pos_ >= bytes_.size() || !is_space(bytes_[pos_])) {
            throw FormatError(Kind::MalformedHeader, pos_, "expected single whitespace before payload");
        }
        return ++pos_;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void check_dimensions(std::uint64_t w, std::uint64_t h, std::size_t offset) {
    if (w == 0 || h == 0) throw FormatError(Kind::MalformedHeader, offset, "zero image dimension");
    if (w > kMaxSamples || h > kMaxSamples || w * h > kMaxSamples) {
        throw FormatError(Kind::DimensionOverflow, offset,
                          "image " + std::to_string(w) + "x" + std::to_string(h) + " too large");
    }
}

}  // namespace

std::string pfm_header(std::size_t width, std::size_t height) {
    return "Pf\n" + std::to_string(width) + " " + std::to_string(height) + "\n-1.0\n";
}

std::vector<std::uint8_t> encode_pfm(const ScalarField& field) {
    const std::string header = pfm_header(field.cols(), field.rows());
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(header.size() + field.size() * 4);
    for (double v : field.values()) {
        auto bits = std::bit_cast<std::uint32_t>(static_cast<float>(v));
        for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(bits >> (8 * k)));
    }
    return out;
}

ScalarField decode_pfm(std::span<const std::uint8_t> bytes, const std::optional<GridSpec>& grid) {
    HeaderCursor cur(bytes);
    cur.expect_magic("Pf");
    const std::size_t dims_at = cur.offset();
    const auto w = cur.unsigned_token(false, "width");
    const auto h = cur.unsigned_token(false, "height");
    check_dimensions(w, h, dims_at);
    const double scale = cur.double_token("scale");
    if (scale == 0.0) throw FormatError(Kind::MalformedHeader, cur.offset(), "scale must be nonzero");
    const std::size_t payload = cur.end_of_header();
    const bool little = scale < 0.0;

    const std::size_t count = static_cast<std::size_t>(w * h);
    if (bytes.size() - payload < count * 4) {
        throw FormatError(Kind::TruncatedPayload, bytes.size(),
                          "expected " + std::to_string(count * 4) + " payload bytes, found " +
                              std::to_string(bytes.size() - payload));
    }
    GridSpec g = grid ? *grid : GridSpec::pixels(w, h);
    if (g.m != w || g.n != h) {
        throw InvalidInput("PFM is " + std::to_string(w) + "x" + std::to_string(h) +
                           ", expected " + std::to_string(g.m) + "x" + std::to_string(g.n));
    }
    ScalarField out(g);
    auto vals = out.values();
    const std::uint8_t* p = bytes.data() + payload;
    for (std::size_t k = 0; k < count; ++k, p += 4) {
        std::uint32_t bits = little ? (std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 |
                                       std::uint32_t{p[2]} << 16 | std::uint32_t{p[3]} << 24)
                                    : (std::uint32_t{p[3]} | std::uint32_t{p[2]} << 8 |
                                       std::uint32_t{p[1]} << 16 | std::uint32_t{p[0]} << 24);
        const float f = std::bit_cast<float>(bits);
        if (!std::isfinite(f)) {
            throw FormatError(Kind::NonFiniteSample, payload + 4 * k, "non-finite sample in PFM");
        }
        vals[k] = f;
    }
    return out;
}

std::vector<std::uint8_t> encode_pgm(const ScalarField& field, const GrayMapping& mapping) {
    if (mapping.maxval == 0 || mapping.maxval > 65535) throw InvalidInput("PGM maxval must be 1..65535");
    std::ostringstream header;
    header << "P5\n" << field.cols() << ' ' << field.rows() << '\n' << mapping.maxval << '\n';
    const std::string h = header.str();
    std::vector<std::uint8_t> out(h.begin(), h.end());
    const double span = mapping.hi - mapping.lo;
    const bool wide = mapping.maxval > 255;
    for (std::size_t j = field.rows(); j-- > 0;) {
        for (double v : field.row(j)) {
            double t = span > 0.0 ? (v - mapping.lo) / span : 0.0;
            t = std::clamp(t, 0.0, 1.0);
            const auto q = static_cast<unsigned>(std::lround(t * mapping.maxval));
            if (wide) out.push_back(static_cast<std::uint8_t>(q >> 8));
            out.push_back(static_cast<std::uint8_t>(q & 0xff));
        }
    }
    return out;
}

ScalarField decode_pgm(std::span<const std::uint8_t> bytes) {
    HeaderCursor cur(bytes);
    cur.expect_magic("P5");
    const std::size_t dims_at = cur.offset();
    const auto w = cur.unsigned_token(true, "width");
    const auto h = cur.unsigned_token(true, "height");
    check_dimensions(w, h, dims_at);
    const std::size_t maxval_at = cur.offset();
    const auto maxval = cur.unsigned_token(true, "maxval");
    if (maxval == 0 || maxval > 65535) throw FormatError(Kind::MalformedHeader, maxval_at, "bad maxval");
    const std::size_t payload = cur.end_of_header();
    const std::size_t bytes_per = maxval > 255 ? 2 : 1;
    const std::size_t count = static_cast<std::size_t>(w * h);
    if (bytes.size() - payload < count * bytes_per) {
        throw FormatError(Kind::TruncatedPayload, bytes.size(), "PGM payload truncated");
    }
    ScalarField out(GridSpec::pixels(w, h));
    const std::uint8_t* p = bytes.data() + payload;
    for (std::size_t r = 0; r < h; ++r) {
        auto row = out.row(h - 1 - r);
        for (std::size_t i = 0; i < w; ++i) {
            unsigned q = bytes_per == 2 ? (unsigned{p[0]} << 8 | p[1]) : p[0];
            p += bytes_per;
            row[i] = static_cast<double>(q) / static_cast<double>(maxval);
        }
    }
    return out;
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError(Kind::Io, 0, "cannot open " + path.string());
    std::vector<std::uint8_t> out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return out;
}

void write_bytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw FormatError(Kind::Io, 0, "cannot write " + path.string());
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    write_bytes(path, {reinterpret_cast<const std::uint8_t*>(text.data()), text.size()});
}

void write_pfm(const std::filesystem::path& path, const ScalarField& field) {
    write_bytes(path, encode_pfm(field));
}

ScalarField read_pfm(const std::filesystem::path& path, const std::optional<GridSpec>& grid) {
    return decode_pfm(read_bytes(path), grid);
}

void write_pgm_preview(const std::filesystem::path& path, const ScalarField& field,
                       std::optional<GrayMapping> mapping) {
    if (!mapping) {
        auto [lo, hi] = std::minmax_element(field.values().begin(), field.values().end());
        mapping = GrayMapping{*lo, *hi, 255};
    }
    write_bytes(path, encode_pgm(field, *mapping));
    std::ostringstream side;
    side << "min = " << format_double(mapping->lo) << "\nmax = " << format_double(mapping->hi)
         << "\nmaxval = " << mapping->maxval << "\n";
    write_text(path.string() + ".txt", side.str());
}

ScalarField read_pgm(const std::filesystem::path& path) { return decode_pgm(read_bytes(path)); }

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw InvalidInput("CSV row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::render() const {
    std::string out;
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t k = 0; k < cells.size(); ++k) {
            if (k) out += ',';
            out += cells[k];
        }
        out += '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return out;
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

}  // namespace phasevar::io
