#include "maxwalk/io.hpp"

#include "maxwalk/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace maxwalk::io {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, std::initializer_list<std::string_view> header)
    : os_(os), columns_(header.size()) {
    bool first = true;
    for (auto h : header) {
        if (!first) os_ << ',';
        os_ << h;
        first = false;
    }
    os_ << '\n';
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : os_(os), columns_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) os_ << (i ? "," : "") << header[i];
    os_ << '\n';
}

CsvWriter& CsvWriter::cell(double v) {
    if (in_row_++) os_ << ',';
    os_ << fmt(v);
    return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
    if (in_row_++) os_ << ',';
    os_ << v;
    return *this;
}

void CsvWriter::end_row() {
    if (in_row_ != columns_) throw Error(Errc::io, "CSV row has the wrong number of cells");
    os_ << '\n';
    in_row_ = 0;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(Errc::io, "cannot open " + path.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw Error(Errc::io, "write failed for " + path.string());
}

} // namespace maxwalk::io
