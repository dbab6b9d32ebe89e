#pragma once

#include <filesystem>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace maxwalk::io {

/// Shortest form is not wanted here: always 17 significant digits.
std::string fmt(double v);

/// Comma-separated row writer with fixed 17-digit doubles.
class CsvWriter {
public:
    CsvWriter(std::ostream& os, std::initializer_list<std::string_view> header);
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);

    CsvWriter& cell(double v);
    CsvWriter& cell(long long v);
    CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
    CsvWriter& cell(std::size_t v) { return cell(static_cast<long long>(v)); }
    void end_row();

private:
    std::ostream& os_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
};

void write_text_file(const std::filesystem::path& path, std::string_view content);

} // namespace maxwalk::io
