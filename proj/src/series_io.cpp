#include "ringdelay/series_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <string_view>

#include "ringdelay/errors.hpp"

namespace ringdelay {
namespace {

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InvalidArgument("malformed number in CSV: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

void write_csv(std::ostream& out, const SweepSeries& series, const Metadata& metadata) {
    for (const auto& [key, value] : metadata) out << "# " << key << '=' << value << '\n';
    out << kCsvHeader << '\n';
    for (const SweepRow& r : series.rows) {
        out << format_double(r.parameter) << ',' << format_double(r.tau) << ',' << format_double(r.reflectance)
            << ',' << format_double(r.phase) << '\n';
    }
}

CsvDocument read_csv(std::istream& in) {
    CsvDocument doc;
    bool header_seen = false;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line == kCsvHeader) {
            header_seen = true;
            continue;
        }
        if (line.starts_with("# ")) {
            if (header_seen) throw InvalidArgument("metadata after column header");
            const auto eq = line.find('=');
            if (eq == std::string::npos) throw InvalidArgument("metadata line without '=': " + line);
            doc.metadata.emplace_back(line.substr(2, eq - 2), line.substr(eq + 1));
            continue;
        }
        if (!header_seen) throw InvalidArgument("data row before column header");
        std::array<double, 4> fields{};
        std::string_view rest = line;
        for (std::size_t f = 0; f < fields.size(); ++f) {
            const auto comma = rest.find(',');
            const bool last = f + 1 == fields.size();
            if (last != (comma == std::string_view::npos)) throw InvalidArgument("expected 4 columns: " + line);
            fields[f] = parse_double(rest.substr(0, comma));
            if (!last) rest.remove_prefix(comma + 1);
        }
        doc.rows.push_back({fields[0], fields[1], fields[2], fields[3], 0.0});
    }
    if (!header_seen) throw InvalidArgument("missing column header");
    return doc;
}

}  // namespace ringdelay
