#include "midsift/error.hpp"
#include "midsift/signal.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace midsift {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view s) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double value = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::string format_double(double v) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), ptr);
}

} // namespace

Signal read_csv(std::istream& in) {
    std::vector<double> times;
    std::vector<double> values;
    std::string line;
    std::size_t line_no = 0;
    bool header_allowed = true;

    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') {
            continue;
        }
        const auto comma = text.find(',');
        if (comma == std::string_view::npos) {
            throw FormatError("line " + std::to_string(line_no) +
                                  ": expected two comma-separated columns",
                              line_no);
        }
        const auto t = parse_number(text.substr(0, comma));
        const auto v = parse_number(text.substr(comma + 1));
        if (!t || !v) {
            if (header_allowed && !t) {
                header_allowed = false;
                continue;
            }
            throw FormatError("line " + std::to_string(line_no) + ": unparsable row '" +
                                  std::string(text) + "'",
                              line_no);
        }
        header_allowed = false;

        const std::size_t row = times.size() + 1;
        if (!times.empty()) {
            const double step = *t - times.back();
            if (!(step > 0.0)) {
                throw FormatError("row " + std::to_string(row) + " (line " +
                                      std::to_string(line_no) +
                                      "): times must be strictly increasing",
                                  line_no);
            }
            if (times.size() >= 2) {
                const double ref = times[1] - times[0];
                if (std::abs(step - ref) > 1e-6 * std::abs(ref)) {
                    throw FormatError("row " + std::to_string(row) + " (line " +
                                          std::to_string(line_no) +
                                          "): non-uniform time grid",
                                      line_no);
                }
            }
        }
        times.push_back(*t);
        values.push_back(*v);
    }

    if (times.empty()) {
        throw FormatError("no samples");
    }
    if (times.size() < 2) {
        throw FormatError("at least 2 samples are required, found 1");
    }
    const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    return Signal(std::move(values), times.front(), dt);
}

Signal load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    try {
        return read_csv(in);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what(), e.line());
    }
}

void write_csv(const Signal& signal, std::ostream& out) {
    out << "time,value\n";
    for (std::size_t k = 0; k < signal.size(); ++k) {
        out << format_double(signal.time(k)) << ',' << format_double(signal[k]) << '\n';
    }
}

void save_csv(const Signal& signal, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_csv(signal, out);
    if (!out) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

} // namespace midsift
