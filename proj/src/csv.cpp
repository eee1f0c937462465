#include "gigagap/csv.hpp"

#include "gigagap/types.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace gigagap::csv {

std::optional<std::size_t> Table::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

Table parse(std::string_view text)
{
    if (text.starts_with("\xEF\xBB\xBF")) {
        text.remove_prefix(3);
    }
    Table table;
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    bool any = false; // the current record has content
    int line = 1;
    int record_line = 1;
    bool have_header = false;

    auto end_record = [&] {
        if (any || !fields.empty()) {
            fields.push_back(std::move(field));
            if (!have_header) {
                table.header = std::move(fields);
                have_header = true;
            } else {
                table.rows.push_back({record_line, std::move(fields)});
            }
        }
        fields.clear();
        field.clear();
        any = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                if (c == '\n') {
                    ++line;
                }
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            quoted = true;
            any = true;
            break;
        case ',':
            fields.push_back(std::move(field));
            field.clear();
            any = true;
            break;
        case '\r':
            break;
        case '\n':
            end_record();
            ++line;
            record_line = line;
            break;
        default:
            field.push_back(c);
            any = true;
            break;
        }
    }
    if (quoted) {
        table.malformed.push_back(record_line);
        fields.clear();
        field.clear();
        any = false;
    }
    end_record();
    return table;
}

Table read(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::optional<double> to_double(std::string_view field)
{
    if (field.empty()) {
        return std::nullopt;
    }
    if (field.front() == '+') {
        field.remove_prefix(1);
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

std::optional<int> to_int(std::string_view field)
{
    int value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size()) {
        return std::nullopt;
    }
    return value;
}

std::string escape(std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') {
            out.push_back('"');
        }
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

void write_row(std::ostream& out, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i != 0) {
            out << ',';
        }
        out << escape(fields[i]);
    }
    out << '\n';
}

} // namespace gigagap::csv
