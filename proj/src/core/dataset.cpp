#include "core/dataset.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "core/errors.hpp"

namespace iatpcs {

std::string format_full(double v) {
    // shortest representation that parses back to the same double
    char best[32];
    std::snprintf(best, sizeof(best), "%.17g", v);
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v && std::strlen(buf) < std::strlen(best)) {
            std::memcpy(best, buf, std::strlen(buf) + 1);
        }
    }
    return best;
}

namespace {

struct LineReader {
    std::string_view text;
    std::size_t pos = 0;
    int line_no = 0;

    bool next(std::string_view& out) {
        if (pos >= text.size()) return false;
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        out = text.substr(pos, end - pos);
        if (!out.empty() && out.back() == '\r') out.remove_suffix(1);
        pos = end + 1;
        ++line_no;
        return true;
    }
};

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_double(std::string_view field, int line_no, const char* what) {
    std::string s(field);
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
        throw_parse(std::string("line ") + std::to_string(line_no) + ": cannot parse " + what +
                    " from '" + s + "'");
    }
    return v;
}

int parse_int(std::string_view field, int line_no, const char* what) {
    std::string s(field);
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || errno == ERANGE) {
        throw_parse(std::string("line ") + std::to_string(line_no) + ": cannot parse " + what +
                    " from '" + s + "'");
    }
    return static_cast<int>(v);
}

}  // namespace

std::vector<DatasetRecord> parse_dataset(std::string_view text) {
    std::vector<DatasetRecord> records;
    LineReader reader{text};
    std::string_view line;
    bool header_seen = false;
    while (reader.next(line)) {
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (!line.starts_with("time,cause")) {
                throw_parse("line " + std::to_string(reader.line_no) +
                            ": expected header starting with 'time,cause'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() < 2 || fields.size() > 3) {
            throw_parse("line " + std::to_string(reader.line_no) + ": expected 2 or 3 columns, got " +
                        std::to_string(fields.size()));
        }
        DatasetRecord rec;
        rec.time = parse_double(fields[0], reader.line_no, "time");
        rec.cause = parse_int(fields[1], reader.line_no, "cause");
        if (!(rec.time > 0.0)) {
            throw_parse("line " + std::to_string(reader.line_no) + ": time must be positive");
        }
        if (rec.cause != 1 && rec.cause != 2) {
            throw_parse("line " + std::to_string(reader.line_no) + ": cause must be 1 or 2");
        }
        records.push_back(rec);
    }
    if (!header_seen) throw_parse("empty input: missing 'time,cause' header");
    std::stable_sort(records.begin(), records.end(),
                     [](const DatasetRecord& a, const DatasetRecord& b) { return a.time < b.time; });
    return records;
}

std::string dataset_to_csv(const std::vector<DatasetRecord>& records) {
    std::string out = "time,cause\n";
    for (const auto& rec : records) {
        out += format_full(rec.time);
        out += ',';
        out += std::to_string(rec.cause);
        out += '\n';
    }
    return out;
}

const std::vector<DatasetRecord>& hoel_dataset() {
    static const std::vector<DatasetRecord> data = {
        {40, 2},  {42, 2},  {62, 2},  {163, 2}, {179, 2}, {206, 2}, {222, 2},
        {228, 2}, {252, 2}, {259, 2}, {318, 1}, {385, 2}, {407, 2}, {420, 2},
        {462, 2}, {507, 2}, {517, 2}, {524, 2}, {525, 1}, {528, 1}, {536, 1},
        {605, 1}, {612, 1}, {620, 2}, {621, 1},
    };
    return data;
}

CensoringPlan hoel_plan(double t1, double t2) {
    std::vector<int> removals(25, 2);
    removals[24] = 4;
    return make_plan(77, 25, std::move(removals), t1, t2);
}

namespace {

const char* case_name(CaseTag tag) {
    switch (tag) {
        case CaseTag::I:
            return "I";
        case CaseTag::II:
            return "II";
        case CaseTag::III:
            return "III";
    }
    return "?";
}

CaseTag case_from_name(std::string_view name, int line_no) {
    if (name == "I") return CaseTag::I;
    if (name == "II") return CaseTag::II;
    if (name == "III") return CaseTag::III;
    throw_parse("line " + std::to_string(line_no) + ": unknown case tag '" + std::string(name) + "'");
}

}  // namespace

std::string sample_to_csv(const IatSample& s) {
    std::string out = "# n=" + std::to_string(s.n) + ",m=" + std::to_string(s.m) +
                      ",t1=" + format_full(s.t1) + ",t2=" + format_full(s.t2) +
                      ",case=" + case_name(s.censoring_case.tag) +
                      ",r_star=" + std::to_string(s.r_star) +
                      ",t_star=" + format_full(s.t_star) + "\n";
    out += "time,cause,removed\n";
    for (int i = 0; i < s.d(); ++i) {
        out += format_full(s.times[i]);
        out += ',';
        out += std::to_string(s.causes[i]);
        out += ',';
        out += std::to_string(s.removals[i]);
        out += '\n';
    }
    return out;
}

IatSample sample_from_csv(std::string_view text) {
    LineReader reader{text};
    std::string_view line;

    IatSample s;
    bool meta_seen = false;
    bool header_seen = false;
    CaseTag declared_case = CaseTag::I;
    while (reader.next(line)) {
        if (line.empty()) continue;
        if (line.front() == '#') {
            if (meta_seen || !line.starts_with("# n=")) continue;
            meta_seen = true;
            for (std::string_view item : split_fields(line.substr(2))) {
                const auto eq = item.find('=');
                if (eq == std::string_view::npos) {
                    throw_parse("line " + std::to_string(reader.line_no) + ": malformed metadata '" +
                                std::string(item) + "'");
                }
                const std::string_view key = item.substr(0, eq);
                const std::string_view value = item.substr(eq + 1);
                if (key == "n") s.n = parse_int(value, reader.line_no, "n");
                else if (key == "m") s.m = parse_int(value, reader.line_no, "m");
                else if (key == "t1") s.t1 = parse_double(value, reader.line_no, "t1");
                else if (key == "t2") s.t2 = parse_double(value, reader.line_no, "t2");
                else if (key == "case") declared_case = case_from_name(value, reader.line_no);
                else if (key == "r_star") s.r_star = parse_int(value, reader.line_no, "r_star");
                else if (key == "t_star") s.t_star = parse_double(value, reader.line_no, "t_star");
                else {
                    throw_parse("line " + std::to_string(reader.line_no) + ": unknown metadata key '" +
                                std::string(key) + "'");
                }
            }
            continue;
        }
        if (!header_seen) {
            if (!line.starts_with("time,cause")) {
                throw_parse("line " + std::to_string(reader.line_no) +
                            ": expected header starting with 'time,cause'");
            }
            header_seen = true;
            continue;
        }
        const auto fields = split_fields(line);
        if (fields.size() != 3) {
            throw_parse("line " + std::to_string(reader.line_no) + ": expected 3 columns, got " +
                        std::to_string(fields.size()));
        }
        s.times.push_back(parse_double(fields[0], reader.line_no, "time"));
        s.causes.push_back(parse_int(fields[1], reader.line_no, "cause"));
        s.removals.push_back(parse_int(fields[2], reader.line_no, "removed"));
    }
    if (!meta_seen) throw_parse("missing '# n=..' metadata header");
    if (!header_seen) throw_parse("missing 'time,cause,removed' header");

    s.censoring_case = classify(s.times, s.m, s.t1, s.t2);
    if (s.censoring_case.tag != declared_case) {
        throw_parse("declared case disagrees with the row data");
    }
    int removed_total = 0;
    for (int i = 0; i < s.d(); ++i) {
        if (s.causes[i] == 1) ++s.d1;
        else if (s.causes[i] == 2) ++s.d2;
        else throw_parse("cause must be 1 or 2");
        if (s.removals[i] < 0) throw_parse("removed count must be nonnegative");
        removed_total += s.removals[i];
    }
    if (s.d() + removed_total + s.r_star != s.n) {
        throw_parse("unit accounting failed: D + sum(removed) + r_star != n");
    }
    return s;
}

}  // namespace iatpcs
