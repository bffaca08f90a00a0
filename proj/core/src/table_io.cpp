#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "bergman/errors.hpp"
#include "bergman/moments.hpp"

namespace bergman {

namespace {

constexpr int kFormatVersion = 1;
constexpr const char* kMagic = "bergman-moment-table";

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string hex_double(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%a", v);
    return buf;
}

double parse_double(const std::string& s, const std::string& what) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') throw FormatError("malformed " + what + " '" + s + "'");
    return v;
}

std::string expect_keyword_line(std::istream& in, const std::string& keyword, int& line_no) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("unexpected end of file, expected '" + keyword + "'");
    ++line_no;
    if (line.rfind(keyword + " ", 0) != 0)
        throw FormatError("line " + std::to_string(line_no) + ": expected '" + keyword + " ...'");
    return line.substr(keyword.size() + 1);
}

}  // namespace

void save_table(const MomentTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot open '" + path + "' for writing");
    out << kMagic << " " << kFormatVersion << "\n";
    out << "domain " << table.domain().descriptor() << "\n";
    out << "weight " << table.weight().descriptor() << "\n";
    out << "max_degree " << table.max_degree() << "\n";
    out << "tolerance " << hex_double(table.tolerance()) << "\n";
    out << "provenance " << provenance_name(table.provenance()) << "\n";
    out << "entries " << table.entry_count() << "\n";

    const int n = table.dim();
    const int side = table.max_degree() + 1;
    std::vector<int> gamma(static_cast<size_t>(n));
    const auto entries = table.raw_log_entries();
    for (long flat = 0; flat < table.entry_count(); ++flat) {
        long rem = flat;
        for (int i = n - 1; i >= 0; --i) {
            gamma[static_cast<size_t>(i)] = static_cast<int>(rem % side);
            rem /= side;
        }
        for (int i = 0; i < n; ++i) out << gamma[static_cast<size_t>(i)] << " ";
        out << hex_double(entries[static_cast<size_t>(flat)]) << "\n";
    }
    if (!out) throw FormatError("write to '" + path + "' failed");
}

MomentTable load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path + "' for reading");
    int line_no = 0;

    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty table file '" + path + "'");
    ++line_no;
    auto head = split_ws(line);
    if (head.size() != 2 || head[0] != kMagic)
        throw FormatError("'" + path + "' is not a moment table file");
    const int version = std::stoi(head[1]);
    if (version != kFormatVersion)
        throw FormatError("version mismatch: file has version " + head[1] + ", expected " +
                          std::to_string(kFormatVersion));

    const auto domain_tokens = split_ws(expect_keyword_line(in, "domain", line_no));
    RadialDomain domain = RadialDomain::from_descriptor(domain_tokens);
    const auto weight_tokens = split_ws(expect_keyword_line(in, "weight", line_no));
    WeightSpec weight = WeightSpec::from_descriptor(weight_tokens);
    const int max_degree = std::stoi(expect_keyword_line(in, "max_degree", line_no));
    const double tol = parse_double(expect_keyword_line(in, "tolerance", line_no), "tolerance");
    const std::string prov = expect_keyword_line(in, "provenance", line_no);
    provenance_from_name(prov);  // validated; loaded tables report LoadedFromFile
    const long declared = std::stol(expect_keyword_line(in, "entries", line_no));

    const int n = domain.dim();
    const int side = max_degree + 1;
    long expected = 1;
    for (int i = 0; i < n; ++i) expected *= side;
    if (declared != expected)
        throw FormatError("metadata disagreement: header declares " + std::to_string(declared) +
                          " entries but the degree box holds " + std::to_string(expected));

    std::vector<double> entries(static_cast<size_t>(expected),
                                std::numeric_limits<double>::quiet_NaN());
    std::vector<bool> seen(static_cast<size_t>(expected), false);
    long records = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto tok = split_ws(line);
        if (static_cast<int>(tok.size()) != n + 1)
            throw FormatError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(n) + " exponents and one value");
        size_t flat = 0;
        for (int i = 0; i < n; ++i) {
            int g;
            try {
                g = std::stoi(tok[static_cast<size_t>(i)]);
            } catch (const std::exception&) {
                throw FormatError("line " + std::to_string(line_no) + ": malformed exponent '" +
                                  tok[static_cast<size_t>(i)] + "'");
            }
            if (g < 0 || g > max_degree)
                throw FormatError("line " + std::to_string(line_no) + ": exponent " +
                                  std::to_string(g) + " outside the degree box");
            flat = flat * static_cast<size_t>(side) + static_cast<size_t>(g);
        }
        if (seen[flat])
            throw FormatError("line " + std::to_string(line_no) + ": duplicate record");
        entries[flat] = parse_double(tok[static_cast<size_t>(n)], "log d^2 value");
        seen[flat] = true;
        ++records;
    }
    if (records != declared) {
        // Name the first absent index for the error message.
        for (size_t flat = 0; flat < seen.size(); ++flat) {
            if (!seen[flat]) {
                std::string gamma;
                size_t rem = flat;
                std::vector<int> g(static_cast<size_t>(n));
                for (int i = n - 1; i >= 0; --i) {
                    g[static_cast<size_t>(i)] = static_cast<int>(rem % static_cast<size_t>(side));
                    rem /= static_cast<size_t>(side);
                }
                for (int i = 0; i < n; ++i) gamma += std::to_string(g[static_cast<size_t>(i)]) + " ";
                throw FormatError("missing entry for gamma = " + gamma + "(" +
                                  std::to_string(records) + " of " + std::to_string(declared) +
                                  " records present)");
            }
        }
        throw FormatError("record count disagreement");
    }

    return MomentTable::from_raw(std::move(domain), std::move(weight), max_degree, tol,
                                 Provenance::LoadedFromFile, std::move(entries));
}

}  // namespace bergman
