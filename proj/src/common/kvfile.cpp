#include "common/kvfile.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace smarttrap {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (tok[0] == '#') break;  // trailing comment
        out.push_back(tok);
    }
    return out;
}

}  // namespace

const KvRecord* KvFile::find(const std::string& key) const {
    const KvRecord* hit = nullptr;
    for (const auto& rec : records) {
        if (rec.key == key) hit = &rec;
    }
    return hit;
}

std::string KvFile::get_string(const std::string& key, const std::string& fallback) const {
    const KvRecord* rec = find(key);
    if (!rec) return fallback;
    if (rec->values.size() != 1) {
        throw ParseError("key '" + key + "' expects a single value (line " +
                         std::to_string(rec->line) + ")");
    }
    return rec->values[0];
}

double KvFile::get_double(const std::string& key, double fallback) const {
    const KvRecord* rec = find(key);
    if (!rec) return fallback;
    if (rec->values.size() != 1) {
        throw ParseError("key '" + key + "' expects a single value (line " +
                         std::to_string(rec->line) + ")");
    }
    return kv_to_double(*rec, 0);
}

long KvFile::get_long(const std::string& key, long fallback) const {
    const KvRecord* rec = find(key);
    if (!rec) return fallback;
    if (rec->values.size() != 1) {
        throw ParseError("key '" + key + "' expects a single value (line " +
                         std::to_string(rec->line) + ")");
    }
    return kv_to_long(*rec, 0);
}

double kv_to_double(const KvRecord& rec, size_t index) {
    if (index >= rec.values.size()) {
        throw ParseError("key '" + rec.key + "' missing value " + std::to_string(index + 1) +
                         " (line " + std::to_string(rec.line) + ")");
    }
    const std::string& s = rec.values[index];
    char* end = nullptr;
    errno = 0;
    double v = std::strtod(s.c_str(), &end);
    if (errno != 0 || end == s.c_str() || *end != '\0') {
        throw ParseError("key '" + rec.key + "': '" + s + "' is not a number (line " +
                         std::to_string(rec.line) + ")");
    }
    return v;
}

long kv_to_long(const KvRecord& rec, size_t index) {
    if (index >= rec.values.size()) {
        throw ParseError("key '" + rec.key + "' missing value " + std::to_string(index + 1) +
                         " (line " + std::to_string(rec.line) + ")");
    }
    const std::string& s = rec.values[index];
    char* end = nullptr;
    errno = 0;
    long v = std::strtol(s.c_str(), &end, 10);
    if (errno != 0 || end == s.c_str() || *end != '\0') {
        throw ParseError("key '" + rec.key + "': '" + s + "' is not an integer (line " +
                         std::to_string(rec.line) + ")");
    }
    return v;
}

KvFile parse_kv_text(const std::string& text, const std::string& expected_kind) {
    KvFile out;
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    bool header_seen = false;
    while (std::getline(is, line)) {
        ++line_no;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        if (!header_seen) {
            if (toks.size() != 2 || toks[0] != "smarttrap-" + expected_kind || toks[1][0] != 'v') {
                throw ParseError("expected header 'smarttrap-" + expected_kind +
                                 " v1' on first non-empty line");
            }
            out.kind = expected_kind;
            out.version = std::atoi(toks[1].c_str() + 1);
            if (out.version != 1) {
                throw ParseError("unsupported " + expected_kind + " version '" + toks[1] + "'");
            }
            header_seen = true;
            continue;
        }
        KvRecord rec;
        rec.key = toks[0];
        rec.values.assign(toks.begin() + 1, toks.end());
        rec.line = line_no;
        out.records.push_back(std::move(rec));
    }
    if (!header_seen) {
        throw ParseError("empty " + expected_kind + " file (missing header line)");
    }
    return out;
}

KvFile parse_kv_file(const std::string& path, const std::string& expected_kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_kv_text(buf.str(), expected_kind);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace smarttrap
