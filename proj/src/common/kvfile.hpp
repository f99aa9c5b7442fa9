#pragma once

#include <string>
#include <vector>

namespace smarttrap {

// Line-oriented key/value file shared by config, scene and scenario inputs.
//
//   smarttrap-<kind> v1
//   # comment
//   key value value ...
//
// Keys may repeat (list entries such as "blob" or "insect"). Values are
// whitespace-separated tokens.
struct KvRecord {
    std::string key;
    std::vector<std::string> values;
    int line = 0;
};

struct KvFile {
    std::string kind;
    int version = 0;
    std::vector<KvRecord> records;

    // Last record with the given key, or nullptr.
    const KvRecord* find(const std::string& key) const;
    bool has(const std::string& key) const { return find(key) != nullptr; }

    // Scalar accessors for "key <single value>" records; throw ParseError on
    // malformed values, return the fallback when the key is absent.
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
};

KvFile parse_kv_text(const std::string& text, const std::string& expected_kind);
KvFile parse_kv_file(const std::string& path, const std::string& expected_kind);

double kv_to_double(const KvRecord& rec, size_t index);
long kv_to_long(const KvRecord& rec, size_t index);

}  // namespace smarttrap
