#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace permprime {

// Line-oriented machine output: one "key value" pair per line, keys without
// spaces, values to end of line. Field order is part of the format; identical
// inputs must serialize identically byte for byte.
class OutputDocument {
public:
    static constexpr int kSchemaVersion = 1;

    explicit OutputDocument(std::string_view command);
    OutputDocument() = default;

    void add(std::string_view key, std::string_view value);
    void add(std::string_view key, long long value);
    void add(std::string_view key, unsigned long long value);

    const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }
    const std::string* find(std::string_view key) const; // first match or null

    std::string serialize() const;
    static OutputDocument parse(std::string_view text);

private:
    std::vector<std::pair<std::string, std::string>> fields_;
};

} // namespace permprime
