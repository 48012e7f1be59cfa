#include "permprime/document.hpp"

#include <stdexcept>

namespace permprime {

OutputDocument::OutputDocument(std::string_view command) {
    add("schema_version", static_cast<long long>(kSchemaVersion));
    add("command", command);
}

void OutputDocument::add(std::string_view key, std::string_view value) {
    if (key.empty() || key.find(' ') != std::string_view::npos)
        throw std::invalid_argument("document keys must be nonempty and space-free");
    if (value.find('\n') != std::string_view::npos)
        throw std::invalid_argument("document values must be single-line");
    fields_.emplace_back(std::string(key), std::string(value));
}

void OutputDocument::add(std::string_view key, long long value) {
    add(key, std::string_view(std::to_string(value)));
}

void OutputDocument::add(std::string_view key, unsigned long long value) {
    add(key, std::string_view(std::to_string(value)));
}

const std::string* OutputDocument::find(std::string_view key) const {
    for (const auto& [k, v] : fields_)
        if (k == key) return &v;
    return nullptr;
}

std::string OutputDocument::serialize() const {
    std::string out;
    for (const auto& [k, v] : fields_) {
        out += k;
        if (!v.empty()) {
            out += ' ';
            out += v;
        }
        out += '\n';
    }
    return out;
}

OutputDocument OutputDocument::parse(std::string_view text) {
    OutputDocument doc;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (line.empty()) continue;
        std::size_t sp = line.find(' ');
        if (sp == std::string_view::npos)
            doc.fields_.emplace_back(std::string(line), std::string());
        else
            doc.fields_.emplace_back(std::string(line.substr(0, sp)),
                                     std::string(line.substr(sp + 1)));
    }
    return doc;
}

} // namespace permprime
