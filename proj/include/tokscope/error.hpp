#pragma once

#include <stdexcept>
#include <string>

namespace tokscope {

/// Raised for every recoverable failure in the library: malformed input
/// files, broken tokenizer invariants, empty corpora, bad configuration.
/// Messages name the offending file, line, or value where one exists.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

}  // namespace tokscope
