#pragma once

#include <stdexcept>
#include <string>

namespace maclane {

// All domain failures carry a short machine code plus a human detail string.
// The CLI maps them to exit status 2.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& detail)
        : std::runtime_error(code + ": " + detail), code_(std::move(code)), detail_(detail) {}
    const std::string& code() const { return code_; }
    const std::string& detail() const { return detail_; }

private:
    std::string code_;
    std::string detail_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& detail = "") {
    throw Error(code, detail);
}

}  // namespace maclane
