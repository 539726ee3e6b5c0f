#pragma once
// Error type carrying a machine-readable code alongside the human message.

#include <stdexcept>
#include <string>

namespace hg {

class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

}  // namespace hg
