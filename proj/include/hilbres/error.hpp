/**
 * @file error.hpp
 * @brief Exception type shared by every hilbres module.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace hilbres {

/// Domain error. `stage` names the pipeline stage that raised it, empty
/// when the error comes from a direct module call.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what, std::string stage = {})
        : std::runtime_error(what), stage_(std::move(stage)) {}

    const std::string& stage() const noexcept { return stage_; }

    Error with_stage(std::string stage) const { return Error(what(), std::move(stage)); }

private:
    std::string stage_;
};

} // namespace hilbres
