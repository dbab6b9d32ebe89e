#pragma once

#include <stdexcept>
#include <string>

namespace maxwalk {

enum class Errc {
    invalid_argument,
    grid_mismatch,
    window_too_small,
    window_overflow,
    mass_drift,
    out_of_range,
    unknown_spec,
    decomposition,
    config,
    io,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace maxwalk
