#pragma once

#include <stdexcept>
#include <string>

namespace kernlex {

// Error taxonomy, mirrored by the CLI exit codes:
//   config_error   -> 2  (bad parameters, unusable configuration)
//   input_error    -> 3  (I/O failures, malformed or undecodable input)
//   analysis_error -> 4  (well-formed input that cannot be analysed)
// Anything else escaping to the CLI is reported as an internal error (5).
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct config_error : error {
    using error::error;
};

struct input_error : error {
    using error::error;
};

struct analysis_error : error {
    using error::error;
};

} // namespace kernlex
